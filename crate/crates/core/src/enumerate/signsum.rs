use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

use super::Caps;

/// Which shuffle family the sign sum runs over.
///
/// * `X0`: shuffles of `a1..an` with `b1..bm`, selecting `a_i` for
///   `1 <= i <= n`.
/// * `X1`: the same words with `a0` prepended, selecting `0 <= i <= n`.
/// * `X2`: `a0` prepended and `a_{n+1}` appended, selecting
///   `0 <= i <= n+1`.
///
/// Every selection also takes all of `b1..bm`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignSumVariant {
    X0,
    X1,
    X2,
}

impl SignSumVariant {
    pub const ALL: [SignSumVariant; 3] = [SignSumVariant::X0, SignSumVariant::X1, SignSumVariant::X2];
}

impl fmt::Display for SignSumVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignSumVariant::X0 => "X0",
            SignSumVariant::X1 => "X1",
            SignSumVariant::X2 => "X2",
        })
    }
}

impl FromStr for SignSumVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "X0" => Ok(SignSumVariant::X0),
            "X1" => Ok(SignSumVariant::X1),
            "X2" => Ok(SignSumVariant::X2),
            _ => Err(Error::Parse(format!("unknown sign-sum variant {s:?}"))),
        }
    }
}

fn parity(inversions: usize) -> i64 {
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn inversions(seq: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                n += 1;
            }
        }
    }
    n
}

/// Sum over the chosen shuffle family of the word sign times the sum of the
/// selection signs.
pub fn shuffle_sign_sum_bruteforce(variant: SignSumVariant, n: u32, m: u32, caps: &Caps) -> Result<i64> {
    Caps::check("shuffle size n+m", (n + m) as u64, caps.shuffle as u64, "TREECOEFF_CAPS=shuffle=<n>")?;
    let (n, m) = (n as usize, m as usize);
    let len = n + m;
    // Canonical ranks: a-letters 0..=n+1 first, then b-letters.
    let b_rank = |j: usize| n + 2 + j;
    let mut total = 0i64;
    let mut word = Vec::with_capacity(len + 2);
    let mut pos_a = vec![0usize; n + 2];
    let mut pos_b = vec![0usize; m];
    for mask in 0u64..(1u64 << len) {
        if mask.count_ones() as usize != m {
            continue;
        }
        word.clear();
        if variant != SignSumVariant::X0 {
            word.push(0);
        }
        let (mut ai, mut bi) = (1, 0);
        for p in 0..len {
            if mask >> p & 1 == 1 {
                word.push(b_rank(bi));
                bi += 1;
            } else {
                word.push(ai);
                ai += 1;
            }
        }
        if variant == SignSumVariant::X2 {
            word.push(n + 1);
        }
        for (p, &r) in word.iter().enumerate() {
            if r >= n + 2 {
                pos_b[r - n - 2] = p;
            } else {
                pos_a[r] = p;
            }
        }
        let selectable = match variant {
            SignSumVariant::X0 => 1..=n,
            SignSumVariant::X1 => 0..=n,
            SignSumVariant::X2 => 0..=n + 1,
        };
        let mut sel = 0i64;
        let mut positions = Vec::with_capacity(m + 1);
        for i in selectable {
            positions.clear();
            positions.push(pos_a[i]);
            positions.extend_from_slice(&pos_b);
            sel += parity(inversions(&positions));
        }
        total += parity(inversions(&word)) * sel;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_examples() {
        let caps = Caps::default();
        use SignSumVariant::*;
        assert_eq!(shuffle_sign_sum_bruteforce(X0, 2, 1, &caps).unwrap(), 0);
        assert_eq!(shuffle_sign_sum_bruteforce(X0, 4, 3, &caps).unwrap(), 0);
        assert_eq!(shuffle_sign_sum_bruteforce(X0, 2, 2, &caps).unwrap(), 4);
        assert_eq!(shuffle_sign_sum_bruteforce(X2, 1, 1, &caps).unwrap(), -2);
        assert!(shuffle_sign_sum_bruteforce(X1, 7, 6, &caps).is_err());
    }

    #[test]
    fn no_b_letters() {
        // With m = 0 there is a single word and each selection has sign +1.
        let caps = Caps::default();
        for n in 0..5 {
            assert_eq!(shuffle_sign_sum_bruteforce(SignSumVariant::X0, n, 0, &caps).unwrap(), n as i64);
            assert_eq!(shuffle_sign_sum_bruteforce(SignSumVariant::X2, n, 0, &caps).unwrap(), n as i64 + 2);
        }
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("x1".parse::<SignSumVariant>().unwrap(), SignSumVariant::X1);
        assert!("X3".parse::<SignSumVariant>().is_err());
    }
}
