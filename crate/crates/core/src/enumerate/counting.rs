use crate::{Error, Result};

use super::Caps;

/// `Σ_z (-1)^{z1+...+zs} (B(z) - A(z))` over `z ∈ {1..n}^s`, where `A(z)`
/// counts the `j ≤ n` lying below an odd number of the `z_i` and `B(z)` the
/// rest.
pub fn counting_lemma_bruteforce(n: u32, s: u32, caps: &Caps) -> Result<i64> {
    if n == 0 {
        return Err(Error::domain("counting identity needs n >= 1"));
    }
    let requested = (n as u64).checked_pow(s).unwrap_or(u64::MAX);
    Caps::check("sequence count n^s", requested, caps.counting, "TREECOEFF_CAPS=counting=<n>")?;
    let s = s as usize;
    let mut z = vec![1u32; s];
    let mut total = 0i64;
    loop {
        let sign = if z.iter().map(|&v| v as u64).sum::<u64>() % 2 == 0 { 1 } else { -1 };
        let mut b_minus_a = 0i64;
        for j in 1..=n {
            let below = z.iter().filter(|&&zi| j <= zi).count();
            b_minus_a += if below % 2 == 0 { 1 } else { -1 };
        }
        total += sign * b_minus_a;
        let mut i = s;
        loop {
            if i == 0 {
                return Ok(total);
            }
            i -= 1;
            if z[i] < n {
                z[i] += 1;
                break;
            }
            z[i] = 1;
        }
    }
}

/// The closed form: `1` if `s` and `n` are odd, `n` if `s` is even and `n`
/// odd, `(n/2)(-2)^s` if `n` is even. For `s = 0` there is one empty
/// sequence and the sum is `n` whatever the parity of `n`.
pub fn counting_lemma_closed(n: u32, s: u32) -> Result<i64> {
    if n == 0 {
        return Err(Error::domain("counting identity needs n >= 1"));
    }
    let n = n as i64;
    if s == 0 {
        return Ok(n);
    }
    Ok(match (n % 2, s % 2) {
        (1, 1) => 1,
        (1, _) => n,
        _ => (n / 2)
            .checked_mul((-2i64).checked_pow(s).ok_or(Error::Overflow("counting closed form"))?)
            .ok_or(Error::Overflow("counting closed form"))?,
    })
}

/// `p_i` = number of permutations of `{1..2k}` with exactly `i` cycles of
/// even length, for `i = 0..=k`.
pub fn even_cycle_histogram(two_k: u32, caps: &Caps) -> Result<Vec<u64>> {
    if !two_k.is_multiple_of(2) {
        return Err(Error::domain("even_cycle_histogram needs an even size"));
    }
    Caps::check("permutation size", two_k as u64, caps.cycles as u64, "TREECOEFF_CAPS=cycles=<n>")?;
    let n = two_k as usize;
    let mut hist = vec![0u64; n / 2 + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    let mut seen = vec![false; n];
    let mut record = |perm: &[usize]| {
        seen.iter_mut().for_each(|s| *s = false);
        let mut even = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
                len += 1;
            }
            if len % 2 == 0 {
                even += 1;
            }
        }
        hist[even] += 1;
    };
    // Heap's algorithm, iterative form.
    record(&perm);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            record(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_examples() {
        let caps = Caps::default();
        assert_eq!(counting_lemma_bruteforce(3, 1, &caps).unwrap(), 1);
        assert_eq!(counting_lemma_bruteforce(5, 2, &caps).unwrap(), 5);
        assert_eq!(counting_lemma_bruteforce(4, 3, &caps).unwrap(), -16);
        assert_eq!(counting_lemma_closed(3, 1).unwrap(), 1);
        assert_eq!(counting_lemma_closed(5, 2).unwrap(), 5);
        assert_eq!(counting_lemma_closed(4, 3).unwrap(), -16);
        assert!(counting_lemma_bruteforce(10, 8, &caps).is_err());
        assert!(counting_lemma_closed(0, 1).is_err());
    }

    #[test]
    fn empty_sequence() {
        let caps = Caps::default();
        for n in 1..=6 {
            assert_eq!(counting_lemma_bruteforce(n, 0, &caps).unwrap(), n as i64);
        }
    }

    #[test]
    fn histograms() {
        let caps = Caps::default();
        assert_eq!(even_cycle_histogram(2, &caps).unwrap(), vec![1, 1]);
        assert_eq!(even_cycle_histogram(4, &caps).unwrap(), vec![9, 12, 3]);
        assert_eq!(even_cycle_histogram(6, &caps).unwrap().iter().sum::<u64>(), 720);
        assert_eq!(even_cycle_histogram(0, &caps).unwrap(), vec![1]);
        assert!(even_cycle_histogram(3, &caps).is_err());
        assert!(even_cycle_histogram(12, &caps).is_err());
    }
}
