//! Classical integer sequences: factorials, double factorials, binomials and
//! Stirling numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `n!! = n (n-2) (n-4) ...` down to 1 or 2, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigInt> {
    if n < -1 {
        return Err(Error::domain(format!("double factorial of {n} < -1")));
    }
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    Ok(acc)
}

/// Binomial coefficient with the upper index allowed to be negative
/// (`binom(n, k) = n (n-1) ... (n-k+1) / k!`), and zero for `k < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    let k = if n >= 0 { k.min(n - k) } else { k };
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Signed Stirling number of the first kind: the coefficient of `v^i` in the
/// falling factorial `v (v-1) ... (v-n+1)`.
pub fn stirling_first_signed(n: u32, i: u32) -> Result<BigInt> {
    if i > n {
        return Err(Error::domain(format!("s({n}, {i}) requires i <= n")));
    }
    // Expand the falling factorial one factor at a time.
    let mut coeffs = vec![BigInt::one()];
    for j in 0..n {
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (deg, c) in coeffs.iter().enumerate() {
            next[deg + 1] += c;
            next[deg] -= c * j;
        }
        coeffs = next;
    }
    Ok(coeffs.swap_remove(i as usize))
}

/// Stirling number of the second kind `S2(m, n)`: set partitions of an
/// `m`-set into `n` nonempty blocks. Zero when `n > m`.
pub fn stirling_second(m: u32, n: u32) -> BigInt {
    if n > m {
        return BigInt::zero();
    }
    let n = n as usize;
    // Row-by-row recurrence S2(r, j) = j S2(r-1, j) + S2(r-1, j-1).
    let mut row = vec![BigInt::zero(); n + 1];
    row[0] = BigInt::one();
    for _ in 0..m {
        for j in (1..=n).rev() {
            let prev = std::mem::take(&mut row[j]);
            row[j] = prev * j + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row.swap_remove(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(-1).unwrap(), big(1));
        assert_eq!(double_factorial(0).unwrap(), big(1));
        assert_eq!(double_factorial(5).unwrap(), big(15));
        assert_eq!(double_factorial(7).unwrap(), big(105));
        assert_eq!(double_factorial(8).unwrap(), big(384));
        assert!(double_factorial(-2).is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), big(6));
        assert_eq!(binomial(2, 3), big(0));
        assert_eq!(binomial(5, -1), big(0));
        assert_eq!(binomial(-1, 0), big(1));
        assert_eq!(binomial(-1, 3), big(-1));
        assert_eq!(binomial(-3, 2), big(6));
    }

    /// Expands `v (v-1) ... (v-n+1)` at integer points and solves for the
    /// coefficients, independent of the recurrence used above.
    fn falling_factorial_coeffs(n: u32) -> Vec<i64> {
        // Direct polynomial multiplication over i64.
        let mut c = vec![1i64];
        for j in 0..n as i64 {
            let mut next = vec![0i64; c.len() + 1];
            for (d, &x) in c.iter().enumerate() {
                next[d + 1] += x;
                next[d] -= j * x;
            }
            c = next;
        }
        c
    }

    #[test]
    fn stirling_first_examples() {
        assert_eq!(stirling_first_signed(0, 0).unwrap(), big(1));
        assert_eq!(stirling_first_signed(3, 1).unwrap(), big(2));
        assert_eq!(stirling_first_signed(4, 2).unwrap(), big(11));
        assert_eq!(stirling_first_signed(3, 2).unwrap(), big(-3));
        assert!(stirling_first_signed(2, 3).is_err());
        for n in 0..8 {
            let c = falling_factorial_coeffs(n);
            for i in 0..=n {
                assert_eq!(stirling_first_signed(n, i).unwrap(), big(c[i as usize]));
            }
        }
    }

    /// Brute-force count of set partitions via restricted growth strings.
    fn set_partitions(m: u32, n: u32) -> u64 {
        fn rec(pos: u32, m: u32, used: u32, n: u32) -> u64 {
            if pos == m {
                return (used == n) as u64;
            }
            let mut total = 0;
            for b in 0..=used.min(n.saturating_sub(1)) {
                let next = if b == used { used + 1 } else { used };
                if next <= n {
                    total += rec(pos + 1, m, next, n);
                }
            }
            total
        }
        rec(0, m, 0, n)
    }

    #[test]
    fn stirling_second_examples() {
        assert_eq!(stirling_second(3, 2), big(3));
        assert_eq!(stirling_second(4, 2), big(7));
        assert_eq!(stirling_second(0, 0), big(1));
        assert_eq!(stirling_second(2, 5), big(0));
        for m in 0..8 {
            assert_eq!(stirling_second(m, m), big(1));
            for n in 0..=m {
                assert_eq!(stirling_second(m, n), big(set_partitions(m, n) as i64));
            }
        }
    }

    #[test]
    fn stirling_duality() {
        for n in 0..=10u32 {
            for m in 0..=10u32 {
                let s: BigInt = (0..=n)
                    .map(|k| stirling_first_signed(n, k).unwrap() * stirling_second(k, m))
                    .sum();
                assert_eq!(s, big((n == m) as i64), "n={n} m={m}");
            }
        }
    }
}
