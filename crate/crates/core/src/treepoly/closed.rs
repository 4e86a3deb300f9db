//! Closed forms for special values of the tree polynomial and for the
//! shuffle sign-sum tables.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::enumerate::SignSumVariant;
use crate::numbers::{binomial, double_factorial, factorial};
use crate::rational::Rational;
use crate::{Error, Result};

use super::{q_eval, OddTuple};

fn df(n: i64) -> BigInt {
    double_factorial(n).expect("argument at least -1")
}

fn require_odd(name: &str, v: u32) -> Result<()> {
    if v.is_multiple_of(2) {
        return Err(Error::domain(format!("{name} must be a positive odd integer, got {v}")));
    }
    Ok(())
}

/// `T_k(n, 1, ..., 1, m) = (2k-1)!! m n (n+1)(n+3)...(n+2k-1)`.
///
/// For `k = 0` the tuple has a single entry, so `n` and `m` must agree and
/// the value is `n`.
pub fn t_closed_ones(k: u32, n: u32, m: u32) -> Result<BigInt> {
    require_odd("n", n)?;
    require_odd("m", m)?;
    if k == 0 {
        if n != m {
            return Err(Error::domain("for k = 0 the first and last entries coincide"));
        }
        return Ok(BigInt::from(n));
    }
    let mut acc = df(2 * k as i64 - 1) * m * n;
    for i in 1..=k {
        acc *= n + 2 * i - 1;
    }
    Ok(acc)
}

/// `Q_k(n, 1, ..., 1) = (2k-1)!! n!! / (n+2k-2)!!` for `k >= 1`.
pub fn q_closed_ones(k: u32, n: u32) -> Result<Rational> {
    require_odd("n", n)?;
    if k == 0 {
        return Err(Error::domain("the closed form for Q_k(n, 1, ..., 1) needs k >= 1"));
    }
    let k = k as i64;
    let n = n as i64;
    Rational::new(df(2 * k - 1) * df(n), df(n + 2 * k - 2))
}

/// `T_k(3, 1^p, 2r+1, 1^q)` for `p + q = 2k - 1` as the single sum
///
/// `Σ_{s=0}^{⌈q/2⌉} q!/(q-2s+1)! · C(r-1+s, s) · (2k-2s)! · 3(k-s+1) ·
/// [(q-2s+1)(2r+2s+1) - 2s(2k-2s+3)]`,
///
/// where `C(r-1+s, s)` is read as `1` at `s = 0` (this matters for `r = 0`).
pub fn t_closed_main(k: u32, p: u32, q: u32, r: u32) -> Result<BigInt> {
    if k == 0 || p + q != 2 * k - 1 {
        return Err(Error::domain(format!(
            "t_closed_main needs k >= 1 and p + q = 2k - 1, got k={k}, p={p}, q={q}"
        )));
    }
    let (k, q, r) = (k as i64, q as i64, r as i64);
    let mut total = Rational::zero();
    for s in 0..=(q + 1) / 2 {
        let lead = q - 2 * s + 1;
        let ratio = Rational::new(factorial(q as u32), factorial(lead as u32))?;
        let choose = if s == 0 { BigInt::one() } else { binomial(r - 1 + s, s) };
        let bracket = lead * (2 * r + 2 * s + 1) - 2 * s * (2 * k - 2 * s + 3);
        let rest = choose * factorial((2 * k - 2 * s) as u32) * (3 * (k - s + 1)) * bracket;
        total += ratio * Rational::from(rest);
    }
    total
        .to_integer()
        .ok_or_else(|| Error::domain("closed form produced a non-integer"))
}

/// One row of the sign-sum tables: the total `X` and the average `E` over
/// the `C(n+m, n)` shuffles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XeEntry {
    pub x: BigInt,
    pub e: Rational,
}

/// Closed-form `X` and `E` for the shuffle family `variant` and sizes
/// `(n, m)`, from the parity-class tables. `E` is evaluated from its own
/// double-factorial formula, not as `X / C(n+m, n)`.
pub fn xe_tables(variant: SignSumVariant, n: u32, m: u32) -> XeEntry {
    use SignSumVariant::*;
    let (n, m) = (n as i64, m as i64);
    let r = |a: BigInt, b: BigInt| Rational::new(a, b).expect("positive denominator");
    let int = |v: i64| BigInt::from(v);
    let (x, e) = match (n % 2 == 0, m % 2 == 0) {
        (true, true) => {
            let (j, k) = (n / 2, m / 2);
            let c = binomial(j + k, j);
            let base = df(2 * j - 1) * df(2 * k - 1);
            let den = df(2 * j + 2 * k - 1);
            match variant {
                X0 => (int(2 * j) * &c, r(int(2 * j) * base, den)),
                X1 => (int(2 * j + 1) * &c, r(df(2 * j + 1) * df(2 * k - 1), den)),
                X2 => (int(2 * j + 2) * &c, r(int(2 * j + 2) * base, den)),
            }
        }
        (true, false) => {
            let (j, k) = (n / 2, (m + 1) / 2);
            match variant {
                X0 | X2 => (BigInt::zero(), Rational::zero()),
                X1 => (
                    binomial(j + k - 1, j),
                    r(df(2 * j - 1) * df(2 * k - 1), df(2 * j + 2 * k - 1)),
                ),
            }
        }
        (false, true) => {
            let (j, k) = ((n + 1) / 2, m / 2);
            let c = binomial(j + k - 1, k);
            let base = df(2 * j - 1) * df(2 * k - 1);
            match variant {
                X0 => (int(2 * j + 2 * k - 1) * &c, r(base, df(2 * j + 2 * k - 3))),
                X1 => (
                    int(2 * j + 2 * k) * &c,
                    r(int(2 * j + 2 * k) * base, df(2 * j + 2 * k - 1)),
                ),
                X2 => (
                    int(2 * j + 2 * k + 1) * &c,
                    r(int(2 * j + 2 * k + 1) * base, df(2 * j + 2 * k - 1)),
                ),
            }
        }
        (false, false) => {
            let (j, k) = ((n + 1) / 2, (m + 1) / 2);
            let c = binomial(j + k - 1, k);
            let e = r(df(2 * j - 1) * df(2 * k - 1), df(2 * j + 2 * k - 3));
            match variant {
                X0 | X1 => (int(2 * k) * &c, e),
                X2 => (int(-2 * k) * &c, -e),
            }
        }
    };
    XeEntry { x, e }
}

/// Both sides of `Σ_{p+q=2k-1} Q_k(3, 1^p, 2r+1, 1^q) =
/// 3(2k+2r+3)/(2k+1) - 3 (2r+3)!! (2k-1)!! / (2k+2r+1)!!`.
///
/// The left side is summed term by term from the tree polynomial.
pub fn double_sum_identity(k: u32, r: u32) -> Result<(Rational, Rational)> {
    if k == 0 {
        return Err(Error::domain("the double sum needs k >= 1"));
    }
    let mut lhs = Rational::zero();
    for p in 0..2 * k {
        let q = 2 * k - 1 - p;
        let mut v = vec![3];
        v.extend(std::iter::repeat_n(1, p as usize));
        v.push(2 * r + 1);
        v.extend(std::iter::repeat_n(1, q as usize));
        lhs += q_eval(&OddTuple::new(v)?)?;
    }
    let (k, r) = (k as i64, r as i64);
    let rhs = Rational::new(3 * (2 * k + 2 * r + 3), 2 * k + 1)?
        - Rational::new(
            BigInt::from(3) * df(2 * r + 3) * df(2 * k - 1),
            df(2 * k + 2 * r + 1),
        )?;
    Ok((lhs, rhs))
}
