//! Closed forms: one-part coefficients, the two-part coefficients, the
//! sequence `h(n)` and the terms `R_k`, `S_k` of the recursion.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use crate::numbers::double_factorial;
use crate::partition::{compositions, sym_count, Partition};
use crate::rational::Rational;
use crate::treepoly::{q_eval, OddTuple};
use crate::{Error, Result};

fn df(n: i64) -> BigInt {
    double_factorial(n).expect("argument at least -1")
}

fn minus_two_pow(e: u32) -> BigInt {
    BigInt::from(-2).pow(e)
}

fn require_positive(name: &str, n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::domain(format!("{name} must be at least 1")));
    }
    Ok(())
}

/// `a_n = (-2)^{n+1} (2n+1)!!`.
pub fn a_single(n: u32) -> Result<Rational> {
    require_positive("n", n)?;
    Ok(Rational::from(minus_two_pow(n + 1) * df(2 * n as i64 + 1)))
}

/// `b_n = 1 / a_n`.
pub fn b_single(n: u32) -> Result<Rational> {
    a_single(n)?.recip()
}

/// `h(0) = 1`, `h(n+1) = Σ_{a+b+c=n} h(a)h(b)h(c) (2a+1)(2c+1) / ((2a+3)(n+1))`.
pub fn h_sequence(n: u32) -> Rational {
    let n = n as usize;
    let mut h = vec![Rational::one()];
    for next in 1..=n {
        let prev = next - 1;
        let mut acc = Rational::zero();
        for a in 0..=prev {
            for b in 0..=prev - a {
                let c = prev - a - b;
                let w = Rational::new((2 * a + 1) * (2 * c + 1), (2 * a + 3) * next).expect("positive denominator");
                acc += &h[a] * &h[b] * &h[c] * w;
            }
        }
        h.push(acc);
    }
    h.pop().expect("h(0) is always present")
}

fn sym_pair(r: u32, k: u32) -> BigInt {
    sym_count(&[r, k])
}

/// `b_{r,k}^{r+k} = b_r b_k (2r+2k+3) + b_{r+k}`.
pub fn closed_b_pair(r: u32, k: u32) -> Result<Rational> {
    Ok(b_single(r)? * b_single(k)? * Rational::from(2 * r + 2 * k + 3) + b_single(r + k)?)
}

/// `a_{r,k}^{r+k} = -(a_r a_k + (2r+2k+3) a_{r+k}) / Sym(r,k)`.
pub fn closed_a_pair(r: u32, k: u32) -> Result<Rational> {
    let num = a_single(r)? * a_single(k)? + Rational::from(2 * r + 2 * k + 3) * a_single(r + k)?;
    Ok(-num / Rational::from(sym_pair(r, k)))
}

/// The expansion of `[W_{r,k}^*]` in the classes `κ̃_{r+k}` and `κ̃_r κ̃_k`:
///
/// `(-2)^{r+k+1}/Sym(r,k) · [2(2r+1)!!(2k+1)!! (κ̃_{r+k} - κ̃_r κ̃_k) - (2r+2k+3)!! κ̃_{r+k}]`.
pub fn closed_witten_pair(r: u32, k: u32) -> Result<BTreeMap<Partition, Rational>> {
    require_positive("r", r)?;
    require_positive("k", k)?;
    let scale = Rational::new(minus_two_pow(r + k + 1), sym_pair(r, k))?;
    let both = BigInt::from(2) * df(2 * r as i64 + 1) * df(2 * k as i64 + 1);
    let top = &both - df(2 * (r + k) as i64 + 3);
    let mut out = BTreeMap::new();
    out.insert(Partition::single(r + k)?, &scale * Rational::from(top));
    out.insert(Partition::from_nonzero(&[r, k]), -(scale * Rational::from(both)));
    Ok(out)
}

fn q_memo() -> &'static Mutex<HashMap<Vec<u32>, Rational>> {
    static MEMO: OnceLock<Mutex<HashMap<Vec<u32>, Rational>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `Q_k` at an odd tuple, memoized across calls.
pub(crate) fn q_cached(args: Vec<u32>) -> Result<Rational> {
    if let Some(v) = q_memo().lock().expect("q memo poisoned").get(&args) {
        return Ok(v.clone());
    }
    let v = q_eval(&OddTuple::new(args.clone())?)?;
    q_memo().lock().expect("q memo poisoned").insert(args, v.clone());
    Ok(v)
}

/// `R_k(m_0, ..., m_{2k}) = (2m_0+1)/(2m_0+3) · Q_k(2m_0+3, 2m_1+1, ..., 2m_{2k}+1)`.
pub fn r_term(k: u32, slots: &[u32]) -> Result<Rational> {
    if slots.len() != 2 * k as usize + 1 {
        return Err(Error::LengthMismatch {
            expected: 2 * k as usize + 1,
            found: slots.len(),
        });
    }
    let m0 = slots[0];
    let mut args = Vec::with_capacity(slots.len());
    args.push(2 * m0 + 3);
    args.extend(slots[1..].iter().map(|&m| 2 * m + 1));
    Ok(Rational::new(2 * m0 + 1, 2 * m0 + 3)? * q_cached(args)?)
}

/// `S_k(μ)`: the sum of `R_k` over the distinct arrangements of the parts of
/// `μ`, padded with zeros, into `2k+1` slots.
pub fn s_term(k: u32, mu: &Partition) -> Result<Rational> {
    let slots = 2 * k as usize + 1;
    if mu.len() > slots {
        return Err(Error::domain(format!("{mu} has more than {slots} parts")));
    }
    let mut total = Rational::zero();
    for c in compositions(mu.weight(), slots) {
        if Partition::from_nonzero(&c) == *mu {
            total += r_term(k, &c)?;
        }
    }
    Ok(total)
}

/// The normaliser `(-2)^{k+1} (2k-1)!!` of the recursion.
pub(crate) fn recursion_denominator(k: u32) -> Rational {
    Rational::from(minus_two_pow(k + 1) * df(2 * k as i64 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn singles() {
        assert_eq!(a_single(1).unwrap(), Rational::from(12));
        assert_eq!(b_single(2).unwrap(), ratio(-1, 120));
        assert_eq!(a_single(3).unwrap(), Rational::from(1680));
        assert_eq!(b_single(3).unwrap(), ratio(1, 1680));
        assert!(a_single(0).is_err());
    }

    #[test]
    fn h_values() {
        assert_eq!(h_sequence(0), Rational::one());
        assert_eq!(h_sequence(1), ratio(1, 3));
        assert_eq!(h_sequence(2), ratio(29, 90));
        assert_eq!(h_sequence(3), ratio(263, 630));
        assert_eq!(h_sequence(4), ratio(23479, 37800));
    }

    #[test]
    fn pairs() {
        assert_eq!(closed_b_pair(1, 1).unwrap(), ratio(29, 720));
        assert_eq!(closed_b_pair(2, 1).unwrap(), ratio(-19, 3360));
        for n in 2..6 {
            let expected = Rational::from(-12) * a_single(n).unwrap()
                - Rational::from(2 * n + 5) * a_single(n + 1).unwrap();
            assert_eq!(closed_a_pair(n, 1).unwrap(), expected);
        }
        let w = closed_witten_pair(1, 1).unwrap();
        assert_eq!(w[&Partition::from_nonzero(&[1, 1])], Rational::from(72));
        assert_eq!(w[&Partition::single(2).unwrap()], closed_a_pair(1, 1).unwrap());
    }

    #[test]
    fn s2_worked_formula() {
        // Five distinct arrangements, so m >= 1.
        for m in 1..6u32 {
            let mu = Partition::from_nonzero(&[m]);
            let expected = Rational::new(2 * m + 7, 5).unwrap()
                - Rational::new(6, (2 * m + 5) * (2 * m + 3)).unwrap();
            assert_eq!(s_term(2, &mu).unwrap(), expected, "m = {m}");
        }
    }

    #[test]
    fn r_term_checks_length() {
        assert!(r_term(1, &[0, 0]).is_err());
        assert_eq!(r_term(1, &[0, 0, 0]).unwrap(), ratio(1, 3));
    }
}
