//! Packed-exponent integer polynomials for the `P_k^c` recursion.
//!
//! Exponents are stored 6 bits per variable in a `u128`, so multiplying by a
//! monomial is a single addition. Coefficients are `i128` with checked
//! arithmetic; overflow is reported, never wrapped.

use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use crate::poly::MultiPoly;
use crate::rational::Rational;
use crate::{Error, Result};

const BITS: u32 = 6;
const MASK: u128 = (1 << BITS) - 1;
/// Largest number of variables that fit in a key.
pub(crate) const MAX_VARS: usize = (128 / BITS) as usize;

pub(crate) type Acc = FxHashMap<u128, i128>;

#[inline]
pub(crate) fn unit(var: usize) -> u128 {
    debug_assert!(var < MAX_VARS);
    1u128 << (BITS as usize * var)
}

pub(crate) fn unpack(key: u128, num_vars: usize) -> Vec<u32> {
    (0..num_vars)
        .map(|i| ((key >> (BITS as usize * i)) & MASK) as u32)
        .collect()
}

/// A sparse integer polynomial as a key-sorted term list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct IntPoly {
    pub(crate) terms: Vec<(u128, i128)>,
}

impl IntPoly {
    pub(crate) fn one() -> Self {
        IntPoly {
            terms: vec![(0, 1)],
        }
    }

    pub(crate) fn from_acc(acc: Acc) -> Self {
        let mut terms: Vec<(u128, i128)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by_key(|&(k, _)| k);
        IntPoly { terms }
    }

    pub(crate) fn len(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn to_multipoly(&self, num_vars: usize, denom: &BigInt) -> MultiPoly {
        MultiPoly::from_terms(
            num_vars,
            self.terms.iter().map(|&(k, c)| {
                (
                    unpack(k, num_vars),
                    Rational::new(BigInt::from(c), denom.clone()).expect("nonzero denominator"),
                )
            }),
        )
        .expect("unpacked exponents have the declared length")
    }
}

#[inline]
fn add_into(acc: &mut Acc, key: u128, c: i128) -> Result<()> {
    let slot = acc.entry(key).or_insert(0);
    *slot = slot.checked_add(c).ok_or(Error::Overflow("tree polynomial kernel"))?;
    Ok(())
}

#[inline]
fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("tree polynomial kernel"))
}

/// `acc += scale * shift * p`, where `shift` is a packed monomial.
pub(crate) fn add_shifted(acc: &mut Acc, p: &[(u128, i128)], shift: u128, scale: i128) -> Result<()> {
    if scale == 0 {
        return Ok(());
    }
    for &(k, c) in p {
        add_into(acc, k + shift, mul(c, scale)?)?;
    }
    Ok(())
}

/// `acc += form * p` for a linear form given as `(variable, coefficient)`.
pub(crate) fn add_linear<'a, I>(acc: &mut Acc, p: I, form: &[(usize, i128)]) -> Result<()>
where
    I: IntoIterator<Item = (&'a u128, &'a i128)>,
{
    for (&k, &c) in p {
        for &(v, a) in form {
            add_into(acc, k + unit(v), mul(c, a)?)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_round_trip() {
        let key = 3 * unit(0) + 2 * unit(4) + 63 * unit(20);
        let e = unpack(key, 21);
        assert_eq!(e[0], 3);
        assert_eq!(e[4], 2);
        assert_eq!(e[20], 63);
        assert_eq!(e.iter().sum::<u32>(), 68);
    }

    #[test]
    fn linear_products_match_multipoly() {
        // (x0 + 2 x1) * (x0 - x2) computed both ways.
        let mut acc = Acc::default();
        add_linear(&mut acc, IntPoly::one().terms.iter().map(|(k, c)| (k, c)), &[(0, 1), (1, 2)]).unwrap();
        let first = IntPoly::from_acc(acc);
        let mut acc = Acc::default();
        add_linear(&mut acc, first.terms.iter().map(|(k, c)| (k, c)), &[(0, 1), (2, -1)]).unwrap();
        let prod = IntPoly::from_acc(acc).to_multipoly(3, &BigInt::from(1));
        let x = |i| MultiPoly::var(3, i).unwrap();
        let expected = x(0)
            .checked_add(&x(1).scale(&Rational::from(2)))
            .unwrap()
            .checked_mul(&x(0).checked_sub(&x(2)).unwrap())
            .unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn overflow_is_reported() {
        let p = IntPoly {
            terms: vec![(0, i128::MAX / 2)],
        };
        let mut acc = Acc::default();
        assert!(add_shifted(&mut acc, &p.terms, 0, 4).is_err());
    }
}
