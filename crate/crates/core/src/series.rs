//! Truncated power series in `t` with polynomial coefficients.

use crate::numbers::factorial;
use crate::poly::MultiPoly;
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Cosh,
    Sinh,
    CoshSquared,
    SinhSquared,
    SinhCosh,
}

/// `Σ_{n ≤ order} c_n t^n`, where each `c_n` is a polynomial in a fixed
/// number of variables. Terms of degree above `order` are discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    num_vars: usize,
    coeffs: Vec<MultiPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize, num_vars: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::domain("truncation order must be positive"));
        }
        Ok(TruncatedSeries {
            order,
            num_vars,
            coeffs: vec![MultiPoly::zero(num_vars); order + 1],
        })
    }

    /// Missing trailing coefficients are zero; extra ones are an error.
    pub fn from_coeffs(order: usize, num_vars: usize, coeffs: Vec<MultiPoly>) -> Result<Self> {
        let mut s = Self::zero(order, num_vars)?;
        if coeffs.len() > order + 1 {
            return Err(Error::LengthMismatch {
                expected: order + 1,
                found: coeffs.len(),
            });
        }
        for (n, c) in coeffs.into_iter().enumerate() {
            if c.num_vars() != num_vars {
                return Err(Error::ArityMismatch {
                    left: num_vars,
                    right: c.num_vars(),
                });
            }
            s.coeffs[n] = c;
        }
        Ok(s)
    }

    /// Taylor expansion of the chosen function of `t` with constant
    /// coefficients.
    pub fn elementary(kind: SeriesKind, order: usize, num_vars: usize) -> Result<Self> {
        let mut s = Self::zero(order, num_vars)?;
        for n in 0..=order {
            let c = elementary_coeff(kind, n as u32);
            s.coeffs[n] = MultiPoly::constant(num_vars, c);
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn coeff(&self, n: usize) -> &MultiPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    fn check(&self, other: &TruncatedSeries) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        if self.num_vars != other.num_vars {
            return Err(Error::ArityMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(TruncatedSeries { coeffs, ..*self })
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(other)?;
        let mut out = Self::zero(self.order, self.num_vars)?;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=self.order - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].checked_add(&a.checked_mul(b)?)?;
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by a polynomial.
    pub fn scale_poly(&self, p: &MultiPoly) -> Result<TruncatedSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(p))
            .collect::<Result<_>>()?;
        Ok(TruncatedSeries { coeffs, ..*self })
    }

    /// `d/dt`; the result is known only through `order - 1`.
    pub fn derivative(&self) -> Result<TruncatedSeries> {
        let mut out = Self::zero(self.order - 1, self.num_vars)?;
        for n in 1..=self.order {
            out.coeffs[n - 1] = self.coeffs[n].scale(&Rational::from(n));
        }
        Ok(out)
    }

    /// Drops terms above `order`, which must not exceed the current order.
    pub fn truncate(&self, order: usize) -> Result<TruncatedSeries> {
        if order > self.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: order,
            });
        }
        let mut out = Self::zero(order, self.num_vars)?;
        out.coeffs.clone_from_slice(&self.coeffs[..=order]);
        Ok(out)
    }
}

/// Taylor coefficient of `t^n`.
fn elementary_coeff(kind: SeriesKind, n: u32) -> Rational {
    let inv_fact = Rational::from(factorial(n)).recip().expect("nonzero");
    let even = n.is_multiple_of(2);
    // cosh^2 = (cosh 2t + 1)/2, sinh^2 = (cosh 2t - 1)/2, sinh cosh = sinh(2t)/2.
    let half_two_pow = || Rational::from(num_bigint::BigInt::from(2).pow(n.saturating_sub(1)));
    match kind {
        SeriesKind::Cosh if even => inv_fact,
        SeriesKind::Sinh if !even => inv_fact,
        SeriesKind::CoshSquared if n == 0 => Rational::one(),
        SeriesKind::CoshSquared | SeriesKind::SinhSquared if even && n > 0 => {
            half_two_pow() * inv_fact
        }
        SeriesKind::SinhCosh if !even => half_two_pow() * inv_fact,
        _ => Rational::zero(),
    }
}
