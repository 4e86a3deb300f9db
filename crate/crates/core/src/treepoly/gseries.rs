//! The generating function `g_k(t) = Σ_n L_k^n t^{2n} / (2n)!` and its
//! second-order recursion in `k`.

use crate::numbers::factorial;
use crate::poly::MultiPoly;
use crate::rational::Rational;
use crate::series::{SeriesKind, TruncatedSeries};
use crate::{Error, Result};

use super::p_family;

/// `g_k(t)` through `t^order`, with coefficients in `num_vars >= 2k+1`
/// variables.
pub fn g_series(k: u32, order: usize, num_vars: usize) -> Result<TruncatedSeries> {
    let fam = p_family(k)?;
    let mut coeffs = vec![MultiPoly::zero(num_vars); order + 1];
    for n in 0..=order / 2 {
        let inv = Rational::from(factorial(2 * n as u32)).recip()?;
        coeffs[2 * n] = fam.l_poly(n as u32).extend_vars(num_vars)?.scale(&inv);
    }
    TruncatedSeries::from_coeffs(order, num_vars, coeffs)
}

/// Checks
///
/// `g_{k+1} = g_k (z_{2k} z_{2k+2} sinh² t + z_{2k} y2)
///          + g_k' z_{2k+1} (y1 + y2) sinh t cosh t + g_k'' y1 y2 cosh² t`
///
/// through `t^order`, where `z_j = x0 + ... + x_j` and `y_i = x_{2k+i}`.
pub fn verify_g_recursion(k: u32, order: usize) -> Result<bool> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(Error::domain("the g-recursion check needs an even order >= 2"));
    }
    let nv = 2 * k as usize + 3;
    let x = |i: usize| MultiPoly::var(nv, i);
    let z = |j: usize| -> Result<MultiPoly> {
        (0..=j).try_fold(MultiPoly::zero(nv), |acc, i| acc.checked_add(&x(i)?))
    };
    let (y1, y2) = (x(2 * k as usize + 1)?, x(2 * k as usize + 2)?);
    let z2k = z(2 * k as usize)?;
    let z2k1 = z(2 * k as usize + 1)?;
    let z2k2 = z(2 * k as usize + 2)?;

    // g_k is needed two orders deeper because of the derivatives.
    let g = g_series(k, order + 2, nv)?;
    let g1 = g.derivative()?;
    let g2 = g1.derivative()?;
    let (g, g1) = (g.truncate(order)?, g1.truncate(order)?);

    let elem = |kind| TruncatedSeries::elementary(kind, order, nv);
    // z_{2k} y2 enters as a constant series.
    let constant = TruncatedSeries::from_coeffs(order, nv, vec![z2k.checked_mul(&y2)?])?;
    let first = elem(SeriesKind::SinhSquared)?
        .scale_poly(&z2k.checked_mul(&z2k2)?)?
        .add(&constant)?;
    let second = elem(SeriesKind::SinhCosh)?.scale_poly(&z2k1.checked_mul(&y1.checked_add(&y2)?)?)?;
    let third = elem(SeriesKind::CoshSquared)?.scale_poly(&y1.checked_mul(&y2)?)?;

    let rhs = g.mul(&first)?.add(&g1.mul(&second)?)?.add(&g2.mul(&third)?)?;
    let lhs = g_series(k + 1, order, nv)?;
    Ok(lhs == rhs)
}
