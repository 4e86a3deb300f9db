//! Coefficients for partitions padded with zero parts.

use num_bigint::BigInt;

use crate::numbers::{binomial, factorial, stirling_first_signed, stirling_second};
use crate::partition::{partitions_of, PaddedPartition, Partition};
use crate::rational::Rational;
use crate::{Error, Result};

use super::matrix::RationalMatrix;
use super::table::CoeffTable;

fn weights_match(lambda: &Partition, mu: &Partition) -> Result<()> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch {
            lambda: lambda.weight(),
            mu: mu.weight(),
        });
    }
    Ok(())
}

/// `b_{λ0^p}^{μ0^q} = Σ_{m=0}^{p-q} C(p,m) q! S₂(p-m,q) (2n+r)^m / (-2)^p · b_λ^μ`,
/// with `n = |λ|` and `r` the number of parts of `μ`. Zero when `p < q`.
pub fn degenerate_b(table: &CoeffTable, lambda: &Partition, p: u32, mu: &Partition, q: u32) -> Result<Rational> {
    weights_match(lambda, mu)?;
    if p < q {
        return Ok(Rational::zero());
    }
    let b = table.b(lambda, mu)?;
    if b.is_zero() {
        return Ok(b);
    }
    let base = BigInt::from(2 * lambda.weight() + mu.len() as u32);
    let mut sum = BigInt::from(0);
    for m in 0..=p - q {
        sum += binomial(p as i64, m as i64) * factorial(q) * stirling_second(p - m, q) * base.pow(m);
    }
    Ok(Rational::new(sum, BigInt::from(-2).pow(p))? * b)
}

/// `a_{λ0^m}^{μ0^i} = (1/m!) Σ_{j=i}^{m} S₁(m,j) C(j,i) (-2n-r)^{j-i} (-2)^i · a_λ^μ`,
/// with `n = |λ|` and `r` the number of parts of `λ`.
pub fn degenerate_a(table: &CoeffTable, lambda: &Partition, m: u32, mu: &Partition, i: u32) -> Result<Rational> {
    weights_match(lambda, mu)?;
    if i > m {
        return Err(Error::domain(format!("zero count i = {i} exceeds m = {m}")));
    }
    let a = table.a(lambda, mu)?;
    if a.is_zero() {
        return Ok(a);
    }
    let base = -BigInt::from(2 * lambda.weight() + lambda.len() as u32);
    let mut sum = BigInt::from(0);
    for j in i..=m {
        sum += stirling_first_signed(m, j)? * binomial(j as i64, i as i64) * base.pow(j - i);
    }
    sum *= BigInt::from(-2).pow(i);
    Ok(Rational::new(sum, factorial(m))? * a)
}

/// The padded partitions of `weight` with at most `max_zeros` zeros. An empty
/// base needs at least one zero.
pub fn padded_index(weight: u32, max_zeros: u32) -> Vec<PaddedPartition> {
    let bases = if weight == 0 {
        vec![Partition::empty()]
    } else {
        partitions_of(weight, None)
    };
    let mut out = Vec::new();
    for z in 0..=max_zeros {
        for base in &bases {
            if let Ok(p) = PaddedPartition::new(base.clone(), z) {
                out.push(p);
            }
        }
    }
    out
}

/// The padded `b` and `a` matrices over [`padded_index`].
pub fn degenerate_matrices(
    table: &CoeffTable,
    weight: u32,
    max_zeros: u32,
) -> Result<(Vec<PaddedPartition>, RationalMatrix, RationalMatrix)> {
    let index = padded_index(weight, max_zeros);
    let n = index.len();
    let mut b = RationalMatrix::zeros(n, n);
    let mut a = RationalMatrix::zeros(n, n);
    for (r, row) in index.iter().enumerate() {
        for (c, col) in index.iter().enumerate() {
            b.set(r, c, degenerate_b(table, row.base(), row.zeros(), col.base(), col.zeros())?);
            if col.zeros() <= row.zeros() {
                a.set(r, c, degenerate_a(table, row.base(), row.zeros(), col.base(), col.zeros())?);
            }
        }
    }
    Ok((index, b, a))
}
