//! Conversion coefficients between the dual Kontsevich cycles `[W_λ^*]` and
//! the adjusted classes `κ̃_μ`:
//!
//! `[W_λ^*] = Σ_μ a_λ^μ κ̃_μ`, `κ̃_μ = Σ_λ b_μ^λ [W_λ^*]`.
//!
//! `b_λ^{|λ|}` comes from a recursion over the tree polynomial, `b_λ^μ` from
//! the sum-of-products rule, and `a` by inverting `b` weight by weight.
//!
//! The free functions below read from a shared, lazily extended
//! [`CoeffTable`]; use the table directly to control its lifetime.

mod closed;
mod degenerate;
mod export;
mod matrix;
mod table;

use std::collections::BTreeMap;

pub use closed::{a_single, b_single, closed_a_pair, closed_b_pair, closed_witten_pair, h_sequence, r_term, s_term};
pub use degenerate::{degenerate_a, degenerate_b, degenerate_matrices, padded_index};
pub use export::{CupDocument, TableDocument, TABLE_VERSION};
pub use matrix::RationalMatrix;
pub use table::{shared_table, CoeffTable, Level};

pub use crate::partition::sym_count;
use crate::partition::Partition;
use crate::rational::Rational;
use crate::{Error, Result};

/// `b_λ^{|λ|}`.
pub fn b_lambda_n(lambda: &Partition) -> Result<Rational> {
    if lambda.is_empty() {
        return Err(Error::domain("b_lambda_n needs a nonempty partition"));
    }
    shared_table(lambda.weight())?.b_lambda_n(lambda)
}

/// `b_λ^μ`.
pub fn b_lambda_mu(lambda: &Partition, mu: &Partition) -> Result<Rational> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch {
            lambda: lambda.weight(),
            mu: mu.weight(),
        });
    }
    shared_table(lambda.weight())?.b(lambda, mu)
}

/// `a_λ^μ`.
pub fn a_lambda_mu(lambda: &Partition, mu: &Partition) -> Result<Rational> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch {
            lambda: lambda.weight(),
            mu: mu.weight(),
        });
    }
    shared_table(lambda.weight())?.a(lambda, mu)
}

/// The partitions of `n` in matrix order with the `b` matrix over them.
pub fn b_matrix(n: u32) -> Result<(Vec<Partition>, RationalMatrix)> {
    let t = shared_table(n)?;
    let level = t.level(n)?;
    Ok((level.order().to_vec(), level.b_matrix().clone()))
}

/// The partitions of `n` in matrix order with the `a` matrix over them.
pub fn a_matrix(n: u32) -> Result<(Vec<Partition>, RationalMatrix)> {
    let t = shared_table(n)?;
    let level = t.level(n)?;
    Ok((level.order().to_vec(), level.a_matrix().clone()))
}

pub fn witten_expansion(lambda: &Partition) -> Result<BTreeMap<Partition, Rational>> {
    shared_table(lambda.weight())?.witten_expansion(lambda)
}

pub fn cup_coeff(lambda: &Partition, mu: &Partition) -> Result<BTreeMap<Partition, Rational>> {
    shared_table(lambda.weight() + mu.weight())?.cup_coeff(lambda, mu)
}
