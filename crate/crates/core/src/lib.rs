//! Exact computation of tree polynomials and of the conversion coefficients
//! between dual Kontsevich cycles and adjusted Miller–Morita–Mumford classes.
//!
//! The crate is organised bottom-up:
//!
//! * [`rational`], [`numbers`], [`partition`], [`poly`], [`series`]: exact
//!   arithmetic foundations.
//! * [`enumerate`]: brute-force enumeration oracles (increasing trees, cyclic
//!   shuffles, sign-sum tables, counting identities).
//! * [`treepoly`]: the production recursion for the reduced tree polynomial
//!   and every closed form derived from it.
//! * [`coeff`]: the coefficient pipeline (`b`, `a`, cup products, the
//!   zero-padded degenerate extension).

pub mod coeff;
pub mod enumerate;
mod error;
pub mod numbers;
pub mod partition;
pub mod poly;
pub mod rational;
pub mod series;
pub mod treepoly;

pub use error::{Error, Result};
pub use partition::{compositions, partitions_of, PaddedPartition, Partition};
pub use poly::MultiPoly;
pub use rational::Rational;
pub use series::{SeriesKind, TruncatedSeries};
