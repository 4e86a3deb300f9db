//! Exhaustive enumeration oracles.
//!
//! Everything here is deliberately naive: each routine walks the full
//! combinatorial family and evaluates the defining statistic directly. The
//! production recursions in [`crate::treepoly`] and [`crate::coeff`] are
//! checked against these.
//!
//! Sign conventions for cyclic shuffles: the sign of a word is the parity of
//! its inversions with respect to the canonical letter order (kind first,
//! then index within the kind), and the sign of a selection of one letter per
//! kind is the parity of the inversions among the positions of the selected
//! letters, listed in kind order. With these conventions `x0 · T̃_k` agrees
//! with the shuffle sum on every odd tuple tested, the `T_1` closed form
//! holds, and the sum of the coefficients of `T̃_k` is `(2k)!`.

mod counting;
mod shuffles;
mod signsum;
mod trees;

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

pub use counting::{counting_lemma_bruteforce, counting_lemma_closed, even_cycle_histogram};
pub use shuffles::{
    cyclic_shuffle_count, enumerate_cyclic_shuffles, oriented_sign_sum, tree_poly_bruteforce,
    CyclicShuffle, CyclicShuffles, Letter,
};
pub use signsum::{shuffle_sign_sum_bruteforce, SignSumVariant};
pub use trees::{
    enumerate_increasing_trees, reduced_tree_poly_bruteforce, tree_monomial, IncreasingTree,
    IncreasingTrees,
};

/// Upper bounds on the size of brute-force enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest `k` for increasing trees on `2k+1` vertices.
    pub trees: u32,
    /// Largest total number of letters in a cyclic shuffle.
    pub letters: u32,
    /// Largest `n + m` for the ordinary shuffle sign sums.
    pub shuffle: u32,
    /// Largest `n^s` for the counting identity.
    pub counting: u64,
    /// Largest `2k` for the even-cycle histogram.
    pub cycles: u32,
    /// Largest `k` for the tree-polynomial recursion.
    pub poly: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            trees: 5,
            letters: 11,
            shuffle: 12,
            counting: 10_000_000,
            cycles: 10,
            poly: 6,
        }
    }
}

/// The smallest admissible values; the documented examples all fit.
pub const CAP_FLOORS: Caps = Caps {
    trees: 2,
    letters: 5,
    shuffle: 4,
    counting: 1_000,
    cycles: 4,
    poly: 2,
};

impl Caps {
    /// Rejects values below [`CAP_FLOORS`].
    pub fn validate(&self) -> Result<()> {
        let f = CAP_FLOORS;
        let low = [
            ("trees", self.trees as u64, f.trees as u64),
            ("letters", self.letters as u64, f.letters as u64),
            ("shuffle", self.shuffle as u64, f.shuffle as u64),
            ("counting", self.counting, f.counting),
            ("cycles", self.cycles as u64, f.cycles as u64),
            ("poly", self.poly as u64, f.poly as u64),
        ];
        for (name, v, floor) in low {
            if v < floor {
                return Err(Error::domain(format!("cap {name}={v} is below the minimum {floor}")));
            }
        }
        Ok(())
    }

    /// Fails with [`Error::CapExceeded`] when `requested > cap`.
    pub fn check(
        what: &'static str,
        requested: u64,
        cap: u64,
        flag: &'static str,
    ) -> Result<()> {
        if requested > cap {
            return Err(Error::CapExceeded {
                what,
                requested,
                cap,
                flag,
            });
        }
        Ok(())
    }
}

/// Parses `"trees=6,letters=13"`; unspecified caps keep their defaults.
impl FromStr for Caps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut caps = Caps::default();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in caps, got {item:?}")))?;
            let parse = |v: &str| {
                v.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("invalid cap value {v:?}")))
            };
            let v = parse(value)?;
            let small = || {
                u32::try_from(v).map_err(|_| Error::Parse(format!("cap value {v} too large")))
            };
            match key.trim() {
                "trees" => caps.trees = small()?,
                "letters" => caps.letters = small()?,
                "shuffle" => caps.shuffle = small()?,
                "counting" => caps.counting = v,
                "cycles" => caps.cycles = small()?,
                "poly" => caps.poly = small()?,
                other => return Err(Error::Parse(format!("unknown cap {other:?}"))),
            }
        }
        caps.validate()?;
        Ok(caps)
    }
}

impl fmt::Display for Caps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trees={},letters={},shuffle={},counting={},cycles={},poly={}",
            self.trees, self.letters, self.shuffle, self.counting, self.cycles, self.poly
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_parse() {
        let c: Caps = "trees=6, letters=13".parse().unwrap();
        assert_eq!(c.trees, 6);
        assert_eq!(c.letters, 13);
        assert_eq!(c.shuffle, Caps::default().shuffle);
        assert_eq!(c.to_string().parse::<Caps>().unwrap(), c);
        assert!("trees=1".parse::<Caps>().is_err());
        assert!("bogus=3".parse::<Caps>().is_err());
        assert!("trees".parse::<Caps>().is_err());
        assert_eq!("".parse::<Caps>().unwrap(), Caps::default());
    }
}
