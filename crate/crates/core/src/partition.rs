//! Integer partitions, zero-padded partitions and compositions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numbers::factorial;
use crate::{Error, Result};

/// A weakly decreasing list of positive integers.
///
/// The total order is by weight, then number of parts, then parts
/// lexicographically descending, so partitions of a fixed weight sort as
/// `(3) < (2,1) < (1,1,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// Builds from an arbitrary tuple, dropping zeros.
    pub fn from_nonzero(values: &[u32]) -> Self {
        let mut parts: Vec<u32> = values.iter().copied().filter(|&v| v > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn single(n: u32) -> Result<Self> {
        Partition::new(vec![n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.parts.last().copied()
    }

    /// Multiset union.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Removes one copy of `part`, or returns `None` if it is absent.
    pub fn without(&self, part: u32) -> Option<Partition> {
        let i = self.parts.iter().position(|&p| p == part)?;
        let mut parts = self.parts.clone();
        parts.remove(i);
        Some(Partition { parts })
    }

    /// Distinct part values in decreasing order.
    pub fn distinct(&self) -> Vec<u32> {
        let mut d = self.parts.clone();
        d.dedup();
        d
    }

    /// `(value, multiplicity)` pairs in decreasing value order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Product of the factorials of the multiplicities.
    pub fn sym_count(&self) -> BigInt {
        sym_count(&self.parts)
    }

    /// Comma-joined parts, e.g. `"2,1"`; the empty partition gives `""`.
    pub fn key(&self) -> String {
        self.parts
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Product over distinct values of `(multiplicity)!`.
pub fn sym_count(values: &[u32]) -> BigInt {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let mut acc = BigInt::from(1);
    let mut run = 0u32;
    for i in 0..sorted.len() {
        run += 1;
        if i + 1 == sorted.len() || sorted[i + 1] != sorted[i] {
            acc *= factorial(run);
            run = 0;
        }
    }
    acc
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.len().cmp(&other.len()))
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `"2,1"`, `"(2,1)"`, `"[2, 1]"`, and `""` or `"()"` for the empty
/// partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']'])
            .trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|_| Error::Parse(format!("partition {s:?} has a zero part")))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A partition with `zeros` appended zero parts, written `λ0^p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PaddedPartition {
    base: Partition,
    zeros: u32,
}

impl PaddedPartition {
    /// The empty base needs at least one zero.
    pub fn new(base: Partition, zeros: u32) -> Result<Self> {
        if base.is_empty() && zeros == 0 {
            return Err(Error::domain("padded partition with empty base needs a zero part"));
        }
        Ok(PaddedPartition { base, zeros })
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn zeros(&self) -> u32 {
        self.zeros
    }

    pub fn weight(&self) -> u32 {
        self.base.weight()
    }
}

impl fmt::Display for PaddedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}0^{}", self.base, self.zeros)
    }
}

/// All partitions of `n`, optionally with at most `max_parts` parts, sorted by
/// number of parts and then lexicographically descending.
pub fn partitions_of(n: u32, max_parts: Option<usize>) -> Vec<Partition> {
    fn rec(rest: u32, max_part: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=rest.min(max_part)).rev() {
            prefix.push(p);
            rec(rest - p, p, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_parts.unwrap_or(n as usize), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Ordered tuples of `slots` nonnegative integers summing to `m`, in
/// lexicographically descending order.
pub fn compositions(m: u32, slots: usize) -> Compositions {
    assert!(slots >= 1, "compositions need at least one slot");
    let mut current = vec![0; slots];
    current[0] = m;
    Compositions {
        current: Some(current),
    }
}

#[derive(Clone, Debug)]
pub struct Compositions {
    current: Option<Vec<u32>>,
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let n = out.len();
        if let Some(i) = (0..n - 1).rev().find(|&i| out[i] > 0) {
            let mut next = out.clone();
            let tail: u32 = next[i + 1..].iter().sum();
            next[i] -= 1;
            next[i + 1] = tail + 1;
            next[i + 2..].iter_mut().for_each(|x| *x = 0);
            self.current = Some(next);
        }
        Some(out)
    }
}
