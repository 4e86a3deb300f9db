use std::fmt;

use crate::{Error, Result};

use super::Caps;

/// Letter number `index` (1-based) of kind `kind`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub kind: u32,
    pub index: u32,
}

/// A word built by inserting each kind as one contiguous block after some
/// letter of the word formed so far. Kind 0 is the initial word and always
/// starts it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicShuffle {
    word: Vec<Letter>,
    kinds: Vec<u32>,
}

impl CyclicShuffle {
    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn kinds(&self) -> &[u32] {
        &self.kinds
    }
}

/// Letters as `a1 a2 b1 ...` with kinds named `a`, `b`, `c`, ...
impl fmt::Display for CyclicShuffle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.word {
            let name = char::from_u32('a' as u32 + l.kind).filter(|_| l.kind < 26);
            match name {
                Some(c) => write!(f, "{c}{}", l.index)?,
                None => write!(f, "[{}:{}]", l.kind, l.index)?,
            }
        }
        Ok(())
    }
}

/// `n0 (n0+n1) ... (n0+...+n_{last-1})`.
pub fn cyclic_shuffle_count(kinds: &[u32]) -> u64 {
    let mut acc = 1u64;
    let mut len = 0u64;
    for (i, &n) in kinds.iter().enumerate() {
        if i > 0 {
            acc *= len;
        }
        len += n as u64;
    }
    acc
}

fn validate(kinds: &[u32], caps: &Caps) -> Result<()> {
    if kinds.is_empty() || kinds.contains(&0) {
        return Err(Error::domain("shuffle kinds must be a nonempty tuple of positive sizes"));
    }
    let letters: u64 = kinds.iter().map(|&n| n as u64).sum();
    Caps::check("letters", letters, caps.letters as u64, "--cap-letters")
}

pub fn enumerate_cyclic_shuffles(kinds: &[u32], caps: &Caps) -> Result<CyclicShuffles> {
    validate(kinds, caps)?;
    // Kind j >= 1 goes after slot s_j in 1..=len_j, the length of the word
    // formed by the earlier kinds.
    let mut limits = Vec::with_capacity(kinds.len().saturating_sub(1));
    let mut len = kinds[0];
    for &n in &kinds[1..] {
        limits.push(len);
        len += n;
    }
    Ok(CyclicShuffles {
        kinds: kinds.to_vec(),
        slots: Some(vec![1; limits.len()]),
        limits,
    })
}

#[derive(Clone, Debug)]
pub struct CyclicShuffles {
    kinds: Vec<u32>,
    limits: Vec<u32>,
    slots: Option<Vec<u32>>,
}

impl CyclicShuffles {
    fn build(&self, slots: &[u32]) -> CyclicShuffle {
        let letters = |kind: usize| {
            (1..=self.kinds[kind]).map(move |index| Letter {
                kind: kind as u32,
                index,
            })
        };
        let mut word: Vec<Letter> = letters(0).collect();
        for (j, &s) in slots.iter().enumerate() {
            let at = s as usize;
            word.splice(at..at, letters(j + 1));
        }
        CyclicShuffle {
            word,
            kinds: self.kinds.clone(),
        }
    }
}

impl Iterator for CyclicShuffles {
    type Item = CyclicShuffle;

    fn next(&mut self) -> Option<CyclicShuffle> {
        let slots = self.slots.take()?;
        let out = self.build(&slots);
        let mut succ = slots;
        let mut i = succ.len();
        while i > 0 {
            i -= 1;
            if succ[i] < self.limits[i] {
                succ[i] += 1;
                self.slots = Some(succ);
                break;
            }
            succ[i] = 1;
        }
        Some(out)
    }
}

fn inversion_parity<T: Ord>(seq: &[T]) -> i64 {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Word sign times the sum over all one-letter-per-kind selections of the
/// selection sign.
pub fn oriented_sign_sum(s: &CyclicShuffle) -> i64 {
    let word_sign = inversion_parity(&s.word);
    let mut position = vec![Vec::new(); s.kinds.len()];
    for (i, n) in s.kinds.iter().enumerate() {
        position[i] = vec![0usize; *n as usize];
    }
    for (pos, l) in s.word.iter().enumerate() {
        position[l.kind as usize][l.index as usize - 1] = pos;
    }
    // Odometer over selections.
    let mut choice = vec![0usize; s.kinds.len()];
    let mut selected = vec![0usize; s.kinds.len()];
    let mut total = 0i64;
    loop {
        for (kind, &c) in choice.iter().enumerate() {
            selected[kind] = position[kind][c];
        }
        total += inversion_parity(&selected);
        let mut i = choice.len();
        loop {
            if i == 0 {
                return word_sign * total;
            }
            i -= 1;
            if choice[i] + 1 < s.kinds[i] as usize {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
        }
    }
}

/// `T_k(n0, ..., n_{2k})` as the sum of oriented sign sums over all cyclic
/// shuffles. Every size must be odd and the tuple length odd.
pub fn tree_poly_bruteforce(kinds: &[u32], caps: &Caps) -> Result<i64> {
    if kinds.len().is_multiple_of(2) || kinds.iter().any(|n| n % 2 == 0) {
        return Err(Error::domain(
            "tree polynomial arguments must be an odd-length tuple of odd sizes",
        ));
    }
    Ok(enumerate_cyclic_shuffles(kinds, caps)?
        .map(|s| oriented_sign_sum(&s))
        .sum())
}
