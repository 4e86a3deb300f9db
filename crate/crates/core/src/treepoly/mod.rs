//! Tree polynomials through the three-term `P_k^c` recursion.
//!
//! `P_0^{±1} = 1` and, with `z_j = x0 + ... + x_j` and `y_i = x_{2k+i}`,
//!
//! ```text
//! P_{k+1}^c = P_k^c     (2c² y1 y2 − 2 z_{2k}(z_{2k+1} − y2))
//!           + P_k^{c−2} ((c−2)² y1 y2 + (c−2) z_{2k+1}(y1 + y2) + z_{2k} z_{2k+2})
//!           + P_k^{c+2} ((c+2)² y1 y2 − (c+2) z_{2k+1}(y1 + y2) + z_{2k} z_{2k+2})
//! ```
//!
//! Then `L_k^n = 4^{-k} Σ_s (2s+1)^{2n} P_k^{2s+1}` and the reduced tree
//! polynomial is `T̃_k = L_k^0`. All of these keep `x0` as a genuine
//! variable.

mod closed;
mod gseries;
mod kernel;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::poly::MultiPoly;
use crate::rational::Rational;
use crate::{Error, Result};

pub use closed::{
    double_sum_identity, q_closed_ones, t_closed_main, t_closed_ones, xe_tables, XeEntry,
};
pub use gseries::{g_series, verify_g_recursion};

use kernel::{add_linear, add_shifted, unit, Acc, IntPoly, MAX_VARS};

/// Largest `k` whose `2k+1` variables fit the packed kernel.
pub const MAX_K: u32 = ((MAX_VARS - 1) / 2) as u32;

/// Families up to this level are kept for the life of the process.
const CACHED_LEVELS: u32 = 5;

/// The polynomials `P_k^c` for `c = 1, 3, ..., 2k+1`, in `x0..x_{2k}`.
/// `P_k^{-c} = P_k^c`, and `P_k^c = 0` for `|c| > 2k+1`.
#[derive(Clone, Debug)]
pub struct PFamily {
    k: u32,
    // polys[s] is P_k^{2s+1}.
    polys: Vec<IntPoly>,
}

impl PFamily {
    fn base() -> Self {
        PFamily {
            k: 0,
            polys: vec![IntPoly::one()],
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn num_vars(&self) -> usize {
        2 * self.k as usize + 1
    }

    /// Number of terms of `P_k^{2s+1}` for each `s`.
    pub fn term_counts(&self) -> Vec<usize> {
        self.polys.iter().map(IntPoly::len).collect()
    }

    fn get(&self, c: i64) -> Option<&IntPoly> {
        let a = c.unsigned_abs() as usize;
        if a.is_multiple_of(2) || a > 2 * self.k as usize + 1 {
            None
        } else {
            Some(&self.polys[(a - 1) / 2])
        }
    }

    /// `P_k^c` for any odd `c`.
    pub fn poly(&self, c: i64) -> Result<MultiPoly> {
        if c % 2 == 0 {
            return Err(Error::domain(format!("P_k^c needs odd c, got {c}")));
        }
        Ok(match self.get(c) {
            Some(p) => p.to_multipoly(self.num_vars(), &BigInt::one()),
            None => MultiPoly::zero(self.num_vars()),
        })
    }

    /// `4^k L_k^n = Σ_s (2s+1)^{2n} P_k^{2s+1}`, exactly.
    fn l_numerator(&self, n: u32) -> FxHashMap<u128, BigInt> {
        let mut acc: FxHashMap<u128, BigInt> = FxHashMap::default();
        for (s, p) in self.polys.iter().enumerate() {
            let w = BigInt::from(2 * s as u64 + 1).pow(2 * n);
            for &(key, c) in &p.terms {
                *acc.entry(key).or_insert_with(BigInt::zero) += &w * c;
            }
        }
        acc
    }

    /// `L_k^n` as an exact polynomial.
    pub fn l_poly(&self, n: u32) -> MultiPoly {
        let denom = BigInt::from(4).pow(self.k);
        let nv = self.num_vars();
        MultiPoly::from_terms(
            nv,
            self.l_numerator(n).into_iter().map(|(key, c)| {
                (
                    kernel::unpack(key, nv),
                    Rational::new(c, denom.clone()).expect("nonzero"),
                )
            }),
        )
        .expect("consistent arity")
    }

    /// Applies the recursion once, handing each `P_{k+1}^{2s+1}` to `sink`.
    fn step(&self, mut sink: impl FnMut(usize, IntPoly) -> Result<()>) -> Result<()> {
        let k = self.k as usize;
        if 2 * k + 3 > MAX_VARS {
            return Err(Error::domain(format!("k = {} exceeds the supported maximum {MAX_K}", k + 1)));
        }
        let (y1, y2) = (2 * k + 1, 2 * k + 2);
        let z = |j: usize, scale: i128| (0..=j).map(|i| (i, scale)).collect::<Vec<_>>();
        let z2k = z(2 * k, 1);
        let z2k1 = z(2 * k + 1, 1);
        let z2k2 = z(2 * k + 2, 1);
        // -2 (z_{2k+1} - y2)
        let mut a_form = z(2 * k + 1, -2);
        a_form.push((y2, 2));
        let y_sum = [(y1, 1), (y2, 1)];
        let y1y2 = unit(y1) + unit(y2);
        let empty: Vec<(u128, i128)> = Vec::new();
        for s in 0..=k + 1 {
            let c = 2 * s as i64 + 1;
            let at = |d: i64| self.get(d).map(|p| &p.terms).unwrap_or(&empty);
            let (pc, pm, pp) = (at(c), at(c - 2), at(c + 2));
            let mut acc = Acc::default();
            // y1 y2 (2c² P^c + (c−2)² P^{c−2} + (c+2)² P^{c+2})
            for (p, w) in [(pc, 2 * c * c), (pm, (c - 2) * (c - 2)), (pp, (c + 2) * (c + 2))] {
                add_shifted(&mut acc, p, y1y2, w as i128)?;
            }
            // z_{2k+1} (y1 + y2) ((c−2) P^{c−2} − (c+2) P^{c+2})
            let mut inner = Acc::default();
            add_shifted(&mut inner, pm, 0, (c - 2) as i128)?;
            add_shifted(&mut inner, pp, 0, -(c + 2) as i128)?;
            let mut tmp = Acc::default();
            add_linear(&mut tmp, inner.iter(), &y_sum)?;
            add_linear(&mut acc, tmp.iter(), &z2k1)?;
            // z_{2k} (−2 (z_{2k+1} − y2) P^c + z_{2k+2} (P^{c−2} + P^{c+2}))
            let mut inner = Acc::default();
            add_linear(&mut inner, pc.iter().map(|(k, c)| (k, c)), &a_form)?;
            add_linear(&mut inner, pm.iter().map(|(k, c)| (k, c)), &z2k2)?;
            add_linear(&mut inner, pp.iter().map(|(k, c)| (k, c)), &z2k2)?;
            add_linear(&mut acc, inner.iter(), &z2k)?;
            sink(s, IntPoly::from_acc(acc))?;
        }
        Ok(())
    }

    fn next(&self) -> Result<PFamily> {
        let mut polys = Vec::with_capacity(self.k as usize + 2);
        self.step(|_, p| {
            polys.push(p);
            Ok(())
        })?;
        Ok(PFamily {
            k: self.k + 1,
            polys,
        })
    }
}

fn family_cache() -> &'static Mutex<Vec<Arc<PFamily>>> {
    static CACHE: OnceLock<Mutex<Vec<Arc<PFamily>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Arc::new(PFamily::base())]))
}

fn check_k(k: u32) -> Result<()> {
    if k > MAX_K {
        return Err(Error::domain(format!("k = {k} exceeds the supported maximum {MAX_K}")));
    }
    Ok(())
}

/// `P_k^c` for all `c`, by iterating the recursion from `P_0`.
pub fn p_family(k: u32) -> Result<Arc<PFamily>> {
    check_k(k)?;
    let mut cache = family_cache().lock().expect("family cache poisoned");
    while cache.len() as u32 <= k.min(CACHED_LEVELS) {
        let next = cache.last().expect("base level").next()?;
        cache.push(Arc::new(next));
    }
    if k <= CACHED_LEVELS {
        return Ok(cache[k as usize].clone());
    }
    let mut fam = cache.last().expect("base level").clone();
    drop(cache);
    while fam.k < k {
        fam = Arc::new(fam.next()?);
    }
    Ok(fam)
}

/// `T̃_k(x0, ..., x_{2k}) = Σ_T x^T`, with nonnegative integer coefficients.
pub fn reduced_tree_poly(k: u32) -> Result<Arc<MultiPoly>> {
    check_k(k)?;
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<MultiPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("poisoned").get(&k) {
        return Ok(p.clone());
    }
    let poly = if k == 0 {
        MultiPoly::one(1)
    } else if k <= CACHED_LEVELS {
        p_family(k)?.l_poly(0)
    } else {
        // Sum P_k^c level by level without holding the whole family.
        let prev = p_family(k - 1)?;
        let mut sum = Acc::default();
        prev.step(|_, p| add_shifted(&mut sum, &p.terms, 0, 1))?;
        IntPoly::from_acc(sum).to_multipoly(2 * k as usize + 1, &BigInt::from(4).pow(k))
    };
    let poly = Arc::new(poly);
    cache.lock().expect("poisoned").insert(k, poly.clone());
    Ok(poly)
}

/// `T_k = x0 · T̃_k`.
pub fn tree_poly(k: u32) -> Result<MultiPoly> {
    let t = reduced_tree_poly(k)?;
    let x0 = MultiPoly::var(t.num_vars(), 0)?;
    x0.checked_mul(&t)
}

/// `L_k^n = 4^{-k} Σ_s (2s+1)^{2n} P_k^{2s+1}`.
pub fn l_poly(k: u32, n: u32) -> Result<MultiPoly> {
    Ok(p_family(k)?.l_poly(n))
}

/// A tuple `(n0, ..., n_{2k})` of positive odd integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OddTuple {
    values: Vec<u32>,
}

impl OddTuple {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if values.len().is_multiple_of(2) {
            return Err(Error::domain("an odd tuple needs odd length 2k+1"));
        }
        if values.iter().any(|v| v % 2 == 0) {
            return Err(Error::domain("odd tuple entries must be positive odd integers"));
        }
        Ok(OddTuple { values })
    }

    pub fn k(&self) -> u32 {
        (self.values.len() / 2) as u32
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }
}

/// `T̃_k` evaluated at the tuple.
pub fn reduced_tree_value(t: &OddTuple) -> Result<BigInt> {
    let p = reduced_tree_poly(t.k())?;
    let point: Vec<i64> = t.values.iter().map(|&v| v as i64).collect();
    let v = p.eval_integers(&point)?;
    v.to_integer()
        .ok_or_else(|| Error::domain("reduced tree polynomial has a non-integral value"))
}

/// `Q_k(t) = T̃_k(t) / (z1 z2 ... z_{2k-1})` with `z_j = t0 + ... + t_j`.
pub fn q_eval(t: &OddTuple) -> Result<Rational> {
    let numer = reduced_tree_value(t)?;
    let mut denom = BigInt::one();
    let mut z = t.values[0] as u64;
    for j in 1..2 * t.k() as usize {
        z += t.values[j] as u64;
        denom *= z;
    }
    Rational::new(numer, denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i).unwrap()
    }

    #[test]
    fn level_one_family() {
        let fam = p_family(1).unwrap();
        let zero = MultiPoly::zero(3);
        let p3 = fam.poly(3).unwrap().substitute(0, &zero).unwrap();
        let p1 = fam.poly(1).unwrap().substitute(0, &zero).unwrap();
        assert_eq!(p3.to_text(), "x1^2 + 2*x1*x2");
        assert_eq!(p1.to_text(), "-x1^2 + 2*x1*x2");
        assert_eq!(fam.poly(-3).unwrap(), fam.poly(3).unwrap());
        assert!(fam.poly(5).unwrap().is_zero());
        assert!(fam.poly(2).is_err());
        assert_eq!(p_family(0).unwrap().poly(1).unwrap(), MultiPoly::one(1));
    }

    #[test]
    fn top_of_level_two() {
        // P_2^5 = P_1^3 (z2 + 3 x3)(z3 + 4 x4) at x0 = 0.
        let n = 5;
        let zero = MultiPoly::zero(n);
        let p15 = p_family(2).unwrap().poly(5).unwrap().substitute(0, &zero).unwrap();
        let p13 = p_family(1)
            .unwrap()
            .poly(3)
            .unwrap()
            .extend_vars(n)
            .unwrap()
            .substitute(0, &zero)
            .unwrap();
        let lin = |coeffs: &[i64]| {
            coeffs.iter().enumerate().fold(MultiPoly::zero(n), |acc, (i, &c)| {
                acc.checked_add(&x(n, i).scale(&Rational::from(c))).unwrap()
            })
        };
        let expected = p13
            .checked_mul(&lin(&[0, 1, 1, 3, 0]))
            .unwrap()
            .checked_mul(&lin(&[0, 1, 1, 1, 4]))
            .unwrap();
        assert_eq!(p15, expected);
    }

    #[test]
    fn small_reduced_polys() {
        let t1 = reduced_tree_poly(1).unwrap();
        let expected = x(3, 0).checked_add(&x(3, 1)).unwrap().checked_mul(&x(3, 2)).unwrap();
        assert_eq!(*t1, expected);
        assert_eq!(tree_poly(0).unwrap(), x(1, 0));
        let t2 = reduced_tree_poly(2).unwrap();
        let reduced = t2.substitute(0, &MultiPoly::zero(5)).unwrap();
        assert_eq!(
            reduced.to_text(),
            "x1^2*x2*x4 + 2*x1^2*x3*x4 + x1*x2^2*x4 + 5*x1*x2*x3*x4"
        );
        let t3 = reduced_tree_poly(3).unwrap();
        assert_eq!(t3.coefficient(&[0, 1, 1, 1, 1, 1, 1]), Rational::from(61));
    }

    #[test]
    fn l_polys() {
        assert_eq!(l_poly(0, 3).unwrap(), MultiPoly::one(1));
        // L_1^n = (9^n/4)(x0+x1)(2x2+x0+x1) + (1/4)(x0+x1)(2x2−x0−x1)
        for n in 0..4 {
            let s = x(3, 0).checked_add(&x(3, 1)).unwrap();
            let two_x2 = x(3, 2).scale(&Rational::from(2));
            let a = s.checked_mul(&two_x2.checked_add(&s).unwrap()).unwrap();
            let b = s.checked_mul(&two_x2.checked_sub(&s).unwrap()).unwrap();
            let w = Rational::new(BigInt::from(9).pow(n), 4).unwrap();
            let expected = a.scale(&w).checked_add(&b.scale(&ratio(1, 4))).unwrap();
            assert_eq!(l_poly(1, n).unwrap(), expected);
        }
        assert_eq!(l_poly(2, 1).unwrap().eval_integers(&[1; 5]).unwrap(), Rational::from(600));
    }

    #[test]
    fn q_values() {
        let q = |v: Vec<u32>| q_eval(&OddTuple::new(v).unwrap()).unwrap();
        assert_eq!(q(vec![3, 1, 1, 1, 1]), ratio(3, 5));
        assert_eq!(q(vec![7]), Rational::one());
        for (a, b, c) in [(1, 1, 1), (3, 5, 7), (9, 1, 3)] {
            assert_eq!(q(vec![a, b, c]), Rational::from(c));
        }
        assert!(OddTuple::new(vec![1, 2, 1]).is_err());
        assert!(OddTuple::new(vec![1, 1]).is_err());
    }

    #[test]
    fn k_limit() {
        assert!(p_family(MAX_K + 1).is_err());
        assert!(reduced_tree_poly(MAX_K + 1).is_err());
    }
}
