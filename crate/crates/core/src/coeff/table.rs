use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::partition::{compositions, partitions_of, Partition};
use crate::rational::Rational;
use crate::{Error, Result};

use super::closed::{b_single, r_term, recursion_denominator};
use super::matrix::RationalMatrix;

/// The `b` and `a` matrices over the partitions of one weight.
///
/// Rows and columns follow [`partitions_of`] order, so `b` is lower
/// triangular: `b_λ^μ` vanishes when `μ` has more parts than `λ`.
#[derive(Clone, Debug)]
pub struct Level {
    weight: u32,
    order: Vec<Partition>,
    index: HashMap<Partition, usize>,
    b: RationalMatrix,
    a: RationalMatrix,
}

impl Level {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn order(&self) -> &[Partition] {
        &self.order
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `B[λ][μ] = b_λ^μ`.
    pub fn b_matrix(&self) -> &RationalMatrix {
        &self.b
    }

    /// `A[λ][μ] = a_λ^μ`, the inverse of `B`.
    pub fn a_matrix(&self) -> &RationalMatrix {
        &self.a
    }

    fn entry(&self, m: &RationalMatrix, lambda: &Partition, mu: &Partition) -> Result<Rational> {
        let missing = || Error::MissingEntry {
            lambda: lambda.clone(),
            mu: mu.clone(),
        };
        let i = self.index_of(lambda).ok_or_else(missing)?;
        let j = self.index_of(mu).ok_or_else(missing)?;
        Ok(m.get(i, j).clone())
    }
}

/// Coefficients `b_λ^μ` and `a_λ^μ` for every weight up to the scope.
///
/// Weights are filled in increasing order, and within a weight by number of
/// parts, so every prerequisite of the recursion exists when it is read.
#[derive(Clone, Debug)]
pub struct CoeffTable {
    levels: Vec<Level>,
    b_n: HashMap<Partition, Rational>,
}

impl Default for CoeffTable {
    fn default() -> Self {
        Self::new()
    }
}

impl CoeffTable {
    /// A table holding only weight 0, where `b_∅^∅ = a_∅^∅ = 1`.
    pub fn new() -> Self {
        let empty = Partition::empty();
        let level = Level {
            weight: 0,
            order: vec![empty.clone()],
            index: HashMap::from([(empty.clone(), 0)]),
            b: RationalMatrix::identity(1),
            a: RationalMatrix::identity(1),
        };
        CoeffTable {
            levels: vec![level],
            b_n: HashMap::from([(empty, Rational::one())]),
        }
    }

    pub fn with_scope(scope: u32) -> Result<Self> {
        let mut t = Self::new();
        t.extend_to(scope)?;
        Ok(t)
    }

    pub fn scope(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    pub fn extend_to(&mut self, scope: u32) -> Result<()> {
        for w in self.scope() + 1..=scope {
            self.build_level(w)?;
        }
        Ok(())
    }

    fn build_level(&mut self, w: u32) -> Result<()> {
        let order = partitions_of(w, None);
        for lambda in &order {
            let v = if lambda.len() == 1 {
                b_single(w)?
            } else {
                let k = lambda.smallest().expect("nonempty");
                self.b_extend(&lambda.without(k).expect("k is a part"), k)?
            };
            self.b_n.insert(lambda.clone(), v);
        }
        let n = order.len();
        let mut b = RationalMatrix::zeros(n, n);
        for (i, lambda) in order.iter().enumerate() {
            for (j, mu) in order.iter().enumerate().take(i + 1) {
                b.set(i, j, self.sum_of_products(lambda, mu)?);
            }
        }
        let a = b.inverse()?;
        let index = order.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        self.levels.push(Level {
            weight: w,
            order,
            index,
            b,
            a,
        });
        Ok(())
    }

    fn require(&self, needed: u32) -> Result<()> {
        if needed > self.scope() {
            return Err(Error::InsufficientScope {
                needed,
                have: self.scope(),
            });
        }
        Ok(())
    }

    pub fn level(&self, weight: u32) -> Result<&Level> {
        self.require(weight)?;
        Ok(&self.levels[weight as usize])
    }

    fn stored_b_n(&self, lambda: &Partition) -> Result<&Rational> {
        self.b_n.get(lambda).ok_or_else(|| Error::MissingEntry {
            lambda: lambda.clone(),
            mu: Partition::from_nonzero(&[lambda.weight()]),
        })
    }

    /// The sum over surjections `f` from the parts of `λ` onto the parts of
    /// `μ` with matching fibre sums of `Π_j b_{f^{-1}(j)}^{μ_j}`.
    fn sum_of_products(&self, lambda: &Partition, mu: &Partition) -> Result<Rational> {
        if lambda.weight() != mu.weight() {
            return Err(Error::WeightMismatch {
                lambda: lambda.weight(),
                mu: mu.weight(),
            });
        }
        if lambda.is_empty() {
            return Ok(Rational::one());
        }
        if mu.len() > lambda.len() {
            return Ok(Rational::zero());
        }
        let parts = lambda.parts();
        let mut remaining = mu.parts().to_vec();
        let mut groups: Vec<Vec<u32>> = vec![Vec::new(); mu.len()];
        let mut total = Rational::zero();
        self.surjections(parts, 0, &mut remaining, &mut groups, &mut total)?;
        Ok(total)
    }

    fn surjections(
        &self,
        parts: &[u32],
        i: usize,
        remaining: &mut [u32],
        groups: &mut [Vec<u32>],
        total: &mut Rational,
    ) -> Result<()> {
        if i == parts.len() {
            // All fibre sums are exact, so every fibre is nonempty.
            if remaining.iter().all(|&r| r == 0) {
                let mut prod = Rational::one();
                for g in groups.iter() {
                    prod *= self.stored_b_n(&Partition::from_nonzero(g))?;
                }
                *total += prod;
            }
            return Ok(());
        }
        for j in 0..remaining.len() {
            if parts[i] <= remaining[j] {
                remaining[j] -= parts[i];
                groups[j].push(parts[i]);
                self.surjections(parts, i + 1, remaining, groups, total)?;
                groups[j].pop();
                remaining[j] += parts[i];
            }
        }
        Ok(())
    }

    /// `b_{λ∪{k}}^{m+k}` for `λ` a partition of `m`: the sum over ordered
    /// `(m_0, ..., m_{2k})` summing to `m` of `b_λ^{μ(m)} R_k(m)`, divided by
    /// `(-2)^{k+1} (2k-1)!!`.
    pub fn b_extend(&self, lambda: &Partition, k: u32) -> Result<Rational> {
        if k == 0 {
            return Err(Error::domain("the peeled part k must be at least 1"));
        }
        self.require(lambda.weight())?;
        let mut total = Rational::zero();
        for c in compositions(lambda.weight(), 2 * k as usize + 1) {
            let mu = Partition::from_nonzero(&c);
            if mu.len() > lambda.len() {
                continue;
            }
            let b = self.b(lambda, &mu)?;
            if !b.is_zero() {
                total += b * r_term(k, &c)?;
            }
        }
        Ok(total / recursion_denominator(k))
    }

    /// `b_λ^{|λ|}` with the part `k` peeled by the recursion.
    pub fn b_lambda_n_peeling(&self, lambda: &Partition, k: u32) -> Result<Rational> {
        let rest = lambda
            .without(k)
            .ok_or_else(|| Error::domain(format!("{k} is not a part of {lambda}")))?;
        if rest.is_empty() {
            return b_single(k);
        }
        self.b_extend(&rest, k)
    }

    /// `b_λ^{|λ|}`.
    pub fn b_lambda_n(&self, lambda: &Partition) -> Result<Rational> {
        self.require(lambda.weight())?;
        Ok(self.stored_b_n(lambda)?.clone())
    }

    pub fn b(&self, lambda: &Partition, mu: &Partition) -> Result<Rational> {
        check_weights(lambda, mu)?;
        let level = self.level(lambda.weight())?;
        level.entry(&level.b, lambda, mu)
    }

    pub fn a(&self, lambda: &Partition, mu: &Partition) -> Result<Rational> {
        check_weights(lambda, mu)?;
        let level = self.level(lambda.weight())?;
        level.entry(&level.a, lambda, mu)
    }

    /// The nonzero entries of the `a`-row of `λ`: `[W_λ^*] = Σ_μ a_λ^μ κ̃_μ`.
    pub fn witten_expansion(&self, lambda: &Partition) -> Result<BTreeMap<Partition, Rational>> {
        let level = self.level(lambda.weight())?;
        let i = level.index_of(lambda).expect("every partition of the weight is indexed");
        Ok(level
            .order
            .iter()
            .zip(level.a.row(i))
            .filter(|(_, v)| !v.is_zero())
            .map(|(p, v)| (p.clone(), v.clone()))
            .collect())
    }

    /// `m_{λμ}^ν = Σ_{α,β} a_λ^α a_μ^β b_{α∪β}^ν`, zero entries omitted.
    pub fn cup_coeff(&self, lambda: &Partition, mu: &Partition) -> Result<BTreeMap<Partition, Rational>> {
        let w = lambda.weight() + mu.weight();
        let level = self.level(w)?;
        let left = self.witten_expansion(lambda)?;
        let right = self.witten_expansion(mu)?;
        let mut out: BTreeMap<Partition, Rational> = BTreeMap::new();
        for (alpha, x) in &left {
            for (beta, y) in &right {
                let xy = x * y;
                let i = level.index_of(&alpha.union(beta)).expect("union has the full weight");
                for (nu, b) in level.order.iter().zip(level.b.row(i)) {
                    if !b.is_zero() {
                        *out.entry(nu.clone()).or_insert_with(Rational::zero) += &xy * b;
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }
}

fn check_weights(lambda: &Partition, mu: &Partition) -> Result<()> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch {
            lambda: lambda.weight(),
            mu: mu.weight(),
        });
    }
    Ok(())
}

/// A process-wide table covering at least `scope`. Extending builds a new
/// table, so earlier handles stay valid and are never mutated.
pub fn shared_table(scope: u32) -> Result<Arc<CoeffTable>> {
    static SHARED: OnceLock<Mutex<Arc<CoeffTable>>> = OnceLock::new();
    let cell = SHARED.get_or_init(|| Mutex::new(Arc::new(CoeffTable::new())));
    let mut guard = cell.lock().expect("coefficient table lock poisoned");
    if guard.scope() < scope {
        let mut next = (**guard).clone();
        next.extend_to(scope)?;
        *guard = Arc::new(next);
    }
    Ok(Arc::clone(&guard))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_nonzero(parts)
    }

    #[test]
    fn anchors() {
        let t = CoeffTable::with_scope(4).unwrap();
        assert_eq!(t.b_lambda_n(&p(&[1])).unwrap(), ratio(1, 12));
        assert_eq!(t.b_lambda_n(&p(&[1, 1])).unwrap(), ratio(29, 720));
        assert_eq!(t.b_lambda_n(&p(&[1, 1, 1])).unwrap(), ratio(263, 6720));
        assert_eq!(t.b_lambda_n(&p(&[1, 1, 1, 1])).unwrap(), ratio(23479, 403200));
        assert_eq!(t.b_lambda_n(&p(&[2, 1])).unwrap(), ratio(-19, 3360));
        assert_eq!(t.b(&p(&[1, 1, 1]), &p(&[2, 1])).unwrap(), ratio(29, 2880));
        assert_eq!(t.b(&p(&[2, 1]), &p(&[2, 1])).unwrap(), ratio(-1, 1440));
    }

    #[test]
    fn extension_examples() {
        let t = CoeffTable::with_scope(2).unwrap();
        assert_eq!(t.b_extend(&p(&[1]), 1).unwrap(), ratio(29, 720));
        assert_eq!(t.b_extend(&p(&[1]), 2).unwrap(), ratio(-19, 3360));
        for n in 1..4 {
            assert_eq!(t.b_extend(&Partition::empty(), n).unwrap(), b_single(n).unwrap());
        }
        assert!(t.b_extend(&p(&[1]), 0).is_err());
    }

    #[test]
    fn a_rows() {
        let t = CoeffTable::with_scope(3).unwrap();
        let row = t.witten_expansion(&p(&[1, 1, 1])).unwrap();
        let expected: BTreeMap<_, _> = [
            (p(&[1, 1, 1]), Rational::from(288)),
            (p(&[2, 1]), Rational::from(4176)),
            (p(&[3]), Rational::from(20736)),
        ]
        .into_iter()
        .collect();
        assert_eq!(row, expected);
        assert_eq!(t.a(&p(&[2]), &p(&[2])).unwrap(), Rational::from(-120));
        assert_eq!(t.a(&p(&[1, 1]), &p(&[2])).unwrap(), Rational::from(348));
        let empty = t.witten_expansion(&Partition::empty()).unwrap();
        assert_eq!(empty.into_iter().collect::<Vec<_>>(), vec![(Partition::empty(), Rational::one())]);
    }

    #[test]
    fn cup_anchor() {
        let t = CoeffTable::with_scope(2).unwrap();
        let c = t.cup_coeff(&p(&[1]), &p(&[1])).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[&p(&[1, 1])], Rational::from(2));
        assert_eq!(c[&p(&[2])], ratio(29, 5));
        let unit = t.cup_coeff(&p(&[2]), &Partition::empty()).unwrap();
        assert_eq!(unit.into_iter().collect::<Vec<_>>(), vec![(p(&[2]), Rational::one())]);
    }

    #[test]
    fn errors() {
        let t = CoeffTable::with_scope(2).unwrap();
        assert_eq!(
            t.b(&p(&[2]), &p(&[1])),
            Err(Error::WeightMismatch { lambda: 2, mu: 1 })
        );
        assert_eq!(
            t.b(&p(&[3]), &p(&[3])),
            Err(Error::InsufficientScope { needed: 3, have: 2 })
        );
        assert!(t.cup_coeff(&p(&[2]), &p(&[1])).is_err());
        assert!(t.b_lambda_n_peeling(&p(&[2, 1]), 3).is_err());
    }

    #[test]
    fn shared_table_grows() {
        let small = shared_table(1).unwrap();
        let big = shared_table(3).unwrap();
        assert!(small.scope() >= 1);
        assert!(big.scope() >= 3);
        assert_eq!(big.b_lambda_n(&p(&[1])).unwrap(), ratio(1, 12));
    }
}
