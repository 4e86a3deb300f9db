use std::collections::HashMap;

use crate::poly::MultiPoly;
use crate::rational::Rational;
use crate::Result;

use super::Caps;

/// A rooted tree on vertices `0..=2k` in which every vertex `i > 0` has a
/// parent smaller than `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IncreasingTree {
    // parents[i - 1] is the parent of vertex i.
    parents: Vec<usize>,
}

impl IncreasingTree {
    /// `parents[i - 1]` is the parent of vertex `i`; each must be below `i`.
    pub fn from_parents(parents: Vec<usize>) -> Result<Self> {
        if !parents.len().is_multiple_of(2) {
            return Err(crate::Error::domain("an increasing tree needs an odd vertex count"));
        }
        for (i, &p) in parents.iter().enumerate() {
            if p > i {
                return Err(crate::Error::domain(format!(
                    "vertex {} has parent {p}, which is not smaller",
                    i + 1
                )));
            }
        }
        Ok(IncreasingTree { parents })
    }

    pub fn num_vertices(&self) -> usize {
        self.parents.len() + 1
    }

    /// `None` for the root.
    pub fn parent(&self, i: usize) -> Option<usize> {
        if i == 0 {
            None
        } else {
            Some(self.parents[i - 1])
        }
    }

    /// Number of vertices in the subtree hanging from each vertex.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let n = self.num_vertices();
        let mut size = vec![1; n];
        for i in (1..n).rev() {
            size[self.parents[i - 1]] += size[i];
        }
        size
    }
}

/// Yields every increasing tree on `2k+1` vertices; there are `(2k)!`.
pub fn enumerate_increasing_trees(k: u32, caps: &Caps) -> Result<IncreasingTrees> {
    Caps::check("tree size k", k as u64, caps.trees as u64, "--cap-trees")?;
    Ok(IncreasingTrees {
        next: Some(vec![0; 2 * k as usize]),
    })
}

#[derive(Clone, Debug)]
pub struct IncreasingTrees {
    next: Option<Vec<usize>>,
}

impl Iterator for IncreasingTrees {
    type Item = IncreasingTree;

    fn next(&mut self) -> Option<IncreasingTree> {
        let parents = self.next.take()?;
        let mut succ = parents.clone();
        // Odometer: digit i ranges over 0..=i.
        let mut i = succ.len();
        while i > 0 {
            i -= 1;
            if succ[i] < i {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(IncreasingTree { parents })
    }
}

/// Exponent vector of `x^T`: entry `i` counts the components of `T - {i}`
/// with an even number of vertices.
pub fn tree_monomial(tree: &IncreasingTree) -> Vec<u32> {
    let n = tree.num_vertices();
    let size = tree.subtree_sizes();
    let mut exps = vec![0u32; n];
    for i in 1..n {
        if size[i].is_multiple_of(2) {
            exps[tree.parents[i - 1]] += 1;
        }
        // The component containing the parent.
        if (n - size[i]).is_multiple_of(2) {
            exps[i] += 1;
        }
    }
    exps
}

/// `Σ_T x^T` over all increasing trees on `2k+1` vertices.
pub fn reduced_tree_poly_bruteforce(k: u32, caps: &Caps) -> Result<MultiPoly> {
    let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
    for t in enumerate_increasing_trees(k, caps)? {
        *counts.entry(tree_monomial(&t)).or_default() += 1;
    }
    MultiPoly::from_terms(
        2 * k as usize + 1,
        counts.into_iter().map(|(e, c)| (e, Rational::from(c))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::factorial;

    /// Component sizes of `T - {v}` by graph search, independent of the
    /// subtree-size shortcut.
    fn monomial_by_search(t: &IncreasingTree) -> Vec<u32> {
        let n = t.num_vertices();
        let mut adj = vec![Vec::new(); n];
        for i in 1..n {
            let p = t.parent(i).unwrap();
            adj[i].push(p);
            adj[p].push(i);
        }
        (0..n)
            .map(|v| {
                adj[v]
                    .iter()
                    .filter(|&&u| {
                        let mut seen = vec![false; n];
                        seen[v] = true;
                        seen[u] = true;
                        let mut stack = vec![u];
                        let mut count = 0;
                        while let Some(x) = stack.pop() {
                            count += 1;
                            for &y in &adj[x] {
                                if !seen[y] {
                                    seen[y] = true;
                                    stack.push(y);
                                }
                            }
                        }
                        count % 2 == 0
                    })
                    .count() as u32
            })
            .collect()
    }

    #[test]
    fn tree_counts() {
        let caps = Caps::default();
        for k in 0..=3 {
            let n = enumerate_increasing_trees(k, &caps).unwrap().count();
            assert_eq!(num_bigint::BigInt::from(n), factorial(2 * k));
        }
        assert!(enumerate_increasing_trees(6, &caps).is_err());
    }

    #[test]
    fn monomials_of_three_vertex_trees() {
        let path = IncreasingTree::from_parents(vec![0, 1]).unwrap();
        let star = IncreasingTree::from_parents(vec![0, 0]).unwrap();
        assert_eq!(tree_monomial(&path), vec![1, 0, 1]);
        assert_eq!(tree_monomial(&star), vec![0, 1, 1]);
        let single = IncreasingTree::from_parents(vec![]).unwrap();
        assert_eq!(tree_monomial(&single), vec![0]);
        assert!(IncreasingTree::from_parents(vec![1, 0]).is_err());
    }

    #[test]
    fn monomials_have_degree_2k_and_match_search() {
        let caps = Caps::default();
        for k in 0..=3 {
            for t in enumerate_increasing_trees(k, &caps).unwrap() {
                let m = tree_monomial(&t);
                assert_eq!(m.iter().sum::<u32>(), 2 * k);
                assert_eq!(m, monomial_by_search(&t));
            }
        }
    }

    #[test]
    fn small_reduced_polys() {
        let caps = Caps::default();
        let t1 = reduced_tree_poly_bruteforce(1, &caps).unwrap();
        assert_eq!(t1.to_text(), "x0*x2 + x1*x2");
        let t2 = reduced_tree_poly_bruteforce(2, &caps).unwrap();
        let at_ones = t2.eval_integers(&[1; 5]).unwrap();
        assert_eq!(at_ones, Rational::from(24));
        let zero = MultiPoly::zero(5);
        let reduced = t2.substitute(0, &zero).unwrap();
        assert_eq!(
            reduced.to_text(),
            "x1^2*x2*x4 + 2*x1^2*x3*x4 + x1*x2^2*x4 + 5*x1*x2*x3*x4"
        );
    }
}
