//! Sparse multivariate polynomials over exact rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::rational::Rational;
use crate::{Error, Result};

pub type Exponent = Vec<u32>;

/// A polynomial in `x0, ..., x_{n-1}` stored as a map from dense exponent
/// vectors to nonzero coefficients.
///
/// The number of variables is fixed at construction and every binary
/// operation requires both operands to agree on it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    exp: Vec<u32>,
    coeff: Rational,
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::one())
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(vec![0; num_vars], c);
        p
    }

    /// The variable `x_i`.
    pub fn var(num_vars: usize, i: usize) -> Result<Self> {
        if i >= num_vars {
            return Err(Error::VariableOutOfRange { index: i, num_vars });
        }
        let mut e = vec![0; num_vars];
        e[i] = 1;
        let mut p = Self::zero(num_vars);
        p.add_term(e, Rational::one());
        Ok(p)
    }

    /// Sums repeated exponents and drops zeros.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::LengthMismatch {
                    expected: num_vars,
                    found: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Adds `c * x^e` in place. The caller guarantees `e.len() == num_vars`.
    pub(crate) fn add_term(&mut self, e: Exponent, c: Rational) {
        debug_assert_eq!(e.len(), self.num_vars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    fn check_arity(&self, other: &MultiPoly) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::ArityMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_arity(other)?;
        let mut out = MultiPoly::zero(self.num_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-Rational::one())
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.num_vars);
        for _ in 0..n {
            acc = acc.checked_mul(self).expect("same arity");
        }
        acc
    }

    /// Replaces `x_var` by `replacement` and re-expands.
    pub fn substitute(&self, var: usize, replacement: &MultiPoly) -> Result<MultiPoly> {
        if var >= self.num_vars {
            return Err(Error::VariableOutOfRange {
                index: var,
                num_vars: self.num_vars,
            });
        }
        self.check_arity(replacement)?;
        let max_deg = self.degree_in(var);
        let mut powers = vec![MultiPoly::one(self.num_vars)];
        for d in 1..=max_deg as usize {
            let next = powers[d - 1].checked_mul(replacement)?;
            powers.push(next);
        }
        let mut out = MultiPoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let d = std::mem::replace(&mut rest[var], 0) as usize;
            for (re, rc) in &powers[d].terms {
                let e: Exponent = rest.iter().zip(re).map(|(a, b)| a + b).collect();
                out.add_term(e, c * rc);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.num_vars {
            return Err(Error::LengthMismatch {
                expected: self.num_vars,
                found: point.len(),
            });
        }
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(self.num_vars);
        for (i, x) in point.iter().enumerate() {
            let d = self.degree_in(i) as usize;
            let mut row = Vec::with_capacity(d + 1);
            row.push(Rational::one());
            for j in 1..=d {
                let next = &row[j - 1] * x;
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term *= &powers[i][k as usize];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Evaluates at an integer point.
    pub fn eval_integers(&self, point: &[i64]) -> Result<Rational> {
        if point.len() != self.num_vars {
            return Err(Error::LengthMismatch {
                expected: self.num_vars,
                found: point.len(),
            });
        }
        let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(self.num_vars);
        for (i, &x) in point.iter().enumerate() {
            let d = self.degree_in(i) as usize;
            let mut row = vec![BigInt::from(1)];
            for j in 1..=d {
                let next = &row[j - 1] * x;
                row.push(next);
            }
            powers.push(row);
        }
        // Group terms by denominator so that most of the work is integer.
        let mut by_denom: BTreeMap<BigInt, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut m = c.numer().clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    m *= &powers[i][k as usize];
                }
            }
            *by_denom.entry(c.denom().clone()).or_default() += m;
        }
        Ok(by_denom
            .into_iter()
            .map(|(d, n)| Rational::new(n, d).expect("positive denominator"))
            .sum())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// The common total degree if every term has the same one. The zero
    /// polynomial counts as homogeneous of degree 0.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degrees.next().unwrap_or(0);
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    /// Embeds into a ring with more variables (appended at the end).
    pub fn extend_vars(&self, num_vars: usize) -> Result<MultiPoly> {
        if num_vars < self.num_vars {
            return Err(Error::domain(format!(
                "cannot shrink a polynomial from {} to {} variables",
                self.num_vars, num_vars
            )));
        }
        Ok(MultiPoly {
            num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(num_vars, 0);
                    (e, c.clone())
                })
                .collect(),
        })
    }

    /// Terms in graded-lex order: higher total degree first, then higher
    /// powers of `x0`, then `x1`, and so on.
    fn graded_terms(&self) -> Vec<(&Exponent, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    /// Plain-text rendering, e.g. `x1^2*x2*x4 + 5*x1*x2*x3*x4`.
    pub fn to_text(&self) -> String {
        self.render(|e| {
            e.iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                .collect::<Vec<_>>()
                .join("*")
        }, |c| c.to_string(), "*")
    }

    /// LaTeX rendering, e.g. `x_{1}^{2} x_{2} x_{4} + 5 x_{1} x_{2} x_{3} x_{4}`.
    pub fn to_latex(&self) -> String {
        self.render(
            |e| {
                e.iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            format!("x_{{{i}}}")
                        } else {
                            format!("x_{{{i}}}^{{{k}}}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            },
            |c| {
                if c.is_integer() {
                    c.to_string()
                } else {
                    format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
                }
            },
            " ",
        )
    }

    fn render(
        &self,
        monomial: impl Fn(&Exponent) -> String,
        coeff: impl Fn(&Rational) -> String,
        joiner: &str,
    ) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.graded_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (idx, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono = monomial(e);
            if mono.is_empty() {
                out.push_str(&coeff(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&coeff(&abs));
                out.push_str(joiner);
                out.push_str(&mono);
            }
        }
        out
    }

    /// Parses the JSON term list produced by serialization.
    pub fn from_json(num_vars: usize, json: &str) -> Result<MultiPoly> {
        let terms: Vec<JsonTerm> =
            serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_terms(num_vars, terms.into_iter().map(|t| (t.exp, t.coeff)))
    }

    /// Parses a JSON term list, taking the arity from the first term.
    pub fn from_json_value(value: &serde_json::Value) -> Result<MultiPoly> {
        let terms: Vec<JsonTerm> =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let num_vars = terms
            .first()
            .map(|t| t.exp.len())
            .ok_or_else(|| Error::Parse("cannot infer arity of an empty term list".into()))?;
        Self::from_terms(num_vars, terms.into_iter().map(|t| (t.exp, t.coeff)))
    }
}

/// Serialized as `[{"exp": [...], "coeff": "p/q"}, ...]` in ascending
/// lexicographic order of exponent vectors.
impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            exp: &'a [u32],
            coeff: &'a Rational,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&Term { exp: e, coeff: c })?;
        }
        seq.end()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.num_vars, self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn multiplication_examples() {
        let (x0, x1, x2) = (x(3, 0), x(3, 1), x(3, 2));
        assert_eq!(x0.checked_mul(&x1).unwrap().to_text(), "x0*x1");
        let sq = x0
            .checked_add(&x1)
            .unwrap()
            .checked_mul(&x0.checked_sub(&x1).unwrap())
            .unwrap();
        assert_eq!(sq.to_text(), "x0^2 - x1^2");
        let t1 = x0.checked_add(&x1).unwrap().checked_mul(&x2).unwrap();
        let full = t1.checked_mul(&x0).unwrap();
        assert_eq!(full.to_text(), "x0^2*x2 + x0*x1*x2");
        assert!(x0.checked_mul(&x(2, 0)).is_err());
    }

    #[test]
    fn substitution_examples() {
        let (x0, x1, x2) = (x(3, 0), x(3, 1), x(3, 2));
        let p = x1.checked_mul(&x2).unwrap();
        let sum = x0.checked_add(&x1).unwrap();
        let q = p.substitute(1, &sum).unwrap();
        assert_eq!(q, sum.checked_mul(&x2).unwrap());
        assert_eq!(q.substitute(0, &MultiPoly::zero(3)).unwrap(), p);
        assert_eq!(p.substitute(2, &x2).unwrap(), p);
        assert!(p.substitute(3, &x2).is_err());
        assert!(p.substitute(0, &x(4, 0)).is_err());
    }

    #[test]
    fn evaluation() {
        let p = MultiPoly::from_terms(
            2,
            vec![(vec![0, 0], r(7)), (vec![2, 1], ratio(1, 2)), (vec![0, 3], r(-1))],
        )
        .unwrap();
        assert_eq!(p.eval(&[r(0), r(0)]).unwrap(), r(7));
        assert_eq!(p.eval(&[r(2), r(3)]).unwrap(), r(7 + 6 - 27));
        assert_eq!(p.eval_integers(&[2, 3]).unwrap(), r(-14));
        assert!(p.eval(&[r(1)]).is_err());
    }

    #[test]
    fn canonical_zero_terms() {
        let p = MultiPoly::from_terms(1, vec![(vec![1], r(2)), (vec![1], r(-2))]).unwrap();
        assert!(p.is_zero());
        assert_eq!(p, MultiPoly::zero(1));
        assert_eq!(p.to_text(), "0");
        assert!(MultiPoly::from_terms(2, vec![(vec![1], r(1))]).is_err());
    }

    #[test]
    fn rendering() {
        let p = MultiPoly::from_terms(
            3,
            vec![
                (vec![0, 1, 1], ratio(-1, 4)),
                (vec![2, 0, 1], r(3)),
                (vec![0, 0, 0], r(-5)),
            ],
        )
        .unwrap();
        assert_eq!(p.to_text(), "3*x0^2*x2 - 1/4*x1*x2 - 5");
        assert_eq!(p.to_latex(), "3 x_{0}^{2} x_{2} - \\frac{1}{4} x_{1} x_{2} - 5");
    }

    #[test]
    fn json_round_trip() {
        let p = MultiPoly::from_terms(
            2,
            vec![(vec![1, 0], ratio(3, 1)), (vec![0, 2], ratio(-1, 6))],
        )
        .unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"[{"exp":[0,2],"coeff":"-1/6"},{"exp":[1,0],"coeff":"3"}]"#
        );
        assert_eq!(MultiPoly::from_json(2, &json).unwrap(), p);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(MultiPoly::from_json_value(&v).unwrap(), p);
        assert!(MultiPoly::from_json(3, &json).is_err());
        assert_eq!(
            MultiPoly::from_json(2, r#"[{"exp":[1,0],"coeff":"3/1"}]"#).unwrap(),
            MultiPoly::from_terms(2, vec![(vec![1, 0], r(3))]).unwrap()
        );
    }

    #[test]
    fn degrees() {
        let p = MultiPoly::from_terms(2, vec![(vec![1, 2], r(1)), (vec![3, 0], r(1))]).unwrap();
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.homogeneous_degree(), Some(3));
        assert_eq!(p.degree_in(1), 2);
        let q = p.checked_add(&MultiPoly::one(2)).unwrap();
        assert!(!q.is_homogeneous());
        assert_eq!(MultiPoly::zero(2).degree(), None);
        let e = p.extend_vars(4).unwrap();
        assert_eq!(e.coefficient(&[1, 2, 0, 0]), r(1));
        assert!(e.extend_vars(3).is_err());
    }

    fn small_poly(n: usize) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(
            (proptest::collection::vec(0u32..3, n), -4i64..5, 1i64..4),
            0..5,
        )
        .prop_map(move |ts| {
            MultiPoly::from_terms(n, ts.into_iter().map(|(e, a, b)| (e, ratio(a, b)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn substitution_composes(
            p in small_poly(3),
            q in small_poly(3),
            s in small_poly(3),
            pt in proptest::collection::vec(-3i64..4, 3),
        ) {
            // Substituting q for x1 and then s for x1 agrees pointwise with
            // evaluating x1 at q(s) directly.
            let composed = p.substitute(1, &q).unwrap().substitute(1, &s).unwrap();
            let point: Vec<Rational> = pt.iter().map(|&v| r(v)).collect();
            let mut inner = point.clone();
            inner[1] = s.eval(&point).unwrap();
            let mut outer = point.clone();
            outer[1] = q.eval(&inner).unwrap();
            prop_assert_eq!(composed.eval(&point).unwrap(), p.eval(&outer).unwrap());
            // Against an explicit expansion through the polynomial q(s).
            let qs = q.substitute(1, &s).unwrap();
            prop_assert_eq!(composed, p.substitute(1, &qs).unwrap());
        }

        #[test]
        fn ring_laws(p in small_poly(2), q in small_poly(2), s in small_poly(2)) {
            let lhs = p.checked_mul(&q.checked_add(&s).unwrap()).unwrap();
            let rhs = p.checked_mul(&q).unwrap().checked_add(&p.checked_mul(&s).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(p.checked_mul(&q).unwrap(), q.checked_mul(&p).unwrap());
            prop_assert!(p.checked_sub(&p).unwrap().is_zero());
        }

        #[test]
        fn json_round_trips(p in small_poly(3)) {
            let json = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(MultiPoly::from_json(3, &json).unwrap(), p);
        }
    }
}
