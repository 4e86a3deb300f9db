//! The `verify` suite: published values (quick) plus oracle equivalences and
//! closed-form sweeps (full).

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::Serialize;
use treecoeff::coeff::{
    self, a_single, b_single, closed_a_pair, closed_b_pair, closed_witten_pair, degenerate_b, degenerate_matrices,
    h_sequence, s_term, sym_count, CoeffTable,
};
use treecoeff::enumerate::{
    counting_lemma_bruteforce, counting_lemma_closed, even_cycle_histogram, reduced_tree_poly_bruteforce,
    shuffle_sign_sum_bruteforce, tree_poly_bruteforce, Caps, SignSumVariant,
};
use treecoeff::numbers::{binomial, double_factorial, factorial, stirling_first_signed, stirling_second};
use treecoeff::rational::ratio;
use treecoeff::treepoly::{
    double_sum_identity, l_poly, q_closed_ones, q_eval, reduced_tree_poly, reduced_tree_value, t_closed_main,
    t_closed_ones, verify_g_recursion, xe_tables, OddTuple,
};
use treecoeff::{partitions_of, MultiPoly, Partition, Rational};

use crate::args::Level;
use crate::cache::{self, Cache};
use crate::commands;

type Res<T> = treecoeff::Result<T>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            match c.status {
                Status::Pass => out.push_str(&format!("PASS {}\n", c.name)),
                Status::Fail => out.push_str(&format!("FAIL {}: {} != {}\n", c.name, clip(&c.lhs), clip(&c.rhs))),
            }
        }
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), self.failed()));
        out
    }
}

fn clip(s: &str) -> String {
    const MAX: usize = 160;
    match s.char_indices().nth(MAX) {
        Some((i, _)) => format!("{}...", &s[..i]),
        None => s.to_string(),
    }
}

/// Outcome of one check: both sides rendered, and whether they agree.
struct Outcome {
    pass: bool,
    lhs: String,
    rhs: String,
}

fn same<T: PartialEq + Display>(lhs: T, rhs: T) -> Res<Outcome> {
    Ok(Outcome {
        pass: lhs == rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

/// Collects many comparisons and reports the first disagreement.
#[derive(Default)]
struct Sweep {
    cases: usize,
    mismatch: Option<(String, String)>,
}

impl Sweep {
    fn case<T: PartialEq + Display>(&mut self, label: impl Display, lhs: T, rhs: T) {
        self.cases += 1;
        if lhs != rhs && self.mismatch.is_none() {
            self.mismatch = Some((format!("{label}: {lhs}"), rhs.to_string()));
        }
    }

    fn done(self) -> Res<Outcome> {
        Ok(match self.mismatch {
            None => Outcome {
                pass: self.cases > 0,
                lhs: format!("{} cases", self.cases),
                rhs: format!("{} cases", self.cases),
            },
            Some((lhs, rhs)) => Outcome { pass: false, lhs, rhs },
        })
    }
}

fn map_text(m: &BTreeMap<Partition, Rational>) -> String {
    let items: Vec<String> = m.iter().map(|(p, v)| format!("{p}: {v}")).collect();
    format!("{{{}}}", items.join(", "))
}

fn p(parts: &[u32]) -> Partition {
    Partition::from_nonzero(parts)
}

fn monomial(n: usize, exps: &[(usize, u32)]) -> Vec<u32> {
    let mut e = vec![0; n];
    for &(i, d) in exps {
        e[i] = d;
    }
    e
}

fn at_x0_zero(poly: &MultiPoly) -> Res<MultiPoly> {
    poly.substitute(0, &MultiPoly::zero(poly.num_vars()))
}

fn t_value(values: &[u32]) -> Res<BigInt> {
    Ok(BigInt::from(values[0]) * reduced_tree_value(&OddTuple::new(values.to_vec())?)?)
}

struct Suite {
    report: VerifyReport,
    verbose: bool,
}

impl Suite {
    fn run(&mut self, name: &str, f: impl FnOnce() -> Res<Outcome>) {
        let start = Instant::now();
        let (status, lhs, rhs) = match f() {
            Ok(o) => (if o.pass { Status::Pass } else { Status::Fail }, o.lhs, o.rhs),
            Err(e) => (Status::Fail, format!("error: {e}"), "-".to_string()),
        };
        let elapsed = start.elapsed();
        if self.verbose {
            eprintln!("{:>9.3}s {name}", elapsed.as_secs_f64());
        }
        self.report.checks.push(CheckResult {
            name: name.to_string(),
            status,
            lhs,
            rhs,
            elapsed,
        });
    }
}

pub fn run(level: Level, caps: &Caps, cache: Option<&Cache>, verbose: bool) -> VerifyReport {
    let mut s = Suite {
        report: VerifyReport::default(),
        verbose,
    };
    quick(&mut s);
    if level == Level::Full {
        full(&mut s, caps);
    }
    if let Some(cache) = cache {
        cache_checks(&mut s, cache, caps);
    }
    s.report
}

fn quick(s: &mut Suite) {
    s.run("reduced T1", || {
        let nv = 3;
        let x = |i| MultiPoly::var(nv, i);
        same((*reduced_tree_poly(1)?).clone(), x(0)?.checked_add(&x(1)?)?.checked_mul(&x(2)?)?)
    });
    s.run("reduced T2 at x0 = 0", || {
        let e = |v: &[(usize, u32)], c: i64| (monomial(5, v), Rational::from(c));
        let expected = MultiPoly::from_terms(
            5,
            [
                e(&[(1, 2), (2, 1), (4, 1)], 1),
                e(&[(1, 1), (2, 2), (4, 1)], 1),
                e(&[(1, 2), (3, 1), (4, 1)], 2),
                e(&[(1, 1), (2, 1), (3, 1), (4, 1)], 5),
            ],
        )?;
        same(at_x0_zero(&*reduced_tree_poly(2)?)?, expected)
    });
    s.run("reduced T3 coefficient of x1x2x3x4x5x6", || {
        same(at_x0_zero(&*reduced_tree_poly(3)?)?.coefficient(&[0, 1, 1, 1, 1, 1, 1]), Rational::from(61))
    });
    s.run("reduced T3 coefficient of x1x2x3^2x4x6", || {
        same(at_x0_zero(&*reduced_tree_poly(3)?)?.coefficient(&[0, 1, 1, 2, 1, 0, 1]), Rational::from(5))
    });
    s.run("single coefficients a1, b2, a3", || {
        same(
            format!("{} {} {}", a_single(1)?, b_single(2)?, a_single(3)?),
            "12 -1/120 1680".to_string(),
        )
    });
    let anchors: [(&[u32], &[u32], Rational); 7] = [
        (&[1], &[1], ratio(1, 12)),
        (&[1, 1], &[2], ratio(29, 720)),
        (&[1, 1, 1], &[3], ratio(263, 6720)),
        (&[1, 1, 1, 1], &[4], ratio(23479, 403200)),
        (&[1, 1, 1], &[2, 1], ratio(29, 2880)),
        (&[2, 1], &[2, 1], ratio(-1, 1440)),
        (&[2, 1], &[3], ratio(-19, 3360)),
    ];
    for (lambda, mu, value) in anchors {
        let (lambda, mu) = (p(lambda), p(mu));
        s.run(&format!("b_{lambda}^{mu}"), || same(coeff::b_lambda_mu(&lambda, &mu)?, value));
    }
    s.run("witten expansion of (1,1,1)", || {
        let expected = BTreeMap::from([
            (p(&[1, 1, 1]), Rational::from(288)),
            (p(&[2, 1]), Rational::from(4176)),
            (p(&[3]), Rational::from(20736)),
        ]);
        same(map_text(&coeff::witten_expansion(&p(&[1, 1, 1]))?), map_text(&expected))
    });
    s.run("cup product (1) x (1)", || {
        let expected = BTreeMap::from([(p(&[2]), ratio(29, 5)), (p(&[1, 1]), Rational::from(2))]);
        same(map_text(&coeff::cup_coeff(&p(&[1]), &p(&[1]))?), map_text(&expected))
    });
    s.run("pair closed form at (1,1)", || same(closed_b_pair(1, 1)?, ratio(29, 720)));
    s.run("h(1..4)", || {
        let got: Vec<String> = (1..=4).map(|n| h_sequence(n).to_string()).collect();
        same(got.join(" "), "1/3 29/90 263/630 23479/37800".to_string())
    });
    s.run("S_2(m) = (2m+7)/5 - 6/((2m+5)(2m+3))", || {
        let mut sw = Sweep::default();
        for m in 1..=5i64 {
            let expected = ratio(2 * m + 7, 5) - ratio(6, (2 * m + 5) * (2 * m + 3));
            sw.case(format!("m={m}"), s_term(2, &p(&[m as u32]))?, expected);
        }
        sw.done()
    });
    s.run("counting identity n=4, s=3", || {
        same(counting_lemma_bruteforce(4, 3, &Caps::default())?, counting_lemma_closed(4, 3)?)
    });
    s.run("sign-sum X0 at (2,2)", || {
        same(
            BigInt::from(shuffle_sign_sum_bruteforce(SignSumVariant::X0, 2, 2, &Caps::default())?),
            xe_tables(SignSumVariant::X0, 2, 2).x,
        )
    });
    s.run("even-cycle histogram for 2k = 4", || {
        same(format!("{:?}", even_cycle_histogram(4, &Caps::default())?), "[9, 12, 3]".to_string())
    });
    s.run("degenerate a_{(1)0}^{(1)}", || {
        let t = CoeffTable::with_scope(1)?;
        same(coeff::degenerate_a(&t, &p(&[1]), 1, &p(&[1]), 0)?, Rational::from(-36))
    });
}

fn full(s: &mut Suite, caps: &Caps) {
    s.run("increasing trees = recursion, k <= 5", || {
        let mut sw = Sweep::default();
        for k in 0..=5 {
            let ok = reduced_tree_poly_bruteforce(k, caps)? == *reduced_tree_poly(k)?;
            sw.case(format!("k={k}"), ok, true);
        }
        sw.done()
    });
    s.run("cyclic shuffles = x0 T~_k, <= 9 letters, k <= 2", || {
        let mut sw = Sweep::default();
        for k in 0..=2usize {
            for t in odd_tuples(2 * k + 1, 9) {
                sw.case(format!("{t:?}"), BigInt::from(tree_poly_bruteforce(&t, caps)?), t_value(&t)?);
            }
        }
        sw.done()
    });
    s.run("T_k(n,1,...,1,m) and Q_k(n,1,...,1), k <= 5", || {
        let mut sw = Sweep::default();
        for k in 0..=5u32 {
            for n in (1..=9).step_by(2) {
                for m in (1..=9).step_by(2) {
                    if k == 0 && n != m {
                        continue;
                    }
                    let mut t = vec![n];
                    if k > 0 {
                        t.extend(std::iter::repeat_n(1, 2 * k as usize - 1));
                        t.push(m);
                    }
                    sw.case(format!("T {t:?}"), t_closed_ones(k, n, m)?, t_value(&t)?);
                }
                if k > 0 {
                    let mut t = vec![n];
                    t.extend(std::iter::repeat_n(1, 2 * k as usize));
                    sw.case(format!("Q {t:?}"), q_closed_ones(k, n)?, q_eval(&OddTuple::new(t)?)?);
                }
            }
        }
        sw.done()
    });
    s.run("T_k(3,1^p,2r+1,1^q) and the double sum, k <= 4, r <= 4", || {
        let mut sw = Sweep::default();
        for k in 1..=4u32 {
            for r in 0..=4u32 {
                for pp in 0..2 * k {
                    let q = 2 * k - 1 - pp;
                    let mut t = vec![3];
                    t.extend(std::iter::repeat_n(1, pp as usize));
                    t.push(2 * r + 1);
                    t.extend(std::iter::repeat_n(1, q as usize));
                    sw.case(format!("{t:?}"), t_closed_main(k, pp, q, r)?, t_value(&t)?);
                }
                let (lhs, rhs) = double_sum_identity(k, r)?;
                sw.case(format!("double sum k={k} r={r}"), lhs, rhs);
            }
        }
        sw.done()
    });
    s.run("structure of T~_k, k <= 6", || {
        let mut sw = Sweep::default();
        for k in 0..=6u32 {
            let nv = 2 * k as usize + 1;
            let poly = reduced_tree_poly(k)?;
            sw.case(format!("degree k={k}"), poly.homogeneous_degree() == Some(2 * k), true);
            let mut sum = Rational::zero();
            let mut nonneg_int = true;
            for (_, c) in poly.terms() {
                nonneg_int &= c.is_integer() && !c.is_negative();
                sum += c;
            }
            sw.case(format!("integrality k={k}"), nonneg_int, true);
            sw.case(format!("coefficient sum k={k}"), sum, Rational::from(factorial(2 * k)));
            if k > 0 {
                let merged = MultiPoly::var(nv, 0)?.checked_add(&MultiPoly::var(nv, 1)?)?;
                let shifted = at_x0_zero(&poly)?.substitute(1, &merged)?;
                sw.case(format!("x0+x1 dependence k={k}"), shifted == *poly, true);
                sw.case(format!("linear in last variable k={k}"), poly.degree_in(nv - 1), 1);
            }
        }
        sw.done()
    });
    s.run("L_k^n(1,...,1) = (2k)! (2k+1)^{2n}, k <= 4, n <= 3", || {
        let mut sw = Sweep::default();
        for k in 0..=4u32 {
            for n in 0..=3u32 {
                let v = l_poly(k, n)?.eval_integers(&vec![1; 2 * k as usize + 1])?;
                let expected = Rational::from(factorial(2 * k) * BigInt::from(2 * k + 1).pow(2 * n));
                sw.case(format!("k={k} n={n}"), v, expected);
            }
        }
        sw.done()
    });
    s.run("g-recursion at order 6, k <= 2", || {
        let mut sw = Sweep::default();
        for k in 0..=2 {
            sw.case(format!("k={k}"), verify_g_recursion(k, 6)?, true);
        }
        sw.done()
    });
    s.run("b a = I and leading a-coefficients, n <= 6", || {
        let t = coeff::shared_table(6)?;
        let mut sw = Sweep::default();
        for n in 1..=6 {
            let level = t.level(n)?;
            sw.case(format!("n={n}"), level.b_matrix().mul(level.a_matrix())?.is_identity(), true);
            for lambda in level.order() {
                let mut expected = Rational::one();
                for (part, mult) in lambda.multiplicities() {
                    expected = expected * a_single(part)?.pow(mult as i32)? / Rational::from(factorial(mult));
                }
                sw.case(format!("diagonal {lambda}"), t.a(lambda, lambda)?, expected);
            }
        }
        sw.done()
    });
    s.run("peel-order independence, weight <= 7", || {
        let t = coeff::shared_table(7)?;
        let mut sw = Sweep::default();
        for w in 2..=7 {
            for lambda in partitions_of(w, None) {
                let reference = t.b_lambda_n(&lambda)?;
                for k in lambda.distinct() {
                    sw.case(format!("{lambda} peel {k}"), t.b_lambda_n_peeling(&lambda, k)?, reference.clone());
                }
            }
        }
        sw.done()
    });
    s.run("pair closed forms, r + k <= 8", || {
        let t = coeff::shared_table(8)?;
        let mut sw = Sweep::default();
        for total in 2..=8u32 {
            for k in 1..total {
                let r = total - k;
                let lambda = p(&[r, k]);
                sw.case(format!("b ({r},{k})"), t.b_lambda_n(&lambda)?, closed_b_pair(r, k)?);
                sw.case(format!("a ({r},{k})"), t.a(&lambda, &p(&[total]))?, closed_a_pair(r, k)?);
                sw.case(
                    format!("row ({r},{k})"),
                    map_text(&t.witten_expansion(&lambda)?),
                    map_text(&closed_witten_pair(r, k)?),
                );
            }
        }
        for n in 1..=6 {
            let (an, an1) = (a_single(n)?, a_single(n + 1)?);
            let sym = Rational::from(sym_count(&[n, 1]));
            let a = (Rational::from(-12) * an.clone() - Rational::from(2 * n + 5) * an1.clone()) / sym;
            sw.case(format!("a ({n},1)"), t.a(&p(&[n, 1]), &p(&[n + 1]))?, a);
            let b = Rational::from(2 * n + 5) / (Rational::from(12) * an) + an1.recip()?;
            sw.case(format!("b ({n},1)"), t.b_lambda_n(&p(&[n, 1]))?, b);
        }
        sw.done()
    });
    s.run("b_{1^n}^n = 4^{-n} n! h(n), n <= 5", || {
        let mut sw = Sweep::default();
        for n in 1..=5u32 {
            let ones = Partition::new(vec![1; n as usize])?;
            let expected = Rational::new(factorial(n), BigInt::from(4).pow(n))? * h_sequence(n);
            sw.case(format!("n={n}"), coeff::b_lambda_n(&ones)?, expected);
        }
        sw.done()
    });
    s.run("cup symmetry, |lambda| + |mu| <= 5", || {
        let t = coeff::shared_table(5)?;
        let mut all = vec![Partition::empty()];
        for w in 1..=4 {
            all.extend(partitions_of(w, None));
        }
        let mut sw = Sweep::default();
        for lambda in &all {
            for mu in &all {
                if lambda.weight() + mu.weight() <= 5 {
                    sw.case(
                        format!("{lambda} {mu}"),
                        map_text(&t.cup_coeff(lambda, mu)?),
                        map_text(&t.cup_coeff(mu, lambda)?),
                    );
                }
            }
        }
        sw.done()
    });
    s.run("sign-sum tables, n + m <= 10", || {
        let mut sw = Sweep::default();
        for v in SignSumVariant::ALL {
            for total in 0..=10u32 {
                for n in 0..=total {
                    let m = total - n;
                    let brute = shuffle_sign_sum_bruteforce(v, n, m, caps)?;
                    let entry = xe_tables(v, n, m);
                    sw.case(format!("{v} X n={n} m={m}"), entry.x, BigInt::from(brute));
                    let count = Rational::from(binomial((n + m) as i64, n as i64));
                    sw.case(format!("{v} E n={n} m={m}"), entry.e * count, Rational::from(brute));
                }
            }
        }
        sw.done()
    });
    s.run("counting identity, n <= 6, s <= 4", || {
        let mut sw = Sweep::default();
        for n in 1..=6 {
            for k in 0..=4 {
                sw.case(
                    format!("n={n} s={k}"),
                    counting_lemma_bruteforce(n, k, caps)?,
                    counting_lemma_closed(n, k)?,
                );
            }
        }
        sw.done()
    });
    s.run("even-cycle histogram, k <= 4", || {
        let mut sw = Sweep::default();
        for k in 1..=4u32 {
            let hist: Vec<BigInt> = even_cycle_histogram(2 * k, caps)?.into_iter().map(BigInt::from).collect();
            sw.case(format!("k={k}"), format!("{hist:?}"), format!("{:?}", odd_rising(k)));
        }
        sw.done()
    });
    s.run("b_{0^m}^{0^n} = n! S2(m,n) / (-2)^m, m, n <= 6", || {
        let t = CoeffTable::new();
        let e = Partition::empty();
        let mut sw = Sweep::default();
        for m in 0..=6 {
            for n in 0..=6 {
                let expected = Rational::new(factorial(n) * stirling_second(m, n), BigInt::from(-2).pow(m))?;
                sw.case(format!("m={m} n={n}"), degenerate_b(&t, &e, m, &e, n)?, expected);
            }
        }
        sw.done()
    });
    s.run("padded a and b are inverse, weight <= 3, padding <= 3", || {
        let t = CoeffTable::with_scope(3)?;
        let mut sw = Sweep::default();
        for w in 0..=3 {
            let (_, b, a) = degenerate_matrices(&t, w, 3)?;
            sw.case(format!("weight {w}"), b.mul(&a)?.is_identity(), true);
        }
        sw.done()
    });
    s.run("Stirling duality through 10", || {
        let mut sw = Sweep::default();
        for n in 0..=10u32 {
            for m in 0..=10u32 {
                let mut acc = BigInt::from(0);
                for j in m..=n {
                    acc += stirling_first_signed(n, j)? * stirling_second(j, m);
                }
                sw.case(format!("n={n} m={m}"), acc, BigInt::from((n == m) as i32));
            }
        }
        sw.done()
    });
}

fn cache_checks(s: &mut Suite, cache: &Cache, caps: &Caps) {
    let entries = match cache.entries() {
        Ok(e) => e,
        Err(e) => {
            s.run("cache directory", || same(e.to_string(), "readable".to_string()));
            return;
        }
    };
    for (path, entry) in entries {
        let name = format!(
            "cache entry {}",
            path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
        );
        s.run(&name, || {
            let entry = match entry {
                Ok(e) => e,
                Err(msg) => return same(format!("unreadable: {msg}"), "valid entry".to_string()),
            };
            let expected_name = format!("{}.json", cache::key(&entry.op, &entry.params));
            if path.file_name().map(|n| n.to_string_lossy().into_owned()) != Some(expected_name.clone()) {
                return same(name.clone(), expected_name);
            }
            if entry.schema != cache::SCHEMA_VERSION {
                // Stale entries are never served, so they cannot be wrong.
                return same(true, true);
            }
            let fresh = commands::recompute_cached(&entry.op, &entry.params, caps).map_err(|e| match e {
                crate::error::CliError::Core(c) => c,
                other => treecoeff::Error::Parse(other.to_string()),
            })?;
            same(entry.value.to_string(), fresh.to_string())
        });
    }
}

/// Odd tuples of length `len` whose entries sum to at most `max_total`.
fn odd_tuples(len: usize, max_total: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            let used: u32 = t.iter().sum();
            let mut v = 1;
            while used + v + (len - t.len() - 1) as u32 <= max_total {
                let mut t2 = t.clone();
                t2.push(v);
                next.push(t2);
                v += 2;
            }
        }
        out = next;
    }
    out
}

/// Ascending coefficients of `(2k-1)!! (x+1)(x+3)...(x+2k-1)`.
fn odd_rising(k: u32) -> Vec<BigInt> {
    let mut c = vec![double_factorial(2 * k as i64 - 1).expect("k >= 0")];
    for i in 1..=k {
        let shift = BigInt::from(2 * i - 1);
        let mut next = vec![BigInt::from(0); c.len() + 1];
        for (d, v) in c.iter().enumerate() {
            next[d] += v * &shift;
            next[d + 1] += v;
        }
        c = next;
    }
    c
}
