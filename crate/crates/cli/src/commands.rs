//! Subcommand implementations. Each cacheable computation is a [`Request`]
//! whose canonical JSON value is what the cache stores.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};
use treecoeff::coeff::{self, CupDocument, TableDocument};
use treecoeff::enumerate::{
    counting_lemma_bruteforce, counting_lemma_closed, reduced_tree_poly_bruteforce, shuffle_sign_sum_bruteforce,
    tree_poly_bruteforce, Caps,
};
use treecoeff::treepoly::{self, reduced_tree_value, xe_tables, OddTuple};
use treecoeff::{Error, MultiPoly, Partition, Rational};

use crate::args::{CoeffKind, Command, Format, OracleCommand, Variant};
use crate::cache::Cache;
use crate::error::{CliError, CliResult};
use crate::render;
use crate::verify;

pub struct Context {
    pub caps: Caps,
    pub cache: Option<Cache>,
    pub verbose: u8,
}

/// Rendered output plus the command's verdict, which may be a failure even
/// though the output should still be shown.
pub struct Outcome {
    pub text: String,
    pub status: CliResult<()>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: Ok(()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Request {
    Treepoly { k: u32, variant: Variant, x0_zero: bool },
    Coeff { kind: CoeffKind, lambda: Partition, mu: Partition },
    Table { n: u32 },
    Cup { lambda: Partition, mu: Partition },
    Witten { lambda: Partition },
}

enum Computed {
    Poly(MultiPoly),
    Family { k: u32, polys: Vec<(i64, MultiPoly)> },
    Number(Rational),
    Map(BTreeMap<Partition, Rational>),
    Table(TableDocument),
}

fn kind_name(kind: CoeffKind) -> &'static str {
    match kind {
        CoeffKind::B => "b",
        CoeffKind::A => "a",
    }
}

fn parse_params(params: &str) -> CliResult<BTreeMap<&str, &str>> {
    params
        .split(';')
        .filter(|s| !s.is_empty())
        .map(|item| {
            item.split_once('=')
                .ok_or_else(|| CliError::Usage(format!("malformed cache parameters {params:?}")))
        })
        .collect()
}

fn field<'a>(map: &BTreeMap<&str, &'a str>, key: &str) -> CliResult<&'a str> {
    map.get(key)
        .copied()
        .ok_or_else(|| CliError::Usage(format!("cache parameters lack {key:?}")))
}

fn parse_u32(s: &str) -> CliResult<u32> {
    s.parse().map_err(|_| CliError::Usage(format!("expected an integer, got {s:?}")))
}

fn bad_value(what: &str) -> CliError {
    CliError::Core(Error::Parse(format!("cached value is not a valid {what}")))
}

fn map_from_keys(terms: BTreeMap<String, Rational>) -> CliResult<BTreeMap<Partition, Rational>> {
    terms
        .into_iter()
        .map(|(k, v)| Ok((k.parse::<Partition>()?, v)))
        .collect()
}

impl Request {
    pub fn op(&self) -> &'static str {
        match self {
            Request::Treepoly { .. } => "treepoly",
            Request::Coeff { .. } => "coeff",
            Request::Table { .. } => "table",
            Request::Cup { .. } => "cup",
            Request::Witten { .. } => "witten",
        }
    }

    pub fn params(&self) -> String {
        match self {
            Request::Treepoly { k, variant, x0_zero } => format!("k={k};variant={variant};x0_zero={x0_zero}"),
            Request::Coeff { kind, lambda, mu } => {
                format!("kind={};lambda={};mu={}", kind_name(*kind), lambda.key(), mu.key())
            }
            Request::Table { n } => format!("n={n}"),
            Request::Cup { lambda, mu } => format!("lambda={};mu={}", lambda.key(), mu.key()),
            Request::Witten { lambda } => format!("lambda={}", lambda.key()),
        }
    }

    /// Inverse of `(op, params)`.
    pub fn parse(op: &str, params: &str) -> CliResult<Self> {
        let m = parse_params(params)?;
        Ok(match op {
            "treepoly" => Request::Treepoly {
                k: parse_u32(field(&m, "k")?)?,
                variant: field(&m, "variant")?.parse().map_err(CliError::Usage)?,
                x0_zero: field(&m, "x0_zero")? == "true",
            },
            "coeff" => Request::Coeff {
                kind: match field(&m, "kind")? {
                    "b" => CoeffKind::B,
                    "a" => CoeffKind::A,
                    other => return Err(CliError::Usage(format!("unknown coefficient kind {other:?}"))),
                },
                lambda: field(&m, "lambda")?.parse()?,
                mu: field(&m, "mu")?.parse()?,
            },
            "table" => Request::Table {
                n: parse_u32(field(&m, "n")?)?,
            },
            "cup" => Request::Cup {
                lambda: field(&m, "lambda")?.parse()?,
                mu: field(&m, "mu")?.parse()?,
            },
            "witten" => Request::Witten {
                lambda: field(&m, "lambda")?.parse()?,
            },
            other => return Err(CliError::Usage(format!("unknown cached operation {other:?}"))),
        })
    }

    fn compute(&self, caps: &Caps) -> CliResult<Computed> {
        Ok(match self {
            Request::Treepoly { k, variant, x0_zero } => {
                let k = *k;
                Caps::check("tree polynomial k", k as u64, caps.poly as u64, "--cap-poly")?;
                if *x0_zero && *variant != Variant::Reduced {
                    return Err(CliError::Usage("--x0-zero applies only to --variant reduced".into()));
                }
                match variant {
                    Variant::Reduced => {
                        let p = treepoly::reduced_tree_poly(k)?;
                        if *x0_zero {
                            Computed::Poly(p.substitute(0, &MultiPoly::zero(p.num_vars()))?)
                        } else {
                            Computed::Poly((*p).clone())
                        }
                    }
                    Variant::Full => Computed::Poly(treepoly::tree_poly(k)?),
                    Variant::L(n) => Computed::Poly(treepoly::l_poly(k, *n)?),
                    Variant::PFamily => {
                        let fam = treepoly::p_family(k)?;
                        let polys = (0..=k as i64)
                            .map(|s| Ok((2 * s + 1, fam.poly(2 * s + 1)?)))
                            .collect::<CliResult<_>>()?;
                        Computed::Family { k, polys }
                    }
                }
            }
            Request::Coeff { kind, lambda, mu } => Computed::Number(match kind {
                CoeffKind::B => coeff::b_lambda_mu(lambda, mu)?,
                CoeffKind::A => coeff::a_lambda_mu(lambda, mu)?,
            }),
            Request::Table { n } => {
                if *n == 0 {
                    return Err(Error::Domain("table weight must be at least 1".into()).into());
                }
                let t = coeff::shared_table(*n)?;
                Computed::Table(TableDocument::from_level(t.level(*n)?))
            }
            Request::Cup { lambda, mu } => Computed::Map(coeff::cup_coeff(lambda, mu)?),
            Request::Witten { lambda } => Computed::Map(coeff::witten_expansion(lambda)?),
        })
    }

    fn decode(&self, value: &Value) -> CliResult<Computed> {
        Ok(match self {
            Request::Treepoly { k, variant, .. } => {
                let nv = 2 * *k as usize + 1;
                let poly = |v: &Value| MultiPoly::from_json(nv, &v.to_string());
                if *variant == Variant::PFamily {
                    let items = value["family"].as_array().ok_or_else(|| bad_value("family"))?;
                    let polys = items
                        .iter()
                        .map(|item| {
                            let c = item["c"].as_i64().ok_or_else(|| bad_value("family"))?;
                            Ok((c, poly(&item["poly"])?))
                        })
                        .collect::<CliResult<Vec<_>>>()?;
                    if value["k"].as_u64() != Some(*k as u64) || polys.len() != *k as usize + 1 {
                        return Err(bad_value("family"));
                    }
                    Computed::Family { k: *k, polys }
                } else {
                    Computed::Poly(poly(value)?)
                }
            }
            Request::Coeff { .. } => Computed::Number(
                serde_json::from_value(value.clone()).map_err(|_| bad_value("rational"))?,
            ),
            Request::Table { n } => {
                let doc: TableDocument = serde_json::from_value(value.clone()).map_err(|_| bad_value("table"))?;
                doc.validate()?;
                if doc.weight != *n {
                    return Err(bad_value("table"));
                }
                Computed::Table(doc)
            }
            Request::Cup { .. } | Request::Witten { .. } => {
                let terms: BTreeMap<String, Rational> =
                    serde_json::from_value(value.clone()).map_err(|_| bad_value("coefficient map"))?;
                Computed::Map(map_from_keys(terms)?)
            }
        })
    }
}

impl Computed {
    fn to_value(&self) -> Value {
        match self {
            Computed::Poly(p) => serde_json::to_value(p),
            Computed::Family { k, polys } => Ok(json!({
                "k": k,
                "family": polys.iter().map(|(c, p)| json!({"c": c, "poly": p})).collect::<Vec<_>>(),
            })),
            Computed::Number(r) => serde_json::to_value(r),
            Computed::Map(m) => serde_json::to_value(m.iter().map(|(p, v)| (p.key(), v)).collect::<BTreeMap<_, _>>()),
            Computed::Table(doc) => serde_json::to_value(doc),
        }
        .expect("results serialize")
    }
}

/// Recomputes a cached entry from its operation and parameters.
pub fn recompute_cached(op: &str, params: &str, caps: &Caps) -> CliResult<Value> {
    Ok(Request::parse(op, params)?.compute(caps)?.to_value())
}

fn obtain(req: &Request, ctx: &Context) -> CliResult<Computed> {
    let (op, params) = (req.op(), req.params());
    if let Some(cache) = &ctx.cache {
        if let Some(value) = cache.get(op, &params) {
            match req.decode(&value) {
                Ok(c) => {
                    if ctx.verbose > 0 {
                        eprintln!("cache hit: {op} {params}");
                    }
                    return Ok(c);
                }
                Err(e) if ctx.verbose > 0 => eprintln!("discarding cache entry {op} {params}: {e}"),
                Err(_) => {}
            }
        }
    }
    let computed = req.compute(&ctx.caps)?;
    if let Some(cache) = &ctx.cache {
        cache.put(op, &params, computed.to_value())?;
    }
    Ok(computed)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("results serialize");
    s.push('\n');
    s
}

fn to_json_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("results serialize");
    s.push('\n');
    s
}

pub fn execute(cmd: &Command, format: Option<Format>, ctx: &Context) -> CliResult<Outcome> {
    let fmt = format.unwrap_or(Format::Text);
    match cmd {
        Command::Treepoly { k, variant, x0_zero } => {
            let req = Request::Treepoly {
                k: *k,
                variant: *variant,
                x0_zero: *x0_zero,
            };
            Ok(Outcome::ok(match obtain(&req, ctx)? {
                Computed::Poly(p) => match fmt {
                    Format::Json => to_json(&p),
                    Format::Text => format!("{}\n", p.to_text()),
                    Format::Latex => format!("{}\n", p.to_latex()),
                },
                fam @ Computed::Family { .. } => {
                    let Computed::Family { k, polys } = &fam else { unreachable!() };
                    match fmt {
                        Format::Json => to_json(&fam.to_value()),
                        Format::Text => polys.iter().map(|(c, p)| format!("P^{c} = {}\n", p.to_text())).collect(),
                        Format::Latex => polys
                            .iter()
                            .map(|(c, p)| format!("P_{{{k}}}^{{{c}}} = {}\n", p.to_latex()))
                            .collect(),
                    }
                }
                _ => unreachable!("treepoly yields polynomials"),
            }))
        }
        Command::Coeff { kind, lambda, mu } => {
            let mu = match mu {
                crate::args::MuArg::Given(m) => m.clone(),
                crate::args::MuArg::AutoN if lambda.is_empty() => Partition::empty(),
                crate::args::MuArg::AutoN => Partition::single(lambda.weight())?,
            };
            let req = Request::Coeff {
                kind: *kind,
                lambda: lambda.clone(),
                mu: mu.clone(),
            };
            let Computed::Number(value) = obtain(&req, ctx)? else { unreachable!() };
            Ok(Outcome::ok(match fmt {
                Format::Text => format!("{value}\n"),
                Format::Latex => format!("{}\n", render::rational_latex(&value)),
                Format::Json => to_json(&json!({
                    "kind": kind_name(*kind),
                    "lambda": lambda,
                    "mu": mu,
                    "value": value,
                })),
            }))
        }
        Command::Table { n } => {
            let Computed::Table(doc) = obtain(&Request::Table { n: *n }, ctx)? else { unreachable!() };
            Ok(Outcome::ok(match format.unwrap_or(Format::Json) {
                Format::Json => to_json_pretty(&doc),
                Format::Text => render::table_text(&doc),
                Format::Latex => render::table_latex(&doc),
            }))
        }
        Command::Cup { lambda, mu } => {
            let req = Request::Cup {
                lambda: lambda.clone(),
                mu: mu.clone(),
            };
            let Computed::Map(map) = obtain(&req, ctx)? else { unreachable!() };
            Ok(Outcome::ok(match fmt {
                Format::Json => to_json(&CupDocument::new(lambda.clone(), mu.clone(), &map)),
                Format::Text => render::map_text(&map),
                Format::Latex => format!("{}\n", render::map_latex(&map, "[W_{#}^*]")),
            }))
        }
        Command::Witten { lambda } => {
            let req = Request::Witten { lambda: lambda.clone() };
            let Computed::Map(map) = obtain(&req, ctx)? else { unreachable!() };
            Ok(Outcome::ok(match fmt {
                Format::Json => to_json(&json!({
                    "lambda": lambda,
                    "terms": map.iter().map(|(p, v)| (p.key(), v)).collect::<BTreeMap<_, _>>(),
                })),
                Format::Text => render::map_text(&map),
                Format::Latex => format!("{}\n", render::map_latex(&map, "\\tilde{\\kappa}_{#}")),
            }))
        }
        Command::Verify { level } => {
            let report = verify::run(*level, &ctx.caps, ctx.cache.as_ref(), ctx.verbose > 0);
            let text = match fmt {
                Format::Json => to_json_pretty(&report.checks),
                Format::Text => report.to_text(),
                Format::Latex => return Err(CliError::Usage("verify supports --format text or json".into())),
            };
            let failed = report.failed();
            let status = if failed == 0 {
                Ok(())
            } else {
                Err(CliError::VerifyFailed {
                    failed,
                    total: report.checks.len(),
                })
            };
            Ok(Outcome { text, status })
        }
        Command::Oracle { what } => {
            let report = oracle(what, ctx)?;
            let text = match fmt {
                Format::Json => to_json(&report),
                Format::Text => format!(
                    "{}\nbrute:  {}\nclosed: {}\n{}\n",
                    report.what,
                    report.brute,
                    report.closed,
                    if report.equal { "equal" } else { "unequal" }
                ),
                Format::Latex => return Err(CliError::Usage("oracle supports --format text or json".into())),
            };
            let status = if report.equal {
                Ok(())
            } else {
                Err(CliError::VerifyFailed { failed: 1, total: 1 })
            };
            Ok(Outcome { text, status })
        }
    }
}

#[derive(Serialize)]
struct OracleReport {
    what: String,
    brute: String,
    closed: String,
    equal: bool,
}

fn report<T: PartialEq + ToString>(what: String, brute: T, closed: T) -> OracleReport {
    OracleReport {
        what,
        equal: brute == closed,
        brute: brute.to_string(),
        closed: closed.to_string(),
    }
}

fn oracle(what: &OracleCommand, ctx: &Context) -> CliResult<OracleReport> {
    let caps = &ctx.caps;
    Ok(match what {
        OracleCommand::Treepoly { k } => {
            Caps::check("tree polynomial k", *k as u64, caps.poly as u64, "--cap-poly")?;
            let brute = reduced_tree_poly_bruteforce(*k, caps)?;
            let recursion = treepoly::reduced_tree_poly(*k)?;
            report(format!("treepoly k={k}"), brute, (*recursion).clone())
        }
        OracleCommand::ShuffleSum { tuple } => {
            let values = tuple
                .split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("invalid tuple {tuple:?}")))?;
            let odd = OddTuple::new(values.clone())?;
            Caps::check("tree polynomial k", odd.k() as u64, caps.poly as u64, "--cap-poly")?;
            let brute = BigInt::from(tree_poly_bruteforce(&values, caps)?);
            let recursion = BigInt::from(values[0]) * reduced_tree_value(&odd)?;
            let key: Vec<String> = values.iter().map(u32::to_string).collect();
            report(format!("shuffle-sum {}", key.join(",")), brute, recursion)
        }
        OracleCommand::Counting { n, s } => report(
            format!("counting n={n} s={s}"),
            counting_lemma_bruteforce(*n, *s, caps)?,
            counting_lemma_closed(*n, *s)?,
        ),
        OracleCommand::Xe { variant, n, m } => report(
            format!("xe {variant} n={n} m={m}"),
            BigInt::from(shuffle_sign_sum_bruteforce(*variant, *n, *m, caps)?),
            xe_tables(*variant, *n, *m).x,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(1u32..9, 0..6).prop_map(|v| Partition::from_nonzero(&v))
    }

    proptest! {
        #[test]
        fn cup_params_round_trip(lambda in partition(), mu in partition()) {
            let r = Request::Cup { lambda, mu };
            prop_assert_eq!(Request::parse(r.op(), &r.params()).unwrap(), r);
        }
    }

    #[test]
    fn params_round_trip() {
        let reqs = [
            Request::Treepoly {
                k: 2,
                variant: Variant::L(3),
                x0_zero: false,
            },
            Request::Coeff {
                kind: CoeffKind::A,
                lambda: Partition::from_nonzero(&[1, 1]),
                mu: Partition::from_nonzero(&[2]),
            },
            Request::Table { n: 4 },
            Request::Cup {
                lambda: Partition::from_nonzero(&[1]),
                mu: Partition::empty(),
            },
            Request::Witten {
                lambda: Partition::from_nonzero(&[2, 1]),
            },
        ];
        for r in reqs {
            assert_eq!(Request::parse(r.op(), &r.params()).unwrap(), r);
        }
    }

    #[test]
    fn values_decode_to_themselves() {
        let caps = Caps::default();
        for r in [
            Request::Treepoly {
                k: 2,
                variant: Variant::PFamily,
                x0_zero: false,
            },
            Request::Table { n: 3 },
            Request::Witten {
                lambda: Partition::from_nonzero(&[1, 1, 1]),
            },
        ] {
            let v = r.compute(&caps).unwrap().to_value();
            assert_eq!(r.decode(&v).unwrap().to_value(), v);
        }
    }
}
