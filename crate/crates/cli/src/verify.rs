//! `aybe verify`: every requested law at `--samples` seeded points, each
//! law drawing from its own stream seeded by `--seed`.

use std::cell::RefCell;
use std::collections::BTreeMap;

use aybe_core::checks::{
    aybe_check, condition_battery, cybe_check, diagonal_residue, dual_aybe_check, laurent_in_v, qybe_check,
    r0_r1_identity_check, unitarity_check, AybePoint, Conditions, LaurentTensor, SolutionHandle, YTriple,
};
use aybe_core::kernel::{Constraint, Sampler};
use aybe_core::tensor::{tensor_p, Tensor};
use aybe_core::{Rational, Tensor2};
use serde_json::{json, Value};

use crate::commands::{emit, handle, is_degenerate, Output};
use crate::output::{self, columns, point, point_text, tensor, tensor_text};
use crate::{CliError, Format, Law, Sampling, Source};

type Point = Vec<(&'static str, Rational)>;

enum Verdict {
    Holds,
    /// residual as JSON, and as text
    Fails(Value, String),
    /// a known degenerate point, resampled
    Skip(&'static str),
}

fn residual<const K: usize>(t: &Tensor<K>) -> Verdict {
    if t.is_zero() {
        Verdict::Holds
    } else {
        Verdict::Fails(tensor(t), tensor_text(t))
    }
}

struct Record {
    law: &'static str,
    point: Point,
    failure: Option<(Value, String)>,
}

struct Skipped {
    law: &'static str,
    point: Point,
    reason: String,
}

struct Battery {
    symmetry_dim: usize,
    pole_scalar: Option<Rational>,
    conditions: Conditions,
}

fn law_name(law: Law) -> &'static str {
    match law {
        Law::Aybe => "aybe",
        Law::Dual => "dual",
        Law::Unitarity => "unitarity",
        Law::Nondeg => "nondeg",
        Law::Cybe => "cybe",
        Law::Qybe => "qybe",
        Law::R0r1 => "r0r1",
        Law::Residue => "residue",
        Law::Conds => "conds",
    }
}

/// Laurent data per `(y₁, y₂)`, so each pair is interpolated once.
struct LaurentCache<'a> {
    h: &'a SolutionHandle,
    cache: RefCell<BTreeMap<(Rational, Rational), LaurentTensor>>,
}

impl<'a> LaurentCache<'a> {
    fn new(h: &'a SolutionHandle) -> Self {
        LaurentCache {
            h,
            cache: RefCell::new(BTreeMap::new()),
        }
    }

    fn get(&self, y1: &Rational, y2: &Rational) -> aybe_core::Result<LaurentTensor> {
        let key = (y1.clone(), y2.clone());
        if let Some(l) = self.cache.borrow().get(&key) {
            return Ok(l.clone());
        }
        let l = laurent_in_v(self.h, y1, y2, 1)?;
        self.cache.borrow_mut().insert(key, l.clone());
        Ok(l)
    }
}

struct Ctx<'a> {
    h: &'a SolutionHandle,
    samples: usize,
    seed: u64,
    records: Vec<Record>,
    skipped: Vec<Skipped>,
}

impl Ctx<'_> {
    fn run(
        &mut self,
        law: &'static str,
        names: &'static [&'static str],
        forbid: &[Constraint],
        mut eval: impl FnMut(&[Rational]) -> aybe_core::Result<Verdict>,
    ) -> Result<(), CliError> {
        let mut s = Sampler::new(self.seed);
        let named = |t: &[Rational]| -> Point { names.iter().copied().zip(t.iter().cloned()).collect() };
        let mut records = Vec::new();
        for _ in 0..self.samples {
            let skipped = &mut self.skipped;
            let record = s.draw_accepted(names.len(), |t| {
                if forbid.iter().any(|c| c.is_violated(t)) {
                    return Ok(None);
                }
                let verdict = match eval(t) {
                    Ok(v) => v,
                    Err(e) if is_degenerate(&e) => {
                        skipped.push(Skipped {
                            law,
                            point: named(t),
                            reason: e.to_string(),
                        });
                        return Ok(None);
                    }
                    Err(e) => return Err(e),
                };
                Ok(match verdict {
                    Verdict::Holds => Some(Record {
                        law,
                        point: named(t),
                        failure: None,
                    }),
                    Verdict::Fails(j, txt) => Some(Record {
                        law,
                        point: named(t),
                        failure: Some((j, txt)),
                    }),
                    Verdict::Skip(reason) => {
                        skipped.push(Skipped {
                            law,
                            point: named(t),
                            reason: reason.into(),
                        });
                        None
                    }
                })
            })?;
            records.push(record);
        }
        records.sort_by(|a, b| a.point.iter().map(|x| &x.1).cmp(b.point.iter().map(|x| &x.1)));
        self.records.extend(records);
        Ok(())
    }
}

const AYBE_NAMES: &[&str] = &["u", "v", "y1", "y2", "y3"];
const VYY: &[&str] = &["v", "y1", "y2"];
const YYY: &[&str] = &["y1", "y2", "y3"];

fn aybe_forbid() -> Vec<Constraint> {
    vec![
        Constraint::NonZero(0),
        Constraint::NonZero(1),
        Constraint::NonZeroSum(vec![0, 1]),
        Constraint::Distinct(vec![2, 3, 4]),
    ]
}

fn vyy_forbid() -> Vec<Constraint> {
    vec![Constraint::NonZero(0), Constraint::Distinct(vec![1, 2])]
}

fn yyy_forbid() -> Vec<Constraint> {
    vec![Constraint::Distinct(vec![0, 1, 2])]
}

fn run_law(ctx: &mut Ctx, law: Law, v0: &Rational) -> Result<Option<Battery>, CliError> {
    let h = ctx.h;
    let name = law_name(law);
    match law {
        Law::Aybe => ctx.run(name, AYBE_NAMES, &aybe_forbid(), |t| {
            Ok(residual(&aybe_check(h, &AybePoint::from_slice(t))?))
        })?,
        Law::Dual => ctx.run(name, AYBE_NAMES, &aybe_forbid(), |t| {
            Ok(residual(&dual_aybe_check(h, &AybePoint::from_slice(t))?))
        })?,
        Law::Unitarity => ctx.run(name, VYY, &vyy_forbid(), |t| {
            Ok(residual(&unitarity_check(h, &t[0], &t[1], &t[2])?))
        })?,
        Law::Nondeg => ctx.run(name, VYY, &vyy_forbid(), |t| {
            let r = h.eval(&t[0], &t[1], &t[2])?;
            Ok(if r.nondegenerate() {
                Verdict::Holds
            } else if t[0] == &t[1] - &t[2] {
                // the construction degenerates along this hyperplane
                Verdict::Skip("degenerate on v = y1 - y2")
            } else {
                Verdict::Fails(json!({ "tensor": tensor(&r) }), format!("degenerate tensor\n{}", tensor_text(&r)))
            })
        })?,
        Law::Cybe => {
            let cache = LaurentCache::new(h);
            ctx.run(name, YYY, &yyy_forbid(), |t| {
                let c = |a: &Rational, b: &Rational| Ok(cache.get(a, b)?.coeff(0).pr());
                Ok(residual(&cybe_check(c, &YTriple::from_slice(t))?))
            })?
        }
        Law::Qybe => ctx.run(name, YYY, &yyy_forbid(), |t| {
            Ok(residual(&qybe_check(h.at_fixed_v(v0.clone()), &YTriple::from_slice(t))?))
        })?,
        Law::R0r1 => {
            let cache = LaurentCache::new(h);
            ctx.run(name, YYY, &yyy_forbid(), |t| {
                let p = YTriple::from_slice(t);
                let pole = cache.get(&p.y1, &p.y2)?;
                let Some(lambda) = pole.pole_scalar() else {
                    let r = pole.coeff(-1);
                    return Ok(Verdict::Fails(
                        json!({ "pole": tensor(&r) }),
                        format!("r_-1 is not a multiple of 1⊗1\n{}", tensor_text(&r)),
                    ));
                };
                let r0 = |a: &Rational, b: &Rational| Ok(cache.get(a, b)?.coeff(0));
                let r1 = |a: &Rational, b: &Rational| Ok(cache.get(a, b)?.coeff(1));
                Ok(residual(&r0_r1_identity_check(r0, r1, &lambda, &p)?))
            })?
        }
        Law::Residue => {
            let p_n = tensor_p(h.n());
            ctx.run(name, &["v", "y1"], &[Constraint::NonZero(0)], |t| {
                let res: Tensor2 = diagonal_residue(h, &t[0], &t[1])?;
                Ok(if res.as_multiple_of(&p_n).is_some() {
                    Verdict::Holds
                } else {
                    Verdict::Fails(tensor(&res), format!("residue not in span{{P}}\n{}", tensor_text(&res)))
                })
            })?
        }
        Law::Conds => {
            let mut rep = condition_battery(h, v0, ctx.seed, ctx.samples)?;
            rep.checks.sort_by(|a, b| {
                (a.law, a.point.iter().map(|x| &x.1).collect::<Vec<_>>())
                    .cmp(&(b.law, b.point.iter().map(|x| &x.1).collect::<Vec<_>>()))
            });
            for c in rep.checks {
                let failure = (!c.residual_zero).then(|| {
                    // recompute the residual for the report
                    let vals: Vec<Rational> = c.point.iter().map(|x| x.1.clone()).collect();
                    let verdict = match c.law {
                        "aybe" => aybe_check(h, &AybePoint::from_slice(&vals)).map(|t| residual(&t)),
                        _ => unitarity_check(h, &vals[0], &vals[1], &vals[2]).map(|t| residual(&t)),
                    };
                    match verdict {
                        Ok(Verdict::Fails(j, txt)) => (j, txt),
                        _ => (Value::Null, String::new()),
                    }
                });
                ctx.records.push(Record {
                    law: c.law,
                    point: c.point,
                    failure,
                });
            }
            return Ok(Some(Battery {
                symmetry_dim: rep.symmetry_dim,
                pole_scalar: rep.pole_scalar,
                conditions: rep.conditions,
            }));
        }
    }
    Ok(None)
}

/// Without infinitesimal symmetries, (a)–(d) are equivalent; a split
/// verdict there is a failure. With symmetries they are only reported.
fn battery_consistent(b: &Battery) -> bool {
    let c = b.conditions;
    b.symmetry_dim > 0 || (c.a == c.b && c.b == c.c && c.c == c.d)
}

pub fn run(source: &Source, laws: &[Law], v0: &Rational, sampling: &Sampling, format: Format) -> Result<Output, CliError> {
    let (h, d) = handle(source)?;
    let mut ctx = Ctx {
        h: &h,
        samples: sampling.samples,
        seed: sampling.seed,
        records: Vec::new(),
        skipped: Vec::new(),
    };
    let mut battery = None;
    let mut seen = Vec::new();
    for &law in laws {
        if seen.contains(&law) {
            continue;
        }
        seen.push(law);
        if let Some(b) = run_law(&mut ctx, law, v0)? {
            battery = Some(b);
        }
    }
    let first_failure = ctx.records.iter().find(|r| r.failure.is_some());
    let passed = first_failure.is_none() && battery.as_ref().map_or(true, battery_consistent);

    let mut value = json!({
        "solution": h.name(),
        "n": h.n(),
        "d": d,
        "seed": sampling.seed,
        "laws": seen.iter().map(|&l| law_name(l)).collect::<Vec<_>>(),
        "v0": output::rational(v0),
        "checks": ctx.records.iter().map(|r| json!({
            "law": r.law,
            "point": point(&r.point),
            "residual_zero": r.failure.is_none(),
        })).collect::<Vec<_>>(),
        "skipped": ctx.skipped.iter().map(|s| json!({
            "law": s.law,
            "point": point(&s.point),
            "reason": s.reason,
        })).collect::<Vec<_>>(),
    });
    if let Some(b) = &battery {
        value["symmetry_dim"] = json!(b.symmetry_dim);
        value["pole_scalar"] = json!(b.pole_scalar.as_ref().map(|x| x.to_string()));
        let c = b.conditions;
        value["conditions"] = json!({ "a": c.a, "b": c.b, "c": c.c, "d": c.d });
    }
    if let Some(r) = first_failure {
        let (residual, _) = r.failure.as_ref().expect("failing record");
        value["failure"] = json!({ "law": r.law, "point": point(&r.point), "residual": residual });
    }
    value["passed"] = json!(passed);

    let mut text = format!("solution {}  n={}", h.name(), h.n());
    if let Some(d) = d {
        text.push_str(&format!("  d={d}"));
    }
    text.push_str(&format!("  seed={}  v0={v0}\n", sampling.seed));
    let rows: Vec<Vec<String>> = ctx
        .records
        .iter()
        .map(|r| vec![r.law.to_string(), point_text(&r.point), r.failure.is_none().to_string()])
        .collect();
    text.push_str(&columns(&["law", "point", "residual_zero"], &rows));
    for s in &ctx.skipped {
        text.push_str(&format!("skipped {} at {}: {}\n", s.law, point_text(&s.point), s.reason));
    }
    if let Some(b) = &battery {
        let c = b.conditions;
        text.push_str(&format!("symmetry_dim {}\n", b.symmetry_dim));
        if let Some(s) = &b.pole_scalar {
            text.push_str(&format!("pole_scalar {s}\n"));
        }
        text.push_str(&format!("conditions a={} b={} c={} d={}\n", c.a, c.b, c.c, c.d));
    }
    if let Some(r) = first_failure {
        let (_, txt) = r.failure.as_ref().expect("failing record");
        text.push_str(&format!("first failure: {} at {}\n{txt}", r.law, point_text(&r.point)));
    }
    text.push_str(if passed { "verdict PASS\n" } else { "verdict FAIL\n" });
    Ok(emit(format, value, text, passed))
}
