use aybe_core::checks::{infinitesimal_symmetries, laurent_in_v, LaurentTensor, SolutionHandle};
use aybe_core::closedforms::{self, r31_closed_as_printed, yang2_aybe_at};
use aybe_core::jmatrix::build_j;
use aybe_core::kernel::{Constraint, Sampler};
use aybe_core::solspace::compute_r;
use aybe_core::{Error, Rational, Tensor2};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::output::{self, columns, point, point_text, tensor, tensor_text};
use crate::{Builtin, CliError, Format, Oracle, Sampling, Source};

/// What a command prints, and whether it counts as success.
pub struct Output {
    pub text: String,
    pub passed: bool,
}

pub fn emit(format: Format, value: Value, text: String, passed: bool) -> Output {
    let text = match format {
        Format::Json => format!("{}\n", serde_json::to_string(&value).expect("serializable")),
        Format::Text => text,
    };
    Output { text, passed }
}

pub fn pair_message(e: &Error) -> String {
    match e {
        Error::InvalidPair { n, d } if num_integer::gcd(*n, *d) != 1 => {
            format!("n and d must be coprime (got n = {n}, d = {d})")
        }
        Error::InvalidPair { n, d } => format!("need 0 < d < n (got n = {n}, d = {d})"),
        other => other.to_string(),
    }
}

/// Degenerate points, to be resampled and reported rather than failed.
pub fn is_degenerate(e: &Error) -> bool {
    matches!(
        e,
        Error::SingularResidue | Error::DimensionDrop { .. } | Error::PoleHit(_) | Error::CoincidingPoints
    )
}

/// The handle named by `--n/--d` or `--builtin`, and its `d` if any.
pub fn handle(source: &Source) -> Result<(SolutionHandle, Option<usize>), CliError> {
    match (source.n, source.d, source.builtin) {
        (Some(n), Some(d), None) => Ok((SolutionHandle::construction(n, d)?, Some(d))),
        (None, None, Some(b)) => Ok(match b {
            Builtin::Yang2 => (SolutionHandle::three(2, "yang2", yang2_aybe_at), None),
            Builtin::R21 => (SolutionHandle::three(2, "r21", closedforms::r21_closed), Some(1)),
            Builtin::R31 => (SolutionHandle::three(3, "r31", closedforms::r31_closed), Some(1)),
            Builtin::R31Printed => (SolutionHandle::three(3, "r31-printed", r31_closed_as_printed), Some(1)),
        }),
        _ => Err(CliError::Usage("give either --n and --d, or --builtin".into())),
    }
}

fn check_points(v: &Rational, y1: &Rational, y2: &Rational) -> Result<(), CliError> {
    if v.is_zero() {
        return Err(CliError::Usage("the construction requires v≠0".into()));
    }
    if y1 == y2 {
        return Err(CliError::Usage("the construction requires y₁≠y₂".into()));
    }
    Ok(())
}

pub fn construct(
    n: usize,
    d: usize,
    v: &Rational,
    y1: &Rational,
    y2: &Rational,
    format: Format,
) -> Result<Output, CliError> {
    aybe_core::jmatrix::validate_pair(n, d)?;
    check_points(v, y1, y2)?;
    let r = compute_r(n, d, v, y1, y2)?;
    let mut value = tensor(&r);
    value["nondegenerate"] = json!(r.nondegenerate());
    let text = format!(
        "r({n},{d}) at v={v} y1={y1} y2={y2}  nondegenerate={}\n{}",
        r.nondegenerate(),
        tensor_text(&r)
    );
    Ok(emit(format, value, text, true))
}

fn laurent_json(l: &LaurentTensor) -> Value {
    let orders: Vec<Value> = (-1..=l.max_order())
        .map(|k| {
            let t = l.coeff(k);
            json!({ "k": k, "coeffs": tensor(&t)["coeffs"].clone() })
        })
        .collect();
    json!({
        "n": l.n(),
        "pole_scalar": l.pole_scalar().as_ref().map(output::rational),
        "orders": orders,
    })
}

pub fn expand(source: &Source, y1: &Rational, y2: &Rational, order: usize, format: Format) -> Result<Output, CliError> {
    let (h, _) = handle(source)?;
    if y1 == y2 {
        return Err(CliError::Usage("the expansion requires y₁≠y₂".into()));
    }
    let l = laurent_in_v(&h, y1, y2, order)?;
    let mut value = laurent_json(&l);
    value["solution"] = json!(h.name());
    value["y1"] = output::rational(y1);
    value["y2"] = output::rational(y2);
    let mut text = format!("{} at y1={y1} y2={y2}\n", h.name());
    if let Some(s) = l.pole_scalar() {
        text.push_str(&format!("r_-1 = {s}·1⊗1\n"));
    }
    for k in -1..=l.max_order() {
        text.push_str(&format!("r_{k}\n{}", tensor_text(&l.coeff(k))));
    }
    Ok(emit(format, value, text, true))
}

pub fn jmatrix(n: usize, d: usize, format: Format) -> Result<Output, CliError> {
    let j = build_j(n, d)?;
    let text = format!("J({n},{d}), split {}\n{}", j.split(), output::matrix_text(j.matrix()));
    Ok(emit(format, output::blocked_j(&j), text, true))
}

/// `(v, y₁, y₂)` or `(y₁, y₂)` draws, resampled past degenerate points.
fn draw<T>(
    s: &mut Sampler,
    arity: usize,
    forbid: &[Constraint],
    skipped: &mut Vec<Vec<Rational>>,
    mut f: impl FnMut(&[Rational]) -> aybe_core::Result<T>,
) -> Result<(Vec<Rational>, T), CliError> {
    Ok(s.draw_accepted(arity, |t| {
        if forbid.iter().any(|c| c.is_violated(t)) {
            return Ok(None);
        }
        match f(t) {
            Ok(x) => Ok(Some((t.to_vec(), x))),
            Err(e) if is_degenerate(&e) => {
                skipped.push(t.to_vec());
                Ok(None)
            }
            Err(e) => Err(e),
        }
    })?)
}

pub fn oracle(which: Oracle, as_printed: bool, sampling: &Sampling, format: Format) -> Result<Output, CliError> {
    if as_printed && which != Oracle::R31 {
        return Err(CliError::Usage("--as-printed applies to r31 only".into()));
    }
    let (name, n) = match which {
        Oracle::R21 => ("r21", 2),
        Oracle::R31 => ("r31", 3),
        Oracle::C21 => ("c21", 2),
        Oracle::C31 => ("c31", 3),
    };
    let formula = closedforms::by_name(name).expect("known oracle");
    let handle = SolutionHandle::construction(n, 1)?;
    let mut s = Sampler::new(sampling.seed);
    let mut skipped = Vec::new();
    let mut points = Vec::new();
    for _ in 0..sampling.samples {
        let (p, (alg, oracle)) = match which {
            Oracle::R21 | Oracle::R31 => {
                let forbid = [Constraint::NonZero(0), Constraint::Distinct(vec![1, 2])];
                let (p, pair) = draw(&mut s, 3, &forbid, &mut skipped, |t| {
                    let alg = compute_r(n, 1, &t[0], &t[1], &t[2])?;
                    let oracle = if as_printed {
                        r31_closed_as_printed(&t[0], &t[1], &t[2])?
                    } else {
                        (formula.evaluator)(&t[0], &t[1], &t[2])?
                    };
                    Ok((alg, oracle))
                })?;
                (vec![("v", p[0].clone()), ("y1", p[1].clone()), ("y2", p[2].clone())], pair)
            }
            Oracle::C21 | Oracle::C31 => {
                let forbid = [Constraint::Distinct(vec![0, 1])];
                let (p, pair) = draw(&mut s, 2, &forbid, &mut skipped, |t| {
                    let alg = laurent_in_v(&handle, &t[0], &t[1], 0)?.coeff(0).pr();
                    let oracle = (formula.evaluator)(&Rational::zero(), &t[0], &t[1])?;
                    Ok((alg, oracle))
                })?;
                (vec![("y1", p[0].clone()), ("y2", p[1].clone())], pair)
            }
        };
        let diff: Tensor2 = &alg - &oracle;
        points.push((p, diff));
    }
    points.sort_by(|a, b| a.0.iter().map(|x| &x.1).cmp(b.0.iter().map(|x| &x.1)));
    let equal = points.iter().all(|(_, d)| d.is_zero());
    let label = if as_printed { "r31 (as printed)" } else { name };
    let json_points: Vec<Value> = points
        .iter()
        .map(|(p, diff)| {
            let mut v = json!({ "point": point(p), "equal": diff.is_zero() });
            if !diff.is_zero() {
                v["difference"] = tensor(diff);
            }
            v
        })
        .collect();
    let value = json!({
        "oracle": label,
        "n": n,
        "d": 1,
        "seed": sampling.seed,
        "equal": equal,
        "points": json_points,
        "skipped": skipped.iter().map(|t| Value::Array(t.iter().map(output::rational).collect())).collect::<Vec<_>>(),
    });
    let rows: Vec<Vec<String>> = points
        .iter()
        .map(|(p, diff)| vec![point_text(p), diff.is_zero().to_string()])
        .collect();
    let mut text = format!("oracle {label} vs construction r({n},1), seed {}\n", sampling.seed);
    text.push_str(&columns(&["point", "equal"], &rows));
    if let Some((p, diff)) = points.iter().find(|(_, d)| !d.is_zero()) {
        text.push_str(&format!("difference (construction − oracle) at {}\n{}", point_text(p), tensor_text(diff)));
    }
    text.push_str(if equal { "verdict EQUAL\n" } else { "verdict DIFFERENT\n" });
    Ok(emit(format, value, text, equal))
}

pub fn symmetries(source: &Source, sampling: &Sampling, format: Format) -> Result<Output, CliError> {
    let (h, _) = handle(source)?;
    let mut s = Sampler::new(sampling.seed);
    let mut skipped = Vec::new();
    let forbid = [Constraint::Distinct(vec![0, 1])];
    let mut bars = Vec::new();
    for _ in 0..sampling.samples.max(1) {
        let (_, bar) = draw(&mut s, 2, &forbid, &mut skipped, |t| {
            Ok(laurent_in_v(&h, &t[0], &t[1], 0)?.coeff(0).pr())
        })?;
        bars.push(bar);
    }
    let basis = infinitesimal_symmetries(&bars, h.n());
    let value = json!({
        "solution": h.name(),
        "n": h.n(),
        "seed": sampling.seed,
        "samples": bars.len(),
        "symmetry_dim": basis.len(),
        "basis": basis.iter().map(output::matrix_rows).collect::<Vec<_>>(),
    });
    let mut text = format!(
        "{}: infinitesimal symmetries of pr⊗pr(r0) over {} samples: dimension {}\n",
        h.name(),
        bars.len(),
        basis.len()
    );
    for (k, a) in basis.iter().enumerate() {
        text.push_str(&format!("basis element {}\n{}", k + 1, output::matrix_text(a)));
    }
    Ok(emit(format, value, text, true))
}
