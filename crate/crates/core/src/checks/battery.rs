//! The QYBE condition battery: for a unitary AYBE solution with a simple
//! pole in `v`, the QYBE at fixed `v₀` (a), the scalar product
//! `r(u)r(−u) ∝ 𝟙⊗𝟙` (b), the scalar derivative condition on `r₀ − r̄₀` (c)
//! and the traceless part of the `r̄₀` triple combination (d) are checked on
//! seeded samples, together with the symmetry dimension of `r̄₀`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::kernel::{Constraint, Rational, Sampler};
use crate::tensor::{Slot, Tensor2};
use crate::{Error, Result};

use super::laurent::{adaptive_interpolate, derivative, eval_tensor_poly, laurent_in_v};
use super::laws::{aybe_check, qybe_check, unitarity_check, AybePoint, YTriple};
use super::symmetry::{infinitesimal_symmetries, s_product};
use super::SolutionHandle;

/// One evaluated identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub law: &'static str,
    pub point: Vec<(&'static str, Rational)>,
    pub residual_zero: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conditions {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatteryReport {
    pub solution: String,
    pub n: usize,
    pub seed: u64,
    pub v0: Rational,
    pub checks: Vec<CheckRecord>,
    /// `λ` with `r₋₁ = λ·𝟙⊗𝟙` at the first sampled pair, if of that form.
    pub pole_scalar: Option<Rational>,
    /// Dimension of the infinitesimal symmetries of `r̄₀` over the samples.
    pub symmetry_dim: usize,
    pub conditions: Conditions,
}

impl BatteryReport {
    /// True iff every recorded prerequisite check had zero residual.
    pub fn prerequisites_hold(&self) -> bool {
        self.checks.iter().all(|c| c.residual_zero)
    }
}

fn is_degenerate(e: &Error) -> bool {
    matches!(
        e,
        Error::SingularResidue | Error::DimensionDrop { .. } | Error::PoleHit(_) | Error::CoincidingPoints
    )
}

/// Draws points until `f` evaluates without hitting a degenerate point.
fn sample<T>(
    s: &mut Sampler,
    arity: usize,
    constraints: &[Constraint],
    mut f: impl FnMut(&[Rational]) -> Result<T>,
) -> Result<(Vec<Rational>, T)> {
    s.draw_accepted(arity, |t| {
        if constraints.iter().any(|c| c.is_violated(t)) {
            return Ok(None);
        }
        match f(t) {
            Ok(x) => Ok(Some((t.to_vec(), x))),
            Err(e) if is_degenerate(&e) => Ok(None),
            Err(e) => Err(e),
        }
    })
}

fn named(names: &[&'static str], vals: &[Rational]) -> Vec<(&'static str, Rational)> {
    names.iter().copied().zip(vals.iter().cloned()).collect()
}

pub(crate) fn r0_at(r: &SolutionHandle, y1: &Rational, y2: &Rational) -> Result<Tensor2> {
    Ok(laurent_in_v(r, y1, y2, 0)?.coeff(0))
}

/// `∂/∂y_i (r₀ − r̄₀) ∝ 𝟙⊗𝟙` for `i = 1, 2` at `(y₁, y₂)`.
///
/// `Q = (y₂ − y₁)(r₀ − r̄₀)` is polynomial in each `y_i`; it is interpolated
/// in one variable with the other fixed and differentiated exactly.
pub fn condition_c_holds(r: &SolutionHandle, y1: &Rational, y2: &Rational) -> Result<bool> {
    let n = r.n();
    let cap = 2 * n + 2;
    let gap = y2 - y1;
    if gap == Rational::from_integer(0.into()) {
        return Err(Error::CoincidingPoints);
    }
    let trace_part = |a: &Rational, b: &Rational| -> Result<Tensor2> {
        let r0 = r0_at(r, a, b)?;
        Ok(&r0 - &r0.pr())
    };
    let q1 = adaptive_interpolate(n, y2, cap, |t| Ok(trace_part(t, y2)?.scale(&(y2 - t))))?;
    let q2 = adaptive_interpolate(n, y1, cap, |t| Ok(trace_part(y1, t)?.scale(&(t - y1))))?;
    let inv = gap.recip();
    let inv2 = &inv * &inv;
    let d1 = &eval_tensor_poly(n, &derivative(&q1), y1).scale(&inv) + &eval_tensor_poly(n, &q1, y1).scale(&inv2);
    let d2 = &eval_tensor_poly(n, &derivative(&q2), y2).scale(&inv) - &eval_tensor_poly(n, &q2, y2).scale(&inv2);
    let one = Tensor2::identity(n);
    Ok(d1.as_multiple_of(&one).is_some() && d2.as_multiple_of(&one).is_some())
}

/// Runs the battery on `samples` seeded points per condition.
///
/// The AYBE and unitarity are evaluated first and recorded in `checks`;
/// the conditions are reported regardless, so callers decide how to treat
/// a failed prerequisite.
pub fn condition_battery(r: &SolutionHandle, v0: &Rational, seed: u64, samples: usize) -> Result<BatteryReport> {
    let n = r.n();
    let mut s = Sampler::new(seed);
    let mut checks = Vec::new();
    let distinct_y = |first: usize| Constraint::Distinct((first..first + 3).collect());

    for _ in 0..samples {
        let aybe_forbid = [
            Constraint::NonZero(0),
            Constraint::NonZero(1),
            Constraint::NonZeroSum(alloc::vec![0, 1]),
            distinct_y(2),
        ];
        let (t, res) = sample(&mut s, 5, &aybe_forbid, |t| aybe_check(r, &AybePoint::from_slice(t)))?;
        checks.push(CheckRecord {
            law: "aybe",
            point: named(&["u", "v", "y1", "y2", "y3"], &t),
            residual_zero: res.is_zero(),
        });
        let unit_forbid = [Constraint::NonZero(0), Constraint::Distinct(alloc::vec![1, 2])];
        let (t, res) = sample(&mut s, 3, &unit_forbid, |t| unitarity_check(r, &t[0], &t[1], &t[2]))?;
        checks.push(CheckRecord {
            law: "unitarity",
            point: named(&["v", "y1", "y2"], &t),
            residual_zero: res.is_zero(),
        });
    }

    let mut a = true;
    for _ in 0..samples {
        let (_, res) = sample(&mut s, 3, &[distinct_y(0)], |t| {
            qybe_check(r.at_fixed_v(v0.clone()), &YTriple::from_slice(t))
        })?;
        a &= res.is_zero();
    }

    let one = Tensor2::identity(n);
    let mut b = true;
    for _ in 0..samples {
        let forbid = [Constraint::NonZero(0), Constraint::Distinct(alloc::vec![1, 2])];
        let (_, prod) = sample(&mut s, 3, &forbid, |t| s_product(r, &t[0], &t[1], &t[2]))?;
        b &= prod.as_multiple_of(&one).is_some();
    }

    let pair = [Constraint::Distinct(alloc::vec![0, 1])];
    let mut bars = Vec::new();
    let mut pole_scalar = None;
    for k in 0..samples.max(1) {
        let (_, l) = sample(&mut s, 2, &pair, |t| laurent_in_v(r, &t[0], &t[1], 0))?;
        if k == 0 {
            pole_scalar = l.pole_scalar();
        }
        bars.push(l.coeff(0).pr());
    }
    let symmetry_dim = infinitesimal_symmetries(&bars, n).len();

    let mut d = true;
    for _ in 0..samples {
        let (_, combo) = sample(&mut s, 3, &[distinct_y(0)], |t| {
            let p = YTriple::from_slice(t);
            let x = r0_at(r, &p.y1, &p.y2)?.pr().embed(Slot::S12);
            let y = r0_at(r, &p.y1, &p.y3)?.pr().embed(Slot::S13);
            let z = r0_at(r, &p.y2, &p.y3)?.pr().embed(Slot::S23);
            Ok((&(&(&x * &y) - &(&z * &x)) + &(&y * &z)).pr())
        })?;
        d &= combo.is_zero();
    }

    let mut c = true;
    for _ in 0..samples {
        let (_, ok) = sample(&mut s, 2, &pair, |t| condition_c_holds(r, &t[0], &t[1]))?;
        c &= ok;
    }

    Ok(BatteryReport {
        solution: String::from(r.name()),
        n,
        seed,
        v0: v0.clone(),
        checks,
        pole_scalar,
        symmetry_dim,
        conditions: Conditions { a, b, c, d },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedforms::yang2_aybe_at;
    use crate::kernel::{int, rat};

    #[test]
    fn battery_on_2_1() {
        let r = SolutionHandle::construction(2, 1).unwrap();
        let rep = condition_battery(&r, &int(1), 7, 2).unwrap();
        assert!(rep.prerequisites_hold());
        assert_eq!(rep.conditions, Conditions { a: true, b: true, c: true, d: true });
        assert_eq!(rep.symmetry_dim, 0);
        assert_eq!(rep.pole_scalar, Some(rat(1, 2)));
        assert_eq!(rep.solution, "r(2,1)");
    }

    #[test]
    fn battery_on_yang() {
        let r = SolutionHandle::three(2, "yang2", yang2_aybe_at);
        let rep = condition_battery(&r, &int(1), 3, 2).unwrap();
        assert!(rep.prerequisites_hold());
        assert!(rep.conditions.a && rep.conditions.b);
        assert_eq!(rep.symmetry_dim, 3);
    }

    #[test]
    fn condition_c_fails_for_a_non_scalar_trace_part() {
        // r₀ − r̄₀ = y₁·(e11⊗𝟙): its y₁-derivative is not ∝ 𝟙⊗𝟙
        let r = SolutionHandle::three(2, "toy", |v, y1, _| {
            let e = crate::kernel::SquareMatrix::unit(2, 1, 1);
            let one = crate::kernel::SquareMatrix::identity(2);
            Ok(&Tensor2::identity(2).scale(&v.recip()) + &Tensor2::from_pair(&e, &one).scale(y1))
        });
        assert!(!condition_c_holds(&r, &int(0), &int(1)).unwrap());
    }
}
