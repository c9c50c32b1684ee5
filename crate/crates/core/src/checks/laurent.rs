//! Laurent data in `v` and the residue along `y₁ = y₂`, both by exact
//! entrywise interpolation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::Zero;

use crate::kernel::{int, interpolate_poly, rat, Rational};
use crate::tensor::Tensor2;
use crate::{Error, Result};

use super::SolutionHandle;

/// `r₋₁/v + r₀ + r₁v + …`; `coeffs[k + 1]` holds `r_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentTensor {
    n: usize,
    coeffs: Vec<Tensor2>,
}

impl LaurentTensor {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `r_k` for `k ≥ −1`; zero beyond the stored orders.
    pub fn coeff(&self, k: i32) -> Tensor2 {
        assert!(k >= -1, "expansion starts at v⁻¹");
        self.coeffs
            .get((k + 1) as usize)
            .cloned()
            .unwrap_or_else(|| Tensor2::zero(self.n))
    }

    /// Highest stored order `K`.
    pub fn max_order(&self) -> i32 {
        self.coeffs.len() as i32 - 2
    }

    /// `λ` with `r₋₁ = λ·𝟙⊗𝟙`, if `r₋₁` has that form.
    pub fn pole_scalar(&self) -> Option<Rational> {
        self.coeff(-1).as_multiple_of(&Tensor2::identity(self.n))
    }
}

/// Coefficient tensors, lowest degree first, of the entrywise
/// interpolating polynomial through `samples`.
pub fn tensor_interpolate(n: usize, samples: &[(Rational, Tensor2)]) -> Result<Vec<Tensor2>> {
    let keys: BTreeSet<[usize; 4]> = samples
        .iter()
        .flat_map(|(_, t)| t.iter().map(|(k, _)| *k))
        .collect();
    let mut out: Vec<Tensor2> = Vec::new();
    for key in keys {
        let pts: Vec<(Rational, Rational)> = samples.iter().map(|(x, t)| (x.clone(), t.get(&key))).collect();
        let p = interpolate_poly(&pts)?;
        for (deg, c) in p.coeffs().iter().enumerate() {
            while out.len() <= deg {
                out.push(Tensor2::zero(n));
            }
            out[deg].add_term(key, c);
        }
    }
    Ok(out)
}

pub(crate) fn eval_tensor_poly(n: usize, coeffs: &[Tensor2], x: &Rational) -> Tensor2 {
    coeffs
        .iter()
        .rev()
        .fold(Tensor2::zero(n), |acc, c| &acc.scale(x) + c)
}

/// Derivative of a tensor polynomial, coefficients lowest degree first.
pub(crate) fn derivative(coeffs: &[Tensor2]) -> Vec<Tensor2> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&int(k as i64)))
        .collect()
}

fn is_degenerate(e: &Error) -> bool {
    matches!(
        e,
        Error::SingularResidue | Error::DimensionDrop { .. } | Error::PoleHit(_) | Error::CoincidingPoints
    )
}

/// Nodes skipped for hitting a degenerate point before giving up.
const MAX_SKIPPED_NODES: usize = 64;

/// Nonzero rationals `±p/q` in order of height `max(p, q)`; small heights
/// keep the exact arithmetic on the samples cheap.
fn node_offsets() -> impl Iterator<Item = Rational> {
    (1i64..).flat_map(|h| {
        (1..=h)
            .flat_map(move |q| {
                let p_range = if q == h { 1..=h } else { h..=h };
                p_range.map(move |p| (p, q))
            })
            .filter(|&(p, q)| p.gcd(&q) == 1)
            .flat_map(|(p, q)| [rat(p, q), rat(-p, q)])
    })
}

/// Interpolates `f` at `base + k + 1/7`, `k = 1, 2, …`, adding nodes until
/// the interpolant through all but the newest node predicts the newest one,
/// and returns its coefficients. Nodes where `f` hits a degenerate point
/// are skipped; any polynomial is determined by the remaining ones.
pub(crate) fn adaptive_interpolate(
    n: usize,
    base: &Rational,
    cap: usize,
    mut f: impl FnMut(&Rational) -> Result<Tensor2>,
) -> Result<Vec<Tensor2>> {
    let mut nodes: Vec<Rational> = Vec::new();
    // per key: Newton coefficients, and the lowest diagonal of the table
    // f[x_{m−1−j}, …, x_{m−1}] for j = 0..m
    let mut tables: BTreeMap<[usize; 4], (Vec<Rational>, Vec<Rational>)> = BTreeMap::new();
    let mut skipped = 0;
    let mut offsets = node_offsets();
    loop {
        let x = base + offsets.next().expect("infinite sequence");
        let t = match f(&x) {
            Ok(t) => t,
            Err(e) if is_degenerate(&e) && skipped < MAX_SKIPPED_NODES => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let m = nodes.len();
        for (key, _) in t.iter() {
            tables
                .entry(*key)
                .or_insert_with(|| (alloc::vec![Rational::zero(); m], alloc::vec![Rational::zero(); m]));
        }
        let mut newest_vanish = true;
        for (key, (newton, diag)) in tables.iter_mut() {
            let mut next = Vec::with_capacity(m + 1);
            next.push(t.get(key));
            for j in 1..=m {
                let dd = (&next[j - 1] - &diag[j - 1]) / (&x - &nodes[m - j]);
                next.push(dd);
            }
            let top = next[m].clone();
            newest_vanish &= top.is_zero();
            newton.push(top);
            *diag = next;
        }
        nodes.push(x);
        if m >= 1 && newest_vanish {
            return Ok(newton_to_monomial(n, &nodes[..m], &tables));
        }
        if m > cap {
            return Err(Error::DegreeCapExceeded { cap });
        }
    }
}

/// Expands `c₀ + (x−x₀)(c₁ + (x−x₁)(c₂ + …))` per key, using the first
/// `nodes.len()` Newton coefficients.
fn newton_to_monomial(
    n: usize,
    nodes: &[Rational],
    tables: &BTreeMap<[usize; 4], (Vec<Rational>, Vec<Rational>)>,
) -> Vec<Tensor2> {
    let m = nodes.len();
    let mut out = alloc::vec![Tensor2::zero(n); m];
    for (key, (newton, _)) in tables {
        let mut poly: Vec<Rational> = alloc::vec![newton[m - 1].clone()];
        for k in (0..m - 1).rev() {
            // poly ← poly·(x − x_k) + c_k
            let mut next = alloc::vec![Rational::zero(); poly.len() + 1];
            for (deg, c) in poly.iter().enumerate() {
                next[deg + 1] += c;
                next[deg] -= c * &nodes[k];
            }
            next[0] += &newton[k];
            poly = next;
        }
        for (deg, c) in poly.iter().enumerate() {
            out[deg].add_term(*key, c);
        }
    }
    while out.len() > 1 && out.last().is_some_and(Tensor2::is_zero) {
        out.pop();
    }
    out
}

/// Laurent coefficients `r₋₁, …, r_K` of `r(v; y₁, y₂)` from the entrywise
/// polynomial `v·r`, adaptive up to degree `4n + 4`.
pub fn laurent_in_v(r: &SolutionHandle, y1: &Rational, y2: &Rational, order: usize) -> Result<LaurentTensor> {
    if y1 == y2 {
        return Err(Error::CoincidingPoints);
    }
    let n = r.n();
    let mut coeffs = adaptive_interpolate(n, &Rational::zero(), 4 * n + 4, |v| Ok(r.eval(v, y1, y2)?.scale(v)))?;
    coeffs.resize(order + 2, Tensor2::zero(n));
    Ok(LaurentTensor { n, coeffs })
}

/// `lim_{y₂→y₁} (y₁ − y₂)·r(v; y₁, y₂)`, from the entrywise polynomial
/// `(y₂ − y₁)·r` in `y₂`, adaptive up to degree `2n + 2`.
pub fn diagonal_residue(r: &SolutionHandle, v: &Rational, y1: &Rational) -> Result<Tensor2> {
    if v.is_zero() {
        return Err(Error::SingularResidue);
    }
    let n = r.n();
    let coeffs = adaptive_interpolate(n, y1, 2 * n + 2, |y2| Ok(r.eval(v, y1, y2)?.scale(&(y2 - y1))))?;
    Ok(-&eval_tensor_poly(n, &coeffs, y1))
}
