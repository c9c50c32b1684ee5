//! Residuals of the functional identities.

use crate::kernel::Rational;
use crate::tensor::{Slot, Tensor2, Tensor3};
use crate::Result;

use super::SolutionHandle;

/// Spectral arguments `(u, v; y₁, y₂, y₃)` of the three-variable equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AybePoint {
    pub u: Rational,
    pub v: Rational,
    pub y1: Rational,
    pub y2: Rational,
    pub y3: Rational,
}

impl AybePoint {
    /// From `[u, v, y₁, y₂, y₃]`.
    pub fn from_slice(t: &[Rational]) -> Self {
        AybePoint {
            u: t[0].clone(),
            v: t[1].clone(),
            y1: t[2].clone(),
            y2: t[3].clone(),
            y3: t[4].clone(),
        }
    }
}

/// Spectral arguments `(v₁, v₂, v₃; y₁, y₂, y₃)` of the four-variable equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aybe4Point {
    pub v1: Rational,
    pub v2: Rational,
    pub v3: Rational,
    pub y1: Rational,
    pub y2: Rational,
    pub y3: Rational,
}

impl Aybe4Point {
    /// From `[v₁, v₂, v₃, y₁, y₂, y₃]`.
    pub fn from_slice(t: &[Rational]) -> Self {
        Aybe4Point {
            v1: t[0].clone(),
            v2: t[1].clone(),
            v3: t[2].clone(),
            y1: t[3].clone(),
            y2: t[4].clone(),
            y3: t[5].clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YTriple {
    pub y1: Rational,
    pub y2: Rational,
    pub y3: Rational,
}

impl YTriple {
    pub fn from_slice(t: &[Rational]) -> Self {
        YTriple {
            y1: t[0].clone(),
            y2: t[1].clone(),
            y3: t[2].clone(),
        }
    }
}

fn at(r: &SolutionHandle, v: &Rational, ya: &Rational, yb: &Rational, slot: Slot) -> Result<Tensor3> {
    Ok(r.eval(v, ya, yb)?.embed(slot))
}

fn at4(
    r: &SolutionHandle,
    va: &Rational,
    vb: &Rational,
    ya: &Rational,
    yb: &Rational,
    slot: Slot,
) -> Result<Tensor3> {
    Ok(r.eval4(va, vb, ya, yb)?.embed(slot))
}

/// `r¹²(u;y₁,y₂) r²³(u+v;y₂,y₃) − r¹³(u+v;y₁,y₃) r¹²(−v;y₁,y₂) − r²³(v;y₂,y₃) r¹³(u;y₁,y₃)`.
pub fn aybe_check(r: &SolutionHandle, p: &AybePoint) -> Result<Tensor3> {
    let uv = &p.u + &p.v;
    let mv = -p.v.clone();
    let lhs = &at(r, &p.u, &p.y1, &p.y2, Slot::S12)? * &at(r, &uv, &p.y2, &p.y3, Slot::S23)?;
    let t1 = &at(r, &uv, &p.y1, &p.y3, Slot::S13)? * &at(r, &mv, &p.y1, &p.y2, Slot::S12)?;
    let t2 = &at(r, &p.v, &p.y2, &p.y3, Slot::S23)? * &at(r, &p.u, &p.y1, &p.y3, Slot::S13)?;
    Ok(&(&lhs - &t1) - &t2)
}

/// `r²³(u+v;y₂,y₃) r¹²(u;y₁,y₂) − r¹²(−v;y₁,y₂) r¹³(u+v;y₁,y₃) − r¹³(u;y₁,y₃) r²³(v;y₂,y₃)`.
pub fn dual_aybe_check(r: &SolutionHandle, p: &AybePoint) -> Result<Tensor3> {
    let uv = &p.u + &p.v;
    let mv = -p.v.clone();
    let lhs = &at(r, &uv, &p.y2, &p.y3, Slot::S23)? * &at(r, &p.u, &p.y1, &p.y2, Slot::S12)?;
    let t1 = &at(r, &mv, &p.y1, &p.y2, Slot::S12)? * &at(r, &uv, &p.y1, &p.y3, Slot::S13)?;
    let t2 = &at(r, &p.u, &p.y1, &p.y3, Slot::S13)? * &at(r, &p.v, &p.y2, &p.y3, Slot::S23)?;
    Ok(&(&lhs - &t1) - &t2)
}

/// `r¹²(v₁,v₂) r²³(v₁,v₃) − r¹³(v₁,v₃) r¹²(v₃,v₂) − r²³(v₂,v₃) r¹³(v₁,v₂)`,
/// each `r^{ij}` taking `(y_i, y_j)`.
pub fn aybe4_check(r: &SolutionHandle, p: &Aybe4Point) -> Result<Tensor3> {
    let (v1, v2, v3) = (&p.v1, &p.v2, &p.v3);
    let (y1, y2, y3) = (&p.y1, &p.y2, &p.y3);
    let lhs = &at4(r, v1, v2, y1, y2, Slot::S12)? * &at4(r, v1, v3, y2, y3, Slot::S23)?;
    let t1 = &at4(r, v1, v3, y1, y3, Slot::S13)? * &at4(r, v3, v2, y1, y2, Slot::S12)?;
    let t2 = &at4(r, v2, v3, y2, y3, Slot::S23)? * &at4(r, v1, v2, y1, y3, Slot::S13)?;
    Ok(&(&lhs - &t1) - &t2)
}

/// `r(v;y₁,y₂) + swap(r(−v;y₂,y₁))`.
pub fn unitarity_check(r: &SolutionHandle, v: &Rational, y1: &Rational, y2: &Rational) -> Result<Tensor2> {
    let mv = -v.clone();
    Ok(&r.eval(v, y1, y2)? + &r.eval(&mv, y2, y1)?.swap())
}

/// `r̃¹²(y₁,y₂) r̃¹³(y₁,y₃) r̃²³(y₂,y₃) − r̃²³(y₂,y₃) r̃¹³(y₁,y₃) r̃¹²(y₁,y₂)`.
pub fn qybe_check(
    rt: impl Fn(&Rational, &Rational) -> Result<Tensor2>,
    p: &YTriple,
) -> Result<Tensor3> {
    let a = rt(&p.y1, &p.y2)?.embed(Slot::S12);
    let b = rt(&p.y1, &p.y3)?.embed(Slot::S13);
    let c = rt(&p.y2, &p.y3)?.embed(Slot::S23);
    Ok(&(&(&a * &b) * &c) - &(&(&c * &b) * &a))
}

/// `[c¹², c²³] + [c¹², c¹³] + [c¹³, c²³]` with `c^{ij} = c(y_i, y_j)`.
pub fn cybe_check(
    c: impl Fn(&Rational, &Rational) -> Result<Tensor2>,
    p: &YTriple,
) -> Result<Tensor3> {
    let c12 = c(&p.y1, &p.y2)?.embed(Slot::S12);
    let c13 = c(&p.y1, &p.y3)?.embed(Slot::S13);
    let c23 = c(&p.y2, &p.y3)?.embed(Slot::S23);
    Ok(&(&c12.commutator(&c23) + &c12.commutator(&c13)) + &c13.commutator(&c23))
}

/// `λ·(r₁¹² + r₁¹³ + r₁²³) − (r₀¹² r₀¹³ − r₀²³ r₀¹² + r₀¹³ r₀²³)`, with
/// `r^{ij}` at `(y_i, y_j)`.
///
/// `λ` is the coefficient of `𝟙⊗𝟙/v`. The identity as usually stated
/// assumes `λ = 1`; for `r_(n,d)` it is `1/n`, and rescaling `r` by `1/λ`
/// turns the `λ = 1` form into this one.
pub fn r0_r1_identity_check(
    r0: impl Fn(&Rational, &Rational) -> Result<Tensor2>,
    r1: impl Fn(&Rational, &Rational) -> Result<Tensor2>,
    lambda: &Rational,
    p: &YTriple,
) -> Result<Tensor3> {
    let (y1, y2, y3) = (&p.y1, &p.y2, &p.y3);
    let lin = &(&r1(y1, y2)?.embed(Slot::S12) + &r1(y1, y3)?.embed(Slot::S13)) + &r1(y2, y3)?.embed(Slot::S23);
    let a = r0(y1, y2)?.embed(Slot::S12);
    let b = r0(y1, y3)?.embed(Slot::S13);
    let c = r0(y2, y3)?.embed(Slot::S23);
    let quad = &(&(&a * &b) - &(&c * &a)) + &(&b * &c);
    Ok(&lin.scale(lambda) - &quad)
}
