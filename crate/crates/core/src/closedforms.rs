//! Explicit formulas for small cases, kept independent of the construction
//! in [`crate::solspace`] so the two can be compared.
//!
//! `r31_closed` differs from the printed display in one coefficient: the
//! printed `e31⊗e32` term carries `(y₁ + v)` where unitarity forces
//! `(y₁ − v)`. The literal transcription is kept as
//! [`r31_closed_as_printed`].

use alloc::vec::Vec;

use num_traits::Zero;

use crate::kernel::{int, rat, Rational, SquareMatrix};
use crate::tensor::{tensor_omega, tensor_p, Tensor2};
use crate::{Error, Result};

/// A named oracle with a fixed matrix size.
#[derive(Debug, Clone, Copy)]
pub struct CheckedFormula {
    pub name: &'static str,
    pub n: usize,
    /// `(v, y₁, y₂)` for AYBE oracles; `v` is ignored by CYBE oracles.
    pub evaluator: fn(&Rational, &Rational, &Rational) -> Result<Tensor2>,
}

pub const R21: CheckedFormula = CheckedFormula {
    name: "r21",
    n: 2,
    evaluator: r21_closed,
};
pub const R31: CheckedFormula = CheckedFormula {
    name: "r31",
    n: 3,
    evaluator: r31_closed,
};
pub const C21: CheckedFormula = CheckedFormula {
    name: "c21",
    n: 2,
    evaluator: |_, y1, y2| c21_closed(y1, y2),
};
pub const C31: CheckedFormula = CheckedFormula {
    name: "c31",
    n: 3,
    evaluator: |_, y1, y2| c31_closed(y1, y2),
};

pub fn by_name(name: &str) -> Option<CheckedFormula> {
    [R21, R31, C21, C31].into_iter().find(|f| f.name == name)
}

/// Accumulates `Σ c·(X⊗Y)`.
struct Sum(Tensor2);

impl Sum {
    fn new(n: usize) -> Self {
        Sum(Tensor2::zero(n))
    }

    fn term(mut self, c: Rational, x: &SquareMatrix, y: &SquareMatrix) -> Self {
        self.0 = &self.0 + &Tensor2::from_pair(x, y).scale(&c);
        self
    }

    fn tensor(mut self, c: Rational, t: &Tensor2) -> Self {
        self.0 = &self.0 + &t.scale(&c);
        self
    }
}

fn e(n: usize, i: usize, j: usize) -> SquareMatrix {
    SquareMatrix::unit(n, i, j)
}

fn diag(entries: &[(i64, i64)]) -> SquareMatrix {
    SquareMatrix::diag(&entries.iter().map(|&(p, q)| rat(p, q)).collect::<Vec<_>>())
}

fn pole_in_v(v: &Rational) -> Result<Rational> {
    if v.is_zero() {
        return Err(Error::PoleHit("v = 0"));
    }
    Ok(v.recip())
}

fn pole_in_y(y1: &Rational, y2: &Rational) -> Result<Rational> {
    let gap = y2 - y1;
    if gap.is_zero() {
        return Err(Error::PoleHit("y₁ = y₂"));
    }
    Ok(gap.recip())
}

/// `𝟙⊗𝟙/2v + P/(y₂−y₁) + (v−y₁)e21⊗ȟ + (v+y₂)ȟ⊗e21 − v(v−y₁)(v+y₂)/2·e21⊗e21`
/// with `ȟ = diag(½, −½)`.
pub fn r21_closed(v: &Rational, y1: &Rational, y2: &Rational) -> Result<Tensor2> {
    let inv_v = pole_in_v(v)?;
    let inv_gap = pole_in_y(y1, y2)?;
    let one = SquareMatrix::identity(2);
    let h = diag(&[(1, 2), (-1, 2)]);
    let e21 = e(2, 2, 1);
    let cubic = -(v * (v - y1) * (v + y2)) / int(2);
    Ok(Sum::new(2)
        .term(inv_v / int(2), &one, &one)
        .tensor(inv_gap, &tensor_p(2))
        .term(v - y1, &e21, &h)
        .term(v + y2, &h, &e21)
        .term(cubic, &e21, &e21)
        .0)
}

fn r31_with(v: &Rational, y1: &Rational, y2: &Rational, e31_e32: Rational) -> Result<Tensor2> {
    let inv_v = pole_in_v(v)?;
    let inv_gap = pole_in_y(y1, y2)?;
    let n = 3;
    let one = SquareMatrix::identity(n);
    let h1 = diag(&[(2, 3), (-1, 3), (-1, 3)]);
    let h2 = diag(&[(1, 3), (1, 3), (-2, 3)]);
    let (e12, e21, e31, e32) = (e(n, 1, 2), e(n, 2, 1), e(n, 3, 1), e(n, 3, 2));
    let e11_e33 = &e(n, 1, 1) - &e(n, 3, 3);
    let third = || rat(1, 3);
    let v2 = v * v;
    let v3 = &v2 * v;
    Ok(Sum::new(n)
        .term(inv_v / int(3), &one, &one)
        .tensor(inv_gap, &tensor_p(n))
        .term(int(-1), &e21, &h1)
        .term(int(1), &h1, &e21)
        .term(int(1), &e32, &e12)
        .term(int(-1), &e12, &e32)
        .term(-y1.clone(), &e32, &h2)
        .term(y2.clone(), &h2, &e32)
        .term(v - y1, &e31, &e12)
        .term(v + y2, &e12, &e31)
        .term(v.clone(), &e32, &e11_e33)
        .term(v.clone(), &e11_e33, &e32)
        .term(third() * v * (y1 - int(3) * v), &e32, &e21)
        .term(third() * v * (y2 + int(3) * v), &e21, &e32)
        .term(v * (v - y1), &e31, &h1)
        .term(-(v * (v + y2)), &h1, &e31)
        .term(rat(2, 3) * &v2 * (y1 - v), &e31, &e21)
        .term(-(rat(2, 3) * &v2 * (y2 + v)), &e21, &e31)
        .term(third() * &v2 * (y2 + v) * (int(3) * v - y1), &e32, &e31)
        .term(e31_e32, &e31, &e32)
        .term(rat(2, 3) * v, &e21, &e21)
        .term(rat(2, 3) * &v3 * (v - y1) * (v + y2), &e31, &e31)
        .term(
            third() * v * (int(-6) * &v2 + int(3) * v * (y1 - y2) + int(2) * y1 * y2),
            &e32,
            &e32,
        )
        .0)
}

/// The `(3,1)` solution with the `e31⊗e32` coefficient
/// `⅓v²(y₁−v)(3v+y₂)`.
pub fn r31_closed(v: &Rational, y1: &Rational, y2: &Rational) -> Result<Tensor2> {
    let c = rat(1, 3) * v * v * (y1 - v) * (int(3) * v + y2);
    r31_with(v, y1, y2, c)
}

/// The `(3,1)` display verbatim, `e31⊗e32` coefficient `⅓v²(y₁+v)(3v+y₂)`.
/// Not unitary.
pub fn r31_closed_as_printed(v: &Rational, y1: &Rational, y2: &Rational) -> Result<Tensor2> {
    let c = rat(1, 3) * v * v * (y1 + v) * (int(3) * v + y2);
    r31_with(v, y1, y2, c)
}

/// `Ω/(y₂−y₁) + y₂ȟ⊗e21 − y₁e21⊗ȟ`.
pub fn c21_closed(y1: &Rational, y2: &Rational) -> Result<Tensor2> {
    let inv_gap = pole_in_y(y1, y2)?;
    let h = diag(&[(1, 2), (-1, 2)]);
    let e21 = e(2, 2, 1);
    Ok(Sum::new(2)
        .tensor(inv_gap, &tensor_omega(2))
        .term(y2.clone(), &h, &e21)
        .term(-y1.clone(), &e21, &h)
        .0)
}

pub fn c31_closed(y1: &Rational, y2: &Rational) -> Result<Tensor2> {
    let inv_gap = pole_in_y(y1, y2)?;
    let n = 3;
    let h1 = diag(&[(2, 3), (-1, 3), (-1, 3)]);
    let h2 = diag(&[(1, 3), (1, 3), (-2, 3)]);
    let (e12, e21, e31, e32) = (e(n, 1, 2), e(n, 2, 1), e(n, 3, 1), e(n, 3, 2));
    Ok(Sum::new(n)
        .tensor(inv_gap, &tensor_omega(n))
        .term(y2.clone(), &h2, &e32)
        .term(-y1.clone(), &e32, &h2)
        .term(y2.clone(), &e12, &e31)
        .term(-y1.clone(), &e31, &e12)
        .term(int(-1), &e21, &h1)
        .term(int(1), &h1, &e21)
        .term(int(1), &e32, &e12)
        .term(int(-1), &e12, &e32)
        .0)
}

/// `𝟙⊗𝟙/2v + (e11⊗e11 + e22⊗e22 + e12⊗e21 + e21⊗e12)/y`, which is
/// `𝟙⊗𝟙/2v + P/y`.
pub fn yang2_aybe(v: &Rational, y: &Rational) -> Result<Tensor2> {
    let inv_v = pole_in_v(v)?;
    if y.is_zero() {
        return Err(Error::PoleHit("y = 0"));
    }
    let one = SquareMatrix::identity(2);
    Ok(Sum::new(2)
        .term(inv_v / int(2), &one, &one)
        .tensor(y.recip(), &tensor_p(2))
        .0)
}

/// `(½h⊗h + e12⊗e21 + e21⊗e12)/y`, with `h = e11 − e22`.
pub fn yang2_cybe(y: &Rational) -> Result<Tensor2> {
    if y.is_zero() {
        return Err(Error::PoleHit("y = 0"));
    }
    let h = diag(&[(1, 1), (-1, 1)]);
    let inv = y.recip();
    Ok(Sum::new(2)
        .term(&inv / int(2), &h, &h)
        .term(inv.clone(), &e(2, 1, 2), &e(2, 2, 1))
        .term(inv, &e(2, 2, 1), &e(2, 1, 2))
        .0)
}

/// [`yang2_aybe`] with `y = y₁ − y₂`.
pub fn yang2_aybe_at(v: &Rational, y1: &Rational, y2: &Rational) -> Result<Tensor2> {
    yang2_aybe(v, &(y1 - y2))
}

/// [`yang2_cybe`] with `y = y₁ − y₂`.
pub fn yang2_cybe_at(y1: &Rational, y2: &Rational) -> Result<Tensor2> {
    yang2_cybe(&(y1 - y2))
}
