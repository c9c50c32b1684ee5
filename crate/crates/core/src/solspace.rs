//! The space `W` of matrix polynomials of degree at most two with a fixed
//! block shape, the linear constraint cutting out `Sol ⊂ W`, and the
//! construction `r = can⁻¹(ev_{y₂} ∘ res_{y₁}⁻¹)`.
//!
//! Blocks are taken with respect to `split = n − d`: rows and columns
//! `1..=split` are "top"/"left", the rest "bottom"/"right".

use alloc::vec::Vec;

use num_traits::Zero;

use crate::jmatrix::{build_j, BlockedJ};
use crate::kernel::{invert, kernel_basis, Matrix, Rational, SquareMatrix};
use crate::tensor::Tensor2;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    W,
    X,
    Y,
    Z,
}

fn block(split: usize, i: usize, j: usize) -> Block {
    match (i <= split, j <= split) {
        (true, true) => Block::W,
        (true, false) => Block::X,
        (false, true) => Block::Y,
        (false, false) => Block::Z,
    }
}

/// `F(z) = coeff0 + coeff1·z + coeff2·z²` in `W`.
///
/// Invariant: `coeff1` vanishes on the top-right block and `coeff2`
/// vanishes outside the bottom-left block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WPoly {
    split: usize,
    coeff0: SquareMatrix,
    coeff1: SquareMatrix,
    coeff2: SquareMatrix,
}

impl WPoly {
    /// `None` if the coefficients violate the block shape of `W`.
    pub fn new(
        split: usize,
        coeff0: SquareMatrix,
        coeff1: SquareMatrix,
        coeff2: SquareMatrix,
    ) -> Option<Self> {
        let n = coeff0.n();
        if coeff1.n() != n || coeff2.n() != n || split > n {
            return None;
        }
        let bad1 = coeff1
            .nonzero_entries()
            .any(|(i, j, _)| block(split, i, j) == Block::X);
        let bad2 = coeff2
            .nonzero_entries()
            .any(|(i, j, _)| block(split, i, j) != Block::Y);
        (!bad1 && !bad2).then_some(WPoly {
            split,
            coeff0,
            coeff1,
            coeff2,
        })
    }

    pub fn zero(n: usize, split: usize) -> Self {
        WPoly {
            split,
            coeff0: SquareMatrix::zero(n),
            coeff1: SquareMatrix::zero(n),
            coeff2: SquareMatrix::zero(n),
        }
    }

    pub fn n(&self) -> usize {
        self.coeff0.n()
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn coeff0(&self) -> &SquareMatrix {
        &self.coeff0
    }

    pub fn coeff1(&self) -> &SquareMatrix {
        &self.coeff1
    }

    pub fn coeff2(&self) -> &SquareMatrix {
        &self.coeff2
    }

    /// Dimension of `W`, always `2n²`.
    pub fn space_dim(n: usize) -> usize {
        2 * n * n
    }

    /// Coordinates in the fixed basis of `W`: all of `coeff0`, then the
    /// free entries of `coeff1`, then those of `coeff2`, each row-major.
    pub fn coordinates(&self) -> Vec<Rational> {
        let n = self.n();
        slots(n, self.split)
            .map(|(deg, i, j)| self.coeff(deg).get(i, j).clone())
            .collect()
    }

    /// Inverse of [`WPoly::coordinates`].
    pub fn from_coordinates(n: usize, split: usize, coords: &[Rational]) -> Result<Self> {
        if coords.len() != Self::space_dim(n) {
            return Err(Error::SizeMismatch {
                expected: Self::space_dim(n),
                found: coords.len(),
            });
        }
        let mut f = WPoly::zero(n, split);
        for ((deg, i, j), x) in slots(n, split).zip(coords) {
            f.coeff_mut(deg).set(i, j, x.clone());
        }
        Ok(f)
    }

    fn coeff(&self, deg: usize) -> &SquareMatrix {
        match deg {
            0 => &self.coeff0,
            1 => &self.coeff1,
            _ => &self.coeff2,
        }
    }

    fn coeff_mut(&mut self, deg: usize) -> &mut SquareMatrix {
        match deg {
            0 => &mut self.coeff0,
            1 => &mut self.coeff1,
            _ => &mut self.coeff2,
        }
    }

    pub fn eval(&self, z: &Rational) -> SquareMatrix {
        let quad = self.coeff2.scale(z);
        let lin = &self.coeff1 + &quad;
        &self.coeff0 + &lin.scale(z)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        WPoly {
            split: self.split,
            coeff0: self.coeff0.scale(c),
            coeff1: self.coeff1.scale(c),
            coeff2: self.coeff2.scale(c),
        }
    }
}

impl core::ops::Add for &WPoly {
    type Output = WPoly;

    fn add(self, rhs: &WPoly) -> WPoly {
        assert_eq!(self.split, rhs.split, "split mismatch");
        WPoly {
            split: self.split,
            coeff0: &self.coeff0 + &rhs.coeff0,
            coeff1: &self.coeff1 + &rhs.coeff1,
            coeff2: &self.coeff2 + &rhs.coeff2,
        }
    }
}

/// `(degree, i, j)` of every free coefficient of `W`, in coordinate order.
fn slots(n: usize, split: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    let cells = move || (1..=n).flat_map(move |i| (1..=n).map(move |j| (i, j)));
    let c0 = cells().map(|(i, j)| (0, i, j));
    let c1 = cells()
        .filter(move |&(i, j)| block(split, i, j) != Block::X)
        .map(|(i, j)| (1, i, j));
    let c2 = cells()
        .filter(move |&(i, j)| block(split, i, j) == Block::Y)
        .map(|(i, j)| (2, i, j));
    c0.chain(c1).chain(c2)
}

fn assemble<'a>(f: &'a WPoly, pick: impl Fn(Block) -> Option<&'a SquareMatrix>) -> SquareMatrix {
    let n = f.n();
    let mut out = SquareMatrix::zero(n);
    for i in 1..=n {
        for j in 1..=n {
            if let Some(m) = pick(block(f.split, i, j)) {
                out.set(i, j, m.get(i, j).clone());
            }
        }
    }
    out
}

/// `F₀ = [coeff1.W  coeff0.X; coeff2.Y  coeff1.Z]`.
pub fn f_zero_part(f: &WPoly) -> SquareMatrix {
    assemble(f, |b| {
        Some(match b {
            Block::W | Block::Z => &f.coeff1,
            Block::X => &f.coeff0,
            Block::Y => &f.coeff2,
        })
    })
}

/// `F_ε = [coeff0.W  0; coeff1.Y  coeff0.Z]`.
pub fn f_eps_part(f: &WPoly) -> SquareMatrix {
    assemble(f, |b| match b {
        Block::W | Block::Z => Some(&f.coeff0),
        Block::X => None,
        Block::Y => Some(&f.coeff1),
    })
}

/// `[F₀, J] + (y₁ − v)F₀ + F_ε`.
pub fn constraint(j: &BlockedJ, v: &Rational, y1: &Rational, f: &WPoly) -> SquareMatrix {
    let f0 = f_zero_part(f);
    let lhs = &f0.commutator(j.matrix()) + &f0.scale(&(y1 - v));
    &lhs + &f_eps_part(f)
}

/// The constraint as an `n² × 2n²` matrix on coordinates.
fn constraint_matrix(j: &BlockedJ, v: &Rational, y1: &Rational) -> Matrix {
    let n = j.size();
    let dim = WPoly::space_dim(n);
    let mut unit = alloc::vec![Rational::zero(); dim];
    let mut cols = Vec::with_capacity(dim);
    for k in 0..dim {
        unit[k] = Rational::from_integer(1.into());
        let f = WPoly::from_coordinates(n, j.split(), &unit).expect("coordinate count");
        cols.push(constraint(j, v, y1, &f).row_major().to_vec());
        unit[k] = Rational::zero();
    }
    Matrix::from_columns(&cols, n * n)
}

/// A basis of `Sol = ker(F ↦ [F₀,J] + (y₁−v)F₀ + F_ε)`.
pub fn sol_basis(j: &BlockedJ, v: &Rational, y1: &Rational) -> Vec<WPoly> {
    let n = j.size();
    kernel_basis(&constraint_matrix(j, v, y1))
        .into_iter()
        .map(|c| WPoly::from_coordinates(n, j.split(), &c).expect("coordinate count"))
        .collect()
}

/// `res_{y₁}(F) = F(y₁)`.
pub fn res_map(f: &WPoly, y1: &Rational) -> SquareMatrix {
    f.eval(y1)
}

/// `ev_{y₂}(F) = F(y₂)/(y₂ − y₁)`.
pub fn ev_map(f: &WPoly, y1: &Rational, y2: &Rational) -> Result<SquareMatrix> {
    let gap = y2 - y1;
    if gap.is_zero() {
        return Err(Error::CoincidingPoints);
    }
    Ok(f.eval(y2).scale(&gap.recip()))
}

/// `ev_{y₂} ∘ res_{y₁}⁻¹` as an `n²×n²` matrix; column `(a−1)n + (b−1)`
/// is the image of `e_ab` in row-major order.
///
/// The constraint fixes `F_ε` from `F₀` and leaves `coeff0.Y` free, so
/// `res_{y₁}(F) = M` reduces to an `n²×n²` system in `F₀`:
/// `(vF₀ − [F₀,J])_{W,Z} = M_{W,Z}`, `F₀.X = M_X`, `([F₀,J] + (y₁−v)F₀)_X = 0`.
/// Then `r̃(M) = M/(y₂−y₁) + H` with `H_{W,Z} = F₀`, `H_X = 0` and
/// `H_Y = (y₁+y₂)F₀ − [F₀,J] − (y₁−v)F₀`. A singular reduced system is
/// classified by [`rtilde_via_sol_basis`].
pub fn rtilde_endomorphism(
    n: usize,
    d: usize,
    v: &Rational,
    y1: &Rational,
    y2: &Rational,
) -> Result<Matrix> {
    let j = build_j(n, d)?;
    if v.is_zero() {
        return Err(Error::SingularResidue);
    }
    if y1 == y2 {
        return Err(Error::CoincidingPoints);
    }
    let split = j.split();
    let cells: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |k| (i, k))).collect();
    let shift = y1 - v;
    let twist = |g: &SquareMatrix| &g.commutator(j.matrix()) + &g.scale(&shift);
    let reduced_cols: Vec<Vec<Rational>> = cells
        .iter()
        .map(|&(k, l)| {
            let g = SquareMatrix::unit(n, k, l);
            let kg = twist(&g);
            // vG − [G,J] = y₁G − K(G)
            let lg = &g.scale(y1) - &kg;
            let mut col = Vec::with_capacity(n * n);
            for &(a, b) in &cells {
                match block(split, a, b) {
                    Block::W | Block::Z => col.push(lg.get(a, b).clone()),
                    Block::X => col.push(g.get(a, b).clone()),
                    Block::Y => {}
                }
            }
            col.extend(
                cells
                    .iter()
                    .filter(|&&(a, b)| block(split, a, b) == Block::X)
                    .map(|&(a, b)| kg.get(a, b).clone()),
            );
            col
        })
        .collect();
    let reduced_inv = match invert(&Matrix::from_columns(&reduced_cols, n * n)) {
        Ok(m) => m,
        Err(_) => return rtilde_via_sol_basis(n, d, v, y1, y2),
    };
    let inv_gap = (y2 - y1).recip();
    let sum = y1 + y2;
    let mut eq = 0;
    let mut out_cols = Vec::with_capacity(n * n);
    for &(a, b) in &cells {
        let mut image = SquareMatrix::unit(n, a, b).scale(&inv_gap);
        if block(split, a, b) != Block::Y {
            let g = SquareMatrix::from_row_major(n, reduced_inv.column(eq));
            eq += 1;
            let hy = &g.scale(&sum) - &twist(&g);
            for &(p, q) in &cells {
                let h = match block(split, p, q) {
                    Block::W | Block::Z => g.get(p, q),
                    Block::X => continue,
                    Block::Y => hy.get(p, q),
                };
                let x = image.get(p, q) + h;
                image.set(p, q, x);
            }
        }
        out_cols.push(image.row_major().to_vec());
    }
    Ok(Matrix::from_columns(&out_cols, n * n))
}

/// [`rtilde_endomorphism`] computed from an explicit basis of `Sol`:
/// `r̃ = E·R⁻¹` where `R`, `E` hold `res_{y₁}`, `ev_{y₂}` of the basis.
pub fn rtilde_via_sol_basis(
    n: usize,
    d: usize,
    v: &Rational,
    y1: &Rational,
    y2: &Rational,
) -> Result<Matrix> {
    let j = build_j(n, d)?;
    if v.is_zero() {
        return Err(Error::SingularResidue);
    }
    if y1 == y2 {
        return Err(Error::CoincidingPoints);
    }
    let basis = sol_basis(&j, v, y1);
    if basis.len() != n * n {
        return Err(Error::DimensionDrop {
            expected: n * n,
            found: basis.len(),
        });
    }
    let res_cols: Vec<Vec<Rational>> = basis
        .iter()
        .map(|f| res_map(f, y1).row_major().to_vec())
        .collect();
    let ev_cols = basis
        .iter()
        .map(|f| ev_map(f, y1, y2).map(|m| m.row_major().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let res = Matrix::from_columns(&res_cols, n * n);
    let res_inv = invert(&res).map_err(|_| Error::SingularResidue)?;
    let ev = Matrix::from_columns(&ev_cols, n * n);
    ev.checked_mul(&res_inv)
}

/// `r_(n,d)(v; y₁, y₂) = can⁻¹(r̃)`. The coefficient of `e_ij⊗e_kl` is the
/// `(k, l)` entry of `r̃(e_ji)`.
pub fn compute_r(n: usize, d: usize, v: &Rational, y1: &Rational, y2: &Rational) -> Result<Tensor2> {
    Tensor2::can_inv(&rtilde_endomorphism(n, d, v, y1, y2)?)
}
