//! Dense rectangular matrices over the rationals.
//!
//! Rank, kernel, solve and inverse all go through one fraction-free
//! (Bareiss) forward elimination on an integer copy of the matrix. Each row
//! is first cleared of denominators, which does not change the row space.
//! Intermediate entries stay minors of the scaled matrix, so they grow
//! polynomially instead of the blow-up naive rational elimination produces.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;
use crate::{Error, Result};

/// Row-major `rows × cols` matrix. Indexing is 0-based `(row, col)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors, which must all have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<Rational>], rows: usize) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix shapes must agree")
    }
}

/// Integer row echelon form produced by fraction-free elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    /// `pivots[k]` is the pivot column of row `k`.
    pivots: Vec<usize>,
}

/// Clears denominators row by row and appends optional right-hand blocks.
fn integer_rows(m: &Matrix, rhs: Option<&Matrix>) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let mut row: Vec<&Rational> = m.row(i).iter().collect();
            if let Some(b) = rhs {
                row.extend(b.row(i));
            }
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.into_iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect()
}

/// Bareiss elimination, pivoting only within the first `pivot_cols`
/// columns. Rows below the rank end up zero in those columns.
fn bareiss(mut a: Vec<Vec<BigInt>>, pivot_cols: usize) -> Echelon {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        // Smallest nonzero pivot keeps the products small.
        let Some(p) = (r..nrows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].bits())
        else {
            continue;
        };
        a.swap(r, p);
        for i in (r + 1)..nrows {
            if a[i][c].is_zero() {
                // Entries still need rescaling to stay on the same minor level.
                for j in (c + 1)..ncols {
                    if !a[i][j].is_zero() {
                        let upd = &a[r][c] * &a[i][j];
                        a[i][j] = exact_div(upd, &prev);
                    }
                }
                continue;
            }
            for j in (c + 1)..ncols {
                let upd = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = exact_div(upd, &prev);
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon { rows: a, pivots }
}

fn exact_div(x: BigInt, d: &BigInt) -> BigInt {
    if d.is_one() {
        return x;
    }
    let (q, rem) = x.div_rem(d);
    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
    q
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Back-substitutes pivot variables given fixed values for the free
    /// columns (`x` holds those on entry) and the right-hand column `rhs_col`.
    fn back_substitute(&self, x: &mut [Rational], rhs_col: Option<usize>) {
        for (k, &p) in self.pivots.iter().enumerate().rev() {
            let row = &self.rows[k];
            let mut acc = match rhs_col {
                Some(c) => Rational::from_integer(row[c].clone()),
                None => Rational::zero(),
            };
            for (j, xj) in x.iter().enumerate().skip(p + 1) {
                if !row[j].is_zero() && !xj.is_zero() {
                    acc -= xj * Rational::from_integer(row[j].clone());
                }
            }
            x[p] = acc / Rational::from_integer(row[p].clone());
        }
    }
}

pub fn rank(m: &Matrix) -> usize {
    bareiss(integer_rows(m, None), m.cols).rank()
}

/// Basis of the right null space; its length is `cols − rank`.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    let ech = bareiss(integer_rows(m, None), m.cols);
    let mut is_pivot = vec![false; m.cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![Rational::zero(); m.cols];
            x[f] = Rational::one();
            ech.back_substitute(&mut x, None);
            x
        })
        .collect()
}

/// Some exact solution of `m · x = rhs`, free variables set to zero.
pub fn solve_linear(m: &Matrix, rhs: &[Rational]) -> Result<Vec<Rational>> {
    if rhs.len() != m.rows {
        return Err(Error::SizeMismatch {
            expected: m.rows,
            found: rhs.len(),
        });
    }
    let b = Matrix::from_columns(&[rhs.to_vec()], m.rows);
    let ech = bareiss(integer_rows(m, Some(&b)), m.cols);
    if ech.rows[ech.rank()..].iter().any(|row| !row[m.cols].is_zero()) {
        return Err(Error::NoSolution);
    }
    let mut x = vec![Rational::zero(); m.cols];
    ech.back_substitute(&mut x, Some(m.cols));
    x.truncate(m.cols);
    Ok(x)
}

pub fn invert(m: &Matrix) -> Result<Matrix> {
    if m.rows != m.cols {
        return Err(Error::SizeMismatch {
            expected: m.rows,
            found: m.cols,
        });
    }
    let n = m.rows;
    let ech = bareiss(integer_rows(m, Some(&Matrix::identity(n))), n);
    if ech.rank() < n {
        return Err(Error::Singular);
    }
    let mut inv = Matrix::zeros(n, n);
    for c in 0..n {
        let mut x = vec![Rational::zero(); n];
        ech.back_substitute(&mut x, Some(n + c));
        for (i, xi) in x.into_iter().enumerate() {
            inv[(i, c)] = xi;
        }
    }
    Ok(inv)
}
