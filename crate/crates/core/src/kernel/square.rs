use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{invert, Matrix, Rational};
use crate::Result;

/// An element of `A = Mat_{n×n}`. Indexing is 1-based `(i, j)`, matching
/// matrix-unit notation `e_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl SquareMatrix {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "side length must be positive");
        SquareMatrix {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 1..=n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// The matrix unit `e_ij`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.set(i, j, Rational::one());
        m
    }

    pub fn diag(values: &[Rational]) -> Self {
        let mut m = Self::zero(values.len());
        for (k, x) in values.iter().enumerate() {
            m.set(k + 1, k + 1, x.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self::from_row_major(n, rows.into_iter().flatten().collect())
    }

    /// Entries in the row-major matrix-unit order `e_11, e_12, …, e_nn`.
    pub fn from_row_major(n: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), n * n, "entry count");
        SquareMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[self.offset(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        let k = self.offset(i, j);
        self.entries[k] = value;
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j), "index out of range");
        (i - 1) * self.n + (j - 1)
    }

    pub fn row_major(&self) -> &[Rational] {
        &self.entries
    }

    /// Nonzero entries as `(i, j, value)`, 1-based.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (k / self.n + 1, k % self.n + 1, x))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        (1..=self.n).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n);
        for (i, j, x) in self.nonzero_entries() {
            t.set(j, i, x.clone());
        }
        t
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// The traceless projection `X ↦ X − (tr X / n)·𝟙`.
    pub fn pr(&self) -> Self {
        let shift = self.trace() / Rational::from_integer(self.n.into());
        let mut out = self.clone();
        for i in 1..=self.n {
            let d = out.get(i, i) - &shift;
            out.set(i, i, d);
        }
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = invert(&self.to_matrix())?;
        let n = self.n;
        Ok(Self::from_row_major(
            n,
            (0..n * n).map(|k| inv[(k / n, k % n)].clone()).collect(),
        ))
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.entries.chunks(self.n).map(<[Rational]>::to_vec).collect())
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        self.get(i, j)
    }
}

impl Add for &SquareMatrix {
    type Output = SquareMatrix;

    fn add(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n, "size mismatch");
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &SquareMatrix {
    type Output = SquareMatrix;

    fn sub(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n, "size mismatch");
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &SquareMatrix {
    type Output = SquareMatrix;

    fn neg(self) -> SquareMatrix {
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul for &SquareMatrix {
    type Output = SquareMatrix;

    fn mul(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n, "size mismatch");
        let n = self.n;
        let mut out = SquareMatrix::zero(n);
        for (i, k, a) in self.nonzero_entries() {
            for j in 1..=n {
                let b = rhs.get(k, j);
                if !b.is_zero() {
                    let idx = (i - 1) * n + (j - 1);
                    out.entries[idx] += a * b;
                }
            }
        }
        out
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, row) in self.entries.chunks(self.n).enumerate() {
            if r > 0 {
                write!(f, "; ")?;
            }
            for (c, x) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}
