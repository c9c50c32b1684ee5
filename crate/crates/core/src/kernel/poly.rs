use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::Rational;
use crate::{Error, Result};

/// Univariate polynomial, coefficients lowest degree first. The leading
/// coefficient is nonzero unless the polynomial is zero (empty).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = alloc::vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        Polynomial::new(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

/// The unique polynomial of degree `< points.len()` through `points`,
/// via Newton divided differences expanded to the monomial basis.
pub fn interpolate_poly(points: &[(Rational, Rational)]) -> Result<Polynomial> {
    let m = points.len();
    for i in 0..m {
        for j in (i + 1)..m {
            if points[i].0 == points[j].0 {
                return Err(Error::DuplicateNode);
            }
        }
    }
    let xs: Vec<&Rational> = points.iter().map(|(x, _)| x).collect();
    let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..m {
        for i in (level..m).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    // Horner on the Newton form: p = dd[m-1]; p = p·(x − x_k) + dd[k].
    let mut acc: Vec<Rational> = Vec::with_capacity(m);
    for k in (0..m).rev() {
        // acc ← acc·(x − x_k)
        let mut next = alloc::vec![Rational::zero(); acc.len() + 1];
        for (d, c) in acc.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * xs[k];
        }
        next[0] += &dd[k];
        acc = next;
    }
    Ok(Polynomial::new(acc))
}
