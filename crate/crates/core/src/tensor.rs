//! `A⊗A` and `A⊗A⊗A` as sparse coefficient maps over matrix units.
//!
//! A key `[i, j, k, l]` stands for `e_ij⊗e_kl` (1-based), and a key of
//! length six for `e_ij⊗e_kl⊗e_pq`. Zero coefficients are never stored, so
//! structural equality is exact tensor equality.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::kernel::{rank, Matrix, Rational, SquareMatrix};
use crate::{Error, Result};

/// A sparse tensor with `K / 2` matrix factors; `K` is the key length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor<const K: usize> {
    n: usize,
    coeffs: BTreeMap<[usize; K], Rational>,
}

/// Element of `A⊗A`.
pub type Tensor2 = Tensor<4>;
/// Element of `A⊗A⊗A`.
pub type Tensor3 = Tensor<6>;

/// Which two slots of `A⊗A⊗A` an `A⊗A` tensor occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    S12,
    S13,
    S23,
}

impl<const K: usize> Tensor<K> {
    const FACTORS: usize = K / 2;

    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "side length must be positive");
        Tensor {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// `𝟙⊗…⊗𝟙`.
    pub fn identity(n: usize) -> Self {
        let mut t = Self::zero(n);
        let mut key = [1usize; K];
        loop {
            t.coeffs.insert(key, Rational::one());
            // odometer over the diagonal index of each factor
            let mut f = 0;
            while f < Self::FACTORS {
                if key[2 * f] < n {
                    key[2 * f] += 1;
                    key[2 * f + 1] += 1;
                    break;
                }
                key[2 * f] = 1;
                key[2 * f + 1] = 1;
                f += 1;
            }
            if f == Self::FACTORS {
                return t;
            }
        }
    }

    /// The single basis tensor for `key`.
    pub fn unit(n: usize, key: [usize; K]) -> Self {
        Self::from_terms(n, [(key, Rational::one())])
    }

    /// Sums the given terms; repeated keys accumulate.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = ([usize; K], Rational)>) -> Self {
        let mut t = Self::zero(n);
        for (key, c) in terms {
            t.add_term(key, &c);
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, key: &[usize; K]) -> Rational {
        self.coeffs.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero coefficients in lexicographic key order.
    pub fn iter(&self) -> impl Iterator<Item = (&[usize; K], &Rational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add_term(&mut self, key: [usize; K], c: &Rational) {
        assert!(key.iter().all(|&i| (1..=self.n).contains(&i)), "index out of range");
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Tensor {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Factorwise product extended bilinearly.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_size(rhs)?;
        let n = self.n;
        let encode = |key: &[usize; K], offset: usize| {
            (0..Self::FACTORS).fold(0usize, |acc, f| acc * n + (key[2 * f + offset] - 1))
        };
        let mut by_rows: BTreeMap<usize, Vec<(&[usize; K], &Rational)>> = BTreeMap::new();
        for (k, c) in &rhs.coeffs {
            by_rows.entry(encode(k, 0)).or_default().push((k, c));
        }
        let mut acc: BTreeMap<[usize; K], Rational> = BTreeMap::new();
        for (ka, ca) in &self.coeffs {
            let Some(matches) = by_rows.get(&encode(ka, 1)) else {
                continue;
            };
            for (kb, cb) in matches {
                let mut key = *ka;
                for f in 0..Self::FACTORS {
                    key[2 * f + 1] = kb[2 * f + 1];
                }
                *acc.entry(key).or_insert_with(Rational::zero) += ca * *cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Tensor { n, coeffs: acc })
    }

    /// `self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &(self * rhs) - &(rhs * self)
    }

    /// Applies a linear map on `A` to factor `f` (0-based). The map is
    /// given by its action on matrix units.
    fn map_factor(&self, f: usize, image: impl Fn(usize, usize) -> Vec<((usize, usize), Rational)>) -> Self {
        let mut out = Self::zero(self.n);
        for (key, c) in &self.coeffs {
            for ((i, j), w) in image(key[2 * f], key[2 * f + 1]) {
                let mut k2 = *key;
                k2[2 * f] = i;
                k2[2 * f + 1] = j;
                out.add_term(k2, &(c * w));
            }
        }
        out
    }

    /// `pr⊗…⊗pr`, the traceless projection in every factor.
    pub fn pr(&self) -> Self {
        let n = self.n;
        let inv_n = Rational::one() / Rational::from_integer(n.into());
        let mut t = self.clone();
        for f in 0..Self::FACTORS {
            t = t.map_factor(f, |i, j| {
                let mut v = alloc::vec![((i, j), Rational::one())];
                if i == j {
                    v.extend((1..=n).map(|m| ((m, m), -inv_n.clone())));
                }
                v
            });
        }
        t
    }

    /// `Some(c)` if `self = c·basis`.
    pub fn as_multiple_of(&self, basis: &Self) -> Option<Rational> {
        let Some((k, b)) = basis.coeffs.iter().next() else {
            return self.is_zero().then(Rational::zero);
        };
        let c = self.get(k) / b;
        (basis.scale(&c) == *self).then_some(c)
    }
}

impl Tensor2 {
    /// `a⊗b`.
    pub fn from_pair(a: &SquareMatrix, b: &SquareMatrix) -> Self {
        assert_eq!(a.n(), b.n(), "size mismatch");
        let mut t = Self::zero(a.n());
        for (i, j, x) in a.nonzero_entries() {
            for (k, l, y) in b.nonzero_entries() {
                t.add_term([i, j, k, l], &(x * y));
            }
        }
        t
    }

    /// The factor swap `a⊗b ↦ b⊗a`.
    pub fn swap(&self) -> Self {
        Tensor {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&[i, j, k, l], c)| ([k, l, i, j], c.clone()))
                .collect(),
        }
    }

    /// `ρ_ij`: places the tensor in two slots of `A⊗A⊗A`, `𝟙` in the third.
    pub fn embed(&self, slot: Slot) -> Tensor3 {
        let mut out = Tensor3::zero(self.n);
        for (&[i, j, k, l], c) in &self.coeffs {
            for m in 1..=self.n {
                let key = match slot {
                    Slot::S12 => [i, j, k, l, m, m],
                    Slot::S13 => [i, j, m, m, k, l],
                    Slot::S23 => [m, m, i, j, k, l],
                };
                out.coeffs.insert(key, c.clone());
            }
        }
        out
    }

    /// `can: X⊗Y ↦ (Z ↦ tr(XZ)·Y)` as an `n²×n²` matrix in the row-major
    /// matrix-unit basis. Column `e_ji` holds the coefficients `T_{ij··}`.
    pub fn can(&self) -> Matrix {
        let n = self.n;
        let idx = |a: usize, b: usize| (a - 1) * n + (b - 1);
        let mut m = Matrix::zeros(n * n, n * n);
        for (&[i, j, k, l], c) in &self.coeffs {
            m[(idx(k, l), idx(j, i))] = c.clone();
        }
        m
    }

    /// Inverse of [`Tensor2::can`].
    pub fn can_inv(m: &Matrix) -> Result<Self> {
        let nn = m.rows();
        let n = (1..=nn).find(|k| k * k == nn).ok_or(Error::SizeMismatch {
            expected: nn,
            found: m.cols(),
        })?;
        if m.cols() != nn {
            return Err(Error::SizeMismatch {
                expected: nn,
                found: m.cols(),
            });
        }
        let mut t = Self::zero(n);
        for (i, j, k, l) in quadruples(n) {
            let c = &m[((k - 1) * n + (l - 1), (j - 1) * n + (i - 1))];
            if !c.is_zero() {
                t.coeffs.insert([i, j, k, l], c.clone());
            }
        }
        Ok(t)
    }

    /// True iff `can(self)` is invertible.
    pub fn nondegenerate(&self) -> bool {
        rank(&self.can()) == self.n * self.n
    }
}

fn quadruples(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (1..=n).flat_map(move |i| {
        (1..=n).flat_map(move |j| (1..=n).flat_map(move |k| (1..=n).map(move |l| (i, j, k, l))))
    })
}

pub fn embed(t: &Tensor2, slot: Slot) -> Tensor3 {
    t.embed(slot)
}

pub fn swap(t: &Tensor2) -> Tensor2 {
    t.swap()
}

pub fn pr2(t: &Tensor2) -> Tensor2 {
    t.pr()
}

pub fn pr3(t: &Tensor3) -> Tensor3 {
    t.pr()
}

/// `P = Σ e_ij⊗e_ji`.
pub fn tensor_p(n: usize) -> Tensor2 {
    let mut t = Tensor2::zero(n);
    for i in 1..=n {
        for j in 1..=n {
            t.coeffs.insert([i, j, j, i], Rational::one());
        }
    }
    t
}

/// The Casimir element `Ω = (pr⊗pr)(P)` of `sl_n⊗sl_n` for the trace form.
pub fn tensor_omega(n: usize) -> Tensor2 {
    tensor_p(n).pr()
}

impl<const K: usize> Add for &Tensor<K> {
    type Output = Tensor<K>;

    fn add(self, rhs: &Tensor<K>) -> Tensor<K> {
        self.check_size(rhs).expect("tensor sizes must agree");
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c);
        }
        out
    }
}

impl<const K: usize> Sub for &Tensor<K> {
    type Output = Tensor<K>;

    fn sub(self, rhs: &Tensor<K>) -> Tensor<K> {
        self.check_size(rhs).expect("tensor sizes must agree");
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl<const K: usize> Neg for &Tensor<K> {
    type Output = Tensor<K>;

    fn neg(self) -> Tensor<K> {
        Tensor {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

/// Panics on a size mismatch; use [`Tensor::checked_mul`] to get an error.
impl<const K: usize> Mul for &Tensor<K> {
    type Output = Tensor<K>;

    fn mul(self, rhs: &Tensor<K>) -> Tensor<K> {
        self.checked_mul(rhs).expect("tensor sizes must agree")
    }
}
