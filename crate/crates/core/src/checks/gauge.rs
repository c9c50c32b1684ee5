//! Gauge transformations and formally exponential twists.
//!
//! `exp` of a rational is irrational, so a twist `exp(E)·r` is carried as
//! the pair `(E, r)` with `E` a polynomial in the spectral symbols. Products
//! add exponents and multiply bodies; an equation between twisted terms
//! holds iff all exponents agree and the bodies satisfy it.

use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::kernel::{Rational, SquareMatrix};
use crate::tensor::{Slot, Tensor, Tensor2, Tensor3};
use crate::{Error, Result};

use super::laws::{Aybe4Point, AybePoint};
use super::SolutionHandle;

/// A polynomial with rational coefficients in `nvars` ordered symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(alloc::vec![0; nvars], c);
        p
    }

    /// The symbol with index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "symbol index out of range");
        let mut e = alloc::vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    /// `Σ c_k x^k` in symbol `i`.
    pub fn univariate(nvars: usize, i: usize, coeffs: &[Rational]) -> Self {
        let x = Self::var(nvars, i);
        coeffs
            .iter()
            .rev()
            .fold(Self::zero(nvars), |acc, c| &(&acc * &x) + &Self::constant(nvars, c.clone()))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponents, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.nvars, Rational::one()), |acc, _| &acc * self)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "point arity");
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mono = e
                .iter()
                .zip(point)
                .fold(Rational::one(), |m, (&k, x)| m * num_traits::pow(x.clone(), k as usize));
            acc + c * mono
        })
    }

    /// Replaces symbol `i` by `images[i]`; the result lives in the symbols
    /// of the images.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars, "one image per symbol");
        let target = images.first().map_or(0, MultiPoly::nvars);
        assert!(images.iter().all(|p| p.nvars == target), "images share symbols");
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mono = e
                .iter()
                .zip(images)
                .fold(Self::constant(target, c.clone()), |m, (&k, p)| &m * &p.pow(k));
            out = &out + &mono;
        }
        out
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "symbol count");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "symbol count");
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

/// `exp(exponent)·body`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpTwisted<T> {
    pub exponent: MultiPoly,
    pub body: T,
}

pub type ExpTwistedTensor = ExpTwisted<Tensor2>;

impl<const K: usize> Mul for &ExpTwisted<Tensor<K>> {
    type Output = ExpTwisted<Tensor<K>>;

    fn mul(self, rhs: &ExpTwisted<Tensor<K>>) -> ExpTwisted<Tensor<K>> {
        ExpTwisted {
            exponent: &self.exponent + &rhs.exponent,
            body: &self.body * &rhs.body,
        }
    }
}

/// `exp(E)·r` with `E` a polynomial in the handle's own arguments:
/// `(v, y₁, y₂)` for three-variable handles, `(v₁, v₂, y₁, y₂)` otherwise.
#[derive(Debug, Clone)]
pub struct ExpTwistedHandle {
    base: SolutionHandle,
    exponent: MultiPoly,
}

impl ExpTwistedHandle {
    pub fn base(&self) -> &SolutionHandle {
        &self.base
    }

    pub fn exponent(&self) -> &MultiPoly {
        &self.exponent
    }

    /// The twisted value at symbolic arguments `args` (polynomials in the
    /// point symbols), with the body evaluated at `point`.
    pub fn eval_formal(&self, args: &[MultiPoly], point: &[Rational]) -> Result<ExpTwistedTensor> {
        let vals: Vec<Rational> = args.iter().map(|a| a.eval(point)).collect();
        let body = match vals.as_slice() {
            [v, y1, y2] => self.base.eval(v, y1, y2)?,
            [v1, v2, y1, y2] => self.base.eval4(v1, v2, y1, y2)?,
            _ => return Err(Error::WrongFlavor("twisted handles take three or four arguments")),
        };
        Ok(ExpTwisted {
            exponent: self.exponent.substitute(args),
            body,
        })
    }
}

/// Twists `r` by `exp(exponent)`. The exponent's symbols are the handle's
/// arguments in order.
pub fn exp_twist(r: &SolutionHandle, exponent: MultiPoly) -> Result<ExpTwistedHandle> {
    let expected = match r.flavor() {
        super::Flavor::ThreeVar => 3,
        super::Flavor::FourVar => 4,
    };
    if exponent.nvars() != expected {
        return Err(Error::SizeMismatch {
            expected,
            found: exponent.nvars(),
        });
    }
    Ok(ExpTwistedHandle {
        base: r.clone(),
        exponent,
    })
}

fn embedded(t: ExpTwistedTensor, slot: Slot) -> ExpTwisted<Tensor3> {
    ExpTwisted {
        exponent: t.exponent,
        body: t.body.embed(slot),
    }
}

fn balance(
    lhs: ExpTwisted<Tensor3>,
    t1: ExpTwisted<Tensor3>,
    t2: ExpTwisted<Tensor3>,
) -> Result<Tensor3> {
    if lhs.exponent != t1.exponent || lhs.exponent != t2.exponent {
        return Err(Error::ExponentMismatch);
    }
    Ok(&(&lhs.body - &t1.body) - &t2.body)
}

/// The three-variable AYBE for a twisted three-variable handle. Errors with
/// `ExponentMismatch` unless the three terms carry the same exponent;
/// otherwise returns the residual of the bodies.
pub fn exp_aybe_check(h: &ExpTwistedHandle, p: &AybePoint) -> Result<Tensor3> {
    // point symbols: u, v, y1, y2, y3
    let s = |i| MultiPoly::var(5, i);
    let (u, v, y1, y2, y3) = (s(0), s(1), s(2), s(3), s(4));
    let uv = &u + &v;
    let mv = -&v;
    let point = [p.u.clone(), p.v.clone(), p.y1.clone(), p.y2.clone(), p.y3.clone()];
    let term = |args: [&MultiPoly; 3], slot| -> Result<ExpTwisted<Tensor3>> {
        let args: Vec<MultiPoly> = args.iter().map(|a| (*a).clone()).collect();
        Ok(embedded(h.eval_formal(&args, &point)?, slot))
    };
    let lhs = &term([&u, &y1, &y2], Slot::S12)? * &term([&uv, &y2, &y3], Slot::S23)?;
    let t1 = &term([&uv, &y1, &y3], Slot::S13)? * &term([&mv, &y1, &y2], Slot::S12)?;
    let t2 = &term([&v, &y2, &y3], Slot::S23)? * &term([&u, &y1, &y3], Slot::S13)?;
    balance(lhs, t1, t2)
}

/// The four-variable AYBE for a twisted handle, as [`exp_aybe_check`].
pub fn exp_aybe4_check(h: &ExpTwistedHandle, p: &Aybe4Point) -> Result<Tensor3> {
    // point symbols: v1, v2, v3, y1, y2, y3
    let s = |i| MultiPoly::var(6, i);
    let (v1, v2, v3, y1, y2, y3) = (s(0), s(1), s(2), s(3), s(4), s(5));
    let point = [
        p.v1.clone(),
        p.v2.clone(),
        p.v3.clone(),
        p.y1.clone(),
        p.y2.clone(),
        p.y3.clone(),
    ];
    let term = |args: [&MultiPoly; 4], slot| -> Result<ExpTwisted<Tensor3>> {
        let args: Vec<MultiPoly> = args.iter().map(|a| (*a).clone()).collect();
        Ok(embedded(h.eval_formal(&args, &point)?, slot))
    };
    let lhs = &term([&v1, &v2, &y1, &y2], Slot::S12)? * &term([&v1, &v3, &y2, &y3], Slot::S23)?;
    let t1 = &term([&v1, &v3, &y1, &y3], Slot::S13)? * &term([&v3, &v2, &y1, &y2], Slot::S12)?;
    let t2 = &term([&v2, &v3, &y2, &y3], Slot::S23)? * &term([&v1, &v2, &y1, &y3], Slot::S13)?;
    balance(lhs, t1, t2)
}

/// `φ(v; y) = Σ M_ab·v^a·y^b`, a matrix polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPolyGauge {
    n: usize,
    terms: Vec<((u32, u32), SquareMatrix)>,
}

impl MatrixPolyGauge {
    pub fn new(n: usize, terms: Vec<((u32, u32), SquareMatrix)>) -> Self {
        assert!(terms.iter().all(|(_, m)| m.n() == n), "matrix size");
        MatrixPolyGauge { n, terms }
    }

    pub fn constant(m: SquareMatrix) -> Self {
        Self::new(m.n(), alloc::vec![((0, 0), m)])
    }

    /// `f(v, y)·𝟙` for a scalar polynomial `f` in the symbols `(v, y)`.
    pub fn scalar(n: usize, f: &MultiPoly) -> Self {
        assert_eq!(f.nvars(), 2, "scalar gauges are polynomials in (v, y)");
        let one = SquareMatrix::identity(n);
        let terms = f.terms().map(|(e, c)| ((e[0], e[1]), one.scale(c))).collect();
        Self::new(n, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&self, v: &Rational, y: &Rational) -> SquareMatrix {
        self.terms.iter().fold(SquareMatrix::zero(self.n), |acc, ((a, b), m)| {
            let w = num_traits::pow(v.clone(), *a as usize) * num_traits::pow(y.clone(), *b as usize);
            &acc + &m.scale(&w)
        })
    }

    fn inverse_at(&self, v: &Rational, y: &Rational) -> Result<SquareMatrix> {
        self.eval(v, y).inverse().map_err(|_| Error::SingularGauge)
    }
}

/// `(φ(v₁;y₁)⊗φ(v₂;y₂))·r(v₁,v₂;y₁,y₂)·(φ⁻¹(v₂;y₁)⊗φ⁻¹(v₁;y₂))`; the
/// inverse factors take crossed arguments. The result is four-variable.
pub fn gauge_apply(r: &SolutionHandle, phi: MatrixPolyGauge) -> Result<SolutionHandle> {
    if phi.n() != r.n() {
        return Err(Error::SizeMismatch {
            expected: r.n(),
            found: phi.n(),
        });
    }
    let base = r.clone();
    let name = alloc::format!("gauge({})", r.name());
    Ok(SolutionHandle::four(r.n(), name, move |v1, v2, y1, y2| {
        let left = Tensor2::from_pair(&phi.eval(v1, y1), &phi.eval(v2, y2));
        let right = Tensor2::from_pair(&phi.inverse_at(v2, y1)?, &phi.inverse_at(v1, y2)?);
        Ok(&(&left * &base.eval4(v1, v2, y1, y2)?) * &right)
    }))
}

#[cfg(test)]
mod tests {
    use super::super::laws::{aybe4_check, aybe_check};
    use super::*;
    use crate::kernel::{int, rat};

    fn pt4() -> Aybe4Point {
        Aybe4Point::from_slice(&[int(3), int(1), int(2), int(0), int(1), int(4)])
    }

    fn pt() -> AybePoint {
        AybePoint::from_slice(&[int(1), int(2), int(0), int(1), int(3)])
    }

    /// `v(g(y₂) − g(y₁))` over `(v, y₁, y₂)`.
    fn difference_exponent(g: &[Rational]) -> MultiPoly {
        let v = MultiPoly::var(3, 0);
        let gy = |i| MultiPoly::univariate(3, i, g);
        &v * &(&gy(2) - &gy(1))
    }

    #[test]
    fn multipoly_arithmetic() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = &(&x + &y).pow(2) - &(&x * &y).scale(&int(2));
        assert_eq!(p, &x.pow(2) + &y.pow(2));
        assert_eq!(p.eval(&[int(2), int(3)]), int(13));
        let s = p.substitute(&[&x + &y, MultiPoly::constant(2, int(1))]);
        assert_eq!(s.eval(&[int(1), int(1)]), int(5));
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn identity_gauge_changes_nothing() {
        let r = SolutionHandle::construction(2, 1).unwrap();
        let g = gauge_apply(&r, MatrixPolyGauge::constant(SquareMatrix::identity(2))).unwrap();
        assert_eq!(
            g.eval4(&int(3), &int(1), &int(0), &int(2)).unwrap(),
            r.eval(&int(2), &int(0), &int(2)).unwrap()
        );
    }

    #[test]
    fn gauges_preserve_the_four_variable_equation() {
        let r = SolutionHandle::construction(2, 1).unwrap();
        let diag = MatrixPolyGauge::constant(SquareMatrix::diag(&[int(2), int(1)]));
        assert!(aybe4_check(&gauge_apply(&r, diag).unwrap(), &pt4()).unwrap().is_zero());
        let (v, y) = (MultiPoly::var(2, 0), MultiPoly::var(2, 1));
        let f = &MultiPoly::constant(2, int(1)) + &(&v * &y);
        let scalar = MatrixPolyGauge::scalar(2, &f);
        let p = Aybe4Point::from_slice(&[int(3), rat(1, 2), int(2), int(1), int(-1), rat(1, 3)]);
        assert!(aybe4_check(&gauge_apply(&r, scalar).unwrap(), &p).unwrap().is_zero());
        // 𝟙 + vy·e12 is unipotent, hence invertible everywhere
        let unipotent = MatrixPolyGauge::new(
            2,
            alloc::vec![((0, 0), SquareMatrix::identity(2)), ((1, 1), SquareMatrix::unit(2, 1, 2))],
        );
        assert!(aybe4_check(&gauge_apply(&r, unipotent).unwrap(), &p).unwrap().is_zero());
    }

    #[test]
    fn singular_gauge_reported() {
        let r = SolutionHandle::construction(2, 1).unwrap();
        let y = MultiPoly::var(2, 1);
        let g = gauge_apply(&r, MatrixPolyGauge::scalar(2, &y)).unwrap();
        assert_eq!(g.eval4(&int(3), &int(1), &int(0), &int(2)), Err(Error::SingularGauge));
    }

    #[test]
    fn difference_twist_balances() {
        let r = SolutionHandle::construction(2, 1).unwrap();
        let h = exp_twist(&r, difference_exponent(&[int(0), int(1)])).unwrap();
        assert!(exp_aybe_check(&h, &pt()).unwrap().is_zero());
        let h = exp_twist(&r, difference_exponent(&[rat(1, 2), int(-1), int(3)])).unwrap();
        assert!(exp_aybe_check(&h, &pt()).unwrap().is_zero());
    }

    #[test]
    fn twisted_exponents_match_closed_form_for_linear_g() {
        // −u·g(y₁) − v·g(y₂) + (u+v)·g(y₃) with g(y) = y
        let r = SolutionHandle::construction(2, 1).unwrap();
        let h = exp_twist(&r, difference_exponent(&[int(0), int(1)])).unwrap();
        let s = |i| MultiPoly::var(5, i);
        let args = [s(0), s(2), s(3)];
        let point = [int(1), int(2), int(0), int(1), int(3)];
        let a = h.eval_formal(&args, &point).unwrap();
        let args = [&s(0) + &s(1), s(3), s(4)];
        let b = h.eval_formal(&args, &point).unwrap();
        let expected = &(&(-&(&s(0) * &s(2))) - &(&s(1) * &s(3))) + &(&(&s(0) + &s(1)) * &s(4));
        assert_eq!(&a.exponent + &b.exponent, expected);
    }

    #[test]
    fn zero_exponent_is_plain_aybe() {
        let r = SolutionHandle::construction(2, 1).unwrap();
        let h = exp_twist(&r, MultiPoly::zero(3)).unwrap();
        assert_eq!(exp_aybe_check(&h, &pt()).unwrap(), aybe_check(&r, &pt()).unwrap());
    }

    #[test]
    fn non_difference_exponent_mismatches() {
        let r = SolutionHandle::construction(2, 1).unwrap();
        let e = &MultiPoly::var(3, 0) * &MultiPoly::var(3, 1);
        let h = exp_twist(&r, e).unwrap();
        assert_eq!(exp_aybe_check(&h, &pt()).unwrap_err(), Error::ExponentMismatch);
    }

    #[test]
    fn four_variable_exponential_gauge_balances() {
        // c(v₂ − v₁)(y₂ − y₁) over (v₁, v₂, y₁, y₂)
        let s = |i| MultiPoly::var(4, i);
        let e = (&(&s(1) - &s(0)) * &(&s(3) - &s(2))).scale(&rat(5, 2));
        let r = SolutionHandle::construction(3, 1).unwrap().to_four();
        let h = exp_twist(&r, e).unwrap();
        assert!(exp_aybe4_check(&h, &pt4()).unwrap().is_zero());
    }
}
