//! Identity checkers and analytic extractors.
//!
//! Every checker returns the residual of its identity at one exact point;
//! the identity holds there iff the residual is the zero tensor.

use alloc::string::String;
use alloc::sync::Arc;

use crate::kernel::Rational;
use crate::solspace::compute_r;
use crate::Tensor2;
use crate::{Error, Result};

mod battery;
mod gauge;
mod laurent;
mod laws;
mod symmetry;

pub use battery::{condition_battery, condition_c_holds, BatteryReport, CheckRecord, Conditions};
pub use gauge::{
    exp_aybe4_check, exp_aybe_check, exp_twist, gauge_apply, ExpTwistedHandle, ExpTwistedTensor,
    MatrixPolyGauge, MultiPoly,
};
pub use laurent::{diagonal_residue, laurent_in_v, tensor_interpolate, LaurentTensor};
pub use laws::{
    aybe4_check, aybe_check, cybe_check, dual_aybe_check, qybe_check, r0_r1_identity_check,
    unitarity_check, Aybe4Point, AybePoint, YTriple,
};
pub use symmetry::{infinitesimal_symmetries, s_product};

/// Which argument pattern a [`SolutionHandle`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// `r(v; y₁, y₂)`
    ThreeVar,
    /// `r(v₁, v₂; y₁, y₂)`
    FourVar,
}

type Eval3 = dyn Fn(&Rational, &Rational, &Rational) -> Result<Tensor2> + Send + Sync;
type Eval4 = dyn Fn(&Rational, &Rational, &Rational, &Rational) -> Result<Tensor2> + Send + Sync;

#[derive(Clone)]
enum Evaluator {
    Three(Arc<Eval3>),
    Four(Arc<Eval4>),
}

/// A tensor-valued function of the spectral parameters.
#[derive(Clone)]
pub struct SolutionHandle {
    n: usize,
    name: String,
    eval: Evaluator,
}

impl core::fmt::Debug for SolutionHandle {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SolutionHandle")
            .field("n", &self.n)
            .field("name", &self.name)
            .field("flavor", &self.flavor())
            .finish()
    }
}

impl SolutionHandle {
    pub fn three(
        n: usize,
        name: impl Into<String>,
        f: impl Fn(&Rational, &Rational, &Rational) -> Result<Tensor2> + Send + Sync + 'static,
    ) -> Self {
        SolutionHandle {
            n,
            name: name.into(),
            eval: Evaluator::Three(Arc::new(f)),
        }
    }

    pub fn four(
        n: usize,
        name: impl Into<String>,
        f: impl Fn(&Rational, &Rational, &Rational, &Rational) -> Result<Tensor2> + Send + Sync + 'static,
    ) -> Self {
        SolutionHandle {
            n,
            name: name.into(),
            eval: Evaluator::Four(Arc::new(f)),
        }
    }

    /// `r_(n,d)` from the construction, evaluated afresh at every point.
    pub fn construction(n: usize, d: usize) -> Result<Self> {
        crate::jmatrix::validate_pair(n, d)?;
        Ok(Self::three(n, alloc::format!("r({n},{d})"), move |v, y1, y2| {
            compute_r(n, d, v, y1, y2)
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn flavor(&self) -> Flavor {
        match self.eval {
            Evaluator::Three(_) => Flavor::ThreeVar,
            Evaluator::Four(_) => Flavor::FourVar,
        }
    }

    /// `r(v; y₁, y₂)`; four-variable handles are rejected.
    pub fn eval(&self, v: &Rational, y1: &Rational, y2: &Rational) -> Result<Tensor2> {
        match &self.eval {
            Evaluator::Three(f) => f(v, y1, y2),
            Evaluator::Four(_) => Err(Error::WrongFlavor("three-variable evaluation of a four-variable handle")),
        }
    }

    /// `r(v₁, v₂; y₁, y₂)`; three-variable handles read `v = v₁ − v₂`.
    pub fn eval4(&self, v1: &Rational, v2: &Rational, y1: &Rational, y2: &Rational) -> Result<Tensor2> {
        match &self.eval {
            Evaluator::Three(f) => f(&(v1 - v2), y1, y2),
            Evaluator::Four(f) => f(v1, v2, y1, y2),
        }
    }

    /// The same function viewed as a four-variable handle.
    pub fn to_four(&self) -> Self {
        match &self.eval {
            Evaluator::Four(_) => self.clone(),
            Evaluator::Three(f) => {
                let f = f.clone();
                Self::four(self.n, self.name.clone(), move |v1, v2, y1, y2| f(&(v1 - v2), y1, y2))
            }
        }
    }

    /// `y ↦ r(v₀; y₁, y₂)` for the QYBE.
    pub fn at_fixed_v(&self, v0: Rational) -> impl Fn(&Rational, &Rational) -> Result<Tensor2> + '_ {
        move |y1, y2| self.eval(&v0, y1, y2)
    }
}
