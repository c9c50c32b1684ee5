//! Deterministic sampling of small rational parameter tuples.
//!
//! Draws have numerator in `[-9, 9]` and denominator in `{1, 2, 3}`, which
//! keeps bit growth in the exact kernels bounded. The generator is ChaCha8
//! seeded from a `u64`, so a seed fixes the whole stream on every platform.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{rat, Rational};
use crate::{Error, Result};

/// Consecutive rejected draws after which sampling gives up.
pub const MAX_REJECTIONS: usize = 1000;

/// A coincidence a sampled tuple must avoid. Indices refer to tuple slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    /// slot must be nonzero
    NonZero(usize),
    /// the sum of the given slots must be nonzero
    NonZeroSum(Vec<usize>),
    /// the given slots must be pairwise distinct
    Distinct(Vec<usize>),
}

impl Constraint {
    pub fn is_violated(&self, tuple: &[Rational]) -> bool {
        match self {
            Constraint::NonZero(i) => tuple[*i] == Rational::from_integer(0.into()),
            Constraint::NonZeroSum(ix) => {
                let s: Rational = ix.iter().map(|&i| &tuple[i]).sum();
                s == Rational::from_integer(0.into())
            }
            Constraint::Distinct(ix) => ix
                .iter()
                .enumerate()
                .any(|(a, &i)| ix[a + 1..].iter().any(|&j| tuple[i] == tuple[j])),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn draw(&mut self) -> Rational {
        let p: i64 = self.rng.random_range(-9..=9);
        let q: i64 = self.rng.random_range(1..=3);
        rat(p, q)
    }

    pub fn draw_tuple(&mut self, arity: usize) -> Vec<Rational> {
        (0..arity).map(|_| self.draw()).collect()
    }

    /// Draws tuples until `accept` returns `Some`. The closure is where
    /// callers reject degenerate points, including ones only detectable by
    /// attempting a computation.
    pub fn draw_accepted<T>(
        &mut self,
        arity: usize,
        mut accept: impl FnMut(&[Rational]) -> Result<Option<T>>,
    ) -> Result<T> {
        for _ in 0..MAX_REJECTIONS {
            let t = self.draw_tuple(arity);
            if let Some(out) = accept(&t)? {
                return Ok(out);
            }
        }
        Err(Error::ExhaustedSampling {
            attempts: MAX_REJECTIONS,
        })
    }

    /// Draws a tuple violating none of `constraints`.
    pub fn draw_constrained(
        &mut self,
        arity: usize,
        constraints: &[Constraint],
    ) -> Result<Vec<Rational>> {
        self.draw_accepted(arity, |t| {
            Ok((!constraints.iter().any(|c| c.is_violated(t))).then(|| t.to_vec()))
        })
    }
}

/// `count` tuples of the given arity avoiding every constraint.
pub fn sample_rationals(
    seed: u64,
    count: usize,
    arity: usize,
    forbidden: &[Constraint],
) -> Result<Vec<Vec<Rational>>> {
    let mut s = Sampler::new(seed);
    (0..count).map(|_| s.draw_constrained(arity, forbidden)).collect()
}
