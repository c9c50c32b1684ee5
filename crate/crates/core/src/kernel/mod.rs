//! Exact scalars, dense exact linear algebra, univariate interpolation and
//! seeded sampling of rational parameter points.

mod matrix;
mod poly;
mod rational;
mod sample;
mod square;

pub use matrix::{invert, kernel_basis, rank, solve_linear, Matrix};
pub use poly::{interpolate_poly, Polynomial};
pub use rational::{int, parse_rational, rat, ParseRationalError, Rational};
pub use sample::{sample_rationals, Constraint, Sampler, MAX_REJECTIONS};
pub use square::SquareMatrix;
