//! Exact construction and verification of rational solutions of the
//! associative Yang-Baxter equation (AYBE).
//!
//! Everything here works over the rationals with no rounding anywhere. A
//! tensor identity that holds as a rational-function identity is checked by
//! evaluating both sides at seeded rational points and comparing the
//! resulting tensors coefficient by coefficient.
//!
//! The crate is `no_std` (it needs `alloc`). IO, serialization and the
//! command-line front end live in the companion `aybe-cli` crate.
//!
//! Layout:
//! - [`kernel`]: rationals, exact linear algebra, interpolation, sampling
//! - [`jmatrix`]: the coprime-pair reduction and the nilpotent matrix `J`
//! - [`solspace`]: the polynomial space `W`, its constraint kernel, and the
//!   construction of `r_(n,d)`
//! - [`tensor`]: `A⊗A` and `A⊗A⊗A` over matrix units
//! - [`closedforms`]: explicit formulas used as independent oracles
//! - [`checks`]: identity checkers, Laurent and pole extraction, symmetry
//!   solver, gauge machinery and the QYBE condition battery
#![no_std]

extern crate alloc;

pub mod checks;
pub mod closedforms;
mod error;
pub mod jmatrix;
pub mod kernel;
pub mod solspace;
pub mod tensor;

pub use error::{Error, Result};
pub use kernel::{Matrix, Polynomial, Rational, SquareMatrix};
pub use tensor::{Tensor2, Tensor3};
