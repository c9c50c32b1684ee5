use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::kernel::{kernel_basis, Matrix, Rational, SquareMatrix};
use crate::tensor::Tensor2;
use crate::Result;

use super::SolutionHandle;

/// A basis of `{a ∈ sl_n : [T, a⊗𝟙 + 𝟙⊗a] = 0 for every T in samples}`.
pub fn infinitesimal_symmetries(samples: &[Tensor2], n: usize) -> Vec<SquareMatrix> {
    assert!(!samples.is_empty(), "need at least one sample");
    let one = SquareMatrix::identity(n);
    let units: Vec<Tensor2> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let e = SquareMatrix::unit(n, i, j);
            &Tensor2::from_pair(&e, &one) + &Tensor2::from_pair(&one, &e)
        })
        .collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for t in samples {
        // column (i,j): [T, e_ij⊗𝟙 + 𝟙⊗e_ij]
        let images: Vec<Tensor2> = units.iter().map(|u| t.commutator(u)).collect();
        let keys: BTreeSet<[usize; 4]> = images.iter().flat_map(|im| im.iter().map(|(k, _)| *k)).collect();
        for key in keys {
            rows.push(images.iter().map(|im| im.get(&key)).collect());
        }
    }
    // traceless
    rows.push(
        (0..n * n)
            .map(|k| if k / n == k % n { Rational::one() } else { Rational::zero() })
            .collect(),
    );
    kernel_basis(&Matrix::from_rows(rows))
        .into_iter()
        .map(|c| SquareMatrix::from_row_major(n, c))
        .collect()
}

/// `r(u; y₁, y₂)·r(−u; y₁, y₂)`.
pub fn s_product(r: &SolutionHandle, u: &Rational, y1: &Rational, y2: &Rational) -> Result<Tensor2> {
    let mu = -u.clone();
    Ok(&r.eval(u, y1, y2)? * &r.eval(&mu, y1, y2)?)
}
