//! The reduction map on coprime pairs and the recursive construction of
//! the 0/1 matrix `J = J(n−d, d)`.
//!
//! `ε(a, b)` subtracts the smaller entry from the larger one. Starting at
//! `(n−d, d)` it walks down to `(1, 1)`. `J` is then built bottom-up from
//! `J(1, 1) = [[0, 1], [0, 0]]`: whenever `(a, b) = ε(p, q)`, the block
//! matrix `J(a, b) = [J₁ J₂; 0 J₃]` (with `J₁` of size `a`) grows into
//!
//! ```text
//!   p = a:  [0 𝟙 0; 0 J₁ J₂; 0 0 J₃]      q = b:  [J₁ J₂ 0; 0 J₃ 𝟙; 0 0 0]
//! ```
//!
//! where `𝟙` is `a×a` in the first case and `b×b` in the second. Either way
//! the result is split after its first `p` rows and columns.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::One;

use crate::kernel::{Rational, SquareMatrix};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoprimePair {
    pub a: usize,
    pub b: usize,
}

impl CoprimePair {
    pub fn new(a: usize, b: usize) -> Option<Self> {
        (a > 0 && b > 0 && a.gcd(&b) == 1).then_some(CoprimePair { a, b })
    }

    pub fn is_terminal(self) -> bool {
        self.a == 1 && self.b == 1
    }
}

/// One reduction step; undefined on `(1, 1)`.
pub fn epsilon_step(p: CoprimePair) -> Result<CoprimePair> {
    match p.a.cmp(&p.b) {
        core::cmp::Ordering::Greater => Ok(CoprimePair { a: p.a - p.b, b: p.b }),
        core::cmp::Ordering::Less => Ok(CoprimePair { a: p.a, b: p.b - p.a }),
        // coprime and equal forces (1, 1)
        core::cmp::Ordering::Equal => Err(Error::Undefined),
    }
}

/// Checks `0 < d < n` and `gcd(n, d) = 1`.
pub fn validate_pair(n: usize, d: usize) -> Result<()> {
    if d == 0 || d >= n || n.gcd(&d) != 1 {
        return Err(Error::InvalidPair { n, d });
    }
    Ok(())
}

/// The sequence `(n−d, d), ε(n−d, d), …, (1, 1)`.
pub fn epsilon_sequence(n: usize, d: usize) -> Result<Vec<CoprimePair>> {
    validate_pair(n, d)?;
    let mut cur = CoprimePair { a: n - d, b: d };
    let mut seq = alloc::vec![cur];
    while !cur.is_terminal() {
        cur = epsilon_step(cur)?;
        seq.push(cur);
    }
    Ok(seq)
}

/// A `J(p, q)` together with its block division after row/column `split`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockedJ {
    matrix: SquareMatrix,
    split: usize,
}

impl BlockedJ {
    pub fn size(&self) -> usize {
        self.matrix.n()
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    /// Positions of the ones, 1-based, in lexicographic order.
    pub fn ones(&self) -> Vec<(usize, usize)> {
        self.matrix.nonzero_entries().map(|(i, j, _)| (i, j)).collect()
    }

    fn terminal() -> Self {
        BlockedJ {
            matrix: SquareMatrix::unit(2, 1, 2),
            split: 1,
        }
    }

    /// Grows `J(a, b)` into `J(p, q)` where `(a, b) = ε(p, q)`.
    fn grow(&self, p: CoprimePair) -> Self {
        let a = self.split;
        let m = self.size();
        let new_n = p.a + p.b;
        let mut out = SquareMatrix::zero(new_n);
        let one = Rational::one();
        // shift: where the old matrix lands; eye: (row, col) offset and size of 𝟙
        let (shift, eye_row, eye_col, eye_len) = if p.a == a {
            (a, 0, a, a)
        } else {
            (0, a, m, p.b)
        };
        for (i, j, x) in self.matrix.nonzero_entries() {
            out.set(i + shift, j + shift, x.clone());
        }
        for k in 1..=eye_len {
            out.set(eye_row + k, eye_col + k, one.clone());
        }
        BlockedJ {
            matrix: out,
            split: p.a,
        }
    }
}

/// `J = J(n−d, d)`, an `n×n` 0/1 matrix split after row `n − d`.
pub fn build_j(n: usize, d: usize) -> Result<BlockedJ> {
    let seq = epsilon_sequence(n, d)?;
    let mut j = BlockedJ::terminal();
    for &p in seq.iter().rev().skip(1) {
        j = j.grow(p);
    }
    debug_assert_eq!(j.size(), n);
    debug_assert_eq!(j.split(), n - d);
    Ok(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pair(a: usize, b: usize) -> CoprimePair {
        CoprimePair::new(a, b).unwrap()
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon_step(pair(3, 2)).unwrap(), pair(1, 2));
        assert_eq!(epsilon_step(pair(1, 2)).unwrap(), pair(1, 1));
        assert_eq!(epsilon_step(pair(2, 1)).unwrap(), pair(1, 1));
        assert_eq!(epsilon_step(pair(1, 1)), Err(Error::Undefined));
    }

    #[test]
    fn sequences() {
        assert_eq!(epsilon_sequence(5, 2).unwrap(), vec![pair(3, 2), pair(1, 2), pair(1, 1)]);
        assert_eq!(epsilon_sequence(2, 1).unwrap(), vec![pair(1, 1)]);
        assert_eq!(epsilon_sequence(3, 1).unwrap(), vec![pair(2, 1), pair(1, 1)]);
    }

    #[test]
    fn invalid_pairs_rejected() {
        for (n, d) in [(4, 2), (3, 0), (3, 3), (2, 5), (6, 3)] {
            assert_eq!(build_j(n, d), Err(Error::InvalidPair { n, d }));
        }
    }

    #[test]
    fn j_2_1() {
        let j = build_j(2, 1).unwrap();
        assert_eq!(j.ones(), vec![(1, 2)]);
        assert_eq!(j.split(), 1);
    }

    #[test]
    fn j_5_2_matches_worked_example() {
        let j = build_j(5, 2).unwrap();
        assert_eq!(j.size(), 5);
        assert_eq!(j.ones(), vec![(1, 2), (2, 3), (2, 4), (3, 5)]);
        assert_eq!(j.split(), 3);
    }

    #[test]
    fn j_3_1() {
        let j = build_j(3, 1).unwrap();
        assert_eq!(j.ones(), vec![(1, 2), (2, 3)]);
        assert_eq!(j.split(), 2);
    }

    #[test]
    fn block_below_split_vanishes_for_all_small_pairs() {
        for n in 2..=12 {
            for d in 1..n {
                if n.gcd(&d) != 1 {
                    continue;
                }
                let j = build_j(n, d).unwrap();
                let s = j.split();
                assert_eq!((j.size(), s), (n, n - d));
                for (r, c) in j.ones() {
                    assert!(!(r > s && c <= s), "({n},{d}) has a one at ({r},{c})");
                    assert!(r < c, "J is strictly upper triangular");
                }
                assert_eq!(j.ones().len(), 1 + count_ones_added(n, d));
            }
        }
    }

    // Independent count: p=a adds a ones, q=b adds b ones.
    fn count_ones_added(n: usize, d: usize) -> usize {
        let seq = epsilon_sequence(n, d).unwrap();
        seq.windows(2)
            .map(|w| if w[0].a == w[1].a { w[1].a } else { w[1].b })
            .sum()
    }
}
