//! Random unimodular basis changes.

use std::ops::Range;

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::matrix::Matrix;
use crate::rational::{int, Rational};

pub const MAX_OPERATIONS: usize = 20;
pub const MAX_ENTRY: i64 = 3;

/// Which row operations a scramble may use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScrambleShape {
    /// Any elementary integer operation.
    Unrestricted,
    /// Rows stay inside their block; the `free` row may also absorb rows
    /// of any block.
    Blocks { blocks: Vec<Range<usize>>, free: usize },
}

impl ScrambleShape {
    fn block_of(&self, row: usize) -> Option<usize> {
        match self {
            ScrambleShape::Unrestricted => Some(0),
            ScrambleShape::Blocks { blocks, .. } => blocks.iter().position(|b| b.contains(&row)),
        }
    }

    /// May `row_target += c * row_source` be applied?
    fn allows(&self, target: usize, source: usize) -> bool {
        match self {
            ScrambleShape::Unrestricted => true,
            ScrambleShape::Blocks { free, .. } => {
                if source == *free {
                    return false;
                }
                target == *free || self.block_of(target).is_some() && self.block_of(target) == self.block_of(source)
            }
        }
    }
}

fn bounded(m: &Matrix) -> bool {
    m.as_slice().iter().all(|x| x.abs() <= int(MAX_ENTRY))
}

/// Integer matrix of determinant ±1 built from at most
/// [`MAX_OPERATIONS`] elementary operations (row additions with factor
/// ±1 or ±2, swaps and sign changes), rejecting operations that would push
/// an entry above [`MAX_ENTRY`] in absolute value.
pub fn random_unimodular<R: Rng + ?Sized>(n: usize, shape: &ScrambleShape, rng: &mut R) -> Matrix {
    let mut m = Matrix::identity(n);
    if n == 0 {
        return m;
    }
    for _ in 0..MAX_OPERATIONS {
        let mut next = m.clone();
        let i = rng.random_range(0..n);
        match rng.random_range(0..4) {
            0 | 1 => {
                let j = rng.random_range(0..n);
                if i == j || !shape.allows(i, j) {
                    continue;
                }
                let c = int([-2, -1, 1, 2][rng.random_range(0..4)]);
                for col in 0..n {
                    let delta = &c * &m[(j, col)];
                    if !delta.is_zero() {
                        next[(i, col)] += delta;
                    }
                }
            }
            2 => {
                let j = rng.random_range(0..n);
                if i == j || !(shape.allows(i, j) && shape.allows(j, i)) {
                    continue;
                }
                let mut rows = next.to_rows();
                rows.swap(i, j);
                next = Matrix::from_rows(rows, n).expect("square");
            }
            _ => {
                for col in 0..n {
                    let v: Rational = -next[(i, col)].clone();
                    next[(i, col)] = v;
                }
            }
        }
        if bounded(&next) {
            m = next;
        }
    }
    m
}
