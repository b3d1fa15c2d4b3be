//! Nilradical of a solvable Leibniz algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraTable;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::matrix_lie;
use crate::rational::{int, Rational};
use crate::series::{derived_series, ideal_generated_by, nilpotency_check_on_subspace, product_space};
use crate::subspace::{unit, Subspace};

pub const DEFAULT_SEED: u64 = 20_140_301;
pub const DEFAULT_TRIALS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Maximality {
    /// Maximal among nilpotent ideals, proven.
    Certified,
    /// No extension was found, but maximality is not proven.
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nilradical {
    pub space: Subspace,
    pub maximality: Maximality,
}

impl Nilradical {
    pub fn is_certified(&self) -> bool {
        self.maximality == Maximality::Certified
    }
}

/// Nilradical with the default seed and number of random candidates.
pub fn nilradical(a: &AlgebraTable) -> Result<Nilradical> {
    nilradical_with(a, DEFAULT_SEED, DEFAULT_TRIALS)
}

/// Greedy enlargement of `[A, A]` by nilpotent ideal extensions, tried
/// along a complement basis and along `trials` random vectors drawn from
/// `seed`.
pub fn nilradical_with(a: &AlgebraTable, seed: u64, trials: usize) -> Result<Nilradical> {
    let violations = a.check_leibniz();
    if !violations.is_empty() {
        return Err(Error::NotLeibniz(violations.len()));
    }
    if !derived_series(a).stabilized_at_zero {
        return Err(Error::Domain("the algebra is not solvable".into()));
    }
    let n = a.dim();
    let full = Subspace::full(n);
    let mut nil = product_space(a, &full, &full)?;
    if !nilpotency_check_on_subspace(a, &nil)? {
        return Err(Error::Internal("the square of a solvable algebra is not nilpotent".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random: Vec<Vec<Rational>> =
        (0..trials).map(|_| (0..n).map(|_| int(rng.random_range(-3..=3))).collect()).collect();

    loop {
        let before = nil.dim();
        let candidates: Vec<Vec<Rational>> = nil.complement_basis().into_iter().chain(random.iter().cloned()).collect();
        for v in candidates {
            if nil.is_full() {
                break;
            }
            // members of a nilpotent ideal act nilpotently on the whole algebra
            if nil.contains(&v) || !a.right_mult_matrix(&v, None)?.is_nilpotent()? {
                continue;
            }
            let ideal = ideal_generated_by(a, &nil.with_vector(&v)?)?;
            if nilpotency_check_on_subspace(a, &ideal)? {
                nil = ideal;
            }
        }
        if nil.dim() == before {
            break;
        }
    }

    for w in nil.complement_basis() {
        let restricted = a.right_mult_matrix(&w, Some(&nil))?;
        if restricted.is_nilpotent()? && a.right_mult_matrix(&w, None)?.is_nilpotent()? {
            // w acts nilpotently on the whole algebra, so it lies in the nilradical
            return Err(Error::Internal("greedy search missed a nilpotent extension".into()));
        }
    }

    let maximality = if n - nil.dim() <= 1 || engel_nilradical(a).as_ref() == Some(&nil) {
        Maximality::Certified
    } else {
        Maximality::Heuristic
    };
    Ok(Nilradical { space: nil, maximality })
}

/// `{x : R_x nilpotent}`, which for a solvable algebra is its nilradical.
/// `None` when the trace-form test cannot decide.
fn engel_nilradical(a: &AlgebraTable) -> Option<Subspace> {
    let n = a.dim();
    let ops: Vec<Matrix> =
        (0..n).map(|i| a.right_mult_matrix(&unit(n, i), None).expect("unit vector fits")).collect();
    // pick independent operators, remembering which basis vectors they came from
    let mut chosen = Vec::new();
    let mut kernel = Vec::new();
    {
        let flat: Vec<Vec<Rational>> = ops.iter().map(|m| m.as_slice().to_vec()).collect();
        let m = Matrix::from_rows(flat, n * n).ok()?;
        // kernel of x -> R_x
        kernel.extend(m.transpose().nullspace());
        let mut span = Subspace::zero(n * n);
        for (i, op) in ops.iter().enumerate() {
            let grown = span.with_vector(op.as_slice()).ok()?;
            if grown.dim() > span.dim() {
                chosen.push(i);
                span = grown;
            }
        }
    }
    let mats: Vec<Matrix> = chosen.iter().map(|&i| ops[i].clone()).collect();
    let part = matrix_lie::nilpotent_part(&mats, n)?;
    let lifted = part.into_iter().map(|c| {
        let mut x = vec![Rational::from_integer(0.into()); n];
        for (&i, ci) in chosen.iter().zip(c) {
            x[i] = ci;
        }
        x
    });
    Subspace::span(lifted.chain(kernel), n).ok()
}
