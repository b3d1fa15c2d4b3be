//! Derivations, nilpotent derivations and nil-independence.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraTable;
use crate::echelon::EchelonBasis;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::matrix_lie;
use crate::rational::{int, Rational};
use crate::series::lower_central_series;
use crate::subspace::Subspace;

const SAMPLE_SEED: u64 = 0x6465_7269_76;
const SAMPLES: usize = 128;

/// Basis of the derivation algebra. Members are the rows of a reduced
/// echelon basis of the flattened matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationBasis {
    pub algebra_dim: usize,
    pub basis: Vec<Matrix>,
}

impl DerivationBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The span as a subspace of flattened `n x n` matrices.
    pub fn span(&self) -> Subspace {
        let n = self.algebra_dim;
        Subspace::span(self.basis.iter().map(|m| m.as_slice().to_vec()), n * n).expect("square members")
    }

    pub fn contains(&self, d: &Matrix) -> bool {
        let n = self.algebra_dim;
        d.rows() == n && d.cols() == n && self.span().contains(d.as_slice())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NilpotentDerivations {
    /// The nilpotent derivations form this subspace of flattened matrices.
    Linear(Subspace),
    /// Not decided by the available criteria.
    NotLinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NilIndependence {
    Exact(usize),
    /// Sampled, unverified lower bound.
    LowerBound(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundCheck {
    Holds,
    Fails,
    Indeterminate,
}

/// `D[b_i, b_j] = [D b_i, b_j] + [b_i, D b_j]` on all basis pairs.
pub fn is_derivation(a: &AlgebraTable, d: &Matrix) -> Result<bool> {
    let n = a.dim();
    if d.rows() != n || d.cols() != n {
        return Err(Error::Shape(format!("expected {n}x{n}, got {}x{}", d.rows(), d.cols())));
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = d.apply_row(a.product(i, j))?;
            let left = a.bracket(d.row(i), &crate::subspace::unit(n, j))?;
            let right = a.bracket(&crate::subspace::unit(n, i), d.row(j))?;
            if lhs.iter().zip(left.iter().zip(&right)).any(|(l, (p, q))| *l != p + q) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Kernel of the derivation equations, solved over the `n^2` matrix
/// entries.
pub fn derivation_space(a: &AlgebraTable) -> DerivationBasis {
    let n = a.dim();
    let vars = n * n;
    let var = |r: usize, s: usize| r * n + s;
    let mut eqs = EchelonBasis::new(vars);
    let mut row = vec![Rational::zero(); vars];
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                if eqs.dim() == vars {
                    break;
                }
                let mut any = false;
                for (k, c) in a.product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        row[var(k, m)] += c;
                        any = true;
                    }
                }
                for t in 0..n {
                    let c = a.get(t, j, m);
                    if !c.is_zero() {
                        row[var(i, t)] -= c;
                        any = true;
                    }
                    let c = a.get(i, t, m);
                    if !c.is_zero() {
                        row[var(j, t)] -= c;
                        any = true;
                    }
                }
                if any {
                    let filled = std::mem::replace(&mut row, vec![Rational::zero(); vars]);
                    eqs.insert(filled);
                }
            }
        }
    }
    let span = Subspace::span(eqs.nullspace(), vars).expect("nullspace vectors fit");
    let basis = span.basis().iter().map(|v| Matrix::from_flat(n, n, v.clone()).expect("n*n entries")).collect();
    DerivationBasis { algebra_dim: n, basis }
}

/// Basis adapted to a lower central series with one-dimensional steps,
/// as rows of a change-of-basis matrix.
fn adapted_basis(a: &AlgebraTable) -> Option<Matrix> {
    let n = a.dim();
    let report = lower_central_series(a);
    let expected: Vec<usize> = (0..=n).rev().collect();
    if report.dims != expected {
        return None;
    }
    let rows = (0..n)
        .map(|i| {
            let (upper, lower) = (&report.terms[i], &report.terms[i + 1]);
            upper.basis().iter().find(|v| !lower.contains(v)).expect("dimension drops by one").clone()
        })
        .collect();
    Matrix::from_rows(rows, n).ok()
}

/// The subspace of nilpotent members of the span of `ders`.
///
/// Decided through the flag of the lower central series when all its steps
/// are one-dimensional, and otherwise through the trace form of the
/// derivation algebra when that algebra is solvable.
pub fn nilpotent_derivation_subspace(a: &AlgebraTable, ders: &DerivationBasis) -> NilpotentDerivations {
    let n = a.dim();
    let ambient = n * n;
    if ders.basis.is_empty() {
        return NilpotentDerivations::Linear(Subspace::zero(ambient));
    }
    if let Some(p) = adapted_basis(a) {
        let p_inv = p.inverse().expect("adapted basis is a basis");
        let conj: Vec<Matrix> =
            ders.basis.iter().map(|d| p.mul(d).and_then(|m| m.mul(&p_inv)).expect("square")).collect();
        let triangular = conj.iter().all(|m| (0..n).all(|i| (0..i).all(|j| m[(i, j)].is_zero())));
        if triangular {
            // coefficients c with sum c_k diag(D_k) = 0
            let diag_rows: Vec<Vec<Rational>> =
                (0..n).map(|i| conj.iter().map(|m| m[(i, i)].clone()).collect()).collect();
            let coeffs = Matrix::from_rows(diag_rows, conj.len()).expect("rectangular").nullspace();
            let members = coeffs.iter().map(|c| matrix_lie::combine(&ders.basis, c, n).as_slice().to_vec());
            return NilpotentDerivations::Linear(Subspace::span(members, ambient).expect("square members"));
        }
    }
    match matrix_lie::nilpotent_part(&ders.basis, n) {
        Some(coeffs) => {
            let members = coeffs.iter().map(|c| matrix_lie::combine(&ders.basis, c, n).as_slice().to_vec());
            NilpotentDerivations::Linear(Subspace::span(members, ambient).expect("square members"))
        }
        None => NilpotentDerivations::NotLinear,
    }
}

/// Maximal dimension of a space of derivations without nonzero nilpotent
/// members.
pub fn max_nil_independent(a: &AlgebraTable) -> NilIndependence {
    let ders = derivation_space(a);
    match nilpotent_derivation_subspace(a, &ders) {
        NilpotentDerivations::Linear(nil) => NilIndependence::Exact(ders.dim() - nil.dim()),
        NilpotentDerivations::NotLinear => {
            let n = a.dim();
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            let found = (0..SAMPLES).any(|_| {
                let c: Vec<Rational> = (0..ders.dim()).map(|_| int(rng.random_range(-3..=3))).collect();
                !matrix_lie::combine(&ders.basis, &c, n).is_nilpotent().expect("square")
            });
            NilIndependence::LowerBound(usize::from(found))
        }
    }
}

/// `dim A - dim N` is at most the nil-independence count of `N`, and
/// `dim N >= dim A / 2`.
pub fn complement_bound_check(a: &AlgebraTable, nilradical: &Subspace) -> Result<BoundCheck> {
    let restricted = a.restrict(nilradical)?;
    let codim = a.dim() - nilradical.dim();
    if 2 * nilradical.dim() < a.dim() {
        return Ok(BoundCheck::Fails);
    }
    Ok(match max_nil_independent(&restricted) {
        NilIndependence::Exact(count) if codim <= count => BoundCheck::Holds,
        NilIndependence::Exact(_) => BoundCheck::Fails,
        NilIndependence::LowerBound(_) => BoundCheck::Indeterminate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(n: usize) -> AlgebraTable {
        let mut t = AlgebraTable::zero(n);
        for i in 0..n.saturating_sub(1) {
            t.set(i, 0, i + 1, int(1));
        }
        t
    }

    #[test]
    fn identity_is_not_a_derivation_of_nf2() {
        assert!(!is_derivation(&nf(2), &Matrix::identity(2)).unwrap());
        assert!(is_derivation(&nf(2), &Matrix::zeros(2, 2)).unwrap());
        assert!(is_derivation(&nf(2), &Matrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn nf_derivations() {
        let ders = derivation_space(&nf(4));
        assert_eq!(ders.dim(), 4);
        for d in &ders.basis {
            assert!(is_derivation(&nf(4), d).unwrap());
        }
        assert_eq!(max_nil_independent(&nf(4)), NilIndependence::Exact(1));
    }

    #[test]
    fn one_dimensional_zero_algebra() {
        assert_eq!(derivation_space(&AlgebraTable::zero(1)).dim(), 1);
        assert_eq!(max_nil_independent(&AlgebraTable::zero(1)), NilIndependence::Exact(1));
    }

    #[test]
    fn abelian_plane_is_not_linear() {
        let a = AlgebraTable::zero(2);
        let ders = derivation_space(&a);
        assert_eq!(ders.dim(), 4);
        assert_eq!(nilpotent_derivation_subspace(&a, &ders), NilpotentDerivations::NotLinear);
        assert_eq!(max_nil_independent(&a), NilIndependence::LowerBound(1));
    }

    #[test]
    fn direct_sum_of_two_blocks() {
        assert_eq!(max_nil_independent(&nf(2).direct_sum(&nf(3))), NilIndependence::Exact(2));
    }

    #[test]
    fn empty_algebra() {
        let a = AlgebraTable::zero(0);
        let ders = derivation_space(&a);
        assert_eq!(ders.dim(), 0);
        assert_eq!(nilpotent_derivation_subspace(&a, &ders), NilpotentDerivations::Linear(Subspace::zero(0)));
    }
}
