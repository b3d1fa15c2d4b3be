//! Lower central and derived series, annihilators and ideals.

use crate::algebra::AlgebraTable;
use crate::echelon::EchelonBasis;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::subspace::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// Terms of a series up to stabilization.
///
/// `terms[0]` is the whole algebra. Computation stops at the first zero
/// term or at the first term equal to its predecessor; that repeated term
/// is kept so the report shows where the series stalls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub dims: Vec<usize>,
    pub stabilized_at_zero: bool,
    /// Index of nilpotency (lower central) or solvability (derived): the
    /// one-based position of the first zero term.
    pub index: Option<usize>,
}

/// `[U, V]`: span of the products of basis vectors of `u` and `v`.
pub fn product_space(a: &AlgebraTable, u: &Subspace, v: &Subspace) -> Result<Subspace> {
    let n = a.dim();
    for s in [u, v] {
        if s.ambient_dim() != n {
            return Err(Error::Dimension { expected: n, found: s.ambient_dim() });
        }
    }
    let mut eb = EchelonBasis::new(n);
    'outer: for x in u.basis() {
        for y in v.basis() {
            eb.insert(a.bracket(x, y)?);
            if eb.dim() == n {
                break 'outer;
            }
        }
    }
    Ok(Subspace::from_echelon(eb, n))
}

fn series(a: &AlgebraTable, kind: SeriesKind) -> SeriesReport {
    let n = a.dim();
    let full = Subspace::full(n);
    let mut terms = vec![full.clone()];
    loop {
        let last = terms.last().expect("series starts non-empty");
        if last.is_zero() {
            break;
        }
        let next = match kind {
            SeriesKind::LowerCentral => product_space(a, last, &full),
            SeriesKind::Derived => product_space(a, last, last),
        }
        .expect("ambient dimensions agree");
        let repeated = &next == last;
        terms.push(next);
        if repeated {
            break;
        }
    }
    let dims: Vec<usize> = terms.iter().map(Subspace::dim).collect();
    let stabilized_at_zero = terms.last().is_some_and(Subspace::is_zero);
    let index = stabilized_at_zero.then_some(terms.len());
    SeriesReport { kind, terms, dims, stabilized_at_zero, index }
}

/// `L^1 = L`, `L^{k+1} = [L^k, L]`.
pub fn lower_central_series(a: &AlgebraTable) -> SeriesReport {
    series(a, SeriesKind::LowerCentral)
}

/// `L^[1] = L`, `L^[s+1] = [L^[s], L^[s]]`.
pub fn derived_series(a: &AlgebraTable) -> SeriesReport {
    series(a, SeriesKind::Derived)
}

pub fn is_nilpotent(a: &AlgebraTable) -> bool {
    lower_central_series(a).stabilized_at_zero
}

pub fn is_solvable(a: &AlgebraTable) -> bool {
    derived_series(a).stabilized_at_zero
}

/// Lower central dimensions are exactly `n, n-1, ..., 1, 0`.
pub fn is_null_filiform(a: &AlgebraTable) -> bool {
    let n = a.dim();
    let expected: Vec<usize> = (0..=n).rev().collect();
    lower_central_series(a).dims == expected
}

/// `{x : [y, x] = 0 for all y}`, the joint kernel of the left
/// multiplications by basis vectors.
pub fn right_annihilator(a: &AlgebraTable) -> Subspace {
    let n = a.dim();
    let mut eqs = EchelonBasis::new(n);
    for j in 0..n {
        let lm = a.left_mult_matrix(&crate::subspace::unit(n, j)).expect("unit vector fits");
        // [b_j, x] = x * lm; each output coordinate m gives the equation lm[.][m] . x = 0
        for col in lm.transpose().row_vectors() {
            eqs.insert(col.to_vec());
        }
    }
    Subspace::span(eqs.nullspace(), n).expect("nullspace vectors fit")
}

/// Two-sided ideal test: `[U, L] ⊆ U` and `[L, U] ⊆ U`.
pub fn is_ideal(a: &AlgebraTable, u: &Subspace) -> Result<bool> {
    let full = Subspace::full(a.dim());
    Ok(u.contains_subspace(&product_space(a, u, &full)?)
        && u.contains_subspace(&product_space(a, &full, u)?))
}

/// Least two-sided ideal containing `s`.
pub fn ideal_generated_by(a: &AlgebraTable, s: &Subspace) -> Result<Subspace> {
    let full = Subspace::full(a.dim());
    let mut u = s.clone();
    loop {
        let grown = u.sum(&product_space(a, &u, &full)?)?.sum(&product_space(a, &full, &u)?)?;
        if grown == u {
            return Ok(u);
        }
        u = grown;
    }
}

/// Whether the subalgebra `u` is nilpotent. `u` must be closed under the
/// bracket.
pub fn nilpotency_check_on_subspace(a: &AlgebraTable, u: &Subspace) -> Result<bool> {
    let restricted = a.restrict(u)?;
    Ok(is_nilpotent(&restricted))
}

/// Matrix of the right multiplication by `x` restricted to `u`, or `None`
/// when `u` is not invariant.
pub fn restricted_right_mult(a: &AlgebraTable, x: &[crate::Rational], u: &Subspace) -> Result<Option<Matrix>> {
    match a.right_mult_matrix(x, Some(u)) {
        Ok(m) => Ok(Some(m)),
        Err(Error::NotInvariant) => Ok(None),
        Err(e) => Err(e),
    }
}
