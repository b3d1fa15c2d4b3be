//! Spans of square matrices viewed as Lie algebras under the commutator.
//!
//! Used to decide which members of a solvable matrix Lie algebra are
//! nilpotent: over the algebraic closure such an algebra is triangular, so
//! its nilpotent members lie in the radical of the trace form
//! `B(D, E) = tr(DE)`. When that radical is additionally checked to be nil
//! (every associative product of `n` of its members vanishes) it is exactly
//! the set of nilpotent members.

use num_traits::Zero;

use crate::echelon::EchelonBasis;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::subspace::Subspace;

fn flat_span(mats: &[Matrix], ambient: usize) -> Subspace {
    Subspace::span(mats.iter().map(|m| m.as_slice().to_vec()), ambient).expect("flattened sizes agree")
}

fn unflatten(v: &[Rational], n: usize) -> Matrix {
    Matrix::from_flat(n, n, v.to_vec()).expect("flattened size is n*n")
}

/// Derived series of the span of `mats` reaches zero. A span that is not
/// closed under commutators reports `false`.
pub(crate) fn is_solvable_span(mats: &[Matrix], n: usize) -> bool {
    let ambient = n * n;
    let mut current = flat_span(mats, ambient);
    loop {
        if current.is_zero() {
            return true;
        }
        let basis: Vec<Matrix> = current.basis().iter().map(|v| unflatten(v, n)).collect();
        let mut eb = EchelonBasis::new(ambient);
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i + 1..] {
                eb.insert(a.commutator(b).expect("square").as_slice().to_vec());
            }
        }
        let next = Subspace::from_echelon(eb, ambient);
        if next == current || !current.contains_subspace(&next) {
            return false;
        }
        current = next;
    }
}

/// Every associative product of `n` members of the span vanishes, hence
/// every member is nilpotent.
pub(crate) fn is_nil_span(mats: &[Matrix], n: usize) -> bool {
    let ambient = n * n;
    let gens: Vec<Matrix> =
        flat_span(mats, ambient).basis().iter().map(|v| unflatten(v, n)).collect();
    let mut level = gens.clone();
    for _ in 1..n.max(1) {
        if level.is_empty() {
            return true;
        }
        let mut eb = EchelonBasis::new(ambient);
        for p in &level {
            for g in &gens {
                eb.insert(p.mul(g).expect("square").as_slice().to_vec());
            }
        }
        level = eb.into_rows().iter().map(|v| unflatten(v, n)).collect();
    }
    level.is_empty()
}

/// Coefficient vectors (relative to `mats`) spanning the radical of the
/// trace form on the span of `mats`, which must be linearly independent.
pub(crate) fn trace_form_radical(mats: &[Matrix]) -> Vec<Vec<Rational>> {
    let m = mats.len();
    let mut gram = Matrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let t = mats[i].mul(&mats[j]).and_then(|p| p.trace()).expect("square");
            gram[(i, j)] = t.clone();
            gram[(j, i)] = t;
        }
    }
    gram.nullspace()
}

pub(crate) fn combine(mats: &[Matrix], coeffs: &[Rational], n: usize) -> Matrix {
    let mut acc = Matrix::zeros(n, n);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&m.scale(c)).expect("same shape");
        }
    }
    acc
}

/// Coefficient vectors of the nilpotent members of the span of `mats`
/// (linearly independent, forming a Lie algebra), or `None` when the span
/// is not solvable or its trace radical is not nil.
pub(crate) fn nilpotent_part(mats: &[Matrix], n: usize) -> Option<Vec<Vec<Rational>>> {
    if !is_solvable_span(mats, n) {
        return None;
    }
    let radical = trace_form_radical(mats);
    let members: Vec<Matrix> = radical.iter().map(|c| combine(mats, c, n)).collect();
    is_nil_span(&members, n).then_some(radical)
}
