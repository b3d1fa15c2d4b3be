//! Linear subspaces in canonical reduced row-echelon form.
//!
//! Two subspaces of the same ambient space are equal as sets exactly when
//! their stored bases agree entrywise, so `==` is set equality.

use std::fmt;

use num_traits::{One, Zero};

use crate::echelon::EchelonBasis;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonical echelon basis of the span of `vectors`.
    pub fn span<I, V>(vectors: I, ambient: usize) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vec<Rational>>,
    {
        let mut eb = EchelonBasis::new(ambient);
        for v in vectors {
            let v = v.into();
            if v.len() != ambient {
                return Err(Error::Dimension { expected: ambient, found: v.len() });
            }
            eb.insert(v);
        }
        Ok(Self::from_echelon(eb, ambient))
    }

    pub(crate) fn from_echelon(eb: EchelonBasis, ambient: usize) -> Self {
        let pivots = eb.pivots().to_vec();
        Self { ambient, basis: eb.into_rows(), pivots }
    }

    pub(crate) fn to_echelon(&self) -> EchelonBasis {
        let mut eb = EchelonBasis::new(self.ambient);
        for v in &self.basis {
            eb.insert(v.clone());
        }
        eb
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(ambient, i)).collect();
        Self { ambient, basis, pivots: (0..ambient).collect() }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(indices: impl IntoIterator<Item = usize>, ambient: usize) -> Result<Self> {
        let mut vs = Vec::new();
        for i in indices {
            if i >= ambient {
                return Err(Error::Dimension { expected: ambient, found: i + 1 });
            }
            vs.push(unit(ambient, i));
        }
        Self::span(vs, ambient)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.basis.clone(), self.ambient).expect("basis rows have ambient length")
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient && self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` with respect to the echelon basis.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if v.len() != self.ambient {
            return None;
        }
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (row, c) in self.basis.iter().zip(&coords) {
            if c.is_zero() {
                continue;
            }
            for (r, b) in residual.iter_mut().zip(row) {
                if !b.is_zero() {
                    *r -= c * b;
                }
            }
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    /// Vector with the given coordinates in the echelon basis.
    pub fn combine(&self, coords: &[Rational]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.ambient];
        for (row, c) in self.basis.iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            for (x, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x += c * b;
                }
            }
        }
        v
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if other.ambient != self.ambient {
            return Err(Error::Dimension { expected: self.ambient, found: other.ambient });
        }
        Subspace::span(self.basis.iter().chain(&other.basis).cloned(), self.ambient)
    }

    pub fn with_vector(&self, v: &[Rational]) -> Result<Subspace> {
        if v.len() != self.ambient {
            return Err(Error::Dimension { expected: self.ambient, found: v.len() });
        }
        let mut eb = self.to_echelon();
        eb.insert(v.to_vec());
        Ok(Self::from_echelon(eb, self.ambient))
    }

    /// Standard basis vectors at the non-pivot columns. Together with the
    /// echelon basis they span the ambient space.
    pub fn complement_basis(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).map(|i| unit(self.ambient, i)).collect()
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) [", self.dim(), self.ambient)?;
        for v in &self.basis {
            let cells: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            write!(f, " ({})", cells.join(","))?;
        }
        write!(f, " ]")
    }
}
