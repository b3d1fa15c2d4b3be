//! Algebras presented by structure constants.
//!
//! A table of dimension `n` stores `c[i][j][k]` with
//! `[b_i, b_j] = sum_k c[i][j][k] b_k`. Indices are zero-based throughout
//! the library; the text format and CLI reports are one-based.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::subspace::Subspace;

#[derive(Clone)]
pub struct AlgebraTable {
    dim: usize,
    constants: Vec<Rational>,
    names: Option<Vec<String>>,
}

/// A basis triple `(i, j, k)` on which
/// `[b_i,[b_j,b_k]] = [[b_i,b_j],b_k] - [[b_i,b_k],b_j]` fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl PartialEq for AlgebraTable {
    /// Entrywise comparison of structure constants; basis names are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.constants == other.constants
    }
}

impl Eq for AlgebraTable {}

impl std::fmt::Debug for AlgebraTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlgebraTable(dim {}) {{", self.dim)?;
        for (i, j, k, c) in self.nonzero_entries() {
            write!(f, " [{},{}]_{}={}", i + 1, j + 1, k + 1, c)?;
        }
        write!(f, " }}")
    }
}

impl AlgebraTable {
    /// The algebra of dimension `dim` with all products zero.
    pub fn zero(dim: usize) -> Self {
        Self { dim, constants: vec![Rational::zero(); dim * dim * dim], names: None }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, found: names.len() });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn without_names(mut self) -> Self {
        self.names = None;
        self
    }

    #[inline]
    fn offset(&self, i: usize, j: usize) -> usize {
        (i * self.dim + j) * self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[self.offset(i, j) + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        let o = self.offset(i, j);
        self.constants[o + k] = value;
    }

    /// Adds `value` to `c[i][j][k]`.
    pub fn add_to(&mut self, i: usize, j: usize, k: usize, value: &Rational) {
        let o = self.offset(i, j);
        self.constants[o + k] += value;
    }

    /// Coordinates of `[b_i, b_j]`.
    pub fn product(&self, i: usize, j: usize) -> &[Rational] {
        let o = self.offset(i, j);
        &self.constants[o..o + self.dim]
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        let n = self.dim;
        self.constants
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(idx, c)| (idx / (n * n), (idx / n) % n, idx % n, c))
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() == self.dim {
            Ok(())
        } else {
            Err(Error::Dimension { expected: self.dim, found: v.len() })
        }
    }

    /// Bilinear product of two coordinate vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let p = self.product(i, j);
                if p.iter().all(Zero::is_zero) {
                    continue;
                }
                let w = xi * yj;
                for (o, c) in out.iter_mut().zip(p) {
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        Ok(out)
    }

    /// All basis triples violating the Leibniz identity, in lexicographic
    /// order. Trilinearity makes an empty result a proof for all elements.
    pub fn check_leibniz(&self) -> Vec<Violation> {
        let n = self.dim;
        let sparse: Vec<Vec<(usize, &Rational)>> = (0..n * n)
            .map(|ij| {
                self.product(ij / n, ij % n)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        let mut violations = Vec::new();
        let mut diff = vec![Rational::zero(); n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    diff.iter_mut().for_each(|d| d.set_zero());
                    // [b_i, [b_j, b_k]]
                    for &(m, c) in &sparse[j * n + k] {
                        for &(t, d) in &sparse[i * n + m] {
                            diff[t] += c * d;
                        }
                    }
                    // - [[b_i, b_j], b_k]
                    for &(m, c) in &sparse[i * n + j] {
                        for &(t, d) in &sparse[m * n + k] {
                            diff[t] -= c * d;
                        }
                    }
                    // + [[b_i, b_k], b_j]
                    for &(m, c) in &sparse[i * n + k] {
                        for &(t, d) in &sparse[m * n + j] {
                            diff[t] += c * d;
                        }
                    }
                    if diff.iter().any(|d| !d.is_zero()) {
                        violations.push(Violation { i, j, k });
                    }
                }
            }
        }
        violations
    }

    pub fn is_leibniz(&self) -> bool {
        self.check_leibniz().is_empty()
    }

    /// Re-expresses the table in a new basis. Row `i` of `p` holds the old
    /// coordinates of new basis vector `i`.
    pub fn change_basis(&self, p: &Matrix) -> Result<AlgebraTable> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::Shape(format!(
                "basis change must be {n}x{n}, got {}x{}",
                p.rows(),
                p.cols()
            )));
        }
        let p_inv = p.inverse()?;
        // t1[i][b][k] = sum_a p[i][a] c[a][b][k]
        let mut t1 = vec![Rational::zero(); n * n * n];
        for i in 0..n {
            for a in 0..n {
                let pia = &p[(i, a)];
                if pia.is_zero() {
                    continue;
                }
                for b in 0..n {
                    let src = self.product(a, b);
                    let dst = &mut t1[(i * n + b) * n..(i * n + b + 1) * n];
                    for (d, s) in dst.iter_mut().zip(src) {
                        if !s.is_zero() {
                            *d += pia * s;
                        }
                    }
                }
            }
        }
        // t2[i][j][k] = sum_b p[j][b] t1[i][b][k]
        let mut t2 = vec![Rational::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for b in 0..n {
                    let pjb = &p[(j, b)];
                    if pjb.is_zero() {
                        continue;
                    }
                    for k in 0..n {
                        let s = &t1[(i * n + b) * n + k];
                        if !s.is_zero() {
                            t2[(i * n + j) * n + k] += pjb * s;
                        }
                    }
                }
            }
        }
        let mut out = AlgebraTable::zero(n);
        for ij in 0..n * n {
            let old = &t2[ij * n..(ij + 1) * n];
            if old.iter().all(Zero::is_zero) {
                continue;
            }
            let new = p_inv.apply_row(old)?;
            out.constants[ij * n..(ij + 1) * n].clone_from_slice(&new);
        }
        Ok(out)
    }

    /// Block table with all cross products zero; `self` occupies the first
    /// `self.dim()` basis vectors.
    pub fn direct_sum(&self, other: &AlgebraTable) -> AlgebraTable {
        let (a, b) = (self.dim, other.dim);
        let mut out = AlgebraTable::zero(a + b);
        for (i, j, k, c) in self.nonzero_entries() {
            out.set(i, j, k, c.clone());
        }
        for (i, j, k, c) in other.nonzero_entries() {
            out.set(a + i, a + j, a + k, c.clone());
        }
        if let (Some(na), Some(nb)) = (&self.names, &other.names) {
            out.names = Some(na.iter().chain(nb).cloned().collect());
        }
        out
    }

    /// Matrix of `y -> [y, x]`. With `restrict_to`, the matrix is taken in
    /// the echelon basis of that subspace, which must be invariant.
    pub fn right_mult_matrix(&self, x: &[Rational], restrict_to: Option<&Subspace>) -> Result<Matrix> {
        self.check_len(x)?;
        match restrict_to {
            None => {
                let rows = (0..self.dim)
                    .map(|i| self.bracket(&crate::subspace::unit(self.dim, i), x))
                    .collect::<Result<Vec<_>>>()?;
                Matrix::from_rows(rows, self.dim)
            }
            Some(u) => {
                if u.ambient_dim() != self.dim {
                    return Err(Error::Dimension { expected: self.dim, found: u.ambient_dim() });
                }
                let mut rows = Vec::with_capacity(u.dim());
                for b in u.basis() {
                    let image = self.bracket(b, x)?;
                    rows.push(u.coordinates(&image).ok_or(Error::NotInvariant)?);
                }
                Matrix::from_rows(rows, u.dim())
            }
        }
    }

    /// Matrix of `y -> [x, y]`.
    pub fn left_mult_matrix(&self, x: &[Rational]) -> Result<Matrix> {
        self.check_len(x)?;
        let rows = (0..self.dim)
            .map(|j| self.bracket(x, &crate::subspace::unit(self.dim, j)))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows, self.dim)
    }

    /// Table of the subalgebra `u` in its echelon basis.
    pub fn restrict(&self, u: &Subspace) -> Result<AlgebraTable> {
        if u.ambient_dim() != self.dim {
            return Err(Error::Dimension { expected: self.dim, found: u.ambient_dim() });
        }
        let d = u.dim();
        let mut out = AlgebraTable::zero(d);
        for (a, x) in u.basis().iter().enumerate() {
            for (b, y) in u.basis().iter().enumerate() {
                let p = self.bracket(x, y)?;
                let coords = u.coordinates(&p).ok_or(Error::NotClosed)?;
                let o = out.offset(a, b);
                out.constants[o..o + d].clone_from_slice(&coords);
            }
        }
        Ok(out)
    }
}
