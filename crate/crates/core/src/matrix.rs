//! Dense rational matrices.
//!
//! Linear maps act on row vectors: row `i` of an operator matrix holds the
//! coordinates of the image of basis vector `i`, so applying `M` to `v` is
//! `v * M`. The same convention is used for basis changes, where row `i`
//! holds the old coordinates of new basis vector `i`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::echelon::EchelonBasis;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors. `cols` is needed for the empty case.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Dimension { expected: cols, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { rows: n, cols, data })
    }

    /// Convenience constructor for integer literals in tests and catalogs.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_rows(rows, cols).expect("ragged integer rows")
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.row_vectors().map(|r| r.to_vec()).collect()
    }

    /// Flattens row-major.
    pub fn as_slice(&self) -> &[Rational] {
        &self.data
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension { expected: rows * cols, found: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    /// `v * self` for a row vector `v`.
    pub fn apply_row(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.rows {
            return Err(Error::Dimension { expected: self.rows, found: v.len() });
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                if !a.is_zero() {
                    *o += vi * a;
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<Rational> {
        self.check_square()?;
        Ok((0..self.rows).map(|i| self[(i, i)].clone()).sum())
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn rank(&self) -> usize {
        let mut eb = EchelonBasis::new(self.cols);
        for r in self.row_vectors() {
            eb.insert(r.to_vec());
        }
        eb.dim()
    }

    /// Exact inverse; singular input reports the rank found.
    pub fn inverse(&self) -> Result<Matrix> {
        self.check_square()?;
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = self.to_rows();
        let mut inv: Vec<Vec<Rational>> = Matrix::identity(n).to_rows();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Err(Error::Singular { rank: self.rank(), size: n });
            };
            a.swap(col, p);
            inv.swap(col, p);
            let pivot_inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &pivot_inv;
            }
            for x in inv[col].iter_mut() {
                *x *= &pivot_inv;
            }
            let (pa, pinv) = (a[col].clone(), inv[col].clone());
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for (x, y) in a[r].iter_mut().zip(&pa) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
                for (x, y) in inv[r].iter_mut().zip(&pinv) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        Matrix::from_rows(inv, n)
    }

    pub fn pow(&self, mut e: u32) -> Result<Matrix> {
        self.check_square()?;
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// True iff `self^n = 0` where `n` is the size; that exponent always
    /// suffices for an `n x n` matrix.
    pub fn is_nilpotent(&self) -> Result<bool> {
        self.check_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(true);
        }
        // square until the exponent reaches n
        let mut m = self.clone();
        let mut e = 1usize;
        while e < n {
            if m.is_zero() {
                return Ok(true);
            }
            m = m.mul(&m)?;
            e *= 2;
        }
        Ok(m.is_zero())
    }

    /// Basis of `{x : self * x = 0}` (column solutions of the row equations).
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut eb = EchelonBasis::new(self.cols);
        for r in self.row_vectors() {
            eb.insert(r.to_vec());
        }
        eb.nullspace()
    }

    fn check_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Shape(format!("expected a square matrix, got {}x{}", self.rows, self.cols)))
        }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in self.row_vectors() {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.row_vectors().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
