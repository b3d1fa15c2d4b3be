//! Independent reference computations. Nothing here goes through the
//! library's echelon, subspace or series code; only the structure
//! constants are read back from an `AlgebraTable`.

#![allow(dead_code)]

use leibniz_core::rational::int;
use leibniz_core::{AlgebraTable, Matrix, Rational};
use num_traits::{One, Zero};
use rand::Rng;

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Plain Gaussian elimination; returns the nonzero reduced rows.
pub fn eliminate(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = rows.to_vec();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &pivot;
                for c in 0..width {
                    let d = &f * &rows[rank][c];
                    rows[r][c] -= d;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    eliminate(rows).len()
}

pub fn in_span(rows: &[Vec<Rational>], v: &[Rational]) -> bool {
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    rank(&with) == rank(rows)
}

/// `[x, y]` summed straight from the constants.
pub fn bracket(t: &AlgebraTable, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let n = t.dim();
    let mut out = vec![Rational::zero(); n];
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            let c = &x[i] * &y[j];
            for k in 0..n {
                let tk = t.get(i, j, k);
                if !tk.is_zero() {
                    out[k] += &c * tk;
                }
            }
        }
    }
    out
}

fn products(t: &AlgebraTable, u: &[Vec<Rational>], v: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut all = Vec::new();
    for a in u {
        for b in v {
            all.push(bracket(t, a, b));
        }
    }
    eliminate(&all)
}

/// Dimensions of the lower central (`derived = false`) or derived series,
/// stopping at zero or at the first repeated dimension.
pub fn series_dims(t: &AlgebraTable, derived: bool) -> Vec<usize> {
    let n = t.dim();
    let full: Vec<Vec<Rational>> = (0..n).map(|i| unit(n, i)).collect();
    let mut term = full.clone();
    let mut dims = vec![n];
    while !term.is_empty() {
        let next = if derived { products(t, &term, &term) } else { products(t, &term, &full) };
        let repeated = next.len() == term.len();
        dims.push(next.len());
        if repeated {
            break;
        }
        term = next;
    }
    dims
}

/// `d([b_i, b_j]) = [d b_i, b_j] + [b_i, d b_j]` on every basis pair, with
/// `d` acting on row vectors.
pub fn is_derivation(t: &AlgebraTable, d: &Matrix) -> bool {
    let n = t.dim();
    let apply = |v: &[Rational]| -> Vec<Rational> {
        (0..n).map(|c| (0..n).fold(Rational::zero(), |acc, r| acc + &v[r] * &d[(r, c)])).collect()
    };
    (0..n).all(|i| {
        (0..n).all(|j| {
            let (bi, bj) = (unit(n, i), unit(n, j));
            let lhs = apply(&bracket(t, &bi, &bj));
            let r1 = bracket(t, &apply(&bi), &bj);
            let r2 = bracket(t, &bi, &apply(&bj));
            lhs.iter().zip(r1.iter().zip(&r2)).all(|(l, (a, b))| *l == a + b)
        })
    })
}

/// Upper triangular with diagonal `(i+1)·d[0][0]` and constant
/// superdiagonals read off the first row.
pub fn has_nf_derivation_pattern(d: &Matrix) -> bool {
    let n = d.rows();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let expected = if j < i {
                Rational::zero()
            } else if j == i {
                int(i as i64 + 1) * &d[(0, 0)]
            } else {
                d[(0, j - i)].clone()
            };
            d[(i, j)] == expected
        })
    })
}

/// `R_x` as rows: row `i` is `[b_i, x]`.
pub fn right_mult(t: &AlgebraTable, x: &[Rational]) -> Vec<Vec<Rational>> {
    let n = t.dim();
    (0..n).map(|i| bracket(t, &unit(n, i), x)).collect()
}

/// Vectors `v` with `v·R_x = λ v`.
pub fn eigenspace(t: &AlgebraTable, x: &[Rational], lambda: &Rational) -> Vec<Vec<Rational>> {
    let n = t.dim();
    let m = right_mult(t, x);
    // solve v (M - λI) = 0, i.e. (M - λI)^T v^T = 0
    let system: Vec<Vec<Rational>> = (0..n)
        .map(|c| (0..n).map(|r| if r == c { &m[r][c] - lambda } else { m[r][c].clone() }).collect())
        .collect();
    kernel(&system, n)
}

/// Right kernel of `rows` (vectors `v` with `row · v = 0` for each row).
pub fn kernel(rows: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    let reduced = eliminate(rows);
    let pivots: Vec<usize> = reduced.iter().map(|r| r.iter().position(|c| !c.is_zero()).unwrap()).collect();
    (0..width)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); width];
            v[free] = Rational::one();
            for (r, &p) in reduced.iter().zip(&pivots) {
                v[p] = -(&r[free] / &r[p]);
            }
            v
        })
        .collect()
}

/// Random integer matrix with entries in `-bound..=bound` and nonzero
/// determinant.
pub fn random_invertible<R: Rng>(n: usize, bound: i64, rng: &mut R) -> Matrix {
    loop {
        let rows: Vec<Vec<Rational>> =
            (0..n).map(|_| (0..n).map(|_| int(rng.random_range(-bound..=bound))).collect()).collect();
        if rank(&rows) == n {
            return Matrix::from_rows(rows, n).unwrap();
        }
    }
}

/// Whether `v` has a rational `e`-th root, read off the reduced numerator
/// and denominator.
pub fn has_rational_root(v: &Rational, e: u32) -> bool {
    use num_bigint::Sign;
    if v.is_zero() {
        return true;
    }
    if v.numer().sign() == Sign::Minus && e % 2 == 0 {
        return false;
    }
    let perfect = |m: &num_bigint::BigInt| {
        let m = m.magnitude();
        let r = m.nth_root(e);
        &r.pow(e) == m
    };
    perfect(v.numer()) && perfect(v.denom())
}
