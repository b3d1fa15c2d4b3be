//! Constructors for the solvable algebras with null-filiform nilradical and
//! the normalization of their parameters.
//!
//! Every constructor orders its basis as the e-blocks, then the f-blocks,
//! then the complementary vector `x`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::AlgebraTable;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Parameters `(β_2, ..., β_s, γ)` of an f-block of dimension `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BetaParams {
    pub s: usize,
    pub beta: Vec<Rational>,
    pub gamma: Rational,
}

impl BetaParams {
    pub fn new(s: usize, beta: Vec<Rational>, gamma: Rational) -> Result<Self> {
        let p = Self { s, beta, gamma };
        p.validate()?;
        Ok(p)
    }

    pub fn split(s: usize) -> Self {
        Self { s, beta: vec![Rational::zero(); s.saturating_sub(1)], gamma: Rational::zero() }
    }

    fn validate(&self) -> Result<()> {
        if self.s == 0 {
            return Err(Error::Parameter("block dimension must be at least 1".into()));
        }
        if self.beta.len() != self.s - 1 {
            return Err(Error::Parameter(format!(
                "expected {} beta values for a block of dimension {}, got {}",
                self.s - 1,
                self.s,
                self.beta.len()
            )));
        }
        Ok(())
    }

    /// All of `β` and `γ` vanish.
    pub fn is_split(&self) -> bool {
        self.beta.iter().all(Zero::is_zero) && self.gamma.is_zero()
    }

    /// `β_m` for `2 <= m <= s`.
    pub fn beta_at(&self, m: usize) -> &Rational {
        &self.beta[m - 2]
    }
}

/// Parameters of the family with several null-filiform blocks: e-blocks
/// with weights `δ` and f-blocks of β-type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralParams {
    pub e_dims: Vec<usize>,
    pub deltas: Vec<Rational>,
    pub f_blocks: Vec<BetaParams>,
}

impl GeneralParams {
    fn validate(&self) -> Result<()> {
        validate_blocks(&self.e_dims, &self.deltas, &self.f_blocks)?;
        if !self.deltas[0].is_one() {
            return Err(Error::Parameter("the first delta must be 1".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.e_dims.iter().sum::<usize>() + self.f_blocks.iter().map(|b| b.s).sum::<usize>() + 1
    }
}

fn validate_blocks(e_dims: &[usize], deltas: &[Rational], f_blocks: &[BetaParams]) -> Result<()> {
    if e_dims.is_empty() {
        return Err(Error::Parameter("at least one e-block is required".into()));
    }
    if deltas.len() != e_dims.len() {
        return Err(Error::Parameter("one delta per e-block is required".into()));
    }
    if e_dims.contains(&0) {
        return Err(Error::Parameter("block dimension must be at least 1".into()));
    }
    if deltas.iter().any(Zero::is_zero) {
        return Err(Error::Parameter("deltas must be nonzero".into()));
    }
    f_blocks.iter().try_for_each(BetaParams::validate)
}

fn chain(t: &mut AlgebraTable, start: usize, len: usize) {
    for i in 0..len.saturating_sub(1) {
        t.set(start + i, start, start + i + 1, int(1));
    }
}

/// `[e_i, e_1] = e_{i+1}`.
pub fn make_nf(n: usize) -> AlgebraTable {
    let mut t = AlgebraTable::zero(n);
    chain(&mut t, 0, n);
    let names = (1..=n).map(|i| format!("e{i}")).collect();
    t.with_names(names).expect("one name per basis vector")
}

/// `NF_n` extended by `x` with `[x, e_1] = e_1` and `[e_i, x] = -i e_i`.
pub fn make_solvable_nf(n: usize) -> AlgebraTable {
    general_table(&[n], &[Rational::one()], &[])
}

/// `NF_n` extended by `x` before the reduction of `[e_1, x]` and `[x, x]`:
/// `[e_i, x] = -i e_i + Σ_{j>=i+2} β_{j-i+1} e_j` and
/// `[x, x] = Σ_{i=2}^{n-1} β_{i+1} e_i + γ e_n`, with `betas = (β_3, ..., β_n)`.
pub fn make_solvable_nf_unreduced(n: usize, betas: &[Rational], gamma: &Rational) -> Result<AlgebraTable> {
    if n == 0 {
        return Err(Error::Parameter("dimension must be at least 1".into()));
    }
    if betas.len() != n.saturating_sub(2) {
        return Err(Error::Parameter(format!("expected {} beta values, got {}", n.saturating_sub(2), betas.len())));
    }
    if n == 1 && !gamma.is_zero() {
        return Err(Error::Parameter("gamma must vanish when n = 1".into()));
    }
    let mut t = make_solvable_nf(n);
    let beta = |m: usize| &betas[m - 3];
    let x = n;
    for i in 1..=n {
        for j in i + 2..=n {
            t.set(i - 1, x, j - 1, beta(j - i + 1).clone());
        }
    }
    for i in 2..n {
        t.set(x, x, i - 1, beta(i + 1).clone());
    }
    if n >= 2 {
        t.set(x, x, n - 1, gamma.clone());
    }
    Ok(t)
}

/// The family with two e-type blocks, `[x, f_1] = α f_1`, `[f_i, x] = -iα f_i`.
pub fn make_r_alpha(k: usize, s: usize, alpha: &Rational) -> Result<AlgebraTable> {
    if alpha.is_zero() {
        return Err(Error::Parameter("alpha must be nonzero".into()));
    }
    if s == 0 || k < s {
        return Err(Error::Parameter(format!("block dimensions must satisfy k >= s >= 1, got k={k}, s={s}")));
    }
    Ok(general_table(&[k, s], &[Rational::one(), alpha.clone()], &[]))
}

/// The family with an e-block of dimension `k` and one f-block:
/// `[f_i, x] = Σ_{j>i} β_{j-i+1} f_j`, `[x, x] = γ f_s`.
pub fn make_r_beta(k: usize, params: &BetaParams) -> Result<AlgebraTable> {
    validate_blocks(&[k], &[Rational::one()], std::slice::from_ref(params))?;
    Ok(general_table(&[k], &[Rational::one()], std::slice::from_ref(params)))
}

pub fn make_r_general(params: &GeneralParams) -> Result<AlgebraTable> {
    params.validate()?;
    Ok(general_table(&params.e_dims, &params.deltas, &params.f_blocks))
}

/// Table of the general family without the `δ^1 = 1` convention.
pub(crate) fn general_table(e_dims: &[usize], deltas: &[Rational], f_blocks: &[BetaParams]) -> AlgebraTable {
    let single_e = e_dims.len() == 1;
    let two_blocks = e_dims.len() + f_blocks.len() == 2;
    let dim = e_dims.iter().sum::<usize>() + f_blocks.iter().map(|b| b.s).sum::<usize>() + 1;
    let x = dim - 1;
    let mut t = AlgebraTable::zero(dim);
    let mut names = Vec::with_capacity(dim);
    let mut start = 0;
    for (j, (&n, delta)) in e_dims.iter().zip(deltas).enumerate() {
        chain(&mut t, start, n);
        t.set(x, start, start, delta.clone());
        for i in 0..n {
            t.set(start + i, x, start + i, -delta * int(i as i64 + 1));
            names.push(if single_e || two_blocks && j == 0 {
                format!("e{}", i + 1)
            } else if two_blocks {
                format!("f{}", i + 1)
            } else {
                format!("e{}_{}", j + 1, i + 1)
            });
        }
        start += n;
    }
    for (m, block) in f_blocks.iter().enumerate() {
        let s = block.s;
        chain(&mut t, start, s);
        for i in 1..=s {
            for j in i + 1..=s {
                t.set(start + i - 1, x, start + j - 1, block.beta_at(j - i + 1).clone());
            }
            names.push(if single_e && f_blocks.len() == 1 { format!("f{i}") } else { format!("f{}_{}", m + 1, i) });
        }
        t.set(x, x, start + s - 1, block.gamma.clone());
        start += s;
    }
    names.push("x".into());
    t.with_names(names).expect("one name per basis vector")
}

/// Representative of `{α, 1/α}` used when both blocks have equal
/// dimension: the one of absolute value at least 1, keeping `α` when
/// `|α| = 1`.
pub fn canonical_r_alpha_param(k: usize, s: usize, alpha: &Rational) -> Rational {
    if k != s || alpha.abs() >= Rational::one() {
        alpha.clone()
    } else {
        alpha.recip()
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;

fn factor(mut n: BigUint, out: &mut BTreeMap<BigUint, i64>, sign: i64) {
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && n > BigUint::one() {
        let bp = BigUint::from(p);
        if (&n % &bp).is_zero() {
            let e = out.entry(bp.clone()).or_insert(0);
            while (&n % &bp).is_zero() {
                n /= &bp;
                *e += sign;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigUint::one() {
        // cofactor without small prime factors, kept as the largest perfect power base
        let bits = n.bits() as u32;
        let (base, exp) = (2..=bits.max(2))
            .rev()
            .find_map(|j| {
                let r = n.nth_root(j);
                (r.pow(j) == n && r > BigUint::one()).then_some((r, j as i64))
            })
            .unwrap_or((n, 1));
        *out.entry(base).or_insert(0) += sign * exp;
    }
}

/// Writes `v = a^e * r` with `r` an integer free of `e`-th powers. For odd
/// `e` the residual is positive; for even `e` it carries the sign of `v`.
pub(crate) fn power_free_split(v: &Rational, e: u32) -> (Rational, Rational) {
    assert!(!v.is_zero() && e >= 1);
    let mut primes = BTreeMap::new();
    factor(v.numer().magnitude().clone(), &mut primes, 1);
    factor(v.denom().magnitude().clone(), &mut primes, -1);
    let mut root = Rational::one();
    let mut residual = Rational::one();
    for (p, k) in primes {
        let p = Rational::from_integer(BigInt::from(p));
        let (q, r) = (k.div_euclid(e as i64), k.rem_euclid(e as i64));
        root *= pow_i(&p, q);
        residual *= pow_i(&p, r);
    }
    if v.is_negative() {
        if e % 2 == 1 {
            root = -root;
        } else {
            residual = -residual;
        }
    }
    (root, residual)
}

fn pow_i(p: &Rational, k: i64) -> Rational {
    let m = p.pow(k.unsigned_abs().to_i32().expect("small exponent"));
    if k < 0 {
        m.recip()
    } else {
        m
    }
}

/// Applies `β_m -> β_m / a^{m-1}`, `γ -> γ / a^s`.
pub fn rescale_beta(params: &BetaParams, a: &Rational) -> BetaParams {
    let beta = params.beta.iter().enumerate().map(|(idx, b)| b / a.pow(idx as i32 + 1)).collect();
    BetaParams { s: params.s, beta, gamma: &params.gamma / a.pow(params.s as i32) }
}

/// Canonical representative of the rescaling class of `params`, together
/// with the factor `A_1` realizing it.
///
/// The first nonzero entry is reduced to the integer free of `e`-th powers
/// in its class, where `e` is its weight (`m - 1` for `β_m`, `s` for `γ`);
/// it is 1 whenever a rational root exists. For even `e` the sign of `A_1`
/// is still free; it is fixed so that the first entry of odd weight is
/// positive.
pub fn normalize_beta_family(params: &BetaParams) -> (BetaParams, Rational) {
    let entries: Vec<(u32, &Rational)> = params
        .beta
        .iter()
        .enumerate()
        .map(|(idx, b)| (idx as u32 + 1, b))
        .chain(std::iter::once((params.s as u32, &params.gamma)))
        .collect();
    let Some(lead) = entries.iter().position(|(_, v)| !v.is_zero()) else {
        return (params.clone(), Rational::one());
    };
    let (e, v) = entries[lead];
    let (mut a, _) = power_free_split(v, e);
    if e % 2 == 0 {
        let flips = entries[lead + 1..].iter().find(|(w, v)| w % 2 == 1 && !v.is_zero());
        if let Some((w, v)) = flips {
            if (*v / a.pow(*w as i32)).is_negative() {
                a = -a;
            }
        }
    }
    (rescale_beta(params, &a), a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn nf3_constants() {
        let t = make_nf(3);
        assert_eq!(t.nonzero_entries().count(), 2);
        assert_eq!(*t.get(0, 0, 1), int(1));
        assert_eq!(*t.get(1, 0, 2), int(1));
        assert_eq!(make_nf(1), AlgebraTable::zero(1));
    }

    #[test]
    fn r_alpha_parameters_are_checked() {
        assert!(make_r_alpha(2, 1, &int(0)).is_err());
        assert!(make_r_alpha(1, 2, &int(1)).is_err());
        let t = make_r_alpha(1, 1, &int(1)).unwrap();
        assert_eq!(*t.get(2, 0, 0), int(1));
        assert_eq!(*t.get(2, 1, 1), int(1));
        assert_eq!(*t.get(0, 2, 0), int(-1));
        assert_eq!(*t.get(1, 2, 1), int(-1));
    }

    #[test]
    fn r_beta_index_bookkeeping() {
        let p = BetaParams::new(3, vec![int(1), int(0)], int(0)).unwrap();
        let t = make_r_beta(2, &p).unwrap();
        // basis e1 e2 f1 f2 f3 x
        assert_eq!(t.product(2, 5), &[int(0), int(0), int(0), int(1), int(0), int(0)][..]);
        assert_eq!(t.product(3, 5), &[int(0), int(0), int(0), int(0), int(1), int(0)][..]);
        assert!(BetaParams::new(3, vec![int(1)], int(0)).is_err());
    }

    #[test]
    fn general_degenerates_to_solvable_nf() {
        let p = GeneralParams { e_dims: vec![4], deltas: vec![int(1)], f_blocks: vec![] };
        assert_eq!(make_r_general(&p).unwrap(), make_solvable_nf(4));
        let bad = GeneralParams { e_dims: vec![4], deltas: vec![int(2)], f_blocks: vec![] };
        assert!(make_r_general(&bad).is_err());
    }

    #[test]
    fn normalization_examples() {
        let p = BetaParams::new(3, vec![int(2), int(6)], int(8)).unwrap();
        let (q, a) = normalize_beta_family(&p);
        assert_eq!(a, int(2));
        assert_eq!(q, BetaParams::new(3, vec![int(1), rat(3, 2)], int(1)).unwrap());

        let p = BetaParams::new(2, vec![int(0)], int(9)).unwrap();
        let (q, a) = normalize_beta_family(&p);
        assert_eq!(a.abs(), int(3));
        assert_eq!(q.gamma, int(1));

        let id = BetaParams::new(3, vec![int(1), int(5)], int(7)).unwrap();
        assert_eq!(normalize_beta_family(&id), (id.clone(), int(1)));
    }

    #[test]
    fn normalization_without_rational_root() {
        // β_3 = 2 has no rational square root
        let p = BetaParams::new(3, vec![int(0), rat(1, 2)], int(-1)).unwrap();
        let (q, a) = normalize_beta_family(&p);
        assert_eq!(*q.beta_at(3), int(2));
        // γ has odd weight 3, so the sign of A_1 makes it positive
        assert_eq!(a, rat(-1, 2));
        assert_eq!(q.gamma, int(8));
        assert_eq!(normalize_beta_family(&q).0, q);
    }

    #[test]
    fn power_free_parts() {
        assert_eq!(power_free_split(&int(72), 2), (int(6), int(2)));
        assert_eq!(power_free_split(&int(-16), 3), (int(-2), int(2)));
        assert_eq!(power_free_split(&rat(-1, 4), 2), (rat(1, 2), int(-1)));
    }

    #[test]
    fn alpha_representative() {
        assert_eq!(canonical_r_alpha_param(3, 2, &int(5)), int(5));
        assert_eq!(canonical_r_alpha_param(2, 2, &rat(1, 2)), int(2));
        assert_eq!(canonical_r_alpha_param(2, 2, &int(-1)), int(-1));
    }

    #[test]
    fn families_satisfy_the_identity() {
        let q = [int(-2), rat(1, 2), int(3)];
        assert!(make_solvable_nf_unreduced(5, &q, &int(7)).unwrap().is_leibniz());
        for k in 1..=3 {
            for s in 1..=k {
                assert!(make_r_alpha(k, s, &rat(-1, 2)).unwrap().is_leibniz());
                let beta = (0..s - 1).map(|i| q[i % 3].clone()).collect();
                let p = BetaParams::new(s, beta, int(5)).unwrap();
                assert!(make_r_beta(k, &p).unwrap().is_leibniz());
            }
        }
        let g = GeneralParams {
            e_dims: vec![2, 3],
            deltas: vec![int(1), int(-3)],
            f_blocks: vec![BetaParams::new(3, vec![int(0), int(2)], int(-1)).unwrap()],
        };
        assert!(make_r_general(&g).unwrap().is_leibniz());
    }
}
