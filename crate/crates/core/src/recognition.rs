//! Classification of solvable algebras with null-filiform nilradical.
//!
//! The nilradical is split into null-filiform blocks, each block is
//! brought to its normal form by an explicit change of basis, and the
//! result is compared entrywise with the catalog table. The composite
//! change of basis is returned as a witness.

use std::fmt;
use std::ops::Range;

use num_traits::{One, Signed, Zero};
use petgraph::unionfind::UnionFind;

use crate::algebra::AlgebraTable;
use crate::catalog::{self, BetaParams, GeneralParams};
use crate::error::{Error, Result};
use crate::fingerprint::{fingerprint, Fingerprint};
use crate::matrix::Matrix;
use crate::nilradical::nilradical;
use crate::rational::{format_rational, int, Rational};
use crate::series::{lower_central_series, product_space};
use crate::subspace::{unit, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    NullFiliform { n: usize },
    SolvableNF { n: usize },
    RAlpha { k: usize, s: usize, alpha: Rational },
    RBeta { k: usize, params: BetaParams },
    RGeneral(GeneralParams),
    Unknown,
}

impl ClassLabel {
    /// The catalog table this label names.
    pub fn canonical_table(&self) -> Option<AlgebraTable> {
        match self {
            ClassLabel::NullFiliform { n } => Some(catalog::make_nf(*n)),
            ClassLabel::SolvableNF { n } => Some(catalog::make_solvable_nf(*n)),
            ClassLabel::RAlpha { k, s, alpha } => catalog::make_r_alpha(*k, *s, alpha).ok(),
            ClassLabel::RBeta { k, params } => catalog::make_r_beta(*k, params).ok(),
            ClassLabel::RGeneral(p) => catalog::make_r_general(p).ok(),
            ClassLabel::Unknown => None,
        }
    }

    /// Index ranges of the nilradical blocks and the index of `x` in the
    /// canonical table, for labels with a complement.
    pub fn block_layout(&self) -> Option<(Vec<Range<usize>>, usize)> {
        let dims: Vec<usize> = match self {
            ClassLabel::SolvableNF { n } => vec![*n],
            ClassLabel::RAlpha { k, s, .. } => vec![*k, *s],
            ClassLabel::RBeta { k, params } => vec![*k, params.s],
            ClassLabel::RGeneral(p) => p.e_dims.iter().copied().chain(p.f_blocks.iter().map(|b| b.s)).collect(),
            ClassLabel::NullFiliform { .. } | ClassLabel::Unknown => return None,
        };
        let mut start = 0;
        let ranges = dims
            .iter()
            .map(|d| {
                let r = start..start + d;
                start += d;
                r
            })
            .collect();
        Some((ranges, start))
    }
}

fn join_rationals(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

fn fmt_beta(p: &BetaParams) -> String {
    format!("s={}, beta=[{}], gamma={}", p.s, join_rationals(&p.beta), format_rational(&p.gamma))
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::NullFiliform { n } => write!(f, "NullFiliform(n={n})"),
            ClassLabel::SolvableNF { n } => write!(f, "SolvableNF(n={n})"),
            ClassLabel::RAlpha { k, s, alpha } => write!(f, "RAlpha(k={k}, s={s}, alpha={})", format_rational(alpha)),
            ClassLabel::RBeta { k, params } => write!(f, "RBeta(k={k}, {})", fmt_beta(params)),
            ClassLabel::RGeneral(p) => {
                let e: Vec<String> =
                    p.e_dims.iter().zip(&p.deltas).map(|(d, q)| format!("{d}:{}", format_rational(q))).collect();
                let fb: Vec<String> = p.f_blocks.iter().map(|b| format!("({})", fmt_beta(b))).collect();
                write!(f, "RGeneral(e=[{}], f=[{}])", e.join(" "), fb.join(" "))
            }
            ClassLabel::Unknown => write!(f, "Unknown"),
        }
    }
}

/// A label with the basis change that realizes it. For `Unknown` the
/// fingerprint of the input is attached instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub label: ClassLabel,
    pub witness: Option<Matrix>,
    pub fingerprint: Option<Fingerprint>,
}

impl Classification {
    fn unknown(a: &AlgebraTable) -> Self {
        Self { label: ClassLabel::Unknown, witness: None, fingerprint: Some(fingerprint(a)) }
    }

    fn known(label: ClassLabel, witness: Matrix) -> Self {
        Self { label, witness: Some(witness), fingerprint: None }
    }
}

fn ensure_leibniz(a: &AlgebraTable) -> Result<()> {
    let violations = a.check_leibniz();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::NotLeibniz(violations.len()))
    }
}

/// Basis `g, [g,g], [[g,g],g], ...` of the subalgebra generated by `g`,
/// or `None` if the chain does not terminate within `limit` steps.
fn chain_of(a: &AlgebraTable, g: &[Rational], limit: usize) -> Option<Vec<Vec<Rational>>> {
    let mut out = vec![g.to_vec()];
    loop {
        let next = a.bracket(out.last().expect("non-empty"), g).expect("same dimension");
        if next.iter().all(Zero::is_zero) {
            return Some(out);
        }
        if out.len() == limit {
            return None;
        }
        out.push(next);
    }
}

/// Splits the nilpotent ideal `n_space` into null-filiform chains whose
/// spans multiply trivially with each other. Generators are taken from the
/// echelon basis of `n_space` in order.
fn decompose(a: &AlgebraTable, n_space: &Subspace) -> Option<Vec<Vec<Vec<Rational>>>> {
    let square = product_space(a, n_space, n_space).ok()?;
    let mut covered = square.clone();
    let mut gens = Vec::new();
    for v in n_space.basis() {
        if !covered.contains(v) {
            covered = covered.with_vector(v).ok()?;
            gens.push(v.clone());
        }
    }
    let chains: Vec<Vec<Vec<Rational>>> =
        gens.iter().map(|g| chain_of(a, g, n_space.dim())).collect::<Option<_>>()?;
    let flat: Vec<Vec<Rational>> = chains.iter().flatten().cloned().collect();
    if flat.len() != n_space.dim() || Subspace::span(flat.iter().cloned(), a.dim()).ok()?.dim() != flat.len() {
        return None;
    }
    let frame = Frame::new(&flat, a.dim())?;
    let mut uf = UnionFind::<usize>::new(flat.len());
    for (i, u) in flat.iter().enumerate() {
        for (j, v) in flat.iter().enumerate() {
            let p = a.bracket(u, v).ok()?;
            let coords = frame.coordinates(&p)?;
            for (k, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    uf.union(i, k);
                    uf.union(i, j);
                }
            }
        }
    }
    let mut start = 0;
    let mut roots = Vec::new();
    for chain in &chains {
        let root = uf.find(start);
        if (start..start + chain.len()).any(|i| uf.find(i) != root) || roots.contains(&root) {
            return None;
        }
        roots.push(root);
        start += chain.len();
    }
    Some(chains)
}

/// Coordinates with respect to a list of independent vectors.
struct Frame {
    len: usize,
    inverse: Matrix,
}

impl Frame {
    fn new(vectors: &[Vec<Rational>], ambient: usize) -> Option<Self> {
        let span = Subspace::span(vectors.iter().cloned(), ambient).ok()?;
        let rows: Vec<Vec<Rational>> = vectors.iter().cloned().chain(span.complement_basis()).collect();
        let inverse = Matrix::from_rows(rows, ambient).ok()?.inverse().ok()?;
        Some(Self { len: vectors.len(), inverse })
    }

    fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let mut c = self.inverse.apply_row(v).ok()?;
        if c[self.len..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        c.truncate(self.len);
        Some(c)
    }
}

#[derive(Debug, Clone)]
struct Block {
    start: usize,
    len: usize,
}

/// One normal form reached from a choice of reference block.
#[derive(Debug, Clone)]
struct Candidate {
    params: GeneralParams,
    witness: Matrix,
}

/// Case-1 change on the e-blocks, then the recurrences for the new
/// generators and the correction of `x`, then the scaling of the f-blocks.
/// `t` is the table in the chain basis with `x` last; `reference` is the
/// e-block that receives weight 1.
fn normalize_blocks(t: &AlgebraTable, blocks: &[Block], reference: usize) -> Option<Candidate> {
    let d = t.dim();
    let x = d - 1;
    let is_e: Vec<bool> = blocks.iter().map(|b| !t.get(x, b.start, b.start).is_zero()).collect();
    let lambda = t.get(x, blocks[reference].start, blocks[reference].start).recip();

    // e'_i = (1/α_1) Σ_{j>=i} α_{j-i+1} c_j and x' = λ x
    let mut p1 = Matrix::identity(d);
    for (b, _) in blocks.iter().zip(&is_e).filter(|(_, e)| **e) {
        let alpha: Vec<Rational> = (0..b.len).map(|j| t.get(x, b.start, b.start + j).clone()).collect();
        let inv = alpha[0].recip();
        for i in 0..b.len {
            for j in i..b.len {
                p1[(b.start + i, b.start + j)] = &alpha[j - i] * &inv;
            }
        }
    }
    p1[(x, x)] = lambda.clone();
    let t1 = t.change_basis(&p1).ok()?;

    let mut p2 = Matrix::identity(d);
    for (b, &e) in blocks.iter().zip(&is_e) {
        let (s, n) = (b.start, b.len);
        if e {
            let delta = t1.get(x, s, s).clone();
            // β_m is the coefficient of e'_m in [e'_1, x']
            let beta = |m: usize| t1.get(s, x, s + m - 1).clone();
            let mut a = vec![Rational::zero(); n + 1];
            for m in 3..=n {
                let mut acc = beta(m);
                for j in 3..m.saturating_sub(1) {
                    acc += &a[m - j + 1] * beta(j);
                }
                a[m] = acc / (int(m as i64 - 1) * &delta);
            }
            // generator a = e'_1 + Σ A_m e'_m and its chain
            let mut coef = a.clone();
            coef[1] = Rational::one();
            for i in 1..=n {
                for m in 1..=n + 1 - i {
                    p2[(s + i - 1, s + m + i - 2)] = coef[m].clone();
                }
            }
            for i in 2..n {
                p2[(x, s + i - 1)] = &delta * &a[i + 1];
            }
            if n >= 2 {
                let mut acc = t1.get(x, x, s + n - 1).clone();
                for j in 3..n {
                    acc += &delta * &a[n - j + 2] * beta(j);
                }
                p2[(x, s + n - 1)] = acc / (int(n as i64) * &delta);
            }
        } else {
            // x <- x - Σ α_i c_{i-1} removes [x, f_1]
            for i in 2..=n {
                p2[(x, s + i - 2)] = -t1.get(x, s, s + i - 1).clone();
            }
        }
    }
    let t2 = t1.change_basis(&p2).ok()?;

    let mut p3 = Matrix::identity(d);
    let mut e_blocks = Vec::new();
    let mut f_blocks = Vec::new();
    for (idx, (b, &e)) in blocks.iter().zip(&is_e).enumerate() {
        let (s, n) = (b.start, b.len);
        if e {
            e_blocks.push((idx, n, t2.get(x, s, s).clone()));
        } else {
            let beta = (2..=n).map(|m| t2.get(s, x, s + m - 1).clone()).collect();
            let raw = BetaParams { s: n, beta, gamma: t2.get(x, x, s + n - 1).clone() };
            let (params, a1) = catalog::normalize_beta_family(&raw);
            let mut pw = Rational::one();
            for i in 0..n {
                pw *= &a1;
                p3[(s + i, s + i)] = pw.clone();
            }
            f_blocks.push((idx, params));
        }
    }

    let head = e_blocks.iter().position(|(idx, ..)| *idx == reference)?;
    let first = e_blocks.remove(head);
    e_blocks.sort_by(|l, r| r.1.cmp(&l.1).then_with(|| l.2.cmp(&r.2)));
    e_blocks.insert(0, first);
    f_blocks.sort_by(|l, r| r.1.s.cmp(&l.1.s).then_with(|| l.1.cmp(&r.1)));

    let mut order = Vec::with_capacity(d);
    for idx in e_blocks.iter().map(|e| e.0).chain(f_blocks.iter().map(|f| f.0)) {
        order.extend(blocks[idx].start..blocks[idx].start + blocks[idx].len);
    }
    order.push(x);
    let p4 = Matrix::from_rows(order.iter().map(|&i| unit(d, i)).collect(), d).ok()?;

    let params = GeneralParams {
        e_dims: e_blocks.iter().map(|e| e.1).collect(),
        deltas: e_blocks.iter().map(|e| e.2.clone()).collect(),
        f_blocks: f_blocks.into_iter().map(|f| f.1).collect(),
    };
    let witness = p4.mul(&p3).and_then(|m| m.mul(&p2)).and_then(|m| m.mul(&p1)).ok()?;
    Some(Candidate { params, witness })
}

fn label_for(params: GeneralParams) -> ClassLabel {
    match (params.e_dims.len(), params.f_blocks.len()) {
        (1, 0) => ClassLabel::SolvableNF { n: params.e_dims[0] },
        (2, 0) => ClassLabel::RAlpha { k: params.e_dims[0], s: params.e_dims[1], alpha: params.deltas[1].clone() },
        (1, 1) => ClassLabel::RBeta { k: params.e_dims[0], params: params.f_blocks[0].clone() },
        _ => ClassLabel::RGeneral(params),
    }
}

enum SolvableOutcome {
    Found(Classification),
    NoEBlock,
    Failed,
}

/// Classification of a solvable algebra whose nilradical `nil` has
/// codimension 1 and splits into null-filiform blocks.
fn classify_with_nilradical(a: &AlgebraTable, nil: &Subspace) -> SolvableOutcome {
    let Some(chains) = decompose(a, nil) else {
        return SolvableOutcome::Failed;
    };
    let Some(x0) = nil.complement_basis().into_iter().next() else {
        return SolvableOutcome::Failed;
    };
    let d = a.dim();
    let mut rows: Vec<Vec<Rational>> = chains.iter().flatten().cloned().collect();
    rows.push(x0);
    let Ok(w0) = Matrix::from_rows(rows, d) else {
        return SolvableOutcome::Failed;
    };
    let Ok(t) = a.change_basis(&w0) else {
        return SolvableOutcome::Failed;
    };
    let mut blocks = Vec::new();
    let mut start = 0;
    for c in &chains {
        blocks.push(Block { start, len: c.len() });
        start += c.len();
    }
    let x = d - 1;
    let alpha1: Vec<Rational> = blocks.iter().map(|b| t.get(x, b.start, b.start).clone()).collect();
    let e_idx: Vec<usize> = (0..blocks.len()).filter(|&i| !alpha1[i].is_zero()).collect();
    if e_idx.is_empty() {
        return SolvableOutcome::NoEBlock;
    }
    // reference block: largest, then smallest |α_1|
    let max_len = e_idx.iter().map(|&i| blocks[i].len).max().expect("non-empty");
    let min_abs = e_idx.iter().filter(|&&i| blocks[i].len == max_len).map(|&i| alpha1[i].abs()).min().expect("non-empty");
    let refs = e_idx.iter().filter(|&&i| blocks[i].len == max_len && alpha1[i].abs() == min_abs);

    let mut best: Option<Candidate> = None;
    for &r in refs {
        let Some(cand) = normalize_blocks(&t, &blocks, r) else {
            continue;
        };
        let Some(expected) = catalog::make_r_general(&cand.params).ok() else {
            continue;
        };
        let Ok(witness) = cand.witness.mul(&w0) else {
            continue;
        };
        if a.change_basis(&witness).ok().as_ref() != Some(&expected) {
            continue;
        }
        let cand = Candidate { params: cand.params, witness };
        let better = match &best {
            None => true,
            Some(b) => (&cand.params.deltas, &cand.params.f_blocks) < (&b.params.deltas, &b.params.f_blocks),
        };
        if better {
            best = Some(cand);
        }
    }
    match best {
        Some(c) => SolvableOutcome::Found(Classification::known(label_for(c.params), c.witness)),
        None => SolvableOutcome::Failed,
    }
}

/// Basis change bringing a null-filiform algebra to `[e_i, e_1] = e_{i+1}`:
/// the chain of the first echelon vector outside the square.
fn null_filiform_witness(a: &AlgebraTable) -> Option<Matrix> {
    let n = a.dim();
    let full = Subspace::full(n);
    let square = product_space(a, &full, &full).ok()?;
    let g = full.basis().iter().find(|v| !square.contains(v))?.clone();
    let chain = chain_of(a, &g, n)?;
    (chain.len() == n).then(|| Matrix::from_rows(chain, n).ok()).flatten()
}

/// Brings an algebra with null-filiform nilradical of codimension 1 to the
/// table with `[x, e_1] = e_1`, `[e_i, x] = -i e_i`.
pub fn canonicalize_solvable_nf(a: &AlgebraTable) -> Result<Classification> {
    ensure_leibniz(a)?;
    let nil = nilradical(a)?.space;
    let restricted = a.restrict(&nil)?;
    let expected: Vec<usize> = (0..=nil.dim()).rev().collect();
    if nil.dim() + 1 != a.dim() || lower_central_series(&restricted).dims != expected {
        return Err(Error::Domain("the nilradical is not null-filiform of codimension 1".into()));
    }
    match classify_with_nilradical(a, &nil) {
        SolvableOutcome::Found(c) => Ok(c),
        SolvableOutcome::NoEBlock => {
            Err(Error::NotThisFamily("the complement acts on the generator without a diagonal part".into()))
        }
        SolvableOutcome::Failed => Err(Error::Internal("normalization did not reproduce the catalog table".into())),
    }
}

/// Recognizes the catalog family of `a` and its canonical parameters.
pub fn classify(a: &AlgebraTable) -> Result<Classification> {
    ensure_leibniz(a)?;
    let lcs = lower_central_series(a);
    if lcs.stabilized_at_zero {
        let expected: Vec<usize> = (0..=a.dim()).rev().collect();
        if lcs.dims == expected {
            if let Some(w) = null_filiform_witness(a) {
                return Ok(Classification::known(ClassLabel::NullFiliform { n: a.dim() }, w));
            }
        }
        return Ok(Classification::unknown(a));
    }
    let Ok(nil) = nilradical(a) else {
        return Ok(Classification::unknown(a));
    };
    if nil.space.dim() + 1 != a.dim() {
        return Ok(Classification::unknown(a));
    }
    match classify_with_nilradical(a, &nil.space) {
        SolvableOutcome::Found(c) => Ok(c),
        _ => Ok(Classification::unknown(a)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoVerdict {
    /// `change_basis(A, witness) = B`.
    Isomorphic { witness: Matrix },
    NotIsomorphic,
    Indeterminate { left: Box<Fingerprint>, right: Box<Fingerprint> },
}

/// Decides isomorphism for algebras the classifier recognizes.
pub fn isomorphic_in_catalog(a: &AlgebraTable, b: &AlgebraTable) -> Result<IsoVerdict> {
    let (fa, fb) = (fingerprint(a), fingerprint(b));
    if fa != fb {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let (ca, cb) = (classify(a)?, classify(b)?);
    match (&ca.label, &cb.label) {
        (ClassLabel::Unknown, _) | (_, ClassLabel::Unknown) => {
            Ok(IsoVerdict::Indeterminate { left: Box::new(fa), right: Box::new(fb) })
        }
        (la, lb) if la == lb => {
            let (wa, wb) = (ca.witness.expect("known label"), cb.witness.expect("known label"));
            let witness = wb.inverse()?.mul(&wa)?;
            Ok(IsoVerdict::Isomorphic { witness })
        }
        _ => Ok(IsoVerdict::NotIsomorphic),
    }
}
