//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use leibniz_core::catalog::{
    canonical_r_alpha_param, make_nf, make_r_alpha, make_r_beta, make_r_general, make_solvable_nf,
    make_solvable_nf_unreduced, normalize_beta_family, BetaParams, GeneralParams,
};
use leibniz_core::derivations::{derivation_space, is_derivation, max_nil_independent, NilIndependence};
use leibniz_core::fingerprint::fingerprint;
use leibniz_core::fuzz::fuzz_roundtrip;
use leibniz_core::nilradical::nilradical;
use leibniz_core::rational::{int, rat};
use leibniz_core::recognition::ClassLabel;
use leibniz_core::series::{is_ideal, is_nilpotent, is_null_filiform, is_solvable, lower_central_series, right_annihilator};
use leibniz_core::{AlgebraTable, Matrix, Rational, Subspace};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Check {
    for n in 1..=10 {
        let lcs = lower_central_series(&make_nf(n));
        let expected: Vec<usize> = (0..=n).rev().collect();
        ensure(lcs.dims == expected, || format!("n={n}: dims {:?}", lcs.dims))?;
        ensure(lcs.index == Some(n + 1), || format!("n={n}: index {:?}", lcs.index))?;
        ensure(common::series_dims(&make_nf(n), false) == expected, || format!("n={n}: oracle disagrees"))?;
    }
    Ok("n = 1..10".into())
}

fn criterion_2() -> Check {
    for n in 2..=8 {
        let t = make_nf(n);
        let ders = derivation_space(&t);
        ensure(ders.dim() == n, || format!("n={n}: dim Der = {}", ders.dim()))?;
        for d in &ders.basis {
            ensure(common::has_nf_derivation_pattern(d), || format!("n={n}: basis member off pattern"))?;
            ensure(common::is_derivation(&t, d), || format!("n={n}: basis member is not a derivation"))?;
        }
    }
    Ok("n = 2..8".into())
}

fn criterion_3() -> Check {
    for n in 2..=8 {
        let got = max_nil_independent(&make_nf(n));
        ensure(got == NilIndependence::Exact(1), || format!("n={n}: {got:?}"))?;
    }
    Ok("n = 2..8".into())
}

fn criterion_4() -> Check {
    for n in 2..=8 {
        let t = make_solvable_nf(n);
        ensure(t.is_leibniz(), || format!("n={n}: not Leibniz"))?;
        ensure(is_solvable(&t) && !is_nilpotent(&t), || format!("n={n}: wrong solvability"))?;
        ensure(t.dim() == n + 1, || format!("n={n}: dim {}", t.dim()))?;
        let nil = nilradical(&t).map_err(|e| e.to_string())?;
        let expected = Subspace::coordinate(0..n, n + 1).unwrap();
        ensure(nil.space == expected, || format!("n={n}: nilradical {:?}", nil.space.pivots()))?;
        let restricted = t.restrict(&nil.space).map_err(|e| e.to_string())?;
        ensure(is_null_filiform(&restricted), || format!("n={n}: restriction not null-filiform"))?;
        let oracle: Vec<usize> = (0..=n).rev().collect();
        ensure(common::series_dims(&restricted, false) == oracle, || format!("n={n}: oracle series differ"))?;
    }
    Ok("n = 2..8".into())
}

fn alpha_grid() -> Vec<Rational> {
    vec![int(1), int(-1), rat(1, 2), rat(-1, 2), int(3)]
}

fn tuples(len: usize) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (-2..=3).map(move |v| {
                    let mut t = t.clone();
                    t.push(int(v));
                    t
                })
            })
            .collect();
    }
    out
}

/// Every two-block table on the grid, with the expected square dimension
/// and the two block ranges.
fn two_block_grid() -> Vec<(String, AlgebraTable, usize, usize)> {
    let mut out = Vec::new();
    for k in 1..=4 {
        for s in 1..=k {
            for alpha in alpha_grid() {
                let t = make_r_alpha(k, s, &alpha).unwrap();
                out.push((format!("R(alpha) k={k} s={s} alpha={alpha}"), t, k, k + s));
            }
        }
        for s in 1..=4 {
            for tuple in tuples(s) {
                let (beta, gamma) = tuple.split_at(s - 1);
                let params = BetaParams::new(s, beta.to_vec(), gamma[0].clone()).unwrap();
                // with s = 1 a nonzero γ puts f_1 = [x,x]/γ into the square
                let square = if s == 1 && !params.gamma.is_zero() { k + s } else { k + s - 1 };
                let t = make_r_beta(k, &params).unwrap();
                out.push((format!("R(beta) k={k} {params:?}"), t, k, square));
            }
        }
    }
    out
}

fn criterion_5() -> Check {
    let grid = two_block_grid();
    for (name, t, _, square) in &grid {
        ensure(t.is_leibniz(), || format!("{name}: not Leibniz"))?;
        let got = lower_central_series(t).dims[1];
        ensure(got == *square, || format!("{name}: dim square {got}, expected {square}"))?;
    }
    Ok(format!("{} tables", grid.len()))
}

fn criterion_6() -> Check {
    let grid = two_block_grid();
    for (name, t, k, _) in &grid {
        let n = t.dim();
        for block in [0..*k, *k..n - 1] {
            let u = Subspace::coordinate(block.clone(), n).unwrap();
            ensure(is_ideal(t, &u).unwrap(), || format!("{name}: block {block:?} is not an ideal"))?;
        }
    }
    Ok(format!("{} tables", grid.len()))
}

fn weighted_entries(p: &BetaParams) -> Vec<(u32, Rational)> {
    p.beta.iter().enumerate().map(|(i, b)| (i as u32 + 1, b.clone())).chain([(p.s as u32, p.gamma.clone())]).collect()
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..200 {
        let s = rng.random_range(1..=4);
        let mut draw = || {
            if rng.random_bool(0.3) {
                Rational::zero()
            } else {
                rat(rng.random_range(-50..=50), rng.random_range(1..=12))
            }
        };
        let beta: Vec<Rational> = (0..s - 1).map(|_| draw()).collect();
        let params = BetaParams::new(s, beta, draw()).unwrap();
        let (normal, a) = normalize_beta_family(&params);
        ensure(normalize_beta_family(&normal).0 == normal, || format!("trial {trial}: not idempotent on {params:?}"))?;
        if let Some((e, v)) = weighted_entries(&params).into_iter().find(|(_, v)| !v.is_zero()) {
            let lead = weighted_entries(&normal).into_iter().find(|(_, v)| !v.is_zero()).unwrap().1;
            if common::has_rational_root(&v, e) {
                ensure(lead.is_one(), || format!("trial {trial}: leading entry {lead} for {params:?}"))?;
            }
        }
        // f'_i = a^i f_i, everything else fixed
        let k = 2;
        let n = k + s + 1;
        let mut p = Matrix::identity(n);
        for i in 1..=s {
            p[(k + i - 1, k + i - 1)] = a.pow(i as i32);
        }
        let raw = make_r_beta(k, &params).unwrap();
        let target = make_r_beta(k, &normal).unwrap();
        ensure(raw.change_basis(&p).unwrap() == target, || format!("trial {trial}: witness mismatch"))?;
    }
    Ok("200 tuples".into())
}

fn r_beta_samples(s: usize) -> Vec<BetaParams> {
    let raw: Vec<(Vec<i64>, i64)> = match s {
        1 => vec![(vec![], 0), (vec![], 5)],
        2 => vec![(vec![0], 0), (vec![3], 2), (vec![0], -7)],
        _ => vec![(vec![0, 0], 0), (vec![2, 1], 4), (vec![0, -3], 1)],
    };
    raw.into_iter()
        .map(|(b, g)| {
            let p = BetaParams::new(s, b.into_iter().map(int).collect(), int(g)).unwrap();
            normalize_beta_family(&p).0
        })
        .collect()
}

fn criterion_8() -> Check {
    let mut runs: Vec<(ClassLabel, usize)> = Vec::new();
    for n in 1..=6 {
        runs.push((ClassLabel::NullFiliform { n }, 100));
        runs.push((ClassLabel::SolvableNF { n }, 100));
    }
    for k in 1..=3 {
        for s in 1..=k {
            for alpha in [int(1), int(-1), int(3), rat(-1, 2)] {
                runs.push((ClassLabel::RAlpha { k, s, alpha: canonical_r_alpha_param(k, s, &alpha) }, 50));
            }
        }
        for s in 1..=3 {
            for params in r_beta_samples(s) {
                runs.push((ClassLabel::RBeta { k, params }, 50));
            }
        }
    }
    let mut total = 0;
    for (label, trials) in &runs {
        let report = fuzz_roundtrip(label, *trials, 42).map_err(|e| e.to_string())?;
        ensure(report.all_passed(), || {
            let f = report.first_failure().unwrap();
            format!("{label}: trial {} {}", f.trial, f.detail)
        })?;
        total += report.total();
    }
    Ok(format!("{} families, {total} trials", runs.len()))
}

fn general_params(e: &[(usize, Rational)], f: &[BetaParams]) -> GeneralParams {
    GeneralParams {
        e_dims: e.iter().map(|(d, _)| *d).collect(),
        deltas: e.iter().map(|(_, q)| q.clone()).collect(),
        f_blocks: f.to_vec(),
    }
}

fn f_block(s: usize, seed: usize) -> BetaParams {
    let beta = (0..s - 1).map(|i| int(((seed + i) % 4) as i64 - 1)).collect();
    BetaParams::new(s, beta, int((seed % 3) as i64)).unwrap()
}

fn compositions(count: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..count {
        out = out.into_iter().flat_map(|c| (1..=3).map(move |d| [c.clone(), vec![d]].concat())).collect();
    }
    out
}

fn criterion_9() -> Check {
    for n in 1..=4 {
        let g = make_r_general(&general_params(&[(n, int(1))], &[])).unwrap();
        ensure(g == make_solvable_nf(n), || format!("(1,0) n={n} differs"))?;
    }
    for (k, s) in [(1, 1), (2, 1), (3, 2), (3, 3)] {
        for alpha in alpha_grid() {
            let g = make_r_general(&general_params(&[(k, int(1)), (s, alpha.clone())], &[])).unwrap();
            ensure(g == make_r_alpha(k, s, &alpha).unwrap(), || format!("(2,0) k={k} s={s} differs"))?;
        }
    }
    for k in 1..=3 {
        for s in 1..=3 {
            let p = f_block(s, k);
            let g = make_r_general(&general_params(&[(k, int(1))], &[p.clone()])).unwrap();
            ensure(g == make_r_beta(k, &p).unwrap(), || format!("(1,1) k={k} s={s} differs"))?;
        }
    }
    let deltas = [int(1), int(-2), rat(1, 3)];
    let mut count = 0;
    for j in 1..=3 {
        for kk in 0..=3 - j {
            for dims in compositions(j + kk) {
                let e: Vec<(usize, Rational)> = dims[..j].iter().zip(&deltas).map(|(&d, q)| (d, q.clone())).collect();
                let f: Vec<BetaParams> = dims[j..].iter().enumerate().map(|(i, &s)| f_block(s, i + count)).collect();
                let params = general_params(&e, &f);
                let t = make_r_general(&params).unwrap();
                let name = format!("e={dims:?} j'={j}");
                ensure(t.is_leibniz(), || format!("{name}: not Leibniz"))?;
                let n = t.dim();
                let nil = nilradical(&t).map_err(|e| format!("{name}: {e}"))?;
                ensure(nil.space == Subspace::coordinate(0..n - 1, n).unwrap(), || format!("{name}: nilradical differs"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} block configurations"))
}

fn catalog_algebras() -> Vec<(String, AlgebraTable)> {
    let b = |s, beta: &[i64], g| BetaParams::new(s, beta.iter().copied().map(int).collect(), int(g)).unwrap();
    vec![
        ("NF(4)".into(), make_nf(4)),
        ("NF(6)".into(), make_nf(6)),
        ("SolvableNF(3)".into(), make_solvable_nf(3)),
        ("SolvableNF(5)".into(), make_solvable_nf(5)),
        ("unreduced SolvableNF(4)".into(), make_solvable_nf_unreduced(4, &[int(2), int(-1)], &rat(1, 2)).unwrap()),
        ("R(alpha) 3,2,2".into(), make_r_alpha(3, 2, &int(2)).unwrap()),
        ("R(alpha) 2,2,-1".into(), make_r_alpha(2, 2, &int(-1)).unwrap()),
        ("R(beta) 3,(1),0".into(), make_r_beta(3, &b(2, &[1], 0)).unwrap()),
        ("R(beta) 2,(0,1),3".into(), make_r_beta(2, &b(3, &[0, 1], 3)).unwrap()),
        (
            "R general".into(),
            make_r_general(&general_params(&[(2, int(1)), (1, int(-2))], &[b(2, &[1], 0)])).unwrap(),
        ),
    ]
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let algebras = catalog_algebras();
    for (name, t) in &algebras {
        let n = t.dim();
        let reference = fingerprint(t);
        for round in 0..50 {
            let p = common::random_invertible(n, 2, &mut rng);
            let moved = t.change_basis(&p).map_err(|e| e.to_string())?;
            ensure(fingerprint(&moved) == reference, || format!("{name}: fingerprint moved in round {round}"))?;
        }
        for _ in 0..20 {
            let mut v = || (0..n).map(|_| int(rng.random_range(-3..=3))).collect::<Vec<_>>();
            let (x, y, z) = (v(), v(), v());
            let c = int(rng.random_range(-3..=3));
            let cx_y: Vec<Rational> = x.iter().zip(&y).map(|(a, b)| &c * a + b).collect();
            let lhs1 = t.bracket(&cx_y, &z).unwrap();
            let lhs2 = t.bracket(&z, &cx_y).unwrap();
            let (xz, yz, zx, zy) = (t.bracket(&x, &z).unwrap(), t.bracket(&y, &z).unwrap(), t.bracket(&z, &x).unwrap(), t.bracket(&z, &y).unwrap());
            let rhs1: Vec<Rational> = xz.iter().zip(&yz).map(|(a, b)| &c * a + b).collect();
            let rhs2: Vec<Rational> = zx.iter().zip(&zy).map(|(a, b)| &c * a + b).collect();
            ensure(lhs1 == rhs1 && lhs2 == rhs2, || format!("{name}: bracket is not bilinear"))?;
            ensure(lhs1 == common::bracket(t, &cx_y, &z), || format!("{name}: bracket disagrees with oracle"))?;
        }
        let ann = right_annihilator(t);
        for i in 0..n {
            let bi = common::unit(n, i);
            let r = t.right_mult_matrix(&bi, None).unwrap();
            ensure(is_derivation(t, &r).unwrap() && common::is_derivation(t, &r), || format!("{name}: R_{i} is not a derivation"))?;
            for j in 0..n {
                let bj = common::unit(n, j);
                let sym: Vec<Rational> =
                    t.bracket(&bi, &bj).unwrap().iter().zip(t.bracket(&bj, &bi).unwrap()).map(|(a, b)| a + b).collect();
                let sq = t.bracket(&bi, &bi).unwrap();
                for v in [&sym, &sq] {
                    let killed = (0..n).all(|m| common::bracket(t, &common::unit(n, m), v).iter().all(Zero::is_zero));
                    ensure(ann.contains(v) && killed, || format!("{name}: ({i},{j}) escapes the right annihilator"))?;
                }
            }
        }
    }
    Ok(format!("{} algebras", algebras.len()))
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Check, Option<Duration>); 10] = [
        (1, criterion_1, Some(Duration::from_secs(1))),
        (2, criterion_2, Some(Duration::from_secs(2))),
        (3, criterion_3, None),
        (4, criterion_4, None),
        (5, criterion_5, Some(Duration::from_secs(30))),
        (6, criterion_6, None),
        (7, criterion_7, None),
        (8, criterion_8, Some(Duration::from_secs(60))),
        (9, criterion_9, None),
        (10, criterion_10, None),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (id, run, bound) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, bound) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, bound {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {id}: PASS {detail} ({elapsed:.2?})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id}: FAIL {detail} ({elapsed:.2?})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
