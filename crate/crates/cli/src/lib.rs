//! Command-line front end. [`run`] takes the argument vector and returns
//! the exit status together with everything the command printed, so the
//! binary and the tests share one code path.
//!
//! Exit status 0 means success, 1 a mathematical failure (identity
//! violations, an unrecognized algebra where a family was demanded, failed
//! fuzz trials), 2 a usage or parse error.

pub mod table_file;

use std::ffi::OsString;
use std::fmt::Write;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use leibniz_core::catalog::{
    canonical_r_alpha_param, make_nf, make_r_alpha, make_r_beta, make_r_general, make_solvable_nf,
    normalize_beta_family, BetaParams, GeneralParams,
};
use leibniz_core::derivations::{derivation_space, max_nil_independent, NilIndependence};
use leibniz_core::fingerprint::fingerprint;
use leibniz_core::fuzz::fuzz_roundtrip;
use leibniz_core::nilradical::{nilradical_with, DEFAULT_SEED, DEFAULT_TRIALS};
use leibniz_core::rational::{format_rational, parse_rational};
use leibniz_core::recognition::{classify, isomorphic_in_catalog, ClassLabel, IsoVerdict};
use leibniz_core::series::{derived_series, lower_central_series, right_annihilator, SeriesReport};
use leibniz_core::{AlgebraTable, Matrix, Rational, Subspace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(name = "leibniz", version, about = "Exact computations with Leibniz algebras given by structure constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Leibniz identity on all basis triples.
    Verify { file: PathBuf },
    /// Lower central and derived series dimensions.
    Series {
        file: PathBuf,
        /// Print only the derived series.
        #[arg(long)]
        derived: bool,
    },
    /// Nilradical of a solvable algebra.
    Nilradical {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Right annihilator {x : [y, x] = 0 for all y}.
    Annihilator { file: PathBuf },
    /// Basis of the derivation algebra.
    Derivations {
        file: PathBuf,
        /// Also report the maximal number of nil-independent derivations.
        #[arg(long)]
        nilindependent: bool,
    },
    /// Name the catalog family of the algebra.
    Classify {
        file: PathBuf,
        /// Print the basis change onto the canonical table.
        #[arg(long)]
        witness: bool,
        /// Fail unless the algebra lies in this family.
        #[arg(long, value_enum)]
        expect: Option<Family>,
    },
    /// Basis-independent invariants.
    Fingerprint { file: PathBuf },
    /// Decide isomorphism of two recognized algebras.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        witness: bool,
    },
    /// Write a catalog table.
    Make {
        #[arg(value_enum)]
        family: Family,
        #[command(flatten)]
        params: FamilyParams,
    },
    /// Classify scrambled copies of a catalog table.
    Fuzz {
        #[arg(long, value_enum)]
        family: Family,
        #[command(flatten)]
        params: FamilyParams,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Nf,
    SolvableNf,
    RAlpha,
    RBeta,
    RGeneral,
}

#[derive(Args)]
struct FamilyParams {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    alpha: Option<Rational>,
    /// Comma-separated β_2,...,β_s.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    gamma: Option<Rational>,
    /// e-block as DIM:DELTA; repeat for each block, the first with DELTA 1.
    #[arg(long = "e")]
    e_blocks: Vec<String>,
    /// f-block as DIM:BETAS:GAMMA with comma-separated BETAS.
    #[arg(long = "f", allow_hyphen_values = true)]
    f_blocks: Vec<String>,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map(|p| p.value).map_err(|e| e.to_string())
}

fn rational_list(s: &str) -> Result<Vec<Rational>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| rational_arg(t.trim())).collect()
}

/// A failed command: exit status and message for stderr.
struct Failure(i32, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn math(msg: impl Into<String>) -> Failure {
    Failure(EXIT_FAILURE, msg.into())
}

fn required<T: Clone>(v: &Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    v.clone().ok_or_else(|| usage(format!("{family} requires --{flag}")))
}

fn parse_e_block(s: &str) -> Result<(usize, Rational), Failure> {
    let (dim, delta) = s.split_once(':').ok_or_else(|| usage(format!("--e expects DIM:DELTA, got `{s}`")))?;
    let dim = dim.parse().map_err(|_| usage(format!("bad block dimension in `{s}`")))?;
    Ok((dim, rational_arg(delta).map_err(usage)?))
}

fn parse_f_block(s: &str) -> Result<BetaParams, Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    let [dim, betas, gamma] = parts[..] else {
        return Err(usage(format!("--f expects DIM:BETAS:GAMMA, got `{s}`")));
    };
    let dim = dim.parse().map_err(|_| usage(format!("bad block dimension in `{s}`")))?;
    let beta = rational_list(betas).map_err(usage)?;
    let gamma = rational_arg(gamma).map_err(usage)?;
    BetaParams::new(dim, beta, gamma).map_err(|e| usage(e.to_string()))
}

impl FamilyParams {
    fn beta_params(&self) -> Result<BetaParams, Failure> {
        let s = required(&self.s, "s", "r-beta")?;
        let beta = rational_list(self.beta.as_deref().unwrap_or("")).map_err(usage)?;
        let gamma = required(&self.gamma, "gamma", "r-beta")?;
        BetaParams::new(s, beta, gamma).map_err(|e| usage(e.to_string()))
    }

    fn general_params(&self) -> Result<GeneralParams, Failure> {
        let e: Vec<(usize, Rational)> = self.e_blocks.iter().map(|s| parse_e_block(s)).collect::<Result<_, _>>()?;
        let f_blocks = self.f_blocks.iter().map(|s| parse_f_block(s)).collect::<Result<_, _>>()?;
        Ok(GeneralParams {
            e_dims: e.iter().map(|b| b.0).collect(),
            deltas: e.into_iter().map(|b| b.1).collect(),
            f_blocks,
        })
    }

    /// The catalog table and its label with canonical parameters.
    fn build(&self, family: Family) -> Result<(AlgebraTable, ClassLabel), Failure> {
        let bad = |e: leibniz_core::Error| usage(e.to_string());
        match family {
            Family::Nf => {
                let n = required(&self.n, "n", "nf")?;
                Ok((make_nf(n), ClassLabel::NullFiliform { n }))
            }
            Family::SolvableNf => {
                let n = required(&self.n, "n", "solvable-nf")?;
                if n == 0 {
                    return Err(usage("solvable-nf requires --n at least 1"));
                }
                Ok((make_solvable_nf(n), ClassLabel::SolvableNF { n }))
            }
            Family::RAlpha => {
                let (k, s) = (required(&self.k, "k", "r-alpha")?, required(&self.s, "s", "r-alpha")?);
                let alpha = required(&self.alpha, "alpha", "r-alpha")?;
                let t = make_r_alpha(k, s, &alpha).map_err(bad)?;
                Ok((t, ClassLabel::RAlpha { k, s, alpha: canonical_r_alpha_param(k, s, &alpha) }))
            }
            Family::RBeta => {
                let k = required(&self.k, "k", "r-beta")?;
                let params = self.beta_params()?;
                let t = make_r_beta(k, &params).map_err(bad)?;
                Ok((t, ClassLabel::RBeta { k, params: normalize_beta_family(&params).0 }))
            }
            Family::RGeneral => {
                let t = make_r_general(&self.general_params()?).map_err(bad)?;
                let label = classify(&t).map_err(|e| math(e.to_string()))?.label;
                if label == ClassLabel::Unknown {
                    return Err(math("the table is not recognized"));
                }
                Ok((t, label))
            }
        }
    }
}

fn in_family(label: &ClassLabel, family: Family) -> bool {
    matches!(
        (label, family),
        (ClassLabel::NullFiliform { .. }, Family::Nf)
            | (ClassLabel::SolvableNF { .. }, Family::SolvableNf)
            | (ClassLabel::RAlpha { .. }, Family::RAlpha)
            | (ClassLabel::RBeta { .. }, Family::RBeta)
            | (ClassLabel::RGeneral(_), Family::RGeneral)
    )
}

fn load(path: &Path, stderr: &mut String) -> Result<AlgebraTable, Failure> {
    let name = path.display();
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{name}: {e}")))?
    };
    let parsed = table_file::parse_table(&text).map_err(|e| usage(format!("{name}: {e}")))?;
    for w in parsed.warnings {
        writeln!(stderr, "warning: {name}: {w}").unwrap();
    }
    Ok(parsed.table)
}

fn vector(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

fn write_matrix(out: &mut String, m: &Matrix) {
    for row in m.row_vectors() {
        writeln!(out, "  {}", vector(row)).unwrap();
    }
}

fn write_basis(out: &mut String, title: &str, u: &Subspace) {
    writeln!(out, "{title}: dim {} of {}", u.dim(), u.ambient_dim()).unwrap();
    for b in u.basis() {
        writeln!(out, "  {}", vector(b)).unwrap();
    }
}

/// `4 3 2 0 (solvable, index 4)`, or `4 3 3*` when the series stalls.
fn series_line(r: &SeriesReport, word: &str) -> String {
    let dims: Vec<String> = r.dims.iter().map(usize::to_string).collect();
    match r.index {
        Some(i) if r.stabilized_at_zero => format!("{} ({word}, index {i})", dims.join(" ")),
        _ => format!("{}*", dims.join(" ")),
    }
}

fn execute(cli: Cli, out: &mut String, err: &mut String) -> Result<(), Failure> {
    let lib = |e: leibniz_core::Error| math(e.to_string());
    match cli.command {
        Command::Verify { file } => {
            let t = load(&file, err)?;
            let violations = t.check_leibniz();
            if violations.is_empty() {
                writeln!(out, "ok: Leibniz identity holds on all {} basis triples", t.dim().pow(3)).unwrap();
            } else {
                for v in &violations {
                    writeln!(out, "violation: ({}, {}, {})", v.i + 1, v.j + 1, v.k + 1).unwrap();
                }
                writeln!(out, "violations: {}", violations.len()).unwrap();
                return Err(Failure(EXIT_FAILURE, String::new()));
            }
        }
        Command::Series { file, derived } => {
            let t = load(&file, err)?;
            if !derived {
                writeln!(out, "lcs: {}", series_line(&lower_central_series(&t), "nilpotent")).unwrap();
            }
            writeln!(out, "ds: {}", series_line(&derived_series(&t), "solvable")).unwrap();
        }
        Command::Nilradical { file, seed, trials } => {
            let t = load(&file, err)?;
            let r = nilradical_with(&t, seed, trials).map_err(lib)?;
            let how = if r.is_certified() { "certified" } else { "heuristic" };
            write_basis(out, &format!("nilradical ({how})"), &r.space);
        }
        Command::Annihilator { file } => {
            let t = load(&file, err)?;
            write_basis(out, "right annihilator", &right_annihilator(&t));
        }
        Command::Derivations { file, nilindependent } => {
            let t = load(&file, err)?;
            let ders = derivation_space(&t);
            writeln!(out, "derivations: dim {}", ders.dim()).unwrap();
            for (i, d) in ders.basis.iter().enumerate() {
                writeln!(out, "D{}:", i + 1).unwrap();
                write_matrix(out, d);
            }
            if nilindependent {
                match max_nil_independent(&t) {
                    NilIndependence::Exact(c) => writeln!(out, "nil-independent: {c}").unwrap(),
                    NilIndependence::LowerBound(c) => {
                        writeln!(out, "nil-independent: >= {c} (sampled, unverified)").unwrap()
                    }
                }
            }
        }
        Command::Classify { file, witness, expect } => {
            let t = load(&file, err)?;
            let c = classify(&t).map_err(lib)?;
            writeln!(out, "{}", c.label).unwrap();
            if let Some(fp) = &c.fingerprint {
                writeln!(out, "{fp}").unwrap();
            }
            if let (true, Some(w)) = (witness, &c.witness) {
                writeln!(out, "witness:").unwrap();
                write_matrix(out, w);
            }
            if let Some(family) = expect {
                if !in_family(&c.label, family) {
                    return Err(math(format!("expected the {} family", family.to_possible_value().unwrap().get_name())));
                }
            }
        }
        Command::Fingerprint { file } => {
            let t = load(&file, err)?;
            writeln!(out, "{}", fingerprint(&t)).unwrap();
        }
        Command::Iso { first, second, witness } => {
            let (a, b) = (load(&first, err)?, load(&second, err)?);
            match isomorphic_in_catalog(&a, &b).map_err(lib)? {
                IsoVerdict::Isomorphic { witness: w } => {
                    writeln!(out, "isomorphic").unwrap();
                    if witness {
                        writeln!(out, "witness:").unwrap();
                        write_matrix(out, &w);
                    }
                }
                IsoVerdict::NotIsomorphic => {
                    writeln!(out, "not isomorphic").unwrap();
                    return Err(Failure(EXIT_FAILURE, String::new()));
                }
                IsoVerdict::Indeterminate { left, right } => {
                    writeln!(out, "indeterminate").unwrap();
                    writeln!(out, "first:\n{left}\nsecond:\n{right}").unwrap();
                    return Err(Failure(EXIT_FAILURE, String::new()));
                }
            }
        }
        Command::Make { family, params } => {
            let (t, _) = params.build(family)?;
            out.push_str(&table_file::serialize(&t));
        }
        Command::Fuzz { family, params, trials, seed } => {
            let (_, label) = params.build(family)?;
            writeln!(out, "family: {label}").unwrap();
            let report = fuzz_roundtrip(&label, trials, seed).map_err(lib)?;
            out.push_str(&report.render());
            if !report.all_passed() {
                return Err(Failure(EXIT_FAILURE, String::new()));
            }
        }
    }
    Ok(())
}

/// Runs one command line; `args` includes the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Output { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let (mut stdout, mut stderr) = (String::new(), String::new());
    let code = match execute(cli, &mut stdout, &mut stderr) {
        Ok(()) => EXIT_OK,
        Err(Failure(code, msg)) => {
            if !msg.is_empty() {
                writeln!(stderr, "error: {msg}").unwrap();
            }
            code
        }
    };
    Output { code, stdout, stderr }
}
