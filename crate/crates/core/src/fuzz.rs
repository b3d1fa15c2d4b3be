//! Round trips through random unimodular basis changes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::recognition::{classify, ClassLabel};
use crate::scramble::{random_unimodular, ScrambleShape};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    pub trial: usize,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzReport {
    pub trials: Vec<TrialOutcome>,
}

impl FuzzReport {
    pub fn passed(&self) -> usize {
        self.trials.iter().filter(|t| t.passed).count()
    }

    pub fn total(&self) -> usize {
        self.trials.len()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.total()
    }

    pub fn first_failure(&self) -> Option<&TrialOutcome> {
        self.trials.iter().find(|t| !t.passed)
    }

    /// `trial <i>: PASS|FAIL <detail>` lines and a `passed <p>/<t>` summary.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for t in &self.trials {
            let verdict = if t.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("trial {}: {} {}\n", t.trial, verdict, t.detail));
        }
        out.push_str(&format!("passed {}/{}\n", self.passed(), self.total()));
        out
    }
}

/// Scrambles the canonical table of `family` `trials` times and checks that
/// classification returns the same label with a valid witness. One-block
/// families get unrestricted scrambles; multi-block families keep each
/// block inside its own span.
pub fn fuzz_roundtrip(family: &ClassLabel, trials: usize, seed: u64) -> Result<FuzzReport> {
    let canonical =
        family.canonical_table().ok_or_else(|| Error::Parameter(format!("{family} has no catalog table")))?;
    let n = canonical.dim();
    let shape = match family {
        ClassLabel::NullFiliform { .. } | ClassLabel::SolvableNF { .. } => ScrambleShape::Unrestricted,
        _ => {
            let (blocks, free) = family.block_layout().expect("multi-block label");
            ScrambleShape::Blocks { blocks, free }
        }
    };
    let trials = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let p = random_unimodular(n, &shape, &mut rng);
            let outcome = canonical.change_basis(&p).and_then(|input| classify(&input).map(|c| (input, c)));
            let (passed, detail) = match outcome {
                Err(e) => (false, format!("error: {e}")),
                Ok((_, c)) if &c.label != family => (false, format!("got {}", c.label)),
                Ok((input, c)) => {
                    let w = c.witness.expect("known label carries a witness");
                    if input.change_basis(&w).ok().as_ref() == Some(&canonical) {
                        (true, c.label.to_string())
                    } else {
                        (false, "witness does not reproduce the canonical table".into())
                    }
                }
            };
            TrialOutcome { trial, passed, detail }
        })
        .collect();
    Ok(FuzzReport { trials })
}
