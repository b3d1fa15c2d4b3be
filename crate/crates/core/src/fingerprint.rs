//! Basis-independent invariants.

use std::fmt;

use crate::algebra::AlgebraTable;
use crate::derivations::derivation_space;
use crate::series::{derived_series, lower_central_series, right_annihilator};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub dim: usize,
    pub lcs_dims: Vec<usize>,
    pub ds_dims: Vec<usize>,
    pub dim_square: usize,
    pub dim_der: usize,
    pub dim_ann_r: usize,
    pub nilpotent: bool,
    pub solvable: bool,
}

pub fn fingerprint(a: &AlgebraTable) -> Fingerprint {
    let lcs = lower_central_series(a);
    let ds = derived_series(a);
    Fingerprint {
        dim: a.dim(),
        dim_square: lcs.dims.get(1).copied().unwrap_or(0),
        lcs_dims: lcs.dims,
        ds_dims: ds.dims,
        dim_der: derivation_space(a).dim(),
        dim_ann_r: right_annihilator(a).dim(),
        nilpotent: lcs.stabilized_at_zero,
        solvable: ds.stabilized_at_zero,
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim: {}", self.dim)?;
        writeln!(f, "lcs: {}", join(&self.lcs_dims))?;
        writeln!(f, "ds: {}", join(&self.ds_dims))?;
        writeln!(f, "dim_square: {}", self.dim_square)?;
        writeln!(f, "dim_der: {}", self.dim_der)?;
        writeln!(f, "dim_ann_r: {}", self.dim_ann_r)?;
        writeln!(f, "nilpotent: {}", self.nilpotent)?;
        write!(f, "solvable: {}", self.solvable)
    }
}
