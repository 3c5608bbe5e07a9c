//! Finite-field verification engine: point enumeration, dimension
//! estimation by hyperplane slicing, smoothness probes, and brute-force
//! oracles for A1-lines and A1-conics.

pub mod enumerate;
pub mod oracles;
pub mod probes;
pub mod slicing;

use serde::Serialize;

pub use enumerate::{
    enumerate_solutions, enumerate_solutions_brute, projective_count, ProjectiveSpace,
    SolutionSet, ENUMERATION_CAP,
};
pub use oracles::{oracle_a1_conics, oracle_a1_lines, ConicOracleReport};
pub use probes::{general_interior_point, general_point_pair, smoothness_probe};
pub use slicing::dimension_by_slicing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// Outcome of a sampling verification. Deterministic for fixed seed and
/// inputs, except for the wall-clock field, which the JSON emitters zero.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct CheckReport {
    pub points_examined: u64,
    pub solutions_found: u64,
    /// Solution points, listed when there are at most 1024 of them.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solutions: Option<Vec<Vec<String>>>,
    pub dimension_estimate: Option<i64>,
    pub codim_observed: Option<usize>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub seed: u64,
    pub wall_time_ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

pub const SOLUTION_LIST_LIMIT: usize = 1024;

pub(crate) fn render_point(
    field: &crate::exactalg::FieldSpec,
    point: &[crate::exactalg::Scalar],
) -> Vec<String> {
    point.iter().map(|c| field.scalar_to_string(c)).collect()
}
