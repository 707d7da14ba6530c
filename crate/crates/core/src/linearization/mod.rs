//! Linearizability: deciding whether a linear cost vector gives every `s`-`t`
//! path the same cost as the quadratic objective.
//!
//! Two notions are exposed. The path-matrix oracle decides both the
//! nonnegative one (`c' >= 0`) and the sign-unrestricted one; the grid
//! algorithm decides the sign-unrestricted one and returns vectors in reduced
//! form, which may have negative entries.

mod complete;
mod grid;
mod lp;

pub use complete::{
    check_necessary_conditions, k4_linearize, k4_paths, normalize_knstar, path_class_costs, tournament4_linearize,
    ConditionCheck, ConditionKind, NecessaryConditionReport, PathClassSums,
};
pub use grid::{
    critical_path_costs, critical_paths, linearize_g2q, linearize_grid, linearize_grid_with, pseudo_linearize,
    reduce_cost_vector, reduce_cost_vector_with, reduced_support, shrink_target, TieOrder,
};
pub use lp::{build_path_matrix, linearize_by_paths, lp_oracle, verify_certificate, PathMatrix, LP_MAX_SIZE};

use crate::error::Result;
use crate::graph::{enumerate_st_paths, Path};
use crate::instance::{path_cost_unchecked, CostVector, QsppInstance};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Linearizable,
    NotLinearizable,
}

/// Evidence that an instance is not linearizable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A path whose quadratic cost `expected` differs from the cost `got`
    /// under the candidate vector.
    Path { path: Path, expected: Rational, got: Rational },
    /// A Farkas vector `y` over the path-matrix rows: `B^T y >= 0` (or `= 0`
    /// for the sign-unrestricted system) and `b^T y < 0`.
    Certificate { y: Vec<Rational>, b_dot_y: Rational, path_costs: Vec<Rational> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearizationResult {
    pub verdict: Verdict,
    pub vector: Option<CostVector>,
    pub witness: Option<Witness>,
}

impl LinearizationResult {
    pub fn linearizable(vector: CostVector) -> Self {
        LinearizationResult { verdict: Verdict::Linearizable, vector: Some(vector), witness: None }
    }

    pub fn not_linearizable(witness: Witness) -> Self {
        LinearizationResult { verdict: Verdict::NotLinearizable, vector: None, witness: Some(witness) }
    }

    pub fn is_linearizable(&self) -> bool {
        self.verdict == Verdict::Linearizable
    }
}

/// First `s`-`t` path whose quadratic cost differs from its cost under
/// `vector`, as `(path, quadratic cost, linear cost)`.
pub fn find_mismatch(
    inst: &QsppInstance,
    vector: &CostVector,
    limit: Option<usize>,
) -> Result<Option<(Path, Rational, Rational)>> {
    for path in enumerate_st_paths(&inst.graph, inst.s, inst.t, limit)? {
        let expected = path_cost_unchecked(inst, path.arcs());
        let got = vector.path_sum(&path);
        if expected != got {
            return Ok(Some((path, expected, got)));
        }
    }
    Ok(None)
}
