//! Symbolic classification of post-Hopf operations by polynomial constraint solving.

mod build;
mod classify;
mod family;
mod solver;
mod system;

pub use build::{build_unknown_op, generate_constraints, Parameterization, UnknownOp};
pub use classify::{classify, ClassificationResult, ClassifyOptions};
pub use family::{equivalent, match_families, specializes, subsume, Family, MatchReport};
pub use solver::{solve, Branch, BranchStatus, SolveError, SolveLimits, SolveOutcome, SolveStats};
pub use system::{ConstraintSystem, Equation, Mode, Provenance};

use crate::hopf::HopfError;
use crate::triangle::TriangleError;

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error("the generator parameterization needs the Sweedler algebra with basis 1, g, v, gv")]
    NotSweedler,
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Triangle(#[from] TriangleError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}
