//! The operation `⊳` on a Hopf algebra: tables, axiom checks, the six
//! Sweedler families and completion from generator values.

mod checks;
mod extend;
mod families;
mod op;

pub use checks::{
    check_coalgebra_hom, check_counit_absorption, check_distributivity, check_mode, check_unitality,
    check_weighted_assoc,
};
pub use extend::extend_generators;
pub use families::{family_satisfies, family_table, family_table_rational, FamilyId, FAMILIES_JSON, FAMILIES_SHA256};
pub use op::{apply, render_element, render_table, GeneratorTable, OpFile, TriangleOp};

use crate::exactmath::ExactError;
use crate::multipoly::PolyError;

#[derive(Debug, thiserror::Error)]
pub enum TriangleError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("malformed operation: {0}")]
    Format(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("family ({0}) needs a parameter")]
    MissingParameter(FamilyId),
    #[error("family ({0}) takes no parameter")]
    UnexpectedParameter(FamilyId),
    #[error("unknown family {0:?} (expected i, ii, iii, iv, v or vi)")]
    UnknownFamily(String),
}
