//! Independent oracles: exhaustive enumeration over patterns, the DAG
//! partition reduction, and a numeric fixed-mode estimate.

mod enumerate;
mod numeric;
mod reduction;

pub use enumerate::{
    enumerate_feasible, essential_bruteforce, sparsest_bruteforce, sparsest_feasible_bruteforce,
    Criterion, FeasibleFamily, SparsestPatterns, DEFAULT_ENUMERATION_CAP,
};
pub use numeric::{
    cross_validate, estimate_fixed_modes, estimate_fixed_modes_with, sample_instance, Complex64,
    CrossValidation, FixedModeEstimate, NumericError, NumericInstance, SchurSolver, SpectrumSolver,
    DEFAULT_TOLERANCE, DEFAULT_TRIALS,
};
pub use reduction::{
    reduce_decomposition, solve_decomposition_via_patterns, DagPartition, DecompositionSolution,
    PartitionViolation, DEFAULT_DECOMPOSITION_CAP,
};

use crate::system::ModelError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("search over {size} entries exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("graph has a cycle")]
    NotAcyclic,
}
