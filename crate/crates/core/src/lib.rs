//! Structural analysis of linear time-invariant systems under decentralized
//! static output feedback.
//!
//! Given the sparsity patterns of the plant matrices, this crate decides
//! whether an information pattern (which outputs each input may read) leaves
//! the closed loop free of structurally fixed modes, certifies and constructs
//! essential patterns (every link indispensable), and cross-checks those
//! verdicts against exhaustive and numeric oracles.

pub mod analysis;
pub mod design;
pub mod graph;
pub mod io;
pub mod system;
pub mod validation;
