//! Text documents for systems and patterns, Graphviz export, and versioned
//! JSON reports.

mod document;
mod dot;
mod report;

use std::path::PathBuf;

pub use document::{
    load_pattern, load_system, parse_pattern, parse_system, pattern_to_string, save_pattern,
    save_system, system_to_string, PatternDocument, SystemDocument,
};
pub use dot::{export_dot, to_dot};
pub use report::{essentiality_value, feasibility_value, Report, REPORT_SCHEMA, REPORT_VERSION};

use crate::system::ModelError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("{}: {message}", path.display())]
    File { path: PathBuf, message: String },
    #[error("malformed document: {0}")]
    Syntax(String),
    #[error("line {line}, field `{field}`: {message}")]
    Field {
        field: &'static str,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}
