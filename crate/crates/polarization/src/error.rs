use thiserror::Error;

use crate::society::Violation;

/// Errors produced by the computation layers of this crate.
///
/// File parsing has its own error type, [`crate::dataio::DataError`],
/// which wraps this one for post-parse domain failures.
#[derive(Debug, Error)]
pub enum Error {
    /// The input society failed validation; every offence is listed.
    #[error("invalid society: {}", format_violations(.0))]
    InvalidSociety(Vec<Violation>),

    /// Two positions (or a position and a space) disagree on dimensionality.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A parameter was outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A grid request would materialize more groups than the configured cap.
    #[error("grid of {groups} groups exceeds the size cap of {cap}")]
    GridTooLarge { groups: u128, cap: u64 },

    /// A chamber violated its structural invariants.
    #[error("invalid chamber: {0}")]
    InvalidChamber(String),

    /// A member id was not found in the chamber.
    #[error("unknown member id '{0}'")]
    UnknownMember(String),

    /// Aggregation was asked to drop independents without a residual cluster.
    #[error("{0} independent member(s) remain and no residual cluster was requested")]
    IndependentsRemain(usize),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
