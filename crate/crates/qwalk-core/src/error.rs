//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong while building or analysing a walk.
///
/// Variants split into two families: invalid inputs (bad matrices,
/// mismatched dimensions, out-of-range parameters) and numeric failures
/// (solver breakdown, degenerate spectra, undersized grids). Callers that
/// need the distinction can use [`Error::is_input_error`].
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square")]
    NonSquare,
    #[error("coin matrix is not unitary (max residual {residual:.3e})")]
    NonUnitary { residual: f64 },
    #[error("dimension mismatch: {context}")]
    DimMismatch { context: String },
    #[error("state norm^2 is {norm_sq:.17}, expected 1")]
    NormError { norm_sq: f64 },
    #[error("unknown coin family `{name}`")]
    UnknownFamily { name: String },
    #[error("family `{family}` requires parameter `{name}`")]
    MissingParam {
        family: &'static str,
        name: &'static str,
    },
    #[error("parameter {name}={value} out of range {range}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("invalid momentum grid: {context}")]
    InvalidGrid { context: String },
    #[error("momentum grid too small: {context}")]
    GridTooSmall { context: String },
    #[error("eigensolver failure: {context}")]
    SolverFailure { context: String },
    #[error("eigenvalue gap {gap:.3e} is below the degeneracy threshold")]
    DegenerateBranch { gap: f64 },
    #[error("every momentum grid node is degenerate; no limit law")]
    AllNodesDegenerate,
    #[error("operation requires a two-state coin, got N={n}")]
    WrongCoinDim { n: usize },
    #[error("evaluation point {y} outside the open support ({lo}, {hi})")]
    EvalOutsideSupport { y: f64, lo: f64, hi: f64 },
    #[error("invalid schedule: {context}")]
    InvalidSchedule { context: String },
}

impl Error {
    /// True when the error reflects invalid user input rather than a
    /// numeric failure encountered during computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NonSquare
                | Error::NonUnitary { .. }
                | Error::DimMismatch { .. }
                | Error::NormError { .. }
                | Error::UnknownFamily { .. }
                | Error::MissingParam { .. }
                | Error::ParamOutOfRange { .. }
                | Error::InvalidGrid { .. }
                | Error::WrongCoinDim { .. }
                | Error::InvalidSchedule { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
