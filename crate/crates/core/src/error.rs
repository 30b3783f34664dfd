use thiserror::Error;

/// Errors raised anywhere in the auditor.
///
/// Variant names mirror the failure modes callers are expected to branch on;
/// the CLI maps [`Error::Parse`] to exit code 2 and everything else to 3.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("division by an element of zero norm")]
    DivisionByZeroNorm,
    #[error("quadratic radicands differ: sqrt({0}) vs sqrt({1})")]
    RadicandMismatch(String, String),
    #[error("real embedding requested for negative radicand {0}")]
    NegativeRadicandEmbedding(String),
    #[error("irregular singular point at {0}")]
    IrregularSingularPoint(String),
    #[error("resonant indicial pair (gap {gap})")]
    ResonantCase { gap: String },
    #[error("series are expanded about different points")]
    ExpansionPointMismatch,
    #[error("series truncation does not reach the (z-z0)^-1 term")]
    InsufficientTruncation,
    #[error("degenerate branch: {0}")]
    DegenerateBranch(String),
    #[error("elliptic curve degenerates (g2^3 - 27 g3^2 = 0)")]
    EllipticDegenerate,
    #[error("parameters do not satisfy branch preconditions: {0}")]
    BranchMismatch(String),
    #[error("integration step failed at t = {t}")]
    StepFailure { t: f64 },
    #[error("integration path passes through a singular point")]
    PathThroughSingularity,
    #[error("local Wronskian is degenerate")]
    WronskianDegenerate,
    #[error("no section crossing found before t = {t}")]
    NoCrossingFound { t: f64 },
    #[error("parse error in {field}: {message}")]
    Parse { field: String, message: String },
}

impl Error {
    /// Stable short tag used in JSON error lines and CLI diagnostics.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::PreconditionViolation(_) => "PreconditionViolation",
            Error::DivisionByZeroNorm => "DivisionByZeroNorm",
            Error::RadicandMismatch(..) => "RadicandMismatch",
            Error::NegativeRadicandEmbedding(_) => "NegativeRadicandEmbedding",
            Error::IrregularSingularPoint(_) => "IrregularSingularPoint",
            Error::ResonantCase { .. } => "ResonantCase",
            Error::ExpansionPointMismatch => "ExpansionPointMismatch",
            Error::InsufficientTruncation => "InsufficientTruncation",
            Error::DegenerateBranch(_) => "DegenerateBranch",
            Error::EllipticDegenerate => "EllipticDegenerate",
            Error::BranchMismatch(_) => "BranchMismatch",
            Error::StepFailure { .. } => "StepFailure",
            Error::PathThroughSingularity => "PathThroughSingularity",
            Error::WronskianDegenerate => "WronskianDegenerate",
            Error::NoCrossingFound { .. } => "NoCrossingFound",
            Error::Parse { .. } => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
