use thiserror::Error;

/// Errors raised anywhere in the formula pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("regrouping impossible: {reason}{}", .smallest.map(|m| format!(" (smallest admissible period: {m})")).unwrap_or_default())]
    RegroupImpossible { reason: String, smallest: Option<usize> },
    #[error("unsupported point: {0}")]
    UnsupportedPoint(String),
    #[error("combination impossible: {0}")]
    CombineImpossible(String),
    #[error("series needs regrouping before evaluation: {0}")]
    NeedsRegrouping(String),
    #[error("unsupported constant: {0}")]
    UnsupportedConstant(String),
    #[error("indeterminate digit at position {position} after {retries} guard retries")]
    IndeterminateDigit { position: u64, retries: u32 },
    #[error("root certification inconclusive: {0}")]
    Inconclusive(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("derivation failed: {0}")]
    Derivation(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("unknown catalog entry {name:?}; available: {}", .available.join(", "))]
    UnknownEntry { name: String, available: Vec<String> },
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Parse(_) => "parse",
            Error::RegroupImpossible { .. } => "regroup-impossible",
            Error::UnsupportedPoint(_) => "unsupported-point",
            Error::CombineImpossible(_) => "combine-impossible",
            Error::NeedsRegrouping(_) => "needs-regrouping",
            Error::UnsupportedConstant(_) => "unsupported-constant",
            Error::IndeterminateDigit { .. } => "indeterminate-digit",
            Error::Inconclusive(_) => "inconclusive",
            Error::TheoremViolation(_) => "theorem-violation",
            Error::Consistency(_) => "consistency",
            Error::Derivation(_) => "derivation",
            Error::VerificationFailed(_) => "verification-failed",
            Error::UnknownEntry { .. } => "unknown-entry",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
