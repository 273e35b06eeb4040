use thiserror::Error;

/// Library-wide error type. `module()` names the originating subsystem so
/// the CLI can report structured domain errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a unit vector: {0}")]
    NotUnit(String),

    #[error("hypercomplex structure invariants violated: {0}")]
    InvalidStructure(String),

    #[error("cokernel is not locally free; elementary divisors {factors:?}")]
    TorsionDetected { factors: Vec<String> },

    #[error("pair is neither CR nor co-CR: {0}")]
    NotClassifiable(String),

    #[error("degree multiset violates the cokernel degree laws: {0}")]
    DegreeLaw(String),

    #[error("invalid f-quaternionic triple: {}", .0.join("; "))]
    InvalidTriple(Vec<String>),

    #[error("not a conjugation: {0}")]
    InvalidConjugation(String),

    #[error("fixed line has no rational unit point: {0}")]
    NonRationalAxis(String),

    #[error("condition failed: {0}")]
    ConditionFailed(String),

    #[error("downstream certification failed: {0}")]
    CertificationFailed(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Subsystem the error originates from, for structured CLI reports.
    pub fn module(&self) -> &'static str {
        use Error::*;
        match self {
            AmbientMismatch { .. } | DimensionMismatch { .. } | Internal(_) => "exact-algebra",
            InvalidArgument(_) | NotUnit(_) | InvalidStructure(_) => "quaternion-structures",
            TorsionDetected { .. } => "twistor-pencil",
            NotClassifiable(_) | DegreeLaw(_) => "models-classification",
            InvalidTriple(_) => "f-structures",
            InvalidConjugation(_) | NonRationalAxis(_) | ConditionFailed(_)
            | CertificationFailed(_) => "conjugations",
            Parse(_) => "cli",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
