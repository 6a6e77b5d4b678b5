use thiserror::Error;

/// Failures while validating a planar diagram code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("crossing {crossing}: tuple must hold four positive labels")]
    MalformedTuple { crossing: usize },
    #[error("arc label {label} occurs {count} times (expected exactly 2)")]
    LabelCount { label: i64, count: usize },
    #[error("orientation is inconsistent at crossing {crossing}")]
    OrientationInconsistent { crossing: usize },
    #[error("code describes a link with more than one component")]
    MultipleComponents,
    #[error("code is not planar: {faces} faces, expected {expected}")]
    NonPlanar { faces: usize, expected: usize },
    #[error("move does not apply: {0}")]
    InvalidMove(String),
}

/// Failures from the algebraic layer (matrices, polynomials, signatures).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("matrix is not square or has ragged rows")]
    Shape,
    #[error("V - V^T has determinant {0}, expected 1")]
    NotUnimodular(String),
    #[error("polynomial is not symmetric under t -> 1/t")]
    NotSymmetric,
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("evaluation at Alexander root: exp(2 pi i * {0})")]
    AlexanderRoot(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("polynomial degree {0} exceeds the supported bound")]
    DegreeTooLarge(usize),
    #[error("{0}")]
    Other(String),
}

/// Failures in tower / grope handling.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("node at {path:?} has no kinks")]
    NoKinks { path: Vec<usize> },
    #[error("node at {path:?} has {found} children, expected {expected}")]
    ChildCount { path: Vec<usize>, found: usize, expected: usize },
    #[error("leaves sit at different depths")]
    RaggedLeaves,
    #[error("surface at {path:?} has genus 0")]
    ZeroGenus { path: Vec<usize> },
    #[error("blow-up needs a tower of height at least 2, got {0}")]
    TooShort(usize),
    #[error("blow-up needs a tower whose kinks all share one sign")]
    MixedSigns,
    #[error("stage {stage} is outside 1..={height}")]
    StageOutOfRange { stage: usize, height: usize },
}

/// Failures of the deduction engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("unknown set token {0:?}")]
    UnknownSet(String),
    #[error("contradiction for {knot} in {set}\n  member because:\n{member_trace}\n  non-member because:\n{non_member_trace}")]
    Contradiction { knot: String, set: String, member_trace: String, non_member_trace: String },
    #[error("certificate rejected: {0}")]
    BadCertificate(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
