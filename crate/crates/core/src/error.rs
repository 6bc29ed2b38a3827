use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("minimal polynomial is reducible over Q: {0}")]
    ReducibleMinimalPolynomial(String),
    #[error("minimal polynomial has degree {0}; only degrees 1..=4 are supported")]
    DegreeTooLarge(usize),
    #[error("field error: {0}")]
    FieldError(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("relation {0} is not homogeneous")]
    InhomogeneousRelation(String),
    #[error("input polynomial is not homogeneous")]
    InhomogeneousInput,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid generator specification: {0}")]
    InvalidGenerators(String),
    #[error("truncation degree {0} is too small (need at least 2)")]
    TruncationTooSmall(usize),
    #[error("group closure exceeded the order bound {0}")]
    OrderBoundExceeded(usize),
    #[error("resolution window exhausted: {0}")]
    WindowExhausted(String),
    #[error("the Gorenstein probe is not consistent inside the window: {0}")]
    NotGorensteinWindow(String),
    #[error("failed to lift map through the resolution: {0}")]
    LiftFailure(String),
    #[error("induced map on cohomology is not an algebra automorphism: {0}")]
    NotAnHAutomorphism(String),
    #[error("parameters violate the down-up case trichotomy: {0}")]
    CaseMismatch(String),
    #[error("DG validation failed: {0}")]
    DgValidationFailed(String),
    #[error("matrix tuple is not crisscross (i={i}, j={j}, entry=({row},{col}))")]
    NotCrisscross { i: usize, j: usize, row: usize, col: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not an automorphism: {0}")]
    InvalidMorphism(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("internal error: {0}")]
    Internal(String),
}
