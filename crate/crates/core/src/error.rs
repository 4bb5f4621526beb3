use thiserror::Error;

/// Reasons a pair `(A, B)` is rejected at construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("zero coefficient: A and B must both be non-zero (got A={a}, B={b})")]
    ZeroCoefficient { a: i64, b: i64 },
    /// `alpha/beta` is a root of unity of the given order.
    #[error("degenerate: (α/β) has order {order}")]
    Degenerate { order: u32 },
    #[error("coefficient out of range: |A|, |B| must not exceed {limit}")]
    OutOfRange { limit: i64 },
}

/// Failures of the certification pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("certification requires a dominant root (A²+4B > 0), got D = {d}")]
    NotDominant { d: i64 },
    #[error("inconclusive: {reason}")]
    Inconclusive { reason: String, open_patterns: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("certificate failure: s_{t} = {value} is non-zero")]
    CertificateFailure { t: i64, value: String },
    #[error("family pattern produces a negative index at t = {t}")]
    NegativeIndex { t: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("no bounding square pair found for discriminant {discriminant} of {equation}")]
    SqueezeUnresolved { equation: String, discriminant: String },
    #[error("solution set of {equation} is unbounded under the active filter")]
    Unbounded { equation: String },
    #[error("equation {equation} vanishes identically")]
    IdenticallyZero { equation: String },
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("malformed table resource: {0}")]
    Parse(#[from] serde_json::Error),
}
