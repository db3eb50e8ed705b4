//! Error type shared by every module of the kernel.

use thiserror::Error;

/// Errors surfaced by kernel operations.
#[derive(Debug, Error)]
pub enum KernelError {
    /// Jet order above the supported maximum (3).
    #[error("unsupported jet order {0} (maximum is 3)")]
    UnsupportedOrder(usize),

    /// Scalar-domain failure during field evaluation (log of a nonpositive
    /// real, division by a zero value part, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Finite-difference step underflowed to zero.
    #[error("degenerate finite-difference step")]
    DegenerateStep,

    /// Non-finite numbers appeared in an input or an intermediate result.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Matrix logarithm requested outside the principal-branch domain.
    #[error("matrix logarithm outside principal-branch domain: {0}")]
    LogDomain(String),

    /// Operands belong to different groups / algebras.
    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    /// Representation is incompatible with the requested operation.
    #[error("representation mismatch: {0}")]
    RepresentationMismatch(String),

    /// Representation is not unitary for the supplied bilinear form.
    #[error("representation not unitary for the supplied bilinear form: {0}")]
    RepresentationNotUnitary(String),

    /// Form-degree bookkeeping failure (wedge past top degree, etc.).
    #[error("degree overflow: {0}")]
    DegreeOverflow(String),

    /// Chart/shape dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Metric degenerate at an evaluation point.
    #[error("singular metric: {0}")]
    SingularMetric(String),

    /// Frame (vielbein) degenerate at an evaluation point.
    #[error("singular frame: {0}")]
    SingularFrame(String),

    /// Cocycle frame data absent where required.
    #[error("frame data missing: {0}")]
    FrameDataMissing(String),

    /// Cocycle does not declare K-compatibility.
    #[error("cocycle is not K-compatible")]
    NotKCompatible,

    /// Partition-of-unity weights fail to sum to one.
    #[error("partition weights do not sum to 1 (deviation {0:.3e})")]
    BadPartition(f64),

    /// Parabolic grading requested but none declared.
    #[error("no grading declared on this Cartan connection")]
    NoGradingDeclared,

    /// Ghost field absent where the BRST operator needs one.
    #[error("ghost not instantiated: {0}")]
    GhostNotInstantiated(String),

    /// Catalog/spec construction failed internal consistency checks.
    #[error("construction error: {0}")]
    Construction(String),

    /// Bad user input (CLI, metric-spec files).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Filesystem / serialization failure.
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for KernelError {
    fn from(e: std::io::Error) -> Self {
        KernelError::Io(e.to_string())
    }
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, KernelError>;
