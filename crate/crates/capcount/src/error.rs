use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("variable index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("line direction entry {index} must be strictly positive")]
    NonPositiveDirection { index: usize },

    #[error("coefficients must be non-negative")]
    NegativeCoefficient,

    #[error("loop edge at vertex {vertex} is not allowed")]
    LoopEdge { vertex: usize },

    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("operation requires a non-constant polynomial")]
    ConstantPolynomial,

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("vertex {vertex} has odd degree {degree}")]
    OddDegree { vertex: usize, degree: usize },

    #[error("not a bipartition: {0}")]
    NotBipartition(String),

    #[error("graph is not regular: {0}")]
    NotRegular(String),

    #[error("edge count {edges} exceeds brute-force guard {max}")]
    EdgeCountGuard { edges: usize, max: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),

    #[error("coefficient index {r} out of range 0..={d}")]
    CoefficientIndexOutOfRange { r: u32, d: u32 },

    #[error("window [{b}, {c}] does not contain the mean {mean}")]
    WindowExcludesMean { b: u32, c: u32, mean: f64 },

    #[error("polynomial is not real-rooted")]
    NotRealRooted,

    #[error("invalid probability vector: {0}")]
    InvalidProbabilityVector(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("unknown closure construction tag: {0}")]
    UnknownConstruction(String),

    #[error("restriction re-draw budget exhausted after {attempts} degenerate lines")]
    RestrictionBudgetExhausted { attempts: usize },

    #[error("coefficient slice is identically zero while the parent capacity {capacity} is positive")]
    ZeroSliceWithPositiveCapacity { capacity: f64 },

    #[error("objective overflow: coefficient magnitudes exceed float range, rescale the polynomial")]
    ObjectiveOverflow,
}

pub type Result<T> = std::result::Result<T, Error>;
