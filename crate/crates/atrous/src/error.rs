use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum AtrousError {
    #[error("grid size {0} is not a power of two")]
    GridNotPowerOfTwo(usize),
    #[error("grid too small: need more than {needed} samples, have {have}")]
    GridTooSmall { needed: usize, have: usize },
    #[error("depth limit exceeded: J = {requested}, maximum {max}")]
    DepthLimit { requested: usize, max: usize },
    #[error("pyramid shape mismatch: {0}")]
    PyramidShape(String),
    #[error("not a low-pass filter: {0}")]
    NotLowPass(String),
    #[error("invalid filter bank: {0}")]
    InvalidBank(String),
    #[error("bad bounds: A = {a}, B = {b}")]
    BadBounds { a: f64, b: f64 },
    #[error("no convergence after {iterations} iterations (relative residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("empty feasible set: {0}")]
    EmptyFeasibleSet(String),
    #[error("singular system (condition number {0:e})")]
    SingularSystem(f64),
    #[error("polynomials are not coprime (condition number {0:e})")]
    NotCoprime(f64),
    #[error("trigonometric polynomial is negative somewhere (min {0:e})")]
    NotNonnegative(f64),
    #[error("unit-circle root of odd multiplicity at angle {0}")]
    OddCircleRoot(f64),
    #[error("composed factor {0} is negative on the circle")]
    NegativeFactor(String),
    #[error("zero sequence")]
    ZeroSequence,
    #[error("non-finite value in input")]
    NonFinite,
}

pub type Result<T> = std::result::Result<T, AtrousError>;
