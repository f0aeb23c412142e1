use thiserror::Error;

/// Errors raised by the toolkit's numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("element is not a unit (condition number {condition:.3e})")]
    NotAUnit { condition: f64 },

    #[error("algebra has neither a matrix representation nor a ‖1‖² override")]
    MissingRepresentation,

    #[error("invalid algebra definition: {0}")]
    InvalidAlgebra(String),

    #[error("unknown catalog algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("unit resampling failed {0} times in a row")]
    SamplingFailure(usize),

    #[error("family admits no normalized slice (1'L1 vanishes on every member)")]
    NoNormalizedSlice,

    #[error("s'Ls^-1 is not constant on the normalized slice (deviation {0:.3e})")]
    SliceNotConstant(f64),

    #[error("transpose-induced map is not symmetric (asymmetry {0:.3e})")]
    NotSymmetric(f64),

    #[error("integration path crosses a non-unit at t = {t:.6}")]
    PathCrossesNonUnits { t: f64 },

    #[error("adaptive quadrature exhausted its budget of {0} subdivisions")]
    QuadratureNonConvergent(usize),

    #[error("element has a component of relative size {0:.3e} in the kernel of L")]
    KernelComponent(f64),

    #[error("point lies outside the closed form's domain: {0}")]
    OutOfDomain(String),

    #[error("parameter vector has length {got}, closed form needs {expected}")]
    ParamCount { expected: usize, got: usize },

    #[error("sphere point evaluates to {0}, expected 1")]
    SphereCheck(f64),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("leading Toeplitz coefficient must be positive, got {0}")]
    NonPositiveLeading(f64),

    #[error("span is not a two-sided ideal (closure residual {0:.3e})")]
    NotAnIdeal(f64),

    #[error("ideal contains the unity")]
    IdealContainsUnity,

    #[error("delta {delta:.6e} outside achievable discrepancy range [{lo:.6e}, {hi:.6e}]")]
    DeltaOutOfRange { delta: f64, lo: f64, hi: f64 },

    #[error("retained coordinate {0} vanishes")]
    DegenerateCoordinate(usize),

    #[error("boost speed {0} must satisfy |v| < 1")]
    SpeedOutOfRange(f64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
