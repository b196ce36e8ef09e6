use thiserror::Error;

/// Errors raised by curve construction, frame computation, flow integration
/// and verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("insufficient samples: got {got}, need at least {need} for {topology} curves")]
    InsufficientSamples {
        got: usize,
        need: usize,
        topology: &'static str,
    },

    #[error("parameter grid is not strictly increasing at index {index}")]
    NonIncreasingGrid { index: usize },

    #[error("closed curves require a uniform parameter grid (index {index})")]
    NonUniformClosedGrid { index: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite value in {what} at index {index}")]
    NonFinite { what: &'static str, index: usize },

    #[error("derivative order {order} exceeds ambient dimension {dim}")]
    OrderTooHigh { order: usize, dim: usize },

    #[error("degenerate speed: min |dα/du| = {min} below threshold {threshold}")]
    DegenerateSpeed { min: f64, threshold: f64 },

    #[error("parameter {value} outside grid range [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("degenerate curve: derivative {index} linearly dependent on predecessors at u = {location}")]
    DegenerateCurve { index: usize, location: f64 },

    #[error("no periodic tangential solution: loop integral defect {defect} exceeds tolerance {tolerance}")]
    NoPeriodicSolution { defect: f64, tolerance: f64 },

    #[error("flow field has {got} components, curve dimension is {expected}")]
    ComponentCountMismatch { expected: usize, got: usize },

    #[error("constrained tangential policy requires component 1 to be left unspecified")]
    TangentialComponentSpecified,

    #[error("tabulated speed field has {got} entries, curve has {expected} samples")]
    TabulatedLengthMismatch { expected: usize, got: usize },

    #[error("curvature index {index} outside 1..{max} referenced by flow component")]
    CurvatureIndexOutOfRange { index: usize, max: usize },

    #[error("time horizon {t_end} is not an integral multiple of dt = {dt}")]
    BadTimeGrid { t_end: f64, dt: f64 },

    #[error("trajectory was resampled mid-run; fixed-u time differences are meaningless")]
    ResamplingBreaksComparison,

    #[error("trajectory has {got} snapshots, need at least {need}")]
    TooFewSnapshots { got: usize, need: usize },

    #[error("snapshot index {index} is not interior (valid range 1..{max})")]
    NotInteriorSnapshot { index: usize, max: usize },

    #[error("axis index {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
