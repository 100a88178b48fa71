use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (max deviation of U†U from identity {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("trace is not 1 (got {trace})")]
    InvalidTrace { trace: f64 },

    #[error("matrix is not positive semi-definite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("basis is not orthonormal (max Gram deviation {deviation:e})")]
    BasisNotOrthonormal { deviation: f64 },

    #[error("state vanishes (norm {norm:e})")]
    NullState { norm: f64 },

    #[error("wavefunctions or kernels live on different grids")]
    GridMismatch,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("packet width {width} is not resolvable on spacing {dx} (need width > 2 dx)")]
    UnresolvableWidth { width: f64, dx: f64 },

    #[error("packet center {center} lies outside the grid [{x_min}, {x_max}]")]
    CenterOutsideGrid { center: f64, x_min: f64, x_max: f64 },

    #[error("support violation: {0}")]
    SupportViolation(String),

    #[error("capacity exceeded: dimension {dim} > {cap}")]
    CapacityExceeded { dim: usize, cap: usize },

    #[error("measurement condition violated (max cross-sector Gram deviation {deviation:e})")]
    MeasurementConditionViolated { deviation: f64 },

    #[error("unitary completion failed: found {found} of {needed} complement vectors")]
    CompletionFailure { found: usize, needed: usize },

    #[error("invalid premeasurement spec: {0}")]
    SpecInvalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
