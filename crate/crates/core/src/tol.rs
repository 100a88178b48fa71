//! Shared numerical tolerances.

/// Residual allowed when checking a type invariant (normalization,
/// hermiticity, unitarity, orthonormality, trace).
pub const INVARIANT: f64 = 1e-10;

/// Residual allowed when comparing two computed quantities that should agree
/// up to floating-point accumulation.
pub const COMPARISON: f64 = 1e-12;

/// Eigenvalues at or below this are dropped from entropy sums.
pub const ENTROPY_EIGENVALUE_FLOOR: f64 = 1e-12;

/// Outcome probabilities below this carry no conditional state.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

/// Quadrature-norm tolerance for lattice wavefunctions.
pub const LATTICE_NORM: f64 = 1e-8;

/// Probability mass a packet may leak across a domain boundary before the
/// cluster-separability preconditions count as violated.
pub const SUPPORT_MASS: f64 = 1e-10;

/// Raw vectors with a norm below this are treated as zero.
pub const NULL_NORM: f64 = 1e-12;

/// Largest Hilbert-space dimension built densely.
pub const MAX_DENSE_DIM: usize = 4096;
