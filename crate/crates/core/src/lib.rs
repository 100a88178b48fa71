//! Finite-dimensional simulation of measurement with identical particles.
//!
//! The crate is organised bottom-up:
//!
//! - [`hilbert`]: dense complex states, density matrices, operators, tensor
//!   products, partial traces and entropies.
//! - [`particles`]: two identical particles on a 1-D lattice, symmetrized
//!   observables, D-local kernels and cluster-separability checks.
//! - [`bcl`]: the Beltrametti–Cassinelli–Lahti premeasurement model, with a
//!   deterministic unitary extension of the system/pointer coupling.
//! - [`objectification`]: the non-unitary map from the entangled premeasurement
//!   state to the gemenge (proper mixture) and the diagnostics that quantify
//!   what is erased.
//! - [`sample`]: seeded random states, unitaries and model specs for tests and
//!   parameter sweeps.
//!
//! Tensor products are row-major throughout: in `u ⊗ v` the index of `u`
//! varies slowest, so amplitude `(i, j)` lives at `i * dim(v) + j`.
//!
//! ```
//! use gemenge_core::bcl::{premeasure, BclSpec};
//! use gemenge_core::hilbert::StateVector;
//! use gemenge_core::objectification::{apply_rule2, compare_states, sigma_x_witness};
//!
//! let spec = BclSpec::canonical(vec![1.0, -1.0], &[1, 1])?;
//! let phi = StateVector::from_reals(&[0.6, 0.8])?;
//! let result = premeasure(&spec, &phi)?;
//! assert!((result.probabilities[0] - 0.36).abs() < 1e-12);
//!
//! let gemenge = apply_rule2(&result, &spec)?;
//! let report = compare_states(&result, &gemenge, &spec, &sigma_x_witness(&spec)?)?;
//! assert_eq!(report.pointer_block_coherence_rule2, 0.0);
//! assert!((report.witness_expectation_unitary - 0.96).abs() < 1e-12);
//! # Ok::<(), gemenge_core::Error>(())
//! ```

pub mod bcl;
pub mod error;
pub mod hilbert;
pub mod objectification;
pub mod particles;
pub mod sample;
pub mod tol;

pub use error::{Error, Result};
pub use num_complex::Complex64;
