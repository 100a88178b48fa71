//! WebAssembly bindings for the browser demo. Each export wraps a plain Rust
//! function of the same name with a `_view` suffix, so the numerics can be
//! tested natively.

use gemenge_core::bcl::{premeasure, BclSpec};
use gemenge_core::hilbert::StateVector;
use gemenge_core::objectification::{apply_rule2, compare_states, sigma_x_witness};
use gemenge_core::particles::{
    expectation_single, expectation_two_particle, gaussian_packet, localize, symmetrize, symmetrized_observable,
    Domain, ExchangeSymmetry, KernelOperator, LatticeGrid, LatticeWavefunction,
};
use gemenge_core::Complex64;
use wasm_bindgen::prelude::*;

/// Lattice used by the demo: coarser than the CLI scenarios so the page stays
/// responsive while dragging sliders.
pub const X_MIN: f64 = -20.0;
pub const X_MAX: f64 = 20.0;
pub const N_POINTS: usize = 256;

fn grid() -> LatticeGrid {
    LatticeGrid::spanning(X_MIN, X_MAX, N_POINTS).expect("demo grid is valid")
}

fn symmetry(fermion: bool) -> ExchangeSymmetry {
    if fermion {
        ExchangeSymmetry::Fermion
    } else {
        ExchangeSymmetry::Boson
    }
}

fn densities(psi: &LatticeWavefunction) -> Vec<f64> {
    let dx = psi.grid().dx();
    psi.probabilities().into_iter().map(|p| p / dx).collect()
}

#[wasm_bindgen(getter_with_clone)]
#[derive(Debug, Clone)]
pub struct PacketView {
    pub x: Vec<f64>,
    /// Probability densities of the two single-particle packets.
    pub density_a: Vec<f64>,
    pub density_b: Vec<f64>,
    /// One-particle density of the symmetrized pair, `∫|Ψ(x, y)|² dy`.
    pub pair_density: Vec<f64>,
    pub single_a: f64,
    pub single_b: f64,
    /// Symmetrized position observable in the symmetrized state.
    pub two_particle: f64,
    pub nu: f64,
}

pub fn discrepancy_view(
    center_a: f64,
    width_a: f64,
    center_b: f64,
    width_b: f64,
    fermion: bool,
) -> Result<PacketView, String> {
    let grid = grid();
    let psi = gaussian_packet(grid, center_a, width_a).map_err(|e| e.to_string())?;
    let phi = gaussian_packet(grid, center_b, width_b).map_err(|e| e.to_string())?;
    let x = KernelOperator::position(grid);
    let pair = symmetrize(&psi, &phi, symmetry(fermion)).map_err(|e| e.to_string())?;
    let two_particle = expectation_two_particle(&symmetrized_observable(&x), &pair)
        .map_err(|e| e.to_string())?
        .re;
    let dx = grid.dx();
    let values = pair.values();
    let pair_density = (0..grid.n_points())
        .map(|i| values.row(i).iter().map(|z| z.norm_sqr()).sum::<f64>() * dx)
        .collect();
    Ok(PacketView {
        x: grid.coordinates(),
        density_a: densities(&psi),
        density_b: densities(&phi),
        pair_density,
        single_a: expectation_single(&x, &psi).map_err(|e| e.to_string())?.re,
        single_b: expectation_single(&x, &phi).map_err(|e| e.to_string())?.re,
        two_particle,
        nu: pair.normalization(),
    })
}

/// Symmetrized packets at `(center_a, width_a)` and `(center_b, width_b)`.
#[wasm_bindgen]
pub fn discrepancy(
    center_a: f64,
    width_a: f64,
    center_b: f64,
    width_b: f64,
    fermion: bool,
) -> Result<PacketView, JsError> {
    discrepancy_view(center_a, width_a, center_b, width_b, fermion).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(getter_with_clone)]
#[derive(Debug, Clone)]
pub struct LocalityView {
    /// `⟨x⟩` of the unit-width packet at the origin, alone.
    pub single: f64,
    /// Symmetrized position restricted to the domain, in the pair state.
    pub localized: f64,
    /// Unrestricted symmetrized position in the pair state.
    pub unlocalized: f64,
    pub mass_outside_a: f64,
    pub mass_inside_b: f64,
}

pub fn locality_view(center_b: f64, half_width: f64, fermion: bool) -> Result<LocalityView, String> {
    let grid = grid();
    let domain = Domain::from_interval(&grid, -half_width, half_width).map_err(|e| e.to_string())?;
    let psi = gaussian_packet(grid, 0.0, 1.0).map_err(|e| e.to_string())?;
    let phi = gaussian_packet(grid, center_b, 1.0).map_err(|e| e.to_string())?;
    let x = KernelOperator::position(grid);
    let pair = symmetrize(&psi, &phi, symmetry(fermion)).map_err(|e| e.to_string())?;
    let avg = |a: &KernelOperator| -> Result<f64, String> {
        Ok(expectation_two_particle(&symmetrized_observable(a), &pair)
            .map_err(|e| e.to_string())?
            .re)
    };
    let total = |w: &LatticeWavefunction| w.probabilities().iter().sum::<f64>();
    Ok(LocalityView {
        single: expectation_single(&x, &psi).map_err(|e| e.to_string())?.re,
        localized: avg(&localize(&x, &domain))?,
        unlocalized: avg(&x)?,
        mass_outside_a: total(&psi) - psi.mass_in(&domain),
        mass_inside_b: phi.mass_in(&domain),
    })
}

/// Packet at the origin plus a second one at `center_b`, observed through the
/// position operator restricted to `[−half_width, half_width]`.
#[wasm_bindgen]
pub fn locality(center_b: f64, half_width: f64, fermion: bool) -> Result<LocalityView, JsError> {
    locality_view(center_b, half_width, fermion).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[derive(Debug, Clone, Copy)]
pub struct MeasurementView {
    pub p0: f64,
    pub p1: f64,
    pub coherence_unitary: f64,
    pub coherence_rule2: f64,
    pub witness_unitary: f64,
    pub witness_rule2: f64,
    pub entropy_unitary: f64,
    pub entropy_rule2: f64,
}

pub fn qubit_measurement_view(theta: f64, phase: f64) -> Result<MeasurementView, String> {
    let spec = BclSpec::canonical(vec![1.0, -1.0], &[1, 1]).map_err(|e| e.to_string())?;
    let phi = StateVector::from_slice(&[
        Complex64::new((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phase),
    ])
    .map_err(|e| e.to_string())?;
    let result = premeasure(&spec, &phi).map_err(|e| e.to_string())?;
    let gemenge = apply_rule2(&result, &spec).map_err(|e| e.to_string())?;
    let witness = sigma_x_witness(&spec).map_err(|e| e.to_string())?;
    let report = compare_states(&result, &gemenge, &spec, &witness).map_err(|e| e.to_string())?;
    Ok(MeasurementView {
        p0: result.probabilities[0],
        p1: result.probabilities[1],
        coherence_unitary: report.pointer_block_coherence_norm,
        coherence_rule2: report.pointer_block_coherence_rule2,
        witness_unitary: report.witness_expectation_unitary,
        witness_rule2: report.witness_expectation_rule2,
        entropy_unitary: report.entropy_unitary_state,
        entropy_rule2: report.entropy_rule2_state,
    })
}

/// Premeasurement of `σz` on `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩` followed by
/// objectification.
#[wasm_bindgen]
pub fn qubit_measurement(theta: f64, phase: f64) -> Result<MeasurementView, JsError> {
    qubit_measurement_view(theta, phase).map_err(|e| JsError::new(&e))
}
