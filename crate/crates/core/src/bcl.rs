//! Beltrametti–Cassinelli–Lahti premeasurement.
//!
//! A discrete observable `O = Σ_k o_k Σ_l |φ_kl⟩⟨φ_kl|` of the system is
//! coupled to an apparatus with pointer states `ψ_k` and ready state `ψ` by a
//! unitary `U` that extends the isometry
//!
//! ```text
//! φ_kl ⊗ ψ  ↦  φ′_kl ⊗ ψ_k
//! ```
//!
//! The transfer family `φ′_kl` must be orthonormal within each sector. When it
//! is orthonormal across sectors as well (the measurement condition), the
//! mapped vectors form an orthonormal set and `U` is completed on the
//! complement by Gram–Schmidt over canonical basis vectors.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hilbert::{
    gram_deviation, max_abs, outer, partial_trace, tensor, tensor_raw, CMatrix, DensityMatrix, MatrixOperator, ProductSpace,
    RawVector, StateVector,
};
use crate::tol;
use num_complex::Complex64;

/// Inputs of the premeasurement model. Construction enforces every invariant
/// except the cross-sector measurement condition, which
/// [`validate_spec`] reports and [`build_premeasurement_unitary`] requires.
#[derive(Debug, Clone, PartialEq)]
pub struct BclSpec {
    eigenvalues: Vec<f64>,
    system_eigenbasis: Vec<Vec<StateVector>>,
    pointer_basis: Vec<StateVector>,
    ready_state: StateVector,
    transfer_family: Vec<Vec<StateVector>>,
}

impl BclSpec {
    pub fn new(
        eigenvalues: Vec<f64>,
        system_eigenbasis: Vec<Vec<StateVector>>,
        pointer_basis: Vec<StateVector>,
        ready_state: StateVector,
        transfer_family: Vec<Vec<StateVector>>,
    ) -> Result<Self> {
        let sectors = eigenvalues.len();
        if sectors == 0 {
            return Err(Error::SpecInvalid("no eigenvalue sectors".into()));
        }
        if system_eigenbasis.len() != sectors {
            return Err(Error::SpecInvalid(format!(
                "{} eigenvalues but {} eigenbasis sectors",
                sectors,
                system_eigenbasis.len()
            )));
        }
        if pointer_basis.len() != sectors {
            return Err(Error::SpecInvalid(format!(
                "{} eigenvalue sectors but {} pointer states",
                sectors,
                pointer_basis.len()
            )));
        }
        if transfer_family.len() != sectors {
            return Err(Error::SpecInvalid(format!(
                "{} eigenvalue sectors but {} transfer sectors",
                sectors,
                transfer_family.len()
            )));
        }
        for (k, o) in eigenvalues.iter().enumerate() {
            if !o.is_finite() {
                return Err(Error::SpecInvalid(format!("eigenvalue {k} is not finite")));
            }
            if eigenvalues[..k].contains(o) {
                return Err(Error::SpecInvalid(format!("eigenvalue {o} repeated")));
            }
        }
        for (k, (basis, transfer)) in system_eigenbasis.iter().zip(&transfer_family).enumerate() {
            if basis.is_empty() {
                return Err(Error::SpecInvalid(format!("sector {k} is empty")));
            }
            if basis.len() != transfer.len() {
                return Err(Error::SpecInvalid(format!(
                    "sector {k}: {} eigenvectors but {} transfer vectors",
                    basis.len(),
                    transfer.len()
                )));
            }
        }

        let system_dim = system_eigenbasis[0][0].dim();
        let flat: Vec<StateVector> = system_eigenbasis.iter().flatten().cloned().collect();
        for v in flat.iter().chain(transfer_family.iter().flatten()) {
            if v.dim() != system_dim {
                return Err(Error::DimensionMismatch {
                    expected: system_dim,
                    actual: v.dim(),
                });
            }
        }
        if flat.len() != system_dim {
            return Err(Error::SpecInvalid(format!(
                "eigenbasis has {} vectors for system dimension {}",
                flat.len(),
                system_dim
            )));
        }
        let deviation = gram_deviation(&flat);
        if deviation > tol::INVARIANT {
            return Err(Error::BasisNotOrthonormal { deviation });
        }

        let apparatus_dim = ready_state.dim();
        for v in &pointer_basis {
            if v.dim() != apparatus_dim {
                return Err(Error::DimensionMismatch {
                    expected: apparatus_dim,
                    actual: v.dim(),
                });
            }
        }
        let deviation = gram_deviation(&pointer_basis);
        if deviation > tol::INVARIANT {
            return Err(Error::BasisNotOrthonormal { deviation });
        }
        for sector in &transfer_family {
            let deviation = gram_deviation(sector);
            if deviation > tol::INVARIANT {
                return Err(Error::BasisNotOrthonormal { deviation });
            }
        }
        if system_dim.saturating_mul(apparatus_dim) > tol::MAX_DENSE_DIM {
            return Err(Error::CapacityExceeded {
                dim: system_dim.saturating_mul(apparatus_dim),
                cap: tol::MAX_DENSE_DIM,
            });
        }

        Ok(Self {
            eigenvalues,
            system_eigenbasis,
            pointer_basis,
            ready_state,
            transfer_family,
        })
    }

    /// Canonical bases throughout: `φ_kl` are consecutive unit vectors grouped
    /// by `degeneracies`, `ψ_k = e_k` in an apparatus of dimension
    /// `degeneracies.len()`, ready state `e_0`, and `φ′_kl = φ_kl`.
    pub fn canonical(eigenvalues: Vec<f64>, degeneracies: &[usize]) -> Result<Self> {
        let system_dim: usize = degeneracies.iter().sum();
        let sectors = degeneracies.len();
        if sectors == 0 {
            return Err(Error::SpecInvalid("no eigenvalue sectors".into()));
        }
        let mut eigenbasis = Vec::with_capacity(sectors);
        let mut next = 0;
        for &deg in degeneracies {
            eigenbasis.push((next..next + deg).map(|i| StateVector::basis(system_dim, i)).collect::<Vec<_>>());
            next += deg;
        }
        let pointer: Vec<StateVector> = (0..sectors).map(|k| StateVector::basis(sectors, k)).collect();
        let ready = pointer[0].clone();
        Self::new(eigenvalues, eigenbasis.clone(), pointer, ready, eigenbasis)
    }

    pub fn with_transfer_family(self, transfer_family: Vec<Vec<StateVector>>) -> Result<Self> {
        Self::new(
            self.eigenvalues,
            self.system_eigenbasis,
            self.pointer_basis,
            self.ready_state,
            transfer_family,
        )
    }

    pub fn with_ready_state(self, ready_state: StateVector) -> Result<Self> {
        Self::new(
            self.eigenvalues,
            self.system_eigenbasis,
            self.pointer_basis,
            ready_state,
            self.transfer_family,
        )
    }

    pub fn system_dim(&self) -> usize {
        self.system_eigenbasis[0][0].dim()
    }

    pub fn apparatus_dim(&self) -> usize {
        self.ready_state.dim()
    }

    pub fn sector_count(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn degeneracies(&self) -> Vec<usize> {
        self.system_eigenbasis.iter().map(Vec::len).collect()
    }

    pub fn space(&self) -> ProductSpace {
        ProductSpace::bipartite(self.system_dim(), self.apparatus_dim()).expect("dimensions are positive")
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn system_eigenbasis(&self) -> &[Vec<StateVector>] {
        &self.system_eigenbasis
    }

    pub fn pointer_basis(&self) -> &[StateVector] {
        &self.pointer_basis
    }

    pub fn ready_state(&self) -> &StateVector {
        &self.ready_state
    }

    pub fn transfer_family(&self) -> &[Vec<StateVector>] {
        &self.transfer_family
    }

    /// `O = Σ_k o_k Σ_l |φ_kl⟩⟨φ_kl|`.
    pub fn observable(&self) -> MatrixOperator {
        let n = self.system_dim();
        let mut m = CMatrix::zeros(n, n);
        for (o, sector) in self.eigenvalues.iter().zip(&self.system_eigenbasis) {
            for v in sector {
                m += crate::hilbert::outer_raw(v.amplitudes()).scale(*o);
            }
        }
        MatrixOperator::hermitian(m).expect("real combination of projectors is Hermitian")
    }

    /// `A = Σ_k o_k |ψ_k⟩⟨ψ_k|` on the apparatus.
    pub fn pointer_observable(&self) -> MatrixOperator {
        let n = self.apparatus_dim();
        let mut m = CMatrix::zeros(n, n);
        for (o, v) in self.eigenvalues.iter().zip(&self.pointer_basis) {
            m += crate::hilbert::outer_raw(v.amplitudes()).scale(*o);
        }
        MatrixOperator::hermitian(m).expect("real combination of projectors is Hermitian")
    }

    fn cross_sector_deviation(&self) -> f64 {
        let flat: Vec<StateVector> = self.transfer_family.iter().flatten().cloned().collect();
        gram_deviation(&flat)
    }
}

/// Residuals of every spec invariant plus the measurement-condition verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    /// `|Σ_k deg_k − system_dim|`.
    pub completeness_residual: usize,
    pub eigenbasis_residual: f64,
    pub pointer_residual: f64,
    /// Worst within-sector Gram deviation of the transfer family.
    pub transfer_row_residual: f64,
    pub sector_count_matches: bool,
    /// Gram deviation of the whole transfer family, all sectors together.
    pub cross_sector_residual: f64,
    pub measurement_condition: bool,
}

pub fn validate_spec(spec: &BclSpec) -> ValidationReport {
    let flat: Vec<StateVector> = spec.system_eigenbasis.iter().flatten().cloned().collect();
    let cross_sector_residual = spec.cross_sector_deviation();
    ValidationReport {
        completeness_residual: flat.len().abs_diff(spec.system_dim()),
        eigenbasis_residual: gram_deviation(&flat),
        pointer_residual: gram_deviation(&spec.pointer_basis),
        transfer_row_residual: spec
            .transfer_family
            .iter()
            .map(|s| gram_deviation(s))
            .fold(0.0, f64::max),
        sector_count_matches: spec.pointer_basis.len() == spec.eigenvalues.len(),
        cross_sector_residual,
        measurement_condition: cross_sector_residual <= tol::INVARIANT,
    }
}

/// How the unitary is extended off the subspace `span{φ_kl ⊗ ψ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Completion {
    /// Gram–Schmidt over canonical basis vectors in index order.
    #[default]
    Canonical,
    /// Gram–Schmidt over canonical basis vectors in an order shuffled by the
    /// given seed.
    Permuted(u64),
}

impl Completion {
    fn order(self, dim: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..dim).collect();
        if let Completion::Permuted(seed) = self {
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }
        order
    }
}

pub fn build_premeasurement_unitary(spec: &BclSpec) -> Result<MatrixOperator> {
    build_premeasurement_unitary_with(spec, Completion::Canonical)
}

/// `U = Σ_i r_i d_i†` where `d` runs over `φ_kl ⊗ ψ` followed by a completion
/// of the domain and `r` over `φ′_kl ⊗ ψ_k` followed by a completion of the
/// range, both completions drawn in the same canonical order.
pub fn build_premeasurement_unitary_with(spec: &BclSpec, completion: Completion) -> Result<MatrixOperator> {
    let deviation = spec.cross_sector_deviation();
    if deviation > tol::INVARIANT {
        return Err(Error::MeasurementConditionViolated { deviation });
    }
    let ready = spec.ready_state.amplitudes();
    let mut domain = Vec::with_capacity(spec.system_dim());
    let mut range = Vec::with_capacity(spec.system_dim());
    for ((sector, transfer), pointer) in spec
        .system_eigenbasis
        .iter()
        .zip(&spec.transfer_family)
        .zip(&spec.pointer_basis)
    {
        for (phi, phi_prime) in sector.iter().zip(transfer) {
            domain.push(tensor_raw(phi.amplitudes(), ready));
            range.push(tensor_raw(phi_prime.amplitudes(), pointer.amplitudes()));
        }
    }
    let dim = spec.system_dim() * spec.apparatus_dim();
    let order = completion.order(dim);
    let domain = complete_orthonormal(domain, dim, &order)?;
    let range = complete_orthonormal(range, dim, &order)?;

    let mut u = CMatrix::zeros(dim, dim);
    for (r, d) in range.iter().zip(&domain) {
        u += r * d.adjoint();
    }
    MatrixOperator::unitary(u)
}

/// Extends an orthonormal list to a basis of `C^dim` with canonical vectors
/// taken in `order`, orthogonalized by two passes of modified Gram–Schmidt.
fn complete_orthonormal(mut vectors: Vec<RawVector>, dim: usize, order: &[usize]) -> Result<Vec<RawVector>> {
    const ACCEPT: f64 = 1e-4;
    let needed = dim - vectors.len();
    let mut found = 0;
    for &i in order {
        if vectors.len() == dim {
            break;
        }
        let mut v = RawVector::zeros(dim);
        v[i] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            for b in &vectors {
                let proj = b.dotc(&v);
                v.axpy(-proj, b, Complex64::new(1.0, 0.0));
            }
        }
        let norm = v.norm();
        if norm > ACCEPT {
            vectors.push(v.unscale(norm));
            found += 1;
        }
    }
    if vectors.len() != dim {
        return Err(Error::CompletionFailure { found, needed });
    }
    Ok(vectors)
}

/// Output of [`premeasure`].
#[derive(Debug, Clone, PartialEq)]
pub struct PremeasurementResult {
    pub unitary: MatrixOperator,
    /// `U(φ ⊗ ψ)`.
    pub final_state: StateVector,
    /// `p_k`, clipped at zero.
    pub probabilities: Vec<f64>,
    /// `Φ_k`, absent when `p_k` is below [`tol::PROBABILITY_FLOOR`].
    pub conditional_states: Vec<Option<StateVector>>,
    /// `c_kl = ⟨φ_kl|φ⟩`, grouped by sector.
    pub coefficients: Vec<Vec<Complex64>>,
}

impl PremeasurementResult {
    /// `Σ_k √p_k Φ_k ⊗ ψ_k`.
    pub fn reconstruction(&self, spec: &BclSpec) -> RawVector {
        let dim = spec.system_dim() * spec.apparatus_dim();
        let mut out = RawVector::zeros(dim);
        for ((p, phi), psi) in self
            .probabilities
            .iter()
            .zip(&self.conditional_states)
            .zip(spec.pointer_basis())
        {
            if let Some(phi) = phi {
                out += tensor(phi, psi).into_raw().scale(p.sqrt());
            }
        }
        out
    }

    /// Max amplitude deviation between the final state and
    /// [`PremeasurementResult::reconstruction`].
    pub fn reconstruction_residual(&self, spec: &BclSpec) -> f64 {
        max_abs(&(self.final_state.amplitudes() - self.reconstruction(spec)))
    }

    pub fn probability_sum(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

pub fn premeasure(spec: &BclSpec, phi: &StateVector) -> Result<PremeasurementResult> {
    premeasure_with(spec, phi, Completion::Canonical)
}

/// Evolves `φ ⊗ ψ` under the premeasurement unitary and decomposes the
/// result into outcome probabilities and conditional system states.
pub fn premeasure_with(spec: &BclSpec, phi: &StateVector, completion: Completion) -> Result<PremeasurementResult> {
    if phi.dim() != spec.system_dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.system_dim(),
            actual: phi.dim(),
        });
    }
    let unitary = match build_premeasurement_unitary_with(spec, completion) {
        Err(Error::MeasurementConditionViolated { deviation }) => {
            return Err(Error::SpecInvalid(format!(
                "measurement condition violated (cross-sector deviation {deviation:e})"
            )))
        }
        other => other?,
    };
    let final_state = unitary.apply_state(&tensor(phi, &spec.ready_state))?;

    let mut probabilities = Vec::with_capacity(spec.sector_count());
    let mut conditional_states = Vec::with_capacity(spec.sector_count());
    let mut coefficients = Vec::with_capacity(spec.sector_count());
    for (sector, transfer) in spec.system_eigenbasis.iter().zip(&spec.transfer_family) {
        let c: Vec<Complex64> = sector.iter().map(|b| b.inner(phi)).collect();
        let v = transfer
            .iter()
            .zip(&c)
            .fold(RawVector::zeros(spec.system_dim()), |acc, (t, ck)| acc + t.amplitudes() * *ck);
        let p = v.dotc(&v).re.max(0.0);
        let conditional = if p >= tol::PROBABILITY_FLOOR {
            Some(StateVector::new(v.unscale(p.sqrt()))?)
        } else {
            None
        };
        probabilities.push(p);
        conditional_states.push(conditional);
        coefficients.push(c);
    }

    Ok(PremeasurementResult {
        unitary,
        final_state,
        probabilities,
        conditional_states,
        coefficients,
    })
}

/// `tr_S |U(φ⊗ψ)⟩⟨U(φ⊗ψ)|`.
pub fn apparatus_marginal(result: &PremeasurementResult, spec: &BclSpec) -> Result<DensityMatrix> {
    partial_trace(&outer(&result.final_state), &spec.space(), 1)
}

/// `Σ_k p_k |ψ_k⟩⟨ψ_k|`.
pub fn pointer_mixture(probabilities: &[f64], pointer_basis: &[StateVector]) -> Result<DensityMatrix> {
    DensityMatrix::mixture(probabilities, pointer_basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{max_abs_deviation, trace_distance};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn qubit() -> BclSpec {
        BclSpec::canonical(vec![1.0, -1.0], &[1, 1]).unwrap()
    }

    #[test]
    fn canonical_spec_satisfies_measurement_condition() {
        let r = validate_spec(&qubit());
        assert!(r.measurement_condition);
        assert_eq!(r.completeness_residual, 0);
        assert_eq!(r.eigenbasis_residual, 0.0);
        assert!(r.sector_count_matches);
    }

    #[test]
    fn shared_transfer_vector_breaks_measurement_condition() {
        let e0 = StateVector::basis(2, 0);
        let spec = qubit().with_transfer_family(vec![vec![e0.clone()], vec![e0]]).unwrap();
        let r = validate_spec(&spec);
        assert!(r.transfer_row_residual <= tol::INVARIANT);
        assert!(!r.measurement_condition);
        assert!((r.cross_sector_residual - 1.0).abs() < 1e-15);
        assert!(matches!(
            build_premeasurement_unitary(&spec),
            Err(Error::MeasurementConditionViolated { .. })
        ));
        assert!(matches!(
            premeasure(&spec, &StateVector::basis(2, 0)),
            Err(Error::SpecInvalid(_))
        ));
    }

    #[test]
    fn spec_construction_rejects_bad_inputs() {
        let e = |i| StateVector::basis(2, i);
        // repeated eigenvalue
        assert!(BclSpec::canonical(vec![1.0, 1.0], &[1, 1]).is_err());
        // incomplete eigenbasis
        assert!(BclSpec::new(vec![1.0], vec![vec![e(0)]], vec![e(0)], e(0), vec![vec![e(0)]]).is_err());
        // non-orthonormal within-sector transfer family
        let plus = StateVector::from_reals(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        assert!(matches!(
            BclSpec::new(vec![1.0], vec![vec![e(0), e(1)]], vec![e(0)], e(0), vec![vec![e(0), plus]]),
            Err(Error::BasisNotOrthonormal { .. })
        ));
        // pointer count differs from sector count
        assert!(BclSpec::new(
            vec![1.0, 2.0],
            vec![vec![e(0)], vec![e(1)]],
            vec![e(0)],
            e(0),
            vec![vec![e(0)], vec![e(1)]]
        )
        .is_err());
    }

    #[test]
    fn qubit_unitary_maps_eigenstates_to_pointers() {
        let spec = qubit();
        let u = build_premeasurement_unitary(&spec).unwrap();
        assert!(u.unitarity_deviation() < 1e-12);
        for k in 0..2 {
            let input = tensor(&StateVector::basis(2, k), spec.ready_state());
            let out = u.apply(input.amplitudes()).unwrap();
            let expected = tensor(&StateVector::basis(2, k), &spec.pointer_basis()[k]);
            assert!(max_abs(&(out - expected.amplitudes())) < 1e-12);
        }
    }

    #[test]
    fn eigenstate_premeasurement() {
        let spec = qubit();
        let r = premeasure(&spec, &StateVector::basis(2, 0)).unwrap();
        assert_eq!(r.probabilities, vec![1.0, 0.0]);
        assert!(r.conditional_states[1].is_none());
        assert_eq!(r.conditional_states[0].as_ref().unwrap(), &StateVector::basis(2, 0));
        let marginal = apparatus_marginal(&r, &spec).unwrap();
        assert!(max_abs_deviation(marginal.entries(), outer(&spec.pointer_basis()[0]).entries()) < 1e-15);
    }

    #[test]
    fn superposition_gives_bell_type_state() {
        let spec = qubit();
        let phi = StateVector::from_reals(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        let r = premeasure(&spec, &phi).unwrap();
        for p in &r.probabilities {
            assert!((p - 0.5).abs() < 1e-15);
        }
        let bell = [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2];
        for (a, b) in r.final_state.amplitudes().iter().zip(bell) {
            assert!((a - Complex64::new(b, 0.0)).norm() < 1e-12);
        }
        assert!(r.reconstruction_residual(&spec) < 1e-12);
        let marginal = apparatus_marginal(&r, &spec).unwrap();
        let mixture = pointer_mixture(&r.probabilities, spec.pointer_basis()).unwrap();
        assert!(trace_distance(&marginal, &mixture).unwrap() < 1e-12);
        assert!(max_abs_deviation(marginal.entries(), &CMatrix::identity(2, 2).unscale(2.0)) < 1e-12);
    }

    #[test]
    fn observable_reconstruction() {
        let spec = BclSpec::canonical(vec![3.0, -1.0], &[2, 1]).unwrap();
        let o = spec.observable();
        let expected = MatrixOperator::diagonal(&[3.0, 3.0, -1.0]);
        assert_eq!(o.entries(), expected.entries());
    }

    #[test]
    fn completion_rejects_overfull_request() {
        let dim = 2;
        let vecs = vec![RawVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])];
        // an order that never visits index 1 cannot complete the basis
        assert!(matches!(
            complete_orthonormal(vecs, dim, &[0]),
            Err(Error::CompletionFailure { found: 0, needed: 1 })
        ));
    }

    #[test]
    fn permuted_completion_changes_unitary_but_not_subspace_action() {
        let mut rng = <ChaCha8Rng as SeedableRng>::seed_from_u64(5);
        let spec = crate::sample::random_spec(&mut rng, &[2, 1]).unwrap();
        let a = build_premeasurement_unitary_with(&spec, Completion::Canonical).unwrap();
        let b = build_premeasurement_unitary_with(&spec, Completion::Permuted(99)).unwrap();
        assert!(max_abs_deviation(a.entries(), b.entries()) > 1e-3);
        for sector in spec.system_eigenbasis() {
            for v in sector {
                let input = tensor(v, spec.ready_state());
                let ua = a.apply(input.amplitudes()).unwrap();
                let ub = b.apply(input.amplitudes()).unwrap();
                assert!(max_abs(&(ua - ub)) < 1e-12);
            }
        }
    }
}
