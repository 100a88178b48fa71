//! Objectification: from the entangled premeasurement state to a gemenge.
//!
//! After premeasurement the composite state is the pure vector
//! `Σ_k √p_k Φ_k ⊗ ψ_k`. The objectification map replaces it with the proper
//! mixture `Σ_k p_k |Φ_k⟩⟨Φ_k| ⊗ |ψ_k⟩⟨ψ_k|`, keeping the decomposition itself
//! and not only its density matrix. The map is deterministic and non-unitary:
//! it keeps the pointer-diagonal blocks and drops every coherence between
//! distinct pointer states.
//!
//! [`compare_states`] measures the difference between the two states: both
//! marginals agree, observables diagonal in the pointer basis agree, while
//! pointer-block coherence, off-diagonal witnesses and entropy do not.

use num_complex::Complex64;

use crate::bcl::{validate_spec, BclSpec, PremeasurementResult};
use crate::error::{Error, Result};
use crate::hilbert::{
    gram_deviation, outer, outer_raw, partial_trace, tensor_op, trace_distance, von_neumann_entropy, CMatrix,
    DensityMatrix, MatrixOperator, ProductSpace, StateVector,
};
use crate::tol;

#[derive(Debug, Clone, PartialEq)]
pub struct GemengeComponent {
    pub probability: f64,
    pub system_state: StateVector,
    pub pointer_state: StateVector,
}

/// The components `(p_k, Φ_k, ψ_k)` of the objectified state.
#[derive(Debug, Clone, PartialEq)]
pub struct GemengeDecomposition {
    components: Vec<GemengeComponent>,
}

impl GemengeDecomposition {
    /// Checks that the probabilities sum to one and that both the system and
    /// the pointer states are orthonormal families.
    pub fn new(components: Vec<GemengeComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::SpecInvalid("gemenge needs at least one component".into()));
        }
        if let Some(c) = components.iter().find(|c| !(c.probability >= 0.0)) {
            return Err(Error::SpecInvalid(format!("negative probability {}", c.probability)));
        }
        let total: f64 = components.iter().map(|c| c.probability).sum();
        if (total - 1.0).abs() > tol::INVARIANT {
            return Err(Error::InvalidTrace { trace: total });
        }
        let systems: Vec<StateVector> = components.iter().map(|c| c.system_state.clone()).collect();
        let pointers: Vec<StateVector> = components.iter().map(|c| c.pointer_state.clone()).collect();
        for family in [&systems, &pointers] {
            if family.iter().any(|s| s.dim() != family[0].dim()) {
                return Err(Error::DimensionMismatch {
                    expected: family[0].dim(),
                    actual: family.iter().map(StateVector::dim).find(|&d| d != family[0].dim()).unwrap_or(0),
                });
            }
            let deviation = gram_deviation(family);
            if deviation > tol::INVARIANT {
                return Err(Error::BasisNotOrthonormal { deviation });
            }
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[GemengeComponent] {
        &self.components
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.components.iter().map(|c| c.probability).collect()
    }

    /// A gemenge is a pure state exactly when it has a single component.
    pub fn is_pure(&self) -> bool {
        self.components.len() == 1
    }

    /// `−Σ_k p_k ln p_k`.
    pub fn shannon_entropy(&self) -> f64 {
        self.components
            .iter()
            .filter(|c| c.probability > 0.0)
            .map(|c| -c.probability * c.probability.ln())
            .sum()
    }
}

/// The objectification map. Keeps every outcome with `p_k` at or above
/// [`tol::PROBABILITY_FLOOR`]; probabilities pass through unchanged.
///
/// Refuses specs that violate the measurement condition, since the
/// conditional states are then not orthonormal.
pub fn apply_rule2(result: &PremeasurementResult, spec: &BclSpec) -> Result<GemengeDecomposition> {
    let report = validate_spec(spec);
    if !report.measurement_condition {
        return Err(Error::MeasurementConditionViolated {
            deviation: report.cross_sector_residual,
        });
    }
    if result.probabilities.len() != spec.sector_count() || result.conditional_states.len() != spec.sector_count() {
        return Err(Error::DimensionMismatch {
            expected: spec.sector_count(),
            actual: result.probabilities.len(),
        });
    }
    let components = result
        .probabilities
        .iter()
        .zip(&result.conditional_states)
        .zip(spec.pointer_basis())
        .filter(|((p, _), _)| **p >= tol::PROBABILITY_FLOOR)
        .filter_map(|((p, phi), psi)| {
            phi.as_ref().map(|phi| GemengeComponent {
                probability: *p,
                system_state: phi.clone(),
                pointer_state: psi.clone(),
            })
        })
        .collect();
    GemengeDecomposition::new(components)
}

/// `Σ_k p_k |Φ_k⟩⟨Φ_k| ⊗ |ψ_k⟩⟨ψ_k|`.
pub fn gemenge_density_matrix(g: &GemengeDecomposition, space: &ProductSpace) -> Result<DensityMatrix> {
    let dims = space.factor_dims();
    let first = &g.components[0];
    if dims.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: dims.len(),
        });
    }
    for (expected, actual) in [(dims[0], first.system_state.dim()), (dims[1], first.pointer_state.dim())] {
        if expected != actual {
            return Err(Error::DimensionMismatch { expected, actual });
        }
    }
    let n = space.dim();
    let mut m = CMatrix::zeros(n, n);
    for c in &g.components {
        let block = outer_raw(c.system_state.amplitudes()).kronecker(&outer_raw(c.pointer_state.amplitudes()));
        m += block.scale(c.probability);
    }
    Ok(DensityMatrix::new_unchecked(m))
}

/// Frobenius norm of `Σ_{k≠j} (I⊗|ψ_k⟩⟨ψ_k|) ρ (I⊗|ψ_j⟩⟨ψ_j|)`, the coherence
/// between distinct pointer sectors. Zero iff `ρ` is block diagonal in the
/// pointer basis.
pub fn pointer_block_coherence(rho: &DensityMatrix, pointer_basis: &[StateVector], space: &ProductSpace) -> Result<f64> {
    let blocks = pointer_blocks(rho, pointer_basis, space)?;
    let (ds, k) = (space.factor_dims()[0], pointer_basis.len());
    let mut sum = 0.0;
    for r in 0..ds * k {
        for c in 0..ds * k {
            if r % k != c % k {
                sum += blocks[(r, c)].norm_sqr();
            }
        }
    }
    Ok(sum.sqrt())
}

/// `Σ_k (I⊗|ψ_k⟩⟨ψ_k|) ρ (I⊗|ψ_k⟩⟨ψ_k|)`: the pointer-diagonal part of `ρ`.
/// Acts as the identity on any objectified state.
pub fn dephase_pointer_blocks(
    rho: &DensityMatrix,
    pointer_basis: &[StateVector],
    space: &ProductSpace,
) -> Result<DensityMatrix> {
    let blocks = pointer_blocks(rho, pointer_basis, space)?;
    let (ds, k) = (space.factor_dims()[0], pointer_basis.len());
    let kept = CMatrix::from_fn(ds * k, ds * k, |r, c| {
        if r % k == c % k {
            blocks[(r, c)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let w = pointer_isometry(pointer_basis, space);
    DensityMatrix::new(w.adjoint() * kept * w)
}

/// `(I ⊗ Ψ†) ρ (I ⊗ Ψ)` where the columns of `Ψ` are the pointer states; entry
/// `(s·K + k, s′·K + j)` is the `(k, j)` pointer block at system indices
/// `(s, s′)`.
fn pointer_blocks(rho: &DensityMatrix, pointer_basis: &[StateVector], space: &ProductSpace) -> Result<CMatrix> {
    let dims = space.factor_dims();
    if dims.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: dims.len(),
        });
    }
    if rho.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            actual: rho.dim(),
        });
    }
    if pointer_basis.is_empty() {
        return Err(Error::SpecInvalid("empty pointer basis".into()));
    }
    if let Some(p) = pointer_basis.iter().find(|p| p.dim() != dims[1]) {
        return Err(Error::DimensionMismatch {
            expected: dims[1],
            actual: p.dim(),
        });
    }
    let deviation = gram_deviation(pointer_basis);
    if deviation > tol::INVARIANT {
        return Err(Error::BasisNotOrthonormal { deviation });
    }
    let w = pointer_isometry(pointer_basis, space);
    Ok(&w * rho.entries() * w.adjoint())
}

/// `I ⊗ Ψ†`, shape `(ds·K) × (ds·da)`.
fn pointer_isometry(pointer_basis: &[StateVector], space: &ProductSpace) -> CMatrix {
    let (ds, da) = (space.factor_dims()[0], space.factor_dims()[1]);
    let k = pointer_basis.len();
    let psi_adj = CMatrix::from_fn(k, da, |r, c| pointer_basis[r].amplitudes()[c].conj());
    CMatrix::identity(ds, ds).kronecker(&psi_adj)
}

/// Diagnostics comparing the unitary final state with its objectified
/// counterpart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    /// Pointer-block coherence of `|U(φ⊗ψ)⟩⟨U(φ⊗ψ)|`.
    pub pointer_block_coherence_norm: f64,
    /// Pointer-block coherence of the gemenge state; zero up to rounding.
    pub pointer_block_coherence_rule2: f64,
    /// Trace distance of the system marginals.
    pub marginal_agreement_system: f64,
    /// Trace distance of the apparatus marginals.
    pub marginal_agreement_apparatus: f64,
    pub witness_expectation_unitary: f64,
    pub witness_expectation_rule2: f64,
    pub entropy_unitary_state: f64,
    pub entropy_rule2_state: f64,
}

impl CorrelationReport {
    /// `S(gemenge) − S(unitary state)`, in nats.
    pub fn entropy_gap(&self) -> f64 {
        self.entropy_rule2_state - self.entropy_unitary_state
    }
}

pub fn compare_states(
    result: &PremeasurementResult,
    g: &GemengeDecomposition,
    spec: &BclSpec,
    witness: &MatrixOperator,
) -> Result<CorrelationReport> {
    let space = spec.space();
    let deviation = witness.hermiticity_deviation();
    if deviation > tol::INVARIANT {
        return Err(Error::NotHermitian { deviation });
    }
    let unitary_state = outer(&result.final_state);
    let rule2_state = gemenge_density_matrix(g, &space)?;

    let marginal_distance = |keep: usize| -> Result<f64> {
        trace_distance(
            &partial_trace(&unitary_state, &space, keep)?,
            &partial_trace(&rule2_state, &space, keep)?,
        )
    };

    Ok(CorrelationReport {
        pointer_block_coherence_norm: pointer_block_coherence(&unitary_state, spec.pointer_basis(), &space)?,
        pointer_block_coherence_rule2: pointer_block_coherence(&rule2_state, spec.pointer_basis(), &space)?,
        marginal_agreement_system: marginal_distance(0)?,
        marginal_agreement_apparatus: marginal_distance(1)?,
        witness_expectation_unitary: unitary_state.expectation(witness)?.re,
        witness_expectation_rule2: rule2_state.expectation(witness)?.re,
        entropy_unitary_state: von_neumann_entropy(&unitary_state),
        entropy_rule2_state: von_neumann_entropy(&rule2_state),
    })
}

/// `X_S ⊗ X_A` with `X_S = |φ′_a⟩⟨φ′_b| + h.c.` built from the first transfer
/// vector of sectors `a` and `b`, and `X_A = |ψ_a⟩⟨ψ_b| + h.c.`. For a qubit
/// with canonical bases this is `σ_x ⊗ σ_x`.
///
/// It is off-diagonal in the pointer basis, so its expectation vanishes on
/// every objectified state.
pub fn sector_coherence_witness(spec: &BclSpec, a: usize, b: usize) -> Result<MatrixOperator> {
    let sectors = spec.sector_count();
    if a >= sectors || b >= sectors || a == b {
        return Err(Error::SpecInvalid(format!(
            "witness needs two distinct sectors below {sectors}, got ({a}, {b})"
        )));
    }
    let flip = |u: &StateVector, v: &StateVector| {
        let m = u.amplitudes() * v.amplitudes().adjoint();
        MatrixOperator::hermitian(&m + m.adjoint()).expect("m + m† is Hermitian")
    };
    let transfer = spec.transfer_family();
    let pointer = spec.pointer_basis();
    Ok(tensor_op(
        &flip(&transfer[a][0], &transfer[b][0]),
        &flip(&pointer[a], &pointer[b]),
    ))
}

/// `σ_x ⊗ σ_x` in the sector/pointer convention of
/// [`sector_coherence_witness`] for the first two sectors.
pub fn sigma_x_witness(spec: &BclSpec) -> Result<MatrixOperator> {
    sector_coherence_witness(spec, 0, 1)
}

/// `O ⊗ I`: commutes with the objectification map.
pub fn observable_witness(spec: &BclSpec) -> MatrixOperator {
    tensor_op(&spec.observable(), &MatrixOperator::identity(spec.apparatus_dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bcl::premeasure;
    use crate::hilbert::{max_abs_deviation, tensor};
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

    fn qubit() -> BclSpec {
        BclSpec::canonical(vec![1.0, -1.0], &[1, 1]).unwrap()
    }

    fn superposition() -> StateVector {
        StateVector::from_reals(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap()
    }

    #[test]
    fn eigenstate_has_nothing_to_erase() {
        let spec = qubit();
        let r = premeasure(&spec, &StateVector::basis(2, 0)).unwrap();
        let g = apply_rule2(&r, &spec).unwrap();
        assert!(g.is_pure());
        let c = &g.components()[0];
        assert_eq!(c.probability, 1.0);
        assert_eq!(&c.system_state, &spec.transfer_family()[0][0]);
        assert_eq!(&c.pointer_state, &spec.pointer_basis()[0]);
        let rho = gemenge_density_matrix(&g, &spec.space()).unwrap();
        assert_eq!(rho.entries(), outer(&r.final_state).entries());

        let report = compare_states(&r, &g, &spec, &sigma_x_witness(&spec).unwrap()).unwrap();
        assert!(report.pointer_block_coherence_norm < 1e-10);
        assert!(report.marginal_agreement_system < 1e-10);
        assert!(report.marginal_agreement_apparatus < 1e-10);
        assert!(report.entropy_unitary_state.abs() < 1e-10);
        assert!(report.entropy_rule2_state.abs() < 1e-10);
    }

    #[test]
    fn bell_type_case() {
        let spec = qubit();
        let r = premeasure(&spec, &superposition()).unwrap();
        let g = apply_rule2(&r, &spec).unwrap();
        assert_eq!(g.components().len(), 2);
        for (k, c) in g.components().iter().enumerate() {
            assert!((c.probability - 0.5).abs() < 1e-15);
            assert_eq!(&c.system_state, &StateVector::basis(2, k));
            assert_eq!(&c.pointer_state, &StateVector::basis(2, k));
        }
        let rho = gemenge_density_matrix(&g, &spec.space()).unwrap();
        let ev = rho.eigenvalues();
        assert!(ev[..2].iter().all(|l| l.abs() < 1e-12));
        assert!(ev[2..].iter().all(|l| (l - 0.5).abs() < 1e-12));
        assert!((von_neumann_entropy(&rho) - LN_2).abs() < 1e-12);

        let coherence = pointer_block_coherence(&outer(&r.final_state), spec.pointer_basis(), &spec.space()).unwrap();
        assert!((coherence - FRAC_1_SQRT_2).abs() < 1e-10);
        assert_eq!(pointer_block_coherence(&rho, spec.pointer_basis(), &spec.space()).unwrap(), 0.0);

        let report = compare_states(&r, &g, &spec, &sigma_x_witness(&spec).unwrap()).unwrap();
        assert!((report.witness_expectation_unitary - 1.0).abs() < 1e-10);
        assert!(report.witness_expectation_rule2.abs() < 1e-10);
        assert!((report.entropy_gap() - LN_2).abs() < 1e-8);

        let report = compare_states(&r, &g, &spec, &observable_witness(&spec)).unwrap();
        assert!((report.witness_expectation_unitary - report.witness_expectation_rule2).abs() < 1e-10);
    }

    #[test]
    fn sigma_x_witness_is_pauli_product_for_canonical_qubit() {
        let w = sigma_x_witness(&qubit()).unwrap();
        let xx = tensor_op(&MatrixOperator::pauli_x(), &MatrixOperator::pauli_x());
        assert_eq!(w.entries(), xx.entries());
    }

    #[test]
    fn product_state_has_no_pointer_coherence() {
        let space = ProductSpace::bipartite(2, 2).unwrap();
        let pointer: Vec<_> = (0..2).map(|k| StateVector::basis(2, k)).collect();
        let sys = StateVector::from_reals(&[0.6, 0.8]).unwrap();
        let rho = outer(&tensor(&sys, &pointer[0]));
        assert_eq!(pointer_block_coherence(&rho, &pointer, &space).unwrap(), 0.0);
    }

    #[test]
    fn dephasing_objectified_state_is_identity() {
        let spec = qubit();
        let r = premeasure(&spec, &superposition()).unwrap();
        let g = apply_rule2(&r, &spec).unwrap();
        let rho = gemenge_density_matrix(&g, &spec.space()).unwrap();
        let again = dephase_pointer_blocks(&rho, spec.pointer_basis(), &spec.space()).unwrap();
        assert!(max_abs_deviation(rho.entries(), again.entries()) < 1e-12);
        let dephased = dephase_pointer_blocks(&outer(&r.final_state), spec.pointer_basis(), &spec.space()).unwrap();
        assert!(max_abs_deviation(rho.entries(), dephased.entries()) < 1e-12);
    }

    #[test]
    fn decomposition_validation() {
        let e = |i| StateVector::basis(2, i);
        let comp = |p, s, a| GemengeComponent {
            probability: p,
            system_state: e(s),
            pointer_state: e(a),
        };
        assert!(GemengeDecomposition::new(vec![comp(0.5, 0, 0), comp(0.4, 1, 1)]).is_err());
        assert!(matches!(
            GemengeDecomposition::new(vec![comp(0.5, 0, 0), comp(0.5, 0, 1)]),
            Err(Error::BasisNotOrthonormal { .. })
        ));
        assert!(GemengeDecomposition::new(vec![comp(-0.5, 0, 0), comp(1.5, 1, 1)]).is_err());
        let g = GemengeDecomposition::new(vec![comp(0.25, 0, 0), comp(0.75, 1, 1)]).unwrap();
        assert!(matches!(
            gemenge_density_matrix(&g, &ProductSpace::bipartite(3, 2).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rule2_refuses_broken_measurement_condition() {
        let good = qubit();
        let r = premeasure(&good, &superposition()).unwrap();
        let e0 = StateVector::basis(2, 0);
        let bad = qubit().with_transfer_family(vec![vec![e0.clone()], vec![e0]]).unwrap();
        assert!(matches!(
            apply_rule2(&r, &bad),
            Err(Error::MeasurementConditionViolated { .. })
        ));
    }

    #[test]
    fn compare_rejects_non_hermitian_witness() {
        let spec = qubit();
        let r = premeasure(&spec, &superposition()).unwrap();
        let g = apply_rule2(&r, &spec).unwrap();
        let m = CMatrix::from_fn(4, 4, |i, j| if i == 0 && j == 1 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) });
        let w = MatrixOperator::new(m).unwrap();
        assert!(matches!(compare_states(&r, &g, &spec, &w), Err(Error::NotHermitian { .. })));
    }
}
