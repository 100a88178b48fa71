use gemenge_core::bcl::{
    apparatus_marginal, build_premeasurement_unitary, premeasure, premeasure_with, pointer_mixture, Completion,
};
use gemenge_core::hilbert::{
    coefficients_of, max_abs, max_abs_deviation, outer, partial_trace, reconstruct, tensor, tensor_op,
    trace_distance, von_neumann_entropy, CMatrix, DensityMatrix, MatrixOperator, ProductSpace, StateVector,
};
use gemenge_core::objectification::{
    apply_rule2, dephase_pointer_blocks, gemenge_density_matrix, pointer_block_coherence,
};
use gemenge_core::particles::{
    expectation_single, expectation_two_particle, gaussian_packet, support, symmetrize, symmetrized_observable,
    ExchangeSymmetry, KernelOperator, LatticeGrid,
};
use gemenge_core::sample::{random_density_matrix, random_hermitian, random_spec, random_state, random_unitary};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn degeneracies() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=3, 1..=4).prop_filter("system dim at most 6", |d| d.iter().sum::<usize>() <= 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_preserves_norm(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = tensor(&random_state(&mut r, 3), &random_state(&mut r, 4));
        prop_assert_eq!(w.dim(), 12);
        prop_assert!((w.amplitudes().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tensor_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (u, v, w) = (random_state(&mut r, 2), random_state(&mut r, 3), random_state(&mut r, 2));
        let left = tensor(&tensor(&u, &v), &w);
        let right = tensor(&u, &tensor(&v, &w));
        prop_assert!(max_abs(&(left.amplitudes() - right.amplitudes())) < 1e-12);
    }

    #[test]
    fn kronecker_matches_tensor(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_unitary(&mut r, 2);
        let n = random_hermitian(&mut r, 3);
        let (u, v) = (random_state(&mut r, 2), random_state(&mut r, 3));
        let lhs = tensor_op(&m, &n).apply(tensor(&u, &v).amplitudes()).unwrap();
        let mu = m.apply(u.amplitudes()).unwrap();
        let nv = n.apply(v.amplitudes()).unwrap();
        let rhs = gemenge_core::hilbert::tensor_raw(&mu, &nv);
        prop_assert!(max_abs(&(lhs - rhs)) < 1e-12);
    }

    #[test]
    fn partial_trace_of_product_pure_state(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (u, v) = (random_state(&mut r, 3), random_state(&mut r, 2));
        let space = ProductSpace::bipartite(3, 2).unwrap();
        let rho = outer(&tensor(&u, &v));
        let kept = partial_trace(&rho, &space, 1).unwrap();
        prop_assert!(max_abs_deviation(kept.entries(), outer(&v).entries()) < 1e-12);
        let kept = partial_trace(&rho, &space, 0).unwrap();
        prop_assert!(max_abs_deviation(kept.entries(), outer(&u).entries()) < 1e-12);
    }

    #[test]
    fn partial_trace_of_mixed_product(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho_s = random_density_matrix(&mut r, 2);
        let rho_a = random_density_matrix(&mut r, 3);
        let joint = DensityMatrix::new(rho_s.entries().kronecker(rho_a.entries())).unwrap();
        let space = ProductSpace::bipartite(2, 3).unwrap();
        let kept = partial_trace(&joint, &space, 1).unwrap();
        prop_assert!(max_abs_deviation(kept.entries(), rho_a.entries()) < 1e-12);
        prop_assert!((kept.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_is_unitarily_invariant(seed in any::<u64>(), dim in 2usize..6) {
        let mut r = rng(seed);
        let rho = random_density_matrix(&mut r, dim);
        let u = random_unitary(&mut r, dim);
        let rotated = u.conjugate(&rho).unwrap();
        prop_assert!((von_neumann_entropy(&rotated) - von_neumann_entropy(&rho)).abs() < 1e-9);
        prop_assert!(von_neumann_entropy(&rho) >= 0.0);
    }

    #[test]
    fn outer_has_unit_trace_and_is_idempotent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = outer(&random_state(&mut r, 5));
        prop_assert!((p.trace() - 1.0).abs() < 1e-12);
        let sq = p.entries() * p.entries();
        prop_assert!(max_abs_deviation(&sq, p.entries()) < 1e-10);
    }

    #[test]
    fn coefficients_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = random_unitary(&mut r, 4);
        let basis: Vec<StateVector> = (0..4)
            .map(|j| StateVector::new(u.entries().column(j).into_owned()).unwrap())
            .collect();
        let phi = random_state(&mut r, 4);
        let c = coefficients_of(&phi, &basis).unwrap();
        prop_assert!((c.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-10);
        prop_assert!(max_abs(&(reconstruct(&c, &basis) - phi.amplitudes())) < 1e-12);
    }

    #[test]
    fn coefficients_on_partial_basis_project(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = random_unitary(&mut r, 4);
        let basis: Vec<StateVector> = (0..2)
            .map(|j| StateVector::new(u.entries().column(j).into_owned()).unwrap())
            .collect();
        // a vector in span(basis) reconstructs exactly
        let inside = StateVector::normalize(reconstruct(&[random_state(&mut r, 2).amplitudes()[0], random_state(&mut r, 2).amplitudes()[1]], &basis)).unwrap();
        let c = coefficients_of(&inside, &basis).unwrap();
        prop_assert!(max_abs(&(reconstruct(&c, &basis) - inside.amplitudes())) < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn discrepancy_theorem_for_random_kernels(seed in any::<u64>(), fermion in any::<bool>(), c1 in -12.0f64..-8.0, c2 in 8.0f64..12.0) {
        let grid = LatticeGrid::spanning(-20.0, 20.0, 128).unwrap();
        let mut r = rng(seed);
        let h = random_hermitian(&mut r, 128);
        let a = KernelOperator::hermitian(grid, h.into_entries()).unwrap();
        let psi = gaussian_packet(grid, c1, 1.0).unwrap();
        let phi = gaussian_packet(grid, c2, 1.0).unwrap();
        prop_assume!(psi.inner(&phi).unwrap().norm() < 1e-12);
        let sym = if fermion { ExchangeSymmetry::Fermion } else { ExchangeSymmetry::Boson };
        let state = symmetrize(&psi, &phi, sym).unwrap();
        let two = expectation_two_particle(&symmetrized_observable(&a), &state).unwrap();
        let single = expectation_single(&a, &psi).unwrap() + expectation_single(&a, &phi).unwrap();
        prop_assert!((two - single).norm() < 1e-6, "{} vs {}", two, single);
        prop_assert!(expectation_single(&a, &psi).unwrap().im.abs() < 1e-10);
    }

    #[test]
    fn nu_for_orthogonal_packets(c1 in -15.0f64..-9.0, c2 in 9.0f64..15.0, w in 0.6f64..1.2) {
        let grid = LatticeGrid::spanning(-20.0, 20.0, 256).unwrap();
        let psi = gaussian_packet(grid, c1, w).unwrap();
        let phi = gaussian_packet(grid, c2, w).unwrap();
        prop_assume!(psi.inner(&phi).unwrap().norm() < 1e-10);
        for sym in [ExchangeSymmetry::Boson, ExchangeSymmetry::Fermion] {
            let s = symmetrize(&psi, &phi, sym).unwrap();
            prop_assert!((s.normalization() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-8);
        }
    }

    #[test]
    fn gaussian_is_normalized(center in -5.0f64..5.0, width in 0.3f64..2.0) {
        let grid = LatticeGrid::spanning(-20.0, 20.0, 512).unwrap();
        let psi = gaussian_packet(grid, center, width).unwrap();
        let mass: f64 = psi.probabilities().iter().sum();
        prop_assert!((mass - 1.0).abs() < 1e-8);
        prop_assert!((psi.mean_position() - center).abs() < 1e-6);
    }

    #[test]
    fn support_shrinks_as_epsilon_grows(center in -5.0f64..5.0, width in 0.5f64..2.0) {
        let grid = LatticeGrid::spanning(-20.0, 20.0, 512).unwrap();
        let psi = gaussian_packet(grid, center, width).unwrap();
        let ladder = [1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2, 0.1, 0.5];
        let lengths: Vec<usize> = ladder.iter().map(|&e| support(&psi, e).unwrap().len()).collect();
        for pair in lengths.windows(2) {
            prop_assert!(pair[1] <= pair[0], "{:?}", lengths);
        }
        for &e in &ladder {
            let d = support(&psi, e).unwrap();
            prop_assert!(psi.mass_in(&d) >= (1.0 - e) * psi.probabilities().iter().sum::<f64>() - 1e-15);
        }
    }

    #[test]
    fn premeasurement_invariants(seed in any::<u64>(), degs in degeneracies()) {
        let mut r = rng(seed);
        let spec = random_spec(&mut r, &degs).unwrap();
        let u = build_premeasurement_unitary(&spec).unwrap();
        let id = CMatrix::identity(u.dim(), u.dim());
        prop_assert!(max_abs_deviation(&(u.entries().adjoint() * u.entries()), &id) < 1e-10);
        prop_assert!(max_abs_deviation(&(u.entries() * u.entries().adjoint()), &id) < 1e-10);

        let phi = random_state(&mut r, spec.system_dim());
        let res = premeasure(&spec, &phi).unwrap();
        prop_assert!((res.probability_sum() - 1.0).abs() < 1e-10);
        prop_assert!(res.reconstruction_residual(&spec) < 1e-10);
        for (k, sector) in spec.system_eigenbasis().iter().enumerate() {
            let direct: f64 = sector.iter().map(|b| b.inner(&phi).norm_sqr()).sum();
            prop_assert!((res.probabilities[k] - direct).abs() < 1e-12);
        }

        // Schmidt property: conditional states are orthonormal
        let present: Vec<&StateVector> = res.conditional_states.iter().flatten().collect();
        for (i, a) in present.iter().enumerate() {
            for (j, b) in present.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                prop_assert!((a.inner(b).norm() - target).abs() < 1e-10);
            }
        }
        let system = partial_trace(&outer(&res.final_state), &spec.space(), 0).unwrap();
        let shannon: f64 = res.probabilities.iter().filter(|&&p| p > 0.0).map(|p| -p * p.ln()).sum();
        prop_assert!((von_neumann_entropy(&system) - shannon).abs() < 1e-8);

        // determinism and completion independence
        let again = premeasure(&spec, &phi).unwrap();
        prop_assert_eq!(&again, &res);
        let other = premeasure_with(&spec, &phi, Completion::Permuted(seed ^ 0x5eed)).unwrap();
        prop_assert_eq!(&other.probabilities, &res.probabilities);
        prop_assert_eq!(&other.conditional_states, &res.conditional_states);
        prop_assert!(max_abs(&(other.final_state.amplitudes() - res.final_state.amplitudes())) < 1e-10);

        let marginal = apparatus_marginal(&res, &spec).unwrap();
        let mixture = pointer_mixture(&res.probabilities, spec.pointer_basis()).unwrap();
        prop_assert!(trace_distance(&marginal, &mixture).unwrap() < 1e-10);
    }

    #[test]
    fn objectification_invariants(seed in any::<u64>(), degs in degeneracies()) {
        let mut r = rng(seed);
        let spec = random_spec(&mut r, &degs).unwrap();
        let phi = random_state(&mut r, spec.system_dim());
        let res = premeasure(&spec, &phi).unwrap();
        let g = apply_rule2(&res, &spec).unwrap();
        let space = spec.space();
        let unitary = outer(&res.final_state);
        let rule2 = gemenge_density_matrix(&g, &space).unwrap();
        prop_assert!((rule2.trace() - 1.0).abs() < 1e-12);

        for keep in 0..2 {
            let a = partial_trace(&unitary, &space, keep).unwrap();
            let b = partial_trace(&rule2, &space, keep).unwrap();
            prop_assert!(trace_distance(&a, &b).unwrap() < 1e-10);
        }
        let mixture = pointer_mixture(&res.probabilities, spec.pointer_basis()).unwrap();
        let app = partial_trace(&rule2, &space, 1).unwrap();
        prop_assert!(max_abs_deviation(app.entries(), mixture.entries()) < 1e-12);

        // witnesses diagonal in the pointer basis cannot tell the states apart
        let mut w = CMatrix::zeros(space.dim(), space.dim());
        for psi in spec.pointer_basis() {
            let m = random_hermitian(&mut r, spec.system_dim());
            w += m.entries().kronecker(outer(psi).entries());
        }
        let w = MatrixOperator::hermitian(w).unwrap();
        let eu = unitary.expectation(&w).unwrap();
        let er = rule2.expectation(&w).unwrap();
        prop_assert!((eu - er).norm() < 1e-10);

        prop_assert!(von_neumann_entropy(&unitary).abs() < 1e-8);
        prop_assert!((von_neumann_entropy(&rule2) - g.shannon_entropy()).abs() < 1e-8);

        let again = dephase_pointer_blocks(&rule2, spec.pointer_basis(), &space).unwrap();
        prop_assert!(max_abs_deviation(again.entries(), rule2.entries()) < 1e-12);
        prop_assert!(pointer_block_coherence(&rule2, spec.pointer_basis(), &space).unwrap() < 1e-14);

        let significant = res.probabilities.iter().filter(|&&p| p >= 1e-12).count();
        prop_assert_eq!(g.is_pure(), significant == 1);
        prop_assert_eq!(rule2.purity() > 1.0 - 1e-10, significant == 1);
        let passed: Vec<f64> = g.probabilities();
        let expected: Vec<f64> = res.probabilities.iter().copied().filter(|&p| p >= 1e-12).collect();
        prop_assert_eq!(passed, expected);
    }

    #[test]
    fn eigenstate_inputs_are_pure_after_objectification(seed in any::<u64>(), degs in degeneracies()) {
        let mut r = rng(seed);
        let spec = random_spec(&mut r, &degs).unwrap();
        let phi = spec.system_eigenbasis()[0][0].clone();
        let res = premeasure(&spec, &phi).unwrap();
        let g = apply_rule2(&res, &spec).unwrap();
        prop_assert!(g.is_pure());
        let rule2 = gemenge_density_matrix(&g, &spec.space()).unwrap();
        prop_assert!(max_abs_deviation(rule2.entries(), outer(&res.final_state).entries()) < 1e-10);
    }
}
