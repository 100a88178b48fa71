//! Seeded random states, operators and model specs.
//!
//! Everything here takes an explicit `Rng`, so callers control
//! reproducibility (tests use `ChaCha8Rng::seed_from_u64`).

use rand::Rng;
use rand_distr::StandardNormal;

use crate::bcl::BclSpec;
use crate::error::Result;
use crate::hilbert::{CMatrix, DensityMatrix, MatrixOperator, RawVector, StateVector};

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> num_complex::Complex64 {
    num_complex::Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unit vector.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> StateVector {
    loop {
        let raw = RawVector::from_fn(dim, |_, _| gaussian_complex(rng));
        if let Ok(s) = StateVector::normalize(raw) {
            return s;
        }
    }
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// `R`'s diagonal folded back into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> MatrixOperator {
    let g = CMatrix::from_fn(dim, dim, |_, _| gaussian_complex(rng));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { num_complex::Complex64::new(1.0, 0.0) };
        for z in q.column_mut(j).iter_mut() {
            *z *= phase;
        }
    }
    MatrixOperator::unitary(q).expect("QR factor of a full-rank matrix is unitary")
}

/// Random Hermitian matrix with entries of order one.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> MatrixOperator {
    let g = CMatrix::from_fn(dim, dim, |_, _| gaussian_complex(rng));
    MatrixOperator::hermitian((&g + g.adjoint()).unscale(2.0)).expect("symmetrized matrix is Hermitian")
}

/// Random full-rank mixed state `G G† / tr(G G†)`.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| gaussian_complex(rng));
    let m = &g * g.adjoint();
    let t = m.trace().re;
    DensityMatrix::new(m.unscale(t)).expect("Wishart matrix is a valid state")
}

/// A random spec satisfying the measurement condition: random eigenbasis
/// grouped into sectors of the given degeneracies, random pointer basis with
/// `apparatus_dim = degeneracies.len()`, random ready state, and a transfer
/// family obtained by one global random unitary acting on the eigenbasis.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, degeneracies: &[usize]) -> Result<BclSpec> {
    let system_dim: usize = degeneracies.iter().sum();
    let sectors = degeneracies.len();
    let system_u = random_unitary(rng, system_dim);
    let transfer_u = random_unitary(rng, system_dim);
    let pointer_u = random_unitary(rng, sectors);

    let column = |u: &MatrixOperator, j: usize| {
        StateVector::new(u.entries().column(j).into_owned()).expect("unitary columns are unit vectors")
    };

    let mut eigenbasis = Vec::with_capacity(sectors);
    let mut transfer = Vec::with_capacity(sectors);
    let mut next = 0;
    for &deg in degeneracies {
        let sector: Vec<StateVector> = (next..next + deg).map(|j| column(&system_u, j)).collect();
        let mapped = sector
            .iter()
            .map(|v| transfer_u.apply_state(v).expect("unitary preserves norm"))
            .collect();
        eigenbasis.push(sector);
        transfer.push(mapped);
        next += deg;
    }
    let pointer: Vec<StateVector> = (0..sectors).map(|j| column(&pointer_u, j)).collect();
    let eigenvalues: Vec<f64> = (0..sectors).map(|k| k as f64 - 0.5 * (sectors as f64 - 1.0)).collect();
    let ready = random_state(rng, sectors);

    BclSpec::new(eigenvalues, eigenbasis, pointer, ready, transfer)
}
