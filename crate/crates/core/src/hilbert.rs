//! Dense finite-dimensional Hilbert-space algebra.
//!
//! States and operators are backed by `nalgebra` dense complex storage. Every
//! constructor that carries an invariant (normalized state, density matrix,
//! Hermitian or unitary operator) checks it against [`tol::INVARIANT`] and
//! returns an [`Error`] otherwise. Values are immutable once built.
//!
//! Composite indices are row-major: for a product space with factor
//! dimensions `(d0, d1)`, basis element `|i⟩ ⊗ |j⟩` sits at `i * d1 + j`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// An unnormalized complex vector. Carries no invariant.
pub type RawVector = DVector<Complex64>;

/// A dense complex matrix with no attached invariant.
pub type CMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A unit vector in `C^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: RawVector,
}

impl StateVector {
    /// Wraps `amplitudes`, rejecting vectors whose norm differs from 1 by
    /// more than [`tol::INVARIANT`].
    pub fn new(amplitudes: RawVector) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                actual: 0,
            });
        }
        let norm = amplitudes.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > tol::INVARIANT {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    pub fn from_slice(amplitudes: &[Complex64]) -> Result<Self> {
        Self::new(RawVector::from_column_slice(amplitudes))
    }

    /// Real amplitudes, convenient for tests and configs.
    pub fn from_reals(amplitudes: &[f64]) -> Result<Self> {
        Self::new(RawVector::from_iterator(
            amplitudes.len(),
            amplitudes.iter().map(|&x| Complex64::new(x, 0.0)),
        ))
    }

    /// Divides `raw` by its norm.
    pub fn normalize(raw: RawVector) -> Result<Self> {
        let norm = raw.norm();
        if raw.is_empty() || !(norm >= tol::NULL_NORM) || !norm.is_finite() {
            return Err(Error::NullState { norm });
        }
        Self::new(raw.unscale(norm))
    }

    /// The canonical basis vector `e_index` of `C^dim`.
    ///
    /// Panics if `index >= dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dim {dim}");
        let mut amplitudes = RawVector::zeros(dim);
        amplitudes[index] = ONE;
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &RawVector {
        &self.amplitudes
    }

    pub fn into_raw(self) -> RawVector {
        self.amplitudes
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }
}

/// A Hermitian, unit-trace, positive semi-definite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        check_square(&entries)?;
        let deviation = hermiticity_deviation(&entries);
        if deviation > tol::INVARIANT {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > tol::INVARIANT || trace.im.abs() > tol::INVARIANT {
            return Err(Error::InvalidTrace { trace: trace.re });
        }
        let min_eigenvalue = hermitian_eigenvalues(&entries)
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eigenvalue < -tol::INVARIANT {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { entries })
    }

    /// For matrices that are valid by construction (projectors of unit
    /// vectors, convex sums and partial traces of valid states).
    pub(crate) fn new_unchecked(entries: CMatrix) -> Self {
        debug_assert!(entries.is_square());
        Self { entries }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::new_unchecked(CMatrix::identity(dim, dim).unscale(dim as f64))
    }

    /// `Σ_k weights_k |states_k⟩⟨states_k|`. The weights must be a probability
    /// vector; the states need not be orthogonal.
    pub fn mixture(weights: &[f64], states: &[StateVector]) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                actual: states.len(),
            });
        }
        let dim = states[0].dim();
        let mut entries = CMatrix::zeros(dim, dim);
        for (w, s) in weights.iter().zip(states) {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: s.dim(),
                });
            }
            entries += outer_raw(s.amplitudes()).scale(*w);
        }
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    /// Real spectrum in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values: Vec<f64> = hermitian_eigenvalues(&self.entries).iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `tr(W ρ)`.
    pub fn expectation(&self, observable: &MatrixOperator) -> Result<Complex64> {
        if observable.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: observable.dim(),
            });
        }
        // tr(Wρ) = Σ_ij W_ij ρ_ji
        let w = observable.entries();
        let mut acc = ZERO;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += w[(i, j)] * self.entries[(j, i)];
            }
        }
        Ok(acc)
    }
}

/// A square complex matrix with independently asserted Hermitian and unitary
/// flags. A flag is only ever set after the property has been checked.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixOperator {
    entries: CMatrix,
    hermitian: bool,
    unitary: bool,
}

impl MatrixOperator {
    /// A general operator with no flags set.
    pub fn new(entries: CMatrix) -> Result<Self> {
        check_square(&entries)?;
        Ok(Self {
            entries,
            hermitian: false,
            unitary: false,
        })
    }

    pub fn hermitian(entries: CMatrix) -> Result<Self> {
        check_square(&entries)?;
        let deviation = hermiticity_deviation(&entries);
        if deviation > tol::INVARIANT {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self {
            entries,
            hermitian: true,
            unitary: false,
        })
    }

    pub fn unitary(entries: CMatrix) -> Result<Self> {
        check_square(&entries)?;
        let deviation = unitarity_deviation(&entries);
        if deviation > tol::INVARIANT {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self {
            entries,
            hermitian: false,
            unitary: true,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: CMatrix::identity(dim, dim),
            hermitian: true,
            unitary: true,
        }
    }

    pub fn pauli_x() -> Self {
        Self::pauli([ZERO, ONE, ONE, ZERO])
    }

    pub fn pauli_y() -> Self {
        Self::pauli([ZERO, -I, I, ZERO])
    }

    pub fn pauli_z() -> Self {
        Self::pauli([ONE, ZERO, ZERO, -ONE])
    }

    fn pauli(row_major: [Complex64; 4]) -> Self {
        Self {
            entries: CMatrix::from_row_slice(2, 2, &row_major),
            hermitian: true,
            unitary: true,
        }
    }

    /// `diag(values)`, Hermitian.
    pub fn diagonal(values: &[f64]) -> Self {
        let diag = RawVector::from_iterator(values.len(), values.iter().map(|&v| Complex64::new(v, 0.0)));
        Self {
            entries: CMatrix::from_diagonal(&diag),
            hermitian: true,
            unitary: false,
        }
    }

    /// `|φ⟩⟨φ|`.
    pub fn projector(phi: &StateVector) -> Self {
        Self {
            entries: outer_raw(phi.amplitudes()),
            hermitian: true,
            unitary: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    /// Max elementwise `|M − M†|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        hermiticity_deviation(&self.entries)
    }

    /// Max elementwise `|M†M − I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        unitarity_deviation(&self.entries)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            entries: self.entries.adjoint(),
            hermitian: self.hermitian,
            unitary: self.unitary,
        }
    }

    /// Matrix product `self · other`; unitarity is inherited when both
    /// factors are unitary.
    pub fn compose(&self, other: &MatrixOperator) -> Result<Self> {
        self.check_dim(other.dim())?;
        Ok(Self {
            entries: &self.entries * &other.entries,
            hermitian: false,
            unitary: self.unitary && other.unitary,
        })
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &MatrixOperator) -> Result<CMatrix> {
        self.check_dim(other.dim())?;
        Ok(&self.entries * &other.entries - &other.entries * &self.entries)
    }

    pub fn apply(&self, v: &RawVector) -> Result<RawVector> {
        self.check_dim(v.len())?;
        Ok(&self.entries * v)
    }

    /// Applies the operator to a unit vector; the result must again be a unit
    /// vector, which holds for any operator flagged unitary.
    pub fn apply_state(&self, phi: &StateVector) -> Result<StateVector> {
        StateVector::new(self.apply(phi.amplitudes())?)
    }

    /// `⟨φ|M|φ⟩`.
    pub fn expectation(&self, phi: &StateVector) -> Result<Complex64> {
        Ok(phi.amplitudes().dotc(&self.apply(phi.amplitudes())?))
    }

    /// `M ρ M†`, used for unitary conjugation of states.
    pub fn conjugate(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if !self.unitary {
            return Err(Error::NotUnitary {
                deviation: self.unitarity_deviation(),
            });
        }
        self.check_dim(rho.dim())?;
        Ok(DensityMatrix::new_unchecked(
            &self.entries * rho.entries() * self.entries.adjoint(),
        ))
    }

    fn check_dim(&self, actual: usize) -> Result<()> {
        if actual != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual,
            });
        }
        Ok(())
    }
}

/// Factor dimensions of a tensor-product space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSpace {
    factor_dims: Vec<usize>,
}

impl ProductSpace {
    pub fn new(factor_dims: Vec<usize>) -> Result<Self> {
        if factor_dims.is_empty() || factor_dims.contains(&0) {
            return Err(Error::DimensionMismatch {
                expected: 1,
                actual: 0,
            });
        }
        Ok(Self { factor_dims })
    }

    pub fn bipartite(first: usize, second: usize) -> Result<Self> {
        Self::new(vec![first, second])
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn dim(&self) -> usize {
        self.factor_dims.iter().product()
    }
}

/// `u ⊗ v`, first factor slowest.
pub fn tensor(u: &StateVector, v: &StateVector) -> StateVector {
    StateVector {
        amplitudes: tensor_raw(u.amplitudes(), v.amplitudes()),
    }
}

pub fn tensor_raw(u: &RawVector, v: &RawVector) -> RawVector {
    let n = v.len();
    RawVector::from_fn(u.len() * n, |idx, _| u[idx / n] * v[idx % n])
}

/// Kronecker product consistent with [`tensor`]: `(M⊗N)(u⊗v) = Mu ⊗ Nv`.
pub fn tensor_op(m: &MatrixOperator, n: &MatrixOperator) -> MatrixOperator {
    MatrixOperator {
        entries: m.entries.kronecker(&n.entries),
        hermitian: m.hermitian && n.hermitian,
        unitary: m.unitary && n.unitary,
    }
}

/// Reduced state of one factor of a bipartite space.
pub fn partial_trace(rho: &DensityMatrix, space: &ProductSpace, keep: usize) -> Result<DensityMatrix> {
    Ok(DensityMatrix::new_unchecked(partial_trace_raw(
        rho.entries(),
        space,
        keep,
    )?))
}

/// [`partial_trace`] on an arbitrary square matrix.
pub fn partial_trace_raw(m: &CMatrix, space: &ProductSpace, keep: usize) -> Result<CMatrix> {
    let dims = space.factor_dims();
    if dims.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: dims.len(),
        });
    }
    if m.nrows() != space.dim() || !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            actual: m.nrows(),
        });
    }
    let (da, db) = (dims[0], dims[1]);
    match keep {
        0 => Ok(CMatrix::from_fn(da, da, |a, a2| {
            (0..db).map(|b| m[(a * db + b, a2 * db + b)]).sum()
        })),
        1 => Ok(CMatrix::from_fn(db, db, |b, b2| {
            (0..da).map(|a| m[(a * db + b, a * db + b2)]).sum()
        })),
        other => Err(Error::DimensionMismatch {
            expected: 1,
            actual: other,
        }),
    }
}

/// `−Σ λ ln λ` over eigenvalues above [`tol::ENTROPY_EIGENVALUE_FLOOR`], in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let s: f64 = hermitian_eigenvalues(rho.entries())
        .iter()
        .filter(|&&l| l > tol::ENTROPY_EIGENVALUE_FLOOR)
        .map(|&l| -l * l.ln())
        .sum();
    s.max(0.0)
}

/// `|φ⟩⟨φ|`.
pub fn outer(phi: &StateVector) -> DensityMatrix {
    DensityMatrix::new_unchecked(outer_raw(phi.amplitudes()))
}

pub fn outer_raw(v: &RawVector) -> CMatrix {
    v * v.adjoint()
}

/// Expansion coefficients `c_i = ⟨basis_i|φ⟩` in an orthonormal (possibly
/// incomplete) basis.
pub fn coefficients_of(phi: &StateVector, basis: &[StateVector]) -> Result<Vec<Complex64>> {
    for b in basis {
        if b.dim() != phi.dim() {
            return Err(Error::DimensionMismatch {
                expected: phi.dim(),
                actual: b.dim(),
            });
        }
    }
    let deviation = gram_deviation(basis);
    if deviation > tol::INVARIANT {
        return Err(Error::BasisNotOrthonormal { deviation });
    }
    Ok(basis.iter().map(|b| b.inner(phi)).collect())
}

/// `Σ_i c_i basis_i`.
pub fn reconstruct(coefficients: &[Complex64], basis: &[StateVector]) -> RawVector {
    let dim = basis.first().map_or(0, StateVector::dim);
    basis
        .iter()
        .zip(coefficients)
        .fold(RawVector::zeros(dim), |acc, (b, c)| acc + b.amplitudes() * *c)
}

/// `½‖ρ − σ‖₁`, computed from the Hermitian spectrum of the difference.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            actual: sigma.dim(),
        });
    }
    let diff = rho.entries() - sigma.entries();
    Ok(0.5 * hermitian_eigenvalues(&diff).iter().map(|l| l.abs()).sum::<f64>())
}

/// Max `|⟨v_i|v_j⟩ − δ_ij|` over all pairs.
pub fn gram_deviation(vectors: &[StateVector]) -> f64 {
    let mut worst = 0.0_f64;
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate().skip(i) {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((a.inner(b) - target).norm());
        }
    }
    worst
}

/// Max `|v_i|`.
pub fn max_abs(v: &RawVector) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Max elementwise `|a − b|`.
pub fn max_abs_deviation(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn unitarity_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    max_abs_deviation(&(m.adjoint() * m), &CMatrix::identity(n, n))
}

/// Spectrum of the Hermitian part `(M + M†)/2` through the Hermitian
/// eigensolver, so eigenvalues are real by construction.
pub fn hermitian_eigenvalues(m: &CMatrix) -> DVector<f64> {
    let hermitian_part = (m + m.adjoint()).unscale(2.0);
    hermitian_part.symmetric_eigenvalues()
}

fn check_square(m: &CMatrix) -> Result<()> {
    if !m.is_square() || m.nrows() == 0 {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            actual: m.ncols(),
        });
    }
    Ok(())
}
