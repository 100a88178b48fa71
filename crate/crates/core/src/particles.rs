//! Two identical particles on a 1-D lattice.
//!
//! Continuum integrals become quadrature sums with weight `dx`, and the
//! Dirac delta `δ(x − x′)` is the kernel `(1/dx)·I`, so that composing a kernel
//! with a delta reproduces the kernel exactly. Single-particle kernels act as
//! `(a f)_i = dx Σ_j a_ij f_j`; two-particle kernels act on the matrix
//! `Ψ_ij = Ψ(x_i, x_j)` with weight `dx²`.
//!
//! Two-particle kernels are stored as sums of product terms `K₁ ⊗ K₂` instead
//! of dense `n² × n²` matrices. A 512-point grid would otherwise need ~7·10¹⁰
//! entries.

use std::ops::Range;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{CMatrix, MatrixOperator, RawVector};
use crate::tol;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Uniform grid `x_i = x_min + i·dx`, `0 ≤ i < n_points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeGrid {
    x_min: f64,
    dx: f64,
    n_points: usize,
}

impl LatticeGrid {
    pub fn new(x_min: f64, dx: f64, n_points: usize) -> Result<Self> {
        if !x_min.is_finite() {
            return Err(Error::InvalidGrid(format!("x_min must be finite, got {x_min}")));
        }
        if !(dx > 0.0) || !dx.is_finite() {
            return Err(Error::InvalidGrid(format!("dx must be positive, got {dx}")));
        }
        if n_points < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {n_points}")));
        }
        Ok(Self { x_min, dx, n_points })
    }

    /// `n_points` points with both endpoints on the grid.
    pub fn spanning(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if n_points < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {n_points}")));
        }
        Self::new(x_min, (x_max - x_min) / (n_points - 1) as f64, n_points)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x(self.n_points - 1)
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx
    }

    pub fn coordinates(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }
}

/// Discretized single-particle wavefunction with unit quadrature norm.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeWavefunction {
    grid: LatticeGrid,
    values: RawVector,
}

impl LatticeWavefunction {
    pub fn new(grid: LatticeGrid, values: RawVector) -> Result<Self> {
        check_len(&grid, values.len())?;
        let norm = (grid.dx * values.norm_squared()).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > tol::LATTICE_NORM {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { grid, values })
    }

    /// Rescales `raw` to unit quadrature norm.
    pub fn normalize(grid: LatticeGrid, raw: RawVector) -> Result<Self> {
        check_len(&grid, raw.len())?;
        let norm = (grid.dx * raw.norm_squared()).sqrt();
        if !(norm >= tol::NULL_NORM) || !norm.is_finite() {
            return Err(Error::NullState { norm });
        }
        Ok(Self {
            grid,
            values: raw.unscale(norm),
        })
    }

    /// `1/√dx` at a single lattice point.
    pub fn delta_spike(grid: LatticeGrid, index: usize) -> Result<Self> {
        if index >= grid.n_points {
            return Err(Error::InvalidDomain(format!("index {index} outside grid")));
        }
        let mut raw = RawVector::zeros(grid.n_points);
        raw[index] = Complex64::new(1.0, 0.0);
        Self::normalize(grid, raw)
    }

    pub fn grid(&self) -> &LatticeGrid {
        &self.grid
    }

    pub fn values(&self) -> &RawVector {
        &self.values
    }

    /// `dx Σ conj(ψ_i) φ_i`.
    pub fn inner(&self, other: &LatticeWavefunction) -> Result<Complex64> {
        check_grid(&self.grid, &other.grid)?;
        Ok(self.values.dotc(&other.values) * self.grid.dx)
    }

    /// `dx |ψ_i|²` per lattice point.
    pub fn probabilities(&self) -> Vec<f64> {
        self.values.iter().map(|z| self.grid.dx * z.norm_sqr()).collect()
    }

    /// Quadrature mean of `x |ψ|²`.
    pub fn mean_position(&self) -> f64 {
        self.probabilities()
            .iter()
            .enumerate()
            .map(|(i, p)| self.grid.x(i) * p)
            .sum()
    }

    /// Probability mass inside `domain`.
    pub fn mass_in(&self, domain: &Domain) -> f64 {
        let p = self.probabilities();
        domain.ranges.iter().flat_map(|r| r.clone()).map(|i| p[i]).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExchangeSymmetry {
    Boson,
    Fermion,
}

impl ExchangeSymmetry {
    pub fn sign(self) -> f64 {
        match self {
            ExchangeSymmetry::Boson => 1.0,
            ExchangeSymmetry::Fermion => -1.0,
        }
    }
}

/// `Ψ(x_i, x_j)` for two identical particles, with quadrature norm
/// `dx² Σ |Ψ_ij|² = 1` and `Ψ_ij = ±Ψ_ji` bitwise.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoParticleWavefunction {
    grid: LatticeGrid,
    values: CMatrix,
    symmetry: ExchangeSymmetry,
    normalization: f64,
}

impl TwoParticleWavefunction {
    pub fn grid(&self) -> &LatticeGrid {
        &self.grid
    }

    pub fn values(&self) -> &CMatrix {
        &self.values
    }

    pub fn symmetry(&self) -> ExchangeSymmetry {
        self.symmetry
    }

    /// The real positive factor `ν` applied to `ψφ ± φψ`.
    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn quadrature_norm(&self) -> f64 {
        (self.grid.dx * self.grid.dx * self.values.norm_squared()).sqrt()
    }
}

/// A single-particle kernel `a(x; x′)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelOperator {
    grid: LatticeGrid,
    kernel: CMatrix,
    hermitian: bool,
}

impl KernelOperator {
    pub fn new(grid: LatticeGrid, kernel: CMatrix) -> Result<Self> {
        check_kernel_shape(&grid, &kernel)?;
        Ok(Self {
            grid,
            kernel,
            hermitian: false,
        })
    }

    pub fn hermitian(grid: LatticeGrid, kernel: CMatrix) -> Result<Self> {
        check_kernel_shape(&grid, &kernel)?;
        let deviation = crate::hilbert::hermiticity_deviation(&kernel);
        if deviation > tol::INVARIANT {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self {
            grid,
            kernel,
            hermitian: true,
        })
    }

    /// `f(x) δ(x − x′)`.
    pub fn multiplication(grid: LatticeGrid, f: impl Fn(f64) -> f64) -> Self {
        let diag = RawVector::from_fn(grid.n_points, |i, _| Complex64::new(f(grid.x(i)) / grid.dx, 0.0));
        Self {
            grid,
            kernel: CMatrix::from_diagonal(&diag),
            hermitian: true,
        }
    }

    /// `x δ(x − x′)`.
    pub fn position(grid: LatticeGrid) -> Self {
        Self::multiplication(grid, |x| x)
    }

    /// `δ(x − x′)`.
    pub fn identity(grid: LatticeGrid) -> Self {
        Self::multiplication(grid, |_| 1.0)
    }

    pub fn zero(grid: LatticeGrid) -> Self {
        Self {
            grid,
            kernel: CMatrix::zeros(grid.n_points, grid.n_points),
            hermitian: true,
        }
    }

    pub fn grid(&self) -> &LatticeGrid {
        &self.grid
    }

    pub fn kernel(&self) -> &CMatrix {
        &self.kernel
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// `(a f)_i = dx Σ_j a_ij f_j`.
    pub fn apply(&self, f: &RawVector) -> Result<RawVector> {
        check_len(&self.grid, f.len())?;
        Ok((&self.kernel * f).scale(self.grid.dx))
    }
}

/// One factor of a product term in a [`TwoParticleKernel`].
#[derive(Debug, Clone, PartialEq)]
pub enum KernelFactor {
    /// `δ(x − x′)`, i.e. `(1/dx)·I`.
    Delta,
    Kernel(CMatrix),
}

impl KernelFactor {
    fn dense(&self, grid: &LatticeGrid) -> CMatrix {
        match self {
            KernelFactor::Delta => CMatrix::identity(grid.n_points, grid.n_points).unscale(grid.dx),
            KernelFactor::Kernel(k) => k.clone(),
        }
    }

    /// Max elementwise difference, with `Delta` compared as `(1/dx)·I`.
    fn deviation(&self, other: &KernelFactor, grid: &LatticeGrid) -> f64 {
        match (self, other) {
            (KernelFactor::Delta, KernelFactor::Delta) => 0.0,
            _ => crate::hilbert::max_abs_deviation(&self.dense(grid), &other.dense(grid)),
        }
    }
}

/// `A(x₁,x₂; x₁′,x₂′) = Σ_t K₁ᵗ(x₁;x₁′) K₂ᵗ(x₂;x₂′)`, first particle slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoParticleKernel {
    grid: LatticeGrid,
    terms: Vec<(KernelFactor, KernelFactor)>,
}

impl TwoParticleKernel {
    pub fn new(grid: LatticeGrid, terms: Vec<(KernelFactor, KernelFactor)>) -> Result<Self> {
        for (a, b) in &terms {
            for f in [a, b] {
                if let KernelFactor::Kernel(k) = f {
                    check_kernel_shape(&grid, k)?;
                }
            }
        }
        Ok(Self { grid, terms })
    }

    pub fn grid(&self) -> &LatticeGrid {
        &self.grid
    }

    pub fn terms(&self) -> &[(KernelFactor, KernelFactor)] {
        &self.terms
    }

    /// `(AΨ)_ij = dx² Σ A_(ij),(i′j′) Ψ_i′j′`.
    pub fn apply(&self, psi: &CMatrix) -> Result<CMatrix> {
        let n = self.grid.n_points;
        if psi.shape() != (n, n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: psi.nrows(),
            });
        }
        let dx = self.grid.dx;
        let mut out = CMatrix::zeros(n, n);
        for (first, second) in &self.terms {
            let term = match (first, second) {
                (KernelFactor::Delta, KernelFactor::Delta) => psi.clone(),
                (KernelFactor::Kernel(a), KernelFactor::Delta) => (a * psi).scale(dx),
                (KernelFactor::Delta, KernelFactor::Kernel(b)) => (psi * b.transpose()).scale(dx),
                (KernelFactor::Kernel(a), KernelFactor::Kernel(b)) => (a * psi * b.transpose()).scale(dx * dx),
            };
            out += term;
        }
        Ok(out)
    }

    /// Largest deviation between the term list and its particle-swapped
    /// image, pairing each term `K₁ ⊗ K₂` with the closest `K₂ ⊗ K₁`.
    ///
    /// Zero certifies exchange symmetry. A kernel that is symmetric only
    /// after regrouping its terms reports a positive value; use
    /// [`TwoParticleKernel::to_dense`] on small grids for a complete check.
    pub fn exchange_asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (a, b) in &self.terms {
            let best = self
                .terms
                .iter()
                .map(|(c, d)| a.deviation(d, &self.grid).max(b.deviation(c, &self.grid)))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(best);
        }
        worst
    }

    /// The full `n² × n²` kernel matrix. Refused above
    /// [`tol::MAX_DENSE_DIM`] rows.
    pub fn to_dense(&self) -> Result<CMatrix> {
        let n = self.grid.n_points;
        let dim = n * n;
        if dim > tol::MAX_DENSE_DIM {
            return Err(Error::CapacityExceeded {
                dim,
                cap: tol::MAX_DENSE_DIM,
            });
        }
        let mut out = CMatrix::zeros(dim, dim);
        for (a, b) in &self.terms {
            out += a.dense(&self.grid).kronecker(&b.dense(&self.grid));
        }
        Ok(out)
    }
}

/// Disjoint, sorted, non-empty half-open index ranges of a grid: the region
/// `D` of the laboratory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    ranges: Vec<Range<usize>>,
}

impl Domain {
    pub fn new(grid: &LatticeGrid, ranges: Vec<Range<usize>>) -> Result<Self> {
        let mut prev_end = 0;
        for (k, r) in ranges.iter().enumerate() {
            if r.start >= r.end {
                return Err(Error::InvalidDomain(format!("empty range {r:?}")));
            }
            if k > 0 && r.start < prev_end {
                return Err(Error::InvalidDomain(format!(
                    "range {r:?} overlaps or precedes the previous one"
                )));
            }
            if r.end > grid.n_points {
                return Err(Error::InvalidDomain(format!(
                    "range {r:?} exceeds grid of {} points",
                    grid.n_points
                )));
            }
            prev_end = r.end;
        }
        Ok(Self { ranges })
    }

    pub fn full(grid: &LatticeGrid) -> Self {
        Self {
            ranges: vec![0..grid.n_points],
        }
    }

    /// Grid points with `lo ≤ x_i ≤ hi`.
    pub fn from_interval(grid: &LatticeGrid, lo: f64, hi: f64) -> Result<Self> {
        Self::from_intervals(grid, &[(lo, hi)])
    }

    pub fn from_intervals(grid: &LatticeGrid, intervals: &[(f64, f64)]) -> Result<Self> {
        let mut ranges = Vec::with_capacity(intervals.len());
        for &(lo, hi) in intervals {
            if !(lo <= hi) {
                return Err(Error::InvalidDomain(format!("interval [{lo}, {hi}] is empty")));
            }
            let mut points = (0..grid.n_points).filter(|&i| {
                let x = grid.x(i);
                lo <= x && x <= hi
            });
            let start = points
                .next()
                .ok_or_else(|| Error::InvalidDomain(format!("interval [{lo}, {hi}] contains no grid point")))?;
            let end = points.next_back().unwrap_or(start) + 1;
            ranges.push(start..end);
        }
        Self::new(grid, ranges)
    }

    pub fn ranges(&self) -> &[Range<usize>] {
        &self.ranges
    }

    pub fn contains(&self, i: usize) -> bool {
        self.ranges.iter().any(|r| r.contains(&i))
    }

    /// Number of grid points in the domain.
    pub fn len(&self) -> usize {
        self.ranges.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    /// `χ_D` over `n` points.
    pub fn indicator(&self, n: usize) -> Vec<bool> {
        (0..n).map(|i| self.contains(i)).collect()
    }
}

/// Discretized Gaussian `exp(−(x − center)²/(4 width²))`, normalized, so the
/// probability density has standard deviation `width`.
pub fn gaussian_packet(grid: LatticeGrid, center: f64, width: f64) -> Result<LatticeWavefunction> {
    if !(width > 2.0 * grid.dx) || !width.is_finite() {
        return Err(Error::UnresolvableWidth { width, dx: grid.dx });
    }
    if !(center >= grid.x_min && center <= grid.x_max()) {
        return Err(Error::CenterOutsideGrid {
            center,
            x_min: grid.x_min,
            x_max: grid.x_max(),
        });
    }
    let raw = RawVector::from_fn(grid.n_points, |i, _| {
        let u = grid.x(i) - center;
        Complex64::new((-u * u / (4.0 * width * width)).exp(), 0.0)
    });
    LatticeWavefunction::normalize(grid, raw)
}

/// `Ψ_ij = ν(ψ_i φ_j ± φ_i ψ_j)` with real positive `ν` fixing the quadrature
/// norm. Only the upper triangle is computed; the lower one is mirrored with
/// the exchange sign.
pub fn symmetrize(
    psi: &LatticeWavefunction,
    phi: &LatticeWavefunction,
    symmetry: ExchangeSymmetry,
) -> Result<TwoParticleWavefunction> {
    check_grid(&psi.grid, &phi.grid)?;
    let grid = psi.grid;
    let n = grid.n_points;
    let (p, f) = (&psi.values, &phi.values);
    let sign = symmetry.sign();
    let mut raw = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = match symmetry {
                ExchangeSymmetry::Boson => p[i] * f[j] + f[i] * p[j],
                ExchangeSymmetry::Fermion if i == j => ZERO,
                ExchangeSymmetry::Fermion => p[i] * f[j] - f[i] * p[j],
            };
            raw[(i, j)] = v;
            raw[(j, i)] = v * sign;
        }
    }
    let norm = grid.dx * raw.norm();
    if !(norm >= tol::NULL_NORM) {
        return Err(Error::NullState { norm });
    }
    let nu = 1.0 / norm;
    // Scaling by a real factor preserves the exact ± mirror relation.
    raw.iter_mut().for_each(|z| *z = z.scale(nu));
    Ok(TwoParticleWavefunction {
        grid,
        values: raw,
        symmetry,
        normalization: nu,
    })
}

/// `A = a ⊗ δ + δ ⊗ a`: the registration of `a` on either particle.
pub fn symmetrized_observable(a: &KernelOperator) -> TwoParticleKernel {
    TwoParticleKernel {
        grid: a.grid,
        terms: vec![
            (KernelFactor::Kernel(a.kernel.clone()), KernelFactor::Delta),
            (KernelFactor::Delta, KernelFactor::Kernel(a.kernel.clone())),
        ],
    }
}

/// `dx² Σ_ij conj(ψ_i) a_ij ψ_j`.
pub fn expectation_single(a: &KernelOperator, psi: &LatticeWavefunction) -> Result<Complex64> {
    check_grid(&a.grid, &psi.grid)?;
    let dx = a.grid.dx;
    Ok(psi.values.dotc(&(&a.kernel * &psi.values)) * (dx * dx))
}

/// `dx² Σ_ij conj(Ψ_ij) (AΨ)_ij`, the `dx⁴`-weighted quadratic form.
pub fn expectation_two_particle(a: &TwoParticleKernel, psi: &TwoParticleWavefunction) -> Result<Complex64> {
    check_grid(&a.grid, &psi.grid)?;
    let dx = a.grid.dx;
    let applied = a.apply(&psi.values)?;
    let sum: Complex64 = psi.values.iter().zip(applied.iter()).map(|(u, v)| u.conj() * v).sum();
    Ok(sum * (dx * dx))
}

/// `a_D(i, j) = χ_D(i) a(i, j) χ_D(j)`. Entries outside `D` are exact zeros.
pub fn localize(a: &KernelOperator, domain: &Domain) -> KernelOperator {
    let n = a.grid.n_points;
    let chi = domain.indicator(n);
    let kernel = DMatrix::from_fn(n, n, |i, j| if chi[i] && chi[j] { a.kernel[(i, j)] } else { ZERO });
    KernelOperator {
        grid: a.grid,
        kernel,
        hermitian: a.hermitian,
    }
}

/// Worst response of `a` to a delta spike at an exterior point, over both
/// integration slots: `max_{j ∉ D} max(dx Σ_i |a_ij|, dx Σ_i |a_ji|)`.
///
/// Spikes span all test functions supported outside `D`, so this is the full
/// D-locality residual on the lattice.
pub fn d_locality_residual(a: &KernelOperator, domain: &Domain) -> f64 {
    let n = a.grid.n_points;
    let dx = a.grid.dx;
    let chi = domain.indicator(n);
    let mut worst = 0.0_f64;
    for j in (0..n).filter(|&j| !chi[j]) {
        let column: f64 = (0..n).map(|i| a.kernel[(i, j)].norm()).sum();
        let row: f64 = (0..n).map(|i| a.kernel[(j, i)].norm()).sum();
        worst = worst.max(dx * column.max(row));
    }
    worst
}

/// Whether `a` is D-local within `tolerance`; `tolerance = 0` demands exact
/// zeros.
pub fn is_d_local(a: &KernelOperator, domain: &Domain, tolerance: f64) -> bool {
    d_locality_residual(a, domain) <= tolerance
}

/// Outcome of [`dlocal_agreement_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DLocalAgreement {
    /// `⟨Ψ|A_D|Ψ⟩` in the symmetrized two-particle state.
    pub two_particle: Complex64,
    /// `⟨ψ|a|ψ⟩` as if the second particle did not exist.
    pub single: Complex64,
    pub difference: f64,
}

/// Cluster-separability check with boson symmetrization and the default
/// leakage threshold [`tol::SUPPORT_MASS`].
pub fn dlocal_agreement_check(
    a: &KernelOperator,
    domain: &Domain,
    psi: &LatticeWavefunction,
    phi: &LatticeWavefunction,
) -> Result<DLocalAgreement> {
    dlocal_agreement_check_with(a, domain, psi, phi, ExchangeSymmetry::Boson, tol::SUPPORT_MASS)
}

/// Compares the two-particle expectation of the symmetrized `localize(a, D)`
/// with the single-particle expectation of `a` in `psi`.
///
/// Requires `psi` to keep all but `support_mass` of its probability inside
/// `D` and `phi` to put at most `support_mass` inside `D`.
pub fn dlocal_agreement_check_with(
    a: &KernelOperator,
    domain: &Domain,
    psi: &LatticeWavefunction,
    phi: &LatticeWavefunction,
    symmetry: ExchangeSymmetry,
    support_mass: f64,
) -> Result<DLocalAgreement> {
    check_grid(&a.grid, &psi.grid)?;
    check_grid(&a.grid, &phi.grid)?;
    let psi_outside = psi.probabilities().iter().sum::<f64>() - psi.mass_in(domain);
    if psi_outside > support_mass {
        return Err(Error::SupportViolation(format!(
            "first packet leaks mass {psi_outside:e} outside D (threshold {support_mass:e})"
        )));
    }
    let phi_inside = phi.mass_in(domain);
    if phi_inside > support_mass {
        return Err(Error::SupportViolation(format!(
            "second packet puts mass {phi_inside:e} inside D (threshold {support_mass:e})"
        )));
    }
    let state = symmetrize(psi, phi, symmetry)?;
    let local = symmetrized_observable(&localize(a, domain));
    let two_particle = expectation_two_particle(&local, &state)?;
    let single = expectation_single(a, psi)?;
    Ok(DLocalAgreement {
        two_particle,
        single,
        difference: (two_particle - single).norm(),
    })
}

/// Smallest contiguous index interval holding at least `1 − mass_epsilon` of
/// the packet's probability. Ties go to the leftmost interval.
pub fn support(psi: &LatticeWavefunction, mass_epsilon: f64) -> Result<Domain> {
    if !(mass_epsilon > 0.0 && mass_epsilon < 1.0) {
        return Err(Error::InvalidDomain(format!(
            "mass_epsilon must lie in (0, 1), got {mass_epsilon}"
        )));
    }
    let p = psi.probabilities();
    let mut prefix = Vec::with_capacity(p.len() + 1);
    prefix.push(0.0);
    for q in &p {
        prefix.push(prefix.last().unwrap() + q);
    }
    let total = *prefix.last().unwrap();
    let target = (1.0 - mass_epsilon) * total;

    let mut best = 0..p.len();
    let mut left = 0;
    for right in 1..=p.len() {
        while left + 1 < right && prefix[right] - prefix[left + 1] >= target {
            left += 1;
        }
        if prefix[right] - prefix[left] >= target && right - left < best.len() {
            best = left..right;
        }
    }
    Domain::new(&psi.grid, vec![best])
}

/// `Σ_k I ⊗ … ⊗ a ⊗ … ⊗ I` with `a` in slot `k`, on `n_particles` copies of
/// the single-particle space. Refused when `dim^n` exceeds
/// [`tol::MAX_DENSE_DIM`].
pub fn collective_observable(a: &MatrixOperator, n_particles: usize) -> Result<MatrixOperator> {
    if n_particles == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            actual: 0,
        });
    }
    let d = a.dim();
    let total = (0..n_particles).try_fold(1usize, |acc, _| {
        acc.checked_mul(d).filter(|&v| v <= tol::MAX_DENSE_DIM)
    });
    let total = total.ok_or(Error::CapacityExceeded {
        dim: d.saturating_pow(n_particles as u32),
        cap: tol::MAX_DENSE_DIM,
    })?;

    let id = CMatrix::identity(d, d);
    let mut sum = CMatrix::zeros(total, total);
    for slot in 0..n_particles {
        let mut term = CMatrix::identity(1, 1);
        for k in 0..n_particles {
            term = term.kronecker(if k == slot { a.entries() } else { &id });
        }
        sum += term;
    }
    if a.is_hermitian() {
        MatrixOperator::hermitian(sum)
    } else {
        MatrixOperator::new(sum)
    }
}

/// `S |i⟩⊗|j⟩ = |j⟩⊗|i⟩` on two copies of `C^dim`.
pub fn exchange_swap(dim: usize) -> MatrixOperator {
    let n = dim * dim;
    let mut m = CMatrix::zeros(n, n);
    for i in 0..dim {
        for j in 0..dim {
            m[(j * dim + i, i * dim + j)] = Complex64::new(1.0, 0.0);
        }
    }
    MatrixOperator::unitary(m).expect("permutation matrices are unitary")
}

fn check_grid(a: &LatticeGrid, b: &LatticeGrid) -> Result<()> {
    if a != b {
        return Err(Error::GridMismatch);
    }
    Ok(())
}

fn check_len(grid: &LatticeGrid, len: usize) -> Result<()> {
    if len != grid.n_points {
        return Err(Error::DimensionMismatch {
            expected: grid.n_points,
            actual: len,
        });
    }
    Ok(())
}

fn check_kernel_shape(grid: &LatticeGrid, kernel: &CMatrix) -> Result<()> {
    if kernel.shape() != (grid.n_points, grid.n_points) {
        return Err(Error::DimensionMismatch {
            expected: grid.n_points,
            actual: kernel.nrows(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn lab_grid() -> LatticeGrid {
        LatticeGrid::spanning(-20.0, 20.0, 512).unwrap()
    }

    fn small_grid() -> LatticeGrid {
        LatticeGrid::spanning(-5.0, 5.0, 32).unwrap()
    }

    #[test]
    fn grid_rejects_bad_parameters() {
        assert!(LatticeGrid::new(0.0, 0.0, 10).is_err());
        assert!(LatticeGrid::new(0.0, -1.0, 10).is_err());
        assert!(LatticeGrid::new(0.0, 0.1, 1).is_err());
        assert!(LatticeGrid::new(f64::NAN, 0.1, 10).is_err());
        let g = lab_grid();
        assert!((g.x_max() - 20.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_norm_and_mean() {
        let g = lab_grid();
        let psi = gaussian_packet(g, 0.0, 1.0).unwrap();
        let norm: f64 = psi.probabilities().iter().sum();
        assert!((norm - 1.0).abs() < 1e-8);
        assert!(psi.mean_position().abs() < 1e-6);
        let phi = gaussian_packet(g, 10.0, 1.0).unwrap();
        assert!((phi.mean_position() - 10.0).abs() < 1e-6);
    }

    #[test]
    fn gaussian_rejects_unresolvable_width_and_far_center() {
        let g = lab_grid();
        assert!(matches!(
            gaussian_packet(g, 0.0, 1.5 * g.dx()),
            Err(Error::UnresolvableWidth { .. })
        ));
        assert!(matches!(
            gaussian_packet(g, 25.0, 1.0),
            Err(Error::CenterOutsideGrid { .. })
        ));
    }

    #[test]
    fn widely_separated_packets_do_not_overlap() {
        let g = lab_grid();
        let psi = gaussian_packet(g, -12.0, 0.5).unwrap();
        let phi = gaussian_packet(g, 12.0, 0.5).unwrap();
        // |Δc| = 24 > 10·(0.5 + 0.5)
        assert!(psi.inner(&phi).unwrap().norm() < 1e-12);
    }

    #[test]
    fn symmetrize_identical_states() {
        let g = lab_grid();
        let psi = gaussian_packet(g, 0.0, 1.0).unwrap();
        assert!(matches!(
            symmetrize(&psi, &psi, ExchangeSymmetry::Fermion),
            Err(Error::NullState { .. })
        ));
        let boson = symmetrize(&psi, &psi, ExchangeSymmetry::Boson).unwrap();
        assert!((boson.normalization() - 0.5).abs() < 1e-8);
        let v = psi.values();
        let max_dev = (0..g.n_points())
            .flat_map(|i| (0..g.n_points()).map(move |j| (i, j)))
            .map(|(i, j)| (boson.values()[(i, j)] - v[i] * v[j]).norm())
            .fold(0.0, f64::max);
        assert!(max_dev < 1e-10);
    }

    #[test]
    fn symmetrize_is_exactly_exchange_symmetric() {
        let g = small_grid();
        let psi = gaussian_packet(g, -1.0, 1.0).unwrap();
        let phi = gaussian_packet(g, 2.0, 0.8).unwrap();
        for sym in [ExchangeSymmetry::Boson, ExchangeSymmetry::Fermion] {
            let s = symmetrize(&psi, &phi, sym).unwrap();
            let m = s.values();
            for i in 0..g.n_points() {
                for j in 0..g.n_points() {
                    assert_eq!(m[(i, j)], m[(j, i)] * sym.sign());
                }
            }
            assert!((s.quadrature_norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn nu_for_disjoint_packets() {
        let g = lab_grid();
        let psi = gaussian_packet(g, 0.0, 1.0).unwrap();
        let phi = gaussian_packet(g, 10.0, 1.0).unwrap();
        let s = symmetrize(&psi, &phi, ExchangeSymmetry::Boson).unwrap();
        assert!((s.normalization() - FRAC_1_SQRT_2).abs() < 1e-8);
    }

    #[test]
    fn symmetrized_position_on_product_state() {
        // A(ψφ) = (xψ)φ + ψ(xφ) for an unsymmetrized product.
        let g = small_grid();
        let psi = gaussian_packet(g, -1.0, 1.0).unwrap();
        let phi = gaussian_packet(g, 1.5, 1.0).unwrap();
        let a = KernelOperator::position(g);
        let big_a = symmetrized_observable(&a);
        let product = psi.values() * phi.values().transpose();
        let applied = big_a.apply(&product).unwrap();
        let x_psi = a.apply(psi.values()).unwrap();
        let x_phi = a.apply(phi.values()).unwrap();
        let expected = &x_psi * phi.values().transpose() + psi.values() * x_phi.transpose();
        assert!(crate::hilbert::max_abs_deviation(&applied, &expected) < 1e-12);
    }

    #[test]
    fn symmetrized_observable_exchange_symmetry() {
        let g = LatticeGrid::spanning(-2.0, 2.0, 8).unwrap();
        let a = KernelOperator::position(g);
        let big_a = symmetrized_observable(&a);
        assert_eq!(big_a.exchange_asymmetry(), 0.0);
        let dense = big_a.to_dense().unwrap();
        let n = g.n_points();
        let swap = |k: usize| (k % n) * n + k / n;
        for r in 0..n * n {
            for c in 0..n * n {
                assert!((dense[(r, c)] - dense[(swap(r), swap(c))]).norm() < 1e-12);
            }
        }
        let lopsided = TwoParticleKernel::new(
            g,
            vec![(KernelFactor::Kernel(a.kernel().clone()), KernelFactor::Delta)],
        )
        .unwrap();
        assert!(lopsided.exchange_asymmetry() > 1.0);
    }

    #[test]
    fn dense_expectation_matches_factored() {
        let g = LatticeGrid::spanning(-3.0, 3.0, 16).unwrap();
        let psi = gaussian_packet(g, -1.0, 0.9).unwrap();
        let phi = gaussian_packet(g, 1.0, 1.1).unwrap();
        let s = symmetrize(&psi, &phi, ExchangeSymmetry::Fermion).unwrap();
        let big_a = symmetrized_observable(&KernelOperator::position(g));
        let dense = big_a.to_dense().unwrap();
        let n = g.n_points();
        let flat = RawVector::from_fn(n * n, |k, _| s.values()[(k / n, k % n)]);
        let dx = g.dx();
        let oracle = flat.dotc(&(&dense * &flat)) * dx.powi(4);
        let value = expectation_two_particle(&big_a, &s).unwrap();
        assert!((oracle - value).norm() < 1e-12);
    }

    #[test]
    fn single_expectations() {
        let g = lab_grid();
        let x = KernelOperator::position(g);
        let psi0 = gaussian_packet(g, 0.0, 1.0).unwrap();
        let psi10 = gaussian_packet(g, 10.0, 1.0).unwrap();
        assert!(expectation_single(&x, &psi0).unwrap().norm() < 1e-6);
        let e = expectation_single(&x, &psi10).unwrap();
        assert!((e.re - 10.0).abs() < 1e-6 && e.im.abs() < 1e-10);
        let id = KernelOperator::identity(g);
        assert!((expectation_single(&id, &psi10).unwrap().re - 1.0).abs() < 1e-8);
    }

    #[test]
    fn expectation_rejects_other_grid() {
        let a = KernelOperator::position(lab_grid());
        let psi = gaussian_packet(small_grid(), 0.0, 1.0).unwrap();
        assert!(matches!(expectation_single(&a, &psi), Err(Error::GridMismatch)));
    }

    #[test]
    fn two_particle_identity_counts_particles() {
        let g = lab_grid();
        let psi = gaussian_packet(g, 0.0, 1.0).unwrap();
        let phi = gaussian_packet(g, 10.0, 1.0).unwrap();
        let s = symmetrize(&psi, &phi, ExchangeSymmetry::Boson).unwrap();
        let id = symmetrized_observable(&KernelOperator::identity(g));
        assert!((expectation_two_particle(&id, &s).unwrap().re - 2.0).abs() < 1e-6);
    }

    #[test]
    fn localize_properties() {
        let g = lab_grid();
        let x = KernelOperator::position(g);
        let d = Domain::from_interval(&g, -5.0, 5.0).unwrap();
        let xd = localize(&x, &d);
        for i in 0..g.n_points() {
            for j in 0..g.n_points() {
                if !d.contains(i) || !d.contains(j) {
                    assert_eq!(xd.kernel()[(i, j)], ZERO);
                }
            }
        }
        assert_eq!(localize(&x, &Domain::full(&g)), x);
        assert_eq!(localize(&xd, &d), xd);
    }

    #[test]
    fn d_locality_predicate() {
        let g = lab_grid();
        let x = KernelOperator::position(g);
        let d = Domain::from_interval(&g, -5.0, 5.0).unwrap();
        assert!(!is_d_local(&x, &d, 1e-10));
        assert!(is_d_local(&localize(&x, &d), &d, 0.0));
        assert!(is_d_local(&KernelOperator::zero(g), &d, 0.0));
    }

    #[test]
    fn agreement_for_compliant_supports() {
        let g = lab_grid();
        let x = KernelOperator::position(g);
        let d = Domain::from_interval(&g, -8.0, 8.0).unwrap();
        let psi = gaussian_packet(g, 0.0, 1.0).unwrap();
        let phi = gaussian_packet(g, 15.0, 0.8).unwrap();
        let r = dlocal_agreement_check(&x, &d, &psi, &phi).unwrap();
        assert!(r.difference < 1e-6);
        let id = KernelOperator::identity(g);
        let r = dlocal_agreement_check(&id, &d, &psi, &phi).unwrap();
        assert!((r.two_particle.re - 1.0).abs() < 1e-6);
        assert!((r.single.re - 1.0).abs() < 1e-6);
        assert!(r.difference < 1e-6);
    }

    #[test]
    fn agreement_rejects_leaking_packets() {
        let g = lab_grid();
        let x = KernelOperator::position(g);
        let d = Domain::from_interval(&g, -5.0, 5.0).unwrap();
        let psi = gaussian_packet(g, 0.0, 1.0).unwrap();
        let phi = gaussian_packet(g, 15.0, 1.0).unwrap();
        // A unit-width packet keeps ~5.7e-7 of its mass beyond ±5.
        assert!(matches!(
            dlocal_agreement_check(&x, &d, &psi, &phi),
            Err(Error::SupportViolation(_))
        ));
        let r = dlocal_agreement_check_with(&x, &d, &psi, &phi, ExchangeSymmetry::Boson, 1e-6).unwrap();
        assert!(r.difference < 1e-6);
        let inside = gaussian_packet(g, 3.0, 1.0).unwrap();
        assert!(matches!(
            dlocal_agreement_check_with(&x, &d, &psi, &inside, ExchangeSymmetry::Boson, 1e-6),
            Err(Error::SupportViolation(_))
        ));
    }

    #[test]
    fn support_of_spike_and_gaussian() {
        let g = lab_grid();
        let spike = LatticeWavefunction::delta_spike(g, 100).unwrap();
        for eps in [1e-12, 1e-3, 0.5] {
            assert_eq!(support(&spike, eps).unwrap().ranges(), &[100..101]);
        }
        let psi = gaussian_packet(g, 0.0, 1.0).unwrap();
        let s = support(&psi, 1e-8).unwrap();
        let r = &s.ranges()[0];
        let (lo, hi) = (g.x(r.start), g.x(r.end - 1));
        assert!(lo >= -7.0 && hi <= 7.0, "[{lo}, {hi}]");
        assert!(lo < -5.0 && hi > 5.0, "[{lo}, {hi}]");
        assert!(support(&psi, 0.0).is_err());
    }

    #[test]
    fn domain_validation() {
        let g = small_grid();
        assert!(Domain::new(&g, vec![0..3, 2..5]).is_err());
        assert!(Domain::new(&g, vec![4..6, 0..2]).is_err());
        assert!(Domain::new(&g, vec![3..3]).is_err());
        assert!(Domain::new(&g, vec![30..40]).is_err());
        assert!(Domain::from_interval(&g, 100.0, 200.0).is_err());
        let d = Domain::new(&g, vec![0..2, 5..9]).unwrap();
        assert_eq!(d.len(), 6);
        assert!(d.contains(6) && !d.contains(3));
    }

    #[test]
    fn collective_number_operator() {
        let a = MatrixOperator::diagonal(&[0.0, 1.0]);
        let col = collective_observable(&a, 2).unwrap();
        let expected = MatrixOperator::diagonal(&[0.0, 1.0, 1.0, 2.0]);
        assert_eq!(col.entries(), expected.entries());
        assert!(col.is_hermitian());
    }

    #[test]
    fn collective_commutes_with_swap() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
        let a = crate::sample::random_hermitian(&mut rng, 3);
        let col = collective_observable(&a, 2).unwrap();
        let comm = col.commutator(&exchange_swap(3)).unwrap();
        assert!(comm.iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn collective_capacity() {
        let a = MatrixOperator::diagonal(&[0.0, 1.0]);
        assert!(collective_observable(&a, 12).is_ok());
        assert!(matches!(
            collective_observable(&a, 13),
            Err(Error::CapacityExceeded { .. })
        ));
    }
}
