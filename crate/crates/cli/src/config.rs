//! Scenario files: a strict TOML schema with defaults and field-level
//! validation.

use std::fs;
use std::path::{Path, PathBuf};

use gemenge_core::bcl::BclSpec;
use gemenge_core::hilbert::StateVector;
use gemenge_core::particles::{Domain, ExchangeSymmetry, LatticeGrid};
use gemenge_core::{tol, Complex64};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Symmetrization,
    Dlocal,
    Bcl,
    FullMeasurement,
}

impl ScenarioKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioKind::Symmetrization => "symmetrization",
            ScenarioKind::Dlocal => "dlocal",
            ScenarioKind::Bcl => "bcl",
            ScenarioKind::FullMeasurement => "full_measurement",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: ScenarioKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub particles: Option<ParticlesConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bcl: Option<BclConfig>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: OutputConfig,
}

/// Uniform lattice. Exactly one of `dx` and `x_max` must be given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub x_min: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dx: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_max: Option<f64>,
    pub n_points: usize,
}

impl GridConfig {
    pub fn build(&self) -> Result<LatticeGrid> {
        let grid = match (self.dx, self.x_max) {
            (Some(dx), None) => LatticeGrid::new(self.x_min, dx, self.n_points),
            (None, Some(x_max)) => LatticeGrid::spanning(self.x_min, x_max, self.n_points),
            _ => return Err(Error::validation("grid", "give exactly one of `dx` and `x_max`")),
        };
        grid.map_err(|e| Error::validation("grid", e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryChoice {
    Boson,
    Fermion,
    #[default]
    Both,
}

impl SymmetryChoice {
    pub fn symmetries(self) -> Vec<ExchangeSymmetry> {
        match self {
            SymmetryChoice::Boson => vec![ExchangeSymmetry::Boson],
            SymmetryChoice::Fermion => vec![ExchangeSymmetry::Fermion],
            SymmetryChoice::Both => vec![ExchangeSymmetry::Boson, ExchangeSymmetry::Fermion],
        }
    }
}

/// Single-particle observable whose symmetrized version is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservableChoice {
    #[default]
    Position,
    Identity,
}

impl ObservableChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            ObservableChoice::Position => "position",
            ObservableChoice::Identity => "identity",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketConfig {
    pub center: f64,
    pub width: f64,
}

/// Two wave packets: the first is the "local" particle, the second the
/// distant one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticlesConfig {
    #[serde(default)]
    pub symmetry: SymmetryChoice,
    #[serde(default)]
    pub observable: ObservableChoice,
    pub packets: Vec<PacketConfig>,
}

/// Union of closed intervals in length units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainConfig {
    pub intervals: Vec<[f64; 2]>,
}

impl DomainConfig {
    pub fn build(&self, grid: &LatticeGrid) -> Result<Domain> {
        let intervals: Vec<(f64, f64)> = self.intervals.iter().map(|[a, b]| (*a, *b)).collect();
        Domain::from_intervals(grid, &intervals).map_err(|e| Error::validation("domain.intervals", e.to_string()))
    }
}

/// A complex amplitude written either as a real number or as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Amplitude {
    Real(f64),
    Complex([f64; 2]),
}

impl Amplitude {
    pub fn value(self) -> Complex64 {
        match self {
            Amplitude::Real(re) => Complex64::new(re, 0.0),
            Amplitude::Complex([re, im]) => Complex64::new(re, im),
        }
    }

    fn is_finite(self) -> bool {
        let z = self.value();
        z.re.is_finite() && z.im.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CanonicalTag {
    Canonical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefaultTag {
    Default,
}

/// `"canonical"` or an explicit list of vectors (the rows of the basis
/// matrix). System eigenvectors are listed sector by sector, following
/// `degeneracies`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BasisChoice {
    Named(CanonicalTag),
    Explicit(Vec<Vec<Amplitude>>),
}

impl Default for BasisChoice {
    fn default() -> Self {
        BasisChoice::Named(CanonicalTag::Canonical)
    }
}

/// `"default"` (each eigenvector is transferred unchanged) or explicit
/// vectors, listed sector by sector like the eigenbasis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TransferChoice {
    Named(DefaultTag),
    Explicit(Vec<Vec<Amplitude>>),
}

impl Default for TransferChoice {
    fn default() -> Self {
        TransferChoice::Named(DefaultTag::Default)
    }
}

/// Observable used to probe the correlations that objectification removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessChoice {
    /// Flip between sectors 0 and 1 on both factors; `σx ⊗ σx` for a qubit.
    #[default]
    SigmaXPair,
    /// The measured observable on the system, identity on the apparatus.
    SystemObservable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BclConfig {
    pub eigenvalues: Vec<f64>,
    /// Sector sizes; all ones when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneracies: Option<Vec<usize>>,
    /// Apparatus dimension for a canonical pointer basis; defaults to the
    /// number of sectors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apparatus_dim: Option<usize>,
    #[serde(default)]
    pub system_basis: BasisChoice,
    #[serde(default)]
    pub pointer_basis: BasisChoice,
    #[serde(default)]
    pub transfer_family: TransferChoice,
    /// Apparatus ready state; the first canonical vector when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ready_state: Option<Vec<Amplitude>>,
    pub initial_state: Vec<Amplitude>,
    #[serde(default)]
    pub witness: WitnessChoice,
    /// Seed of the alternative unitary completion used for the
    /// completion-independence check.
    #[serde(default = "default_completion_seed")]
    pub completion_seed: u64,
}

fn default_completion_seed() -> u64 {
    1
}

impl BclConfig {
    pub fn degeneracies(&self) -> Vec<usize> {
        self.degeneracies.clone().unwrap_or_else(|| vec![1; self.eigenvalues.len()])
    }

    pub fn system_dim(&self) -> usize {
        self.degeneracies().iter().sum()
    }

    pub fn apparatus_dim(&self) -> usize {
        match &self.pointer_basis {
            BasisChoice::Explicit(rows) => rows.first().map_or(0, Vec::len),
            BasisChoice::Named(_) => self.apparatus_dim.unwrap_or(self.eigenvalues.len()),
        }
    }

    pub fn build_spec(&self) -> Result<BclSpec> {
        let degeneracies = self.degeneracies();
        let system_dim = self.system_dim();
        let apparatus_dim = self.apparatus_dim();
        let sectors = degeneracies.len();

        let eigenbasis = match &self.system_basis {
            BasisChoice::Named(_) => (0..system_dim).map(|i| StateVector::basis(system_dim, i)).collect(),
            BasisChoice::Explicit(rows) => states(rows, "bcl.system_basis")?,
        };
        let transfer = match &self.transfer_family {
            TransferChoice::Named(_) => eigenbasis.clone(),
            TransferChoice::Explicit(rows) => states(rows, "bcl.transfer_family")?,
        };
        let pointer = match &self.pointer_basis {
            BasisChoice::Named(_) => (0..sectors).map(|k| StateVector::basis(apparatus_dim, k)).collect(),
            BasisChoice::Explicit(rows) => states(rows, "bcl.pointer_basis")?,
        };
        let ready = match &self.ready_state {
            None => StateVector::basis(apparatus_dim, 0),
            Some(v) => state(v, "bcl.ready_state")?,
        };

        let eigenbasis = group(eigenbasis, &degeneracies, "bcl.system_basis")?;
        let transfer = group(transfer, &degeneracies, "bcl.transfer_family")?;
        BclSpec::new(self.eigenvalues.clone(), eigenbasis, pointer, ready, transfer)
            .map_err(|e| Error::validation("bcl", e.to_string()))
    }

    pub fn build_initial_state(&self) -> Result<StateVector> {
        state(&self.initial_state, "bcl.initial_state")
    }
}

fn state(amplitudes: &[Amplitude], path: &str) -> Result<StateVector> {
    let raw: Vec<Complex64> = amplitudes.iter().map(|a| a.value()).collect();
    StateVector::from_slice(&raw).map_err(|e| Error::validation(path, e.to_string()))
}

fn states(rows: &[Vec<Amplitude>], path: &str) -> Result<Vec<StateVector>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| state(row, &format!("{path}[{i}]")))
        .collect()
}

fn group(vectors: Vec<StateVector>, degeneracies: &[usize], path: &str) -> Result<Vec<Vec<StateVector>>> {
    let total: usize = degeneracies.iter().sum();
    if vectors.len() != total {
        return Err(Error::validation(
            path,
            format!("expected {total} vectors (sum of degeneracies), found {}", vectors.len()),
        ));
    }
    let mut it = vectors.into_iter();
    Ok(degeneracies.iter().map(|&d| it.by_ref().take(d).collect()).collect())
}

/// Tolerances used by the verdicts. Every field can be overridden.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Structural invariants: unitarity, normalization, marginals.
    pub invariant: f64,
    /// Quantities that should agree to rounding.
    pub comparison: f64,
    /// Lattice expectation values.
    pub expectation: f64,
    /// Cluster-separability agreement.
    pub agreement: f64,
    /// Entropies.
    pub entropy: f64,
    /// Probability mass a packet may leak across the domain boundary.
    pub support_mass: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            invariant: tol::INVARIANT,
            comparison: tol::COMPARISON,
            expectation: 1e-5,
            agreement: 1e-6,
            entropy: 1e-8,
            support_mass: tol::SUPPORT_MASS,
        }
    }
}

/// Extra report files written by `run`, besides the `--out` target.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<ScenarioConfig> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_scenario(&text)
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<ScenarioConfig> {
    let table: toml::Table = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let config: ScenarioConfig = serde_path_to_error::deserialize(toml::Value::Table(table)).map_err(|e| {
        let path = e.path().to_string();
        Error::validation(if path == "." { "" } else { &path }, e.into_inner().to_string())
    })?;
    validate(&config)?;
    Ok(config)
}

fn finite(value: f64, path: &str) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::validation(path, format!("{value} is not finite")))
    }
}

fn require<'a, T>(section: &'a Option<T>, name: &str, kind: ScenarioKind) -> Result<&'a T> {
    section
        .as_ref()
        .ok_or_else(|| Error::validation(name, format!("section required for kind `{}`", kind.as_str())))
}

pub fn validate(config: &ScenarioConfig) -> Result<()> {
    validate_tolerances(&config.tolerances)?;
    match config.kind {
        ScenarioKind::Symmetrization | ScenarioKind::Dlocal => {
            let grid = validate_grid(require(&config.grid, "grid", config.kind)?)?;
            validate_particles(require(&config.particles, "particles", config.kind)?, &grid)?;
            if config.kind == ScenarioKind::Dlocal {
                let domain = require(&config.domain, "domain", config.kind)?;
                for (i, [lo, hi]) in domain.intervals.iter().enumerate() {
                    finite(*lo, &format!("domain.intervals[{i}][0]"))?;
                    finite(*hi, &format!("domain.intervals[{i}][1]"))?;
                }
                domain.build(&grid)?;
            }
        }
        ScenarioKind::Bcl | ScenarioKind::FullMeasurement => {
            validate_bcl(require(&config.bcl, "bcl", config.kind)?)?;
        }
    }
    Ok(())
}

fn validate_tolerances(t: &Tolerances) -> Result<()> {
    let fields = [
        ("invariant", t.invariant),
        ("comparison", t.comparison),
        ("expectation", t.expectation),
        ("agreement", t.agreement),
        ("entropy", t.entropy),
        ("support_mass", t.support_mass),
    ];
    for (name, value) in fields {
        let path = format!("tolerances.{name}");
        finite(value, &path)?;
        if value < 0.0 {
            return Err(Error::validation(&path, "must be non-negative"));
        }
    }
    Ok(())
}

fn validate_grid(grid: &GridConfig) -> Result<LatticeGrid> {
    finite(grid.x_min, "grid.x_min")?;
    if let Some(dx) = grid.dx {
        finite(dx, "grid.dx")?;
    }
    if let Some(x_max) = grid.x_max {
        finite(x_max, "grid.x_max")?;
    }
    let n = grid.n_points;
    if !n.is_power_of_two() || !(64..=4096).contains(&n) {
        return Err(Error::validation(
            "grid.n_points",
            format!("{n} must be a power of two between 64 and 4096"),
        ));
    }
    grid.build()
}

fn validate_particles(particles: &ParticlesConfig, grid: &LatticeGrid) -> Result<()> {
    if particles.packets.len() != 2 {
        return Err(Error::validation(
            "particles.packets",
            format!("expected exactly 2 packets, found {}", particles.packets.len()),
        ));
    }
    for (i, p) in particles.packets.iter().enumerate() {
        finite(p.center, &format!("particles.packets[{i}].center"))?;
        finite(p.width, &format!("particles.packets[{i}].width"))?;
        gemenge_core::particles::gaussian_packet(*grid, p.center, p.width)
            .map_err(|e| Error::validation(&format!("particles.packets[{i}]"), e.to_string()))?;
    }
    Ok(())
}

fn validate_bcl(bcl: &BclConfig) -> Result<()> {
    for (i, o) in bcl.eigenvalues.iter().enumerate() {
        finite(*o, &format!("bcl.eigenvalues[{i}]"))?;
    }
    if bcl.eigenvalues.is_empty() {
        return Err(Error::validation("bcl.eigenvalues", "at least one eigenvalue required"));
    }
    let degeneracies = bcl.degeneracies();
    if degeneracies.len() != bcl.eigenvalues.len() {
        return Err(Error::validation(
            "bcl.degeneracies",
            format!("{} entries for {} eigenvalues", degeneracies.len(), bcl.eigenvalues.len()),
        ));
    }
    if let Some(i) = degeneracies.iter().position(|&d| d == 0) {
        return Err(Error::validation(&format!("bcl.degeneracies[{i}]"), "must be positive"));
    }
    if bcl.apparatus_dim.is_some() && matches!(bcl.pointer_basis, BasisChoice::Explicit(_)) {
        return Err(Error::validation(
            "bcl.apparatus_dim",
            "only meaningful with a canonical pointer basis",
        ));
    }
    let (ds, da) = (bcl.system_dim(), bcl.apparatus_dim());
    if da < bcl.eigenvalues.len() {
        return Err(Error::validation(
            "bcl.apparatus_dim",
            format!("{da} is smaller than the number of sectors {}", bcl.eigenvalues.len()),
        ));
    }
    if ds.saturating_mul(da) > tol::MAX_DENSE_DIM {
        return Err(Error::validation(
            "bcl",
            format!("system_dim·apparatus_dim = {} exceeds {}", ds * da, tol::MAX_DENSE_DIM),
        ));
    }
    let check_rows = |rows: &[Vec<Amplitude>], path: &str| -> Result<()> {
        for (i, row) in rows.iter().enumerate() {
            check_amplitudes(row, &format!("{path}[{i}]"))?;
        }
        Ok(())
    };
    if let BasisChoice::Explicit(rows) = &bcl.system_basis {
        check_rows(rows, "bcl.system_basis")?;
    }
    if let BasisChoice::Explicit(rows) = &bcl.pointer_basis {
        check_rows(rows, "bcl.pointer_basis")?;
    }
    if let TransferChoice::Explicit(rows) = &bcl.transfer_family {
        check_rows(rows, "bcl.transfer_family")?;
    }
    if let Some(ready) = &bcl.ready_state {
        check_amplitudes(ready, "bcl.ready_state")?;
    }
    check_amplitudes(&bcl.initial_state, "bcl.initial_state")?;
    if bcl.initial_state.len() != ds {
        return Err(Error::validation(
            "bcl.initial_state",
            format!("{} amplitudes for system dimension {ds}", bcl.initial_state.len()),
        ));
    }
    if bcl.witness == WitnessChoice::SigmaXPair && bcl.eigenvalues.len() < 2 {
        return Err(Error::validation("bcl.witness", "sigma_x_pair needs at least two sectors"));
    }
    bcl.build_spec()?;
    bcl.build_initial_state()?;
    Ok(())
}

fn check_amplitudes(amplitudes: &[Amplitude], path: &str) -> Result<()> {
    match amplitudes.iter().position(|a| !a.is_finite()) {
        Some(i) => Err(Error::validation(&format!("{path}[{i}]"), "amplitude is not finite")),
        None => Ok(()),
    }
}
