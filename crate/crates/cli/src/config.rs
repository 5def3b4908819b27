// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: the JSON schema users write, and its one-time
//! conversion into SI quantities.
//!
//! Every physical number in a config is interpreted through the explicit
//! `"units"` block. Conversion happens only in [`RunConfig::resolve`].

use std::f64::consts::TAU;
use std::path::Path;

use parastab_core::circuit::{transmon_inductance, CircuitParams};
use parastab_core::metrics::sweep::{AsymmetryKind, RatioPolicy};
use parastab_core::metrics::{SearchBox, SearchOptions};
use parastab_core::{Coherence, Parity, PumpPhases, SystemParams, TargetSpec};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("config schema violation at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("invalid value at `{path}`: {message}")]
    Invalid { path: String, message: String },
}

impl ConfigError {
    fn invalid(path: &str, message: impl Into<String>) -> Self {
        Self::Invalid {
            path: path.into(),
            message: message.into(),
        }
    }
}

type CResult<T> = std::result::Result<T, ConfigError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Steady,
    Evolve,
    Gap,
    Optimize,
    Sweep,
    Phase,
    Circuit,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Steady => "steady",
            Mode::Evolve => "evolve",
            Mode::Gap => "gap",
            Mode::Optimize => "optimize",
            Mode::Sweep => "sweep",
            Mode::Phase => "phase",
            Mode::Circuit => "circuit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrequencyUnit {
    #[serde(rename = "Hz")]
    Hz,
    #[serde(rename = "kHz")]
    KHz,
    #[serde(rename = "MHz")]
    MHz,
    #[serde(rename = "GHz")]
    GHz,
}

impl FrequencyUnit {
    /// Linear frequency in this unit to angular frequency in rad/s.
    pub fn to_rad_per_s(self, x: f64) -> f64 {
        let scale = match self {
            Self::Hz => 1.0,
            Self::KHz => 1e3,
            Self::MHz => 1e6,
            Self::GHz => 1e9,
        };
        TAU * x * scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TimeUnit {
    #[serde(rename = "s")]
    S,
    #[serde(rename = "ms")]
    Ms,
    #[serde(rename = "us")]
    Us,
    #[serde(rename = "ns")]
    Ns,
}

impl TimeUnit {
    pub fn to_seconds(self, x: f64) -> f64 {
        x * match self {
            Self::S => 1.0,
            Self::Ms => 1e-3,
            Self::Us => 1e-6,
            Self::Ns => 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseUnit {
    Rad,
    Deg,
}

impl PhaseUnit {
    pub fn to_rad(self, x: f64) -> f64 {
        match self {
            Self::Rad => x,
            Self::Deg => x.to_radians(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InductanceUnit {
    #[serde(rename = "H")]
    H,
    #[serde(rename = "nH")]
    NH,
    #[serde(rename = "pH")]
    PH,
}

impl InductanceUnit {
    pub fn to_henry(self, x: f64) -> f64 {
        x * match self {
            Self::H => 1.0,
            Self::NH => 1e-9,
            Self::PH => 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurrentUnit {
    #[serde(rename = "A")]
    A,
    #[serde(rename = "uA")]
    UA,
    #[serde(rename = "nA")]
    NA,
}

impl CurrentUnit {
    pub fn to_ampere(self, x: f64) -> f64 {
        x * match self {
            Self::A => 1.0,
            Self::UA => 1e-6,
            Self::NA => 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Units {
    pub frequency: FrequencyUnit,
    pub time: TimeUnit,
    pub phase: PhaseUnit,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inductance: Option<InductanceUnit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub current: Option<CurrentUnit>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetConfig {
    pub parity: Parity,
    #[serde(default)]
    pub psi: f64,
}

/// Physical parameters. Individual couplings override the symmetric
/// defaults derived from `g` and the ratios.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub g: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_r_over_g: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_over_g: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g12_plus: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g12_minus: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g1r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g2r: Option<f64>,
    #[serde(rename = "T1")]
    pub t1: f64,
    #[serde(rename = "T2")]
    pub t2: f64,
    #[serde(default)]
    pub chi1: f64,
    #[serde(default)]
    pub chi2: f64,
    #[serde(default)]
    pub delta1: f64,
    #[serde(default)]
    pub delta2: f64,
    #[serde(default)]
    pub delta_r: f64,
    #[serde(default = "default_n_res")]
    pub n_res: usize,
}

fn default_n_res() -> usize {
    2
}

/// Raw pump phases, bypassing the ψ-derived assignment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpertPhases {
    pub phi12_plus: f64,
    pub phi12_minus: f64,
    pub phi1r: f64,
    pub phi2r: f64,
}

/// A numeric grid, either listed or generated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    List(Vec<f64>),
    Range(GridRange),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridRange {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub log: bool,
}

impl Grid {
    pub fn values(&self, path: &str) -> CResult<Vec<f64>> {
        let v = match self {
            Grid::List(v) => v.clone(),
            Grid::Range(r) => {
                if r.points < 2 {
                    return Err(ConfigError::invalid(path, "a range grid needs at least 2 points"));
                }
                if r.log && !(r.start > 0.0 && r.stop > 0.0) {
                    return Err(ConfigError::invalid(path, "log grids need positive endpoints"));
                }
                (0..r.points)
                    .map(|k| {
                        let s = k as f64 / (r.points - 1) as f64;
                        if r.log {
                            (r.start.ln() + s * (r.stop.ln() - r.start.ln())).exp()
                        } else {
                            r.start + s * (r.stop - r.start)
                        }
                    })
                    .collect()
            }
        };
        if v.is_empty() {
            return Err(ConfigError::invalid(path, "grid is empty"));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(ConfigError::invalid(path, "grid contains non-finite values"));
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    #[default]
    Eg0,
    Gg0,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct EvolveConfig {
    /// End time in `units.time`; defaults to fifty relaxation times.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default)]
    pub initial: InitialState,
    /// Include the leakage term at this frequency (`units.frequency`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_chi: Option<f64>,
}

fn default_steps() -> usize {
    2000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizeConfig {
    #[serde(default = "default_gr_range")]
    pub g_r_range: (f64, f64),
    #[serde(default = "default_kappa_range")]
    pub kappa_range: (f64, f64),
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default = "default_rounds")]
    pub rounds: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        Self {
            g_r_range: default_gr_range(),
            kappa_range: default_kappa_range(),
            grid: default_grid(),
            rounds: default_rounds(),
            tol: default_tol(),
        }
    }
}

fn default_gr_range() -> (f64, f64) {
    SearchBox::default().g_r_ratio
}
fn default_kappa_range() -> (f64, f64) {
    SearchBox::default().kappa_ratio
}
fn default_grid() -> usize {
    SearchOptions::default().grid
}
fn default_rounds() -> usize {
    SearchOptions::default().rounds
}
fn default_tol() -> f64 {
    SearchOptions::default().tol
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    /// `ε∞` and `1/τ` versus `g` at fixed ratios.
    GScan,
    Asymmetry,
    Robustness,
    Detuning,
    CounterRotating,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub kind: SweepKind,
    /// `g` values (`units.frequency`) for `g_scan` and `counter_rotating`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_grid: Option<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asymmetry: Option<AsymmetryKind>,
    /// Dimensionless factor grids for `asymmetry` and `robustness`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors_a: Option<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors_b: Option<Grid>,
    /// Detuning grids (`units.frequency`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub common: Option<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differential: Option<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resonator: Option<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_chi: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub thresholds: Vec<f64>,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_samples() -> usize {
    parastab_core::metrics::DEFAULT_CR_SAMPLES
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseConfig {
    #[serde(default = "default_phase_points")]
    pub points: usize,
}

impl Default for PhaseConfig {
    fn default() -> Self {
        Self {
            points: default_phase_points(),
        }
    }
}

fn default_phase_points() -> usize {
    32
}

/// A qubit in the circuit section: either an inductance or a transmon
/// `E_J/E_C` ratio that is converted with the plasma frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitQubit {
    pub omega: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_j: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ej_over_ec: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitConfig {
    pub i_c: f64,
    pub l_r: f64,
    pub omega_r: f64,
    pub qubits: [CircuitQubit; 2],
    /// Φ₀ units.
    pub delta_phi: f64,
    pub l_0: f64,
    pub m: f64,
    /// Ω.
    pub z_0: f64,
    /// Φ₀ units.
    pub a_flux: f64,
    /// Hz, independent of `units.frequency`.
    pub noise_band_hz: (f64, f64),
    /// Φ₀ units.
    pub phi_bias: f64,
    /// Φ₀ units.
    pub flux_grid: Grid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    pub units: Units,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expert_phases: Option<ExpertPhases>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evolve: Option<EvolveConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimize: Option<OptimizeConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<PhaseConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit: Option<CircuitConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<String>,
}

/// Parse and validate configuration text.
pub fn parse_config_str(text: &str) -> CResult<RunConfig> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| ConfigError::Schema {
        path: e.path().to_string(),
        message: e.into_inner().to_string(),
    })?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn parse_config(path: &Path) -> CResult<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config_str(&text)
}

pub fn serialize_config(cfg: &RunConfig) -> String {
    let v = serde_json::to_value(cfg).expect("config is always serializable");
    serde_json::to_string_pretty(&v).expect("value is always serializable")
}

fn non_negative(path: &str, v: f64) -> CResult<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(ConfigError::invalid(
            path,
            format!("rate must be finite and non-negative, got {v}"),
        ))
    }
}

fn positive(path: &str, v: f64) -> CResult<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(ConfigError::invalid(path, format!("must be positive, got {v}")))
    }
}

impl RunConfig {
    /// Checks that do not depend on the run mode.
    pub fn validate(&self) -> CResult<()> {
        if let Some(s) = &self.system {
            non_negative("system.g", s.g)?;
            for (name, v) in [
                ("system.g_r_over_g", s.g_r_over_g),
                ("system.kappa_over_g", s.kappa_over_g),
                ("system.g_r", s.g_r),
                ("system.kappa", s.kappa),
                ("system.g12_plus", s.g12_plus),
                ("system.g12_minus", s.g12_minus),
                ("system.g1r", s.g1r),
                ("system.g2r", s.g2r),
            ] {
                if let Some(v) = v {
                    non_negative(name, v)?;
                }
            }
            positive("system.T1", s.t1)?;
            positive("system.T2", s.t2)?;
            for (name, v) in [
                ("system.chi1", s.chi1),
                ("system.chi2", s.chi2),
                ("system.delta1", s.delta1),
                ("system.delta2", s.delta2),
                ("system.delta_r", s.delta_r),
            ] {
                if !v.is_finite() {
                    return Err(ConfigError::invalid(name, "must be finite"));
                }
            }
            if s.n_res < 2 {
                return Err(ConfigError::invalid("system.n_res", "need at least 2 resonator levels"));
            }
        }
        if let Some(c) = &self.circuit {
            if self.units.inductance.is_none() {
                return Err(ConfigError::invalid(
                    "units.inductance",
                    "required when a circuit section is present",
                ));
            }
            if self.units.current.is_none() {
                return Err(ConfigError::invalid(
                    "units.current",
                    "required when a circuit section is present",
                ));
            }
            for (i, q) in c.qubits.iter().enumerate() {
                if q.l_j.is_some() == q.ej_over_ec.is_some() {
                    return Err(ConfigError::invalid(
                        &format!("circuit.qubits[{i}]"),
                        "give exactly one of l_j or ej_over_ec",
                    ));
                }
            }
        }
        if let Some(o) = &self.optimize {
            if o.grid < 21 {
                return Err(ConfigError::invalid(
                    "optimize.grid",
                    "coarse grid needs at least 21 points per axis",
                ));
            }
        }
        if let Some(sw) = &self.sweep {
            if sw.samples < parastab_core::evolve::MIN_SAMPLES_PER_PERIOD {
                return Err(ConfigError::invalid(
                    "sweep.samples",
                    "need at least 40 slices per period",
                ));
            }
        }
        Ok(())
    }

    /// Mode from the command line, cross-checked with the config.
    pub fn effective_mode(&self, cli: Mode) -> CResult<Mode> {
        match self.mode {
            Some(m) if m != cli => Err(ConfigError::invalid(
                "mode",
                format!("config declares mode `{}` but `{}` was requested", m.name(), cli.name()),
            )),
            _ => Ok(cli),
        }
    }

    pub fn target(&self) -> CResult<TargetSpec> {
        let t = self
            .target
            .as_ref()
            .ok_or_else(|| ConfigError::invalid("target", "this mode needs a target section"))?;
        Ok(TargetSpec::new(t.parity, self.units.phase.to_rad(t.psi)))
    }

    /// SI system parameters tuned to the target (or to expert phases).
    pub fn system_params(&self) -> CResult<SystemParams> {
        let s = self
            .system
            .as_ref()
            .ok_or_else(|| ConfigError::invalid("system", "this mode needs a system section"))?;
        let f = |x: f64| self.units.frequency.to_rad_per_s(x);
        let t = |x: f64| self.units.time.to_seconds(x);
        let g = f(s.g);
        let g_r = s
            .g_r
            .map(f)
            .unwrap_or(s.g_r_over_g.unwrap_or(RatioPolicy::OPTIMAL.g_r_over_g) * g);
        let kappa = s
            .kappa
            .map(f)
            .unwrap_or(s.kappa_over_g.unwrap_or(RatioPolicy::OPTIMAL.kappa_over_g) * g);
        let coherence =
            Coherence::new(t(s.t1), t(s.t2)).map_err(|e| ConfigError::invalid("system.T2", e.to_string()))?;
        let mut p = SystemParams::symmetric(g, g_r, kappa, coherence)
            .map_err(|e| ConfigError::invalid("system", e.to_string()))?;
        p.g12_plus = s.g12_plus.map(f).unwrap_or(g);
        p.g12_minus = s.g12_minus.map(f).unwrap_or(g);
        p.g1r = s.g1r.map(f).unwrap_or(g_r);
        p.g2r = s.g2r.map(f).unwrap_or(g_r);
        p.chi1 = f(s.chi1);
        p.chi2 = f(s.chi2);
        p.delta1 = f(s.delta1);
        p.delta2 = f(s.delta2);
        p.delta_r = f(s.delta_r);
        p.n_res = s.n_res;
        p = match &self.expert_phases {
            Some(e) => {
                let ph = |x: f64| self.units.phase.to_rad(x);
                p.with_pump_phases(PumpPhases {
                    phi12_plus: ph(e.phi12_plus),
                    phi12_minus: ph(e.phi12_minus),
                    phi1r: ph(e.phi1r),
                    phi2r: ph(e.phi2r),
                })
            }
            None => match &self.target {
                Some(_) => p.tuned_to(&self.target()?),
                None => p,
            },
        };
        p.validate()
            .map_err(|e| ConfigError::invalid("system", e.to_string()))?;
        Ok(p)
    }

    /// Coupling ratios of the system section, used by ray-based sweeps.
    pub fn ratio_policy(&self) -> CResult<RatioPolicy> {
        let p = self.system_params()?;
        if p.g12_plus == 0.0 {
            return Err(ConfigError::invalid("system.g", "ratios undefined at g = 0"));
        }
        Ok(RatioPolicy {
            g_r_over_g: p.g1r / p.g12_plus,
            kappa_over_g: p.kappa / p.g12_plus,
        })
    }

    pub fn frequency_grid(&self, grid: &Option<Grid>, path: &str) -> CResult<Vec<f64>> {
        let g = grid
            .as_ref()
            .ok_or_else(|| ConfigError::invalid(path, "grid required for this sweep kind"))?;
        Ok(g.values(path)?
            .into_iter()
            .map(|x| self.units.frequency.to_rad_per_s(x))
            .collect())
    }

    pub fn search(&self) -> (SearchBox, SearchOptions) {
        let o = self.optimize.clone().unwrap_or_default();
        (
            SearchBox {
                g_r_ratio: o.g_r_range,
                kappa_ratio: o.kappa_range,
            },
            SearchOptions {
                grid: o.grid,
                rounds: o.rounds,
                tol: o.tol,
            },
        )
    }

    /// SI circuit parameters plus bias flux and flux grid (Φ₀ units).
    pub fn circuit_params(&self) -> CResult<(CircuitParams, f64, Vec<f64>)> {
        let c = self
            .circuit
            .as_ref()
            .ok_or_else(|| ConfigError::invalid("circuit", "circuit mode needs a circuit section"))?;
        let lu = self.units.inductance.expect("validated");
        let cu = self.units.current.expect("validated");
        let f = |x: f64| self.units.frequency.to_rad_per_s(x);
        let mut l_j = [0.0; 2];
        let mut omega_j = [0.0; 2];
        for (i, q) in c.qubits.iter().enumerate() {
            omega_j[i] = f(q.omega);
            l_j[i] = match (q.l_j, q.ej_over_ec) {
                (Some(l), None) => lu.to_henry(l),
                (None, Some(r)) => transmon_inductance(r, omega_j[i])
                    .map_err(|e| ConfigError::invalid(&format!("circuit.qubits[{i}]"), e.to_string()))?,
                _ => unreachable!("validated"),
            };
        }
        let params = CircuitParams {
            i_c: cu.to_ampere(c.i_c),
            l_r: lu.to_henry(c.l_r),
            l_j,
            omega_j,
            omega_r: f(c.omega_r),
            delta_phi: c.delta_phi,
            l_0: lu.to_henry(c.l_0),
            m: lu.to_henry(c.m),
            z_0: c.z_0,
            a_flux: c.a_flux,
            f_min: c.noise_band_hz.0,
            f_max: c.noise_band_hz.1,
        };
        params
            .validate()
            .map_err(|e| ConfigError::invalid("circuit", e.to_string()))?;
        Ok((params, c.phi_bias, c.flux_grid.values("circuit.flux_grid")?))
    }
}
