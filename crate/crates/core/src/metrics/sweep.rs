// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! Parameter sweeps and their tabular record.
//!
//! Grid points are evaluated in parallel and assembled in row-major grid
//! order, so output is independent of scheduling.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::hamiltonian::{Parity, SystemParams, TargetSpec};
use crate::metrics::analytic::analytic_rate;
use crate::metrics::{evaluate, evaluate_counter_rotating, PointMetrics};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub unit: String,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(name: impl Into<String>, unit: impl Into<String>, values: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            unit: unit.into(),
            values,
        }
    }
}

/// One evaluated grid point. Failed points keep `converged = false` and the
/// solver message; their metric fields are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub index: Vec<usize>,
    pub coords: Vec<f64>,
    pub eps_inf: Option<f64>,
    pub tau: Option<f64>,
    pub rate: Option<f64>,
    pub fidelity: Option<f64>,
    pub purity: Option<f64>,
    pub converged: bool,
    pub message: Option<String>,
    pub diagnostics: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMeta {
    pub kind: String,
    pub target: TargetSpec,
    pub base: SystemParams,
    pub code_version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub axes: Vec<Axis>,
    pub records: Vec<Record>,
    pub meta: SweepMeta,
}

/// What a point evaluator returns on success.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PointOutcome {
    pub eps_inf: f64,
    pub tau: Option<f64>,
    pub fidelity: f64,
    pub purity: Option<f64>,
    pub diagnostics: BTreeMap<String, f64>,
}

impl From<PointMetrics> for PointOutcome {
    fn from(m: PointMetrics) -> Self {
        Self {
            eps_inf: m.eps_inf,
            tau: Some(m.tau),
            fidelity: m.fidelity,
            purity: Some(m.purity),
            diagnostics: BTreeMap::new(),
        }
    }
}

/// Shortest round-trip decimal, switching to exponent form for very large
/// or very small magnitudes.
pub fn format_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn grid_indices(axes: &[Axis]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for ax in axes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..ax.values.len()).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    out
}

/// Evaluate `f` on the Cartesian product of `axes`.
pub fn run_grid<F>(axes: Vec<Axis>, meta: SweepMeta, f: F) -> Result<SweepResult>
where
    F: Fn(&[f64]) -> Result<PointOutcome> + Sync,
{
    for ax in &axes {
        if ax.values.is_empty() {
            return Err(invalid("grid", format!("axis {} is empty", ax.name)));
        }
        if ax.values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("grid", format!("axis {} has non-finite values", ax.name)));
        }
    }
    let indices = grid_indices(&axes);
    let records = indices
        .into_par_iter()
        .map(|index| {
            let coords: Vec<f64> = index.iter().zip(&axes).map(|(&i, ax)| ax.values[i]).collect();
            match f(&coords) {
                Ok(o) => Record {
                    index,
                    coords,
                    eps_inf: Some(o.eps_inf),
                    tau: o.tau,
                    rate: o.tau.map(|t| 1.0 / t),
                    fidelity: Some(o.fidelity),
                    purity: o.purity,
                    converged: o.eps_inf.is_finite(),
                    message: None,
                    diagnostics: o.diagnostics,
                },
                Err(e) => Record {
                    index,
                    coords,
                    eps_inf: None,
                    tau: None,
                    rate: None,
                    fidelity: None,
                    purity: None,
                    converged: false,
                    message: Some(e.to_string()),
                    diagnostics: BTreeMap::new(),
                },
            }
        })
        .collect();
    Ok(SweepResult { axes, records, meta })
}

impl SweepResult {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Record at a grid index.
    pub fn at(&self, index: &[usize]) -> Option<&Record> {
        self.records.iter().find(|r| r.index == index)
    }

    /// `ε∞` of every record in grid order; failed points are NaN.
    pub fn eps_values(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.eps_inf.unwrap_or(f64::NAN)).collect()
    }

    pub fn diagnostic_names(&self) -> Vec<String> {
        let set: BTreeSet<&String> = self.records.iter().flat_map(|r| r.diagnostics.keys()).collect();
        set.into_iter().cloned().collect()
    }

    /// CSV with one row per grid point.
    pub fn to_csv(&self) -> Result<String> {
        let diags = self.diagnostic_names();
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = self.axes.iter().map(|a| format!("{} [{}]", a.name, a.unit)).collect();
        header.extend(
            ["eps_inf", "tau [s]", "rate [1/s]", "fidelity", "purity", "converged"]
                .iter()
                .map(|s| s.to_string()),
        );
        header.extend(diags.iter().cloned());
        header.push("message".into());
        w.write_record(&header).map_err(ser)?;
        let opt = |x: Option<f64>| x.map(format_f64).unwrap_or_default();
        for r in &self.records {
            let mut row: Vec<String> = r.coords.iter().map(|&c| format_f64(c)).collect();
            row.push(opt(r.eps_inf));
            row.push(opt(r.tau));
            row.push(opt(r.rate));
            row.push(opt(r.fidelity));
            row.push(opt(r.purity));
            row.push(r.converged.to_string());
            for d in &diags {
                row.push(opt(r.diagnostics.get(d).copied()));
            }
            row.push(r.message.clone().unwrap_or_default());
            w.write_record(&row).map_err(ser)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Serialization(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
    }

    /// JSON with sorted keys.
    pub fn to_json(&self) -> Result<String> {
        let v = serde_json::to_value(self).map_err(|e| Error::Serialization(e.to_string()))?;
        serde_json::to_string_pretty(&v).map_err(|e| Error::Serialization(e.to_string()))
    }
}

fn ser(e: csv::Error) -> Error {
    Error::Serialization(e.to_string())
}

fn meta(kind: &str, target: &TargetSpec, base: &SystemParams) -> SweepMeta {
    SweepMeta {
        kind: kind.into(),
        target: *target,
        base: *base,
        code_version: env!("CARGO_PKG_VERSION").into(),
    }
}

/// Symmetric couplings at fixed ratios to `g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioPolicy {
    pub g_r_over_g: f64,
    pub kappa_over_g: f64,
}

impl RatioPolicy {
    /// `κ = 2g_r = (3/2)g`.
    pub const OPTIMAL: RatioPolicy = RatioPolicy {
        g_r_over_g: 0.75,
        kappa_over_g: 1.5,
    };

    /// `base` with symmetric couplings set from `g`, tuned to `target`.
    pub fn apply(&self, base: &SystemParams, g: f64, target: &TargetSpec) -> SystemParams {
        SystemParams {
            g12_plus: g,
            g12_minus: g,
            g1r: self.g_r_over_g * g,
            g2r: self.g_r_over_g * g,
            kappa: self.kappa_over_g * g,
            ..*base
        }
        .tuned_to(target)
    }
}

/// `ε∞` and `1/τ` versus `g` at fixed coupling ratios.
pub fn scan_error_and_rate(
    base: &SystemParams,
    target: &TargetSpec,
    g_grid: &[f64],
    policy: RatioPolicy,
) -> Result<SweepResult> {
    if g_grid.iter().any(|&g| !(g > 0.0)) {
        return Err(invalid("g_grid", "couplings must be positive"));
    }
    let axes = vec![Axis::new("g", "rad/s", g_grid.to_vec())];
    run_grid(axes, meta("scan_error_and_rate", target, base), |c| {
        let p = policy.apply(base, c[0], target);
        let mut o = PointOutcome::from(evaluate(&p, target)?);
        o.diagnostics
            .insert("gamma_eff".into(), analytic_rate(p.g12_plus, p.kappa)?);
        Ok(o)
    })
}

/// Which pair of couplings is scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AsymmetryKind {
    QubitQubit,
    QubitResonator,
}

/// Two-dimensional multiplicative asymmetry sweep around `base`.
pub fn sweep_asymmetry(
    base: &SystemParams,
    target: &TargetSpec,
    kind: AsymmetryKind,
    factors_a: &[f64],
    factors_b: &[f64],
) -> Result<SweepResult> {
    if factors_a.iter().chain(factors_b).any(|&f| !(f > 0.0)) {
        return Err(invalid("factors", "asymmetry factors must be positive"));
    }
    let (na, nb) = match kind {
        AsymmetryKind::QubitQubit => ("g12_plus_factor", "g12_minus_factor"),
        AsymmetryKind::QubitResonator => ("g1r_factor", "g2r_factor"),
    };
    let axes = vec![
        Axis::new(na, "1", factors_a.to_vec()),
        Axis::new(nb, "1", factors_b.to_vec()),
    ];
    let base = base.tuned_to(target);
    let nominal = evaluate(&base, target)?.eps_inf;
    run_grid(axes, meta("sweep_asymmetry", target, &base), |c| {
        let mut p = base;
        match kind {
            AsymmetryKind::QubitQubit => {
                p.g12_plus *= c[0];
                p.g12_minus *= c[1];
            }
            AsymmetryKind::QubitResonator => {
                p.g1r *= c[0];
                p.g2r *= c[1];
            }
        }
        let mut o = PointOutcome::from(evaluate(&p, target)?);
        o.diagnostics.insert("relative_to_nominal".into(), o.eps_inf / nominal);
        Ok(o)
    })
}

/// Multiplicative sweep of `κ` and `g_r` (both qubits) around `base`.
pub fn sweep_robustness(
    base: &SystemParams,
    target: &TargetSpec,
    kappa_factors: &[f64],
    g_r_factors: &[f64],
) -> Result<SweepResult> {
    if kappa_factors.iter().chain(g_r_factors).any(|&f| !(f > 0.0)) {
        return Err(invalid("factors", "deviation factors must be positive"));
    }
    let axes = vec![
        Axis::new("kappa_factor", "1", kappa_factors.to_vec()),
        Axis::new("g_r_factor", "1", g_r_factors.to_vec()),
    ];
    let base = base.tuned_to(target);
    run_grid(axes, meta("sweep_robustness", target, &base), |c| {
        let mut p = base;
        p.kappa *= c[0];
        p.g1r *= c[1];
        p.g2r *= c[1];
        Ok(evaluate(&p, target)?.into())
    })
}

/// Grids for the detuning study. Qubit detunings are parameterized as
/// `δ₁ = δ_c + δ_d`, `δ₂ = δ_c − δ_d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetuningGrids {
    pub common: Vec<f64>,
    pub differential: Vec<f64>,
    pub resonator: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetuningSweep {
    /// Over `(δ_c, δ_d)` at `Δ_r` from `base`.
    pub qubit: SweepResult,
    /// Over `Δ_r` at the qubit detunings of `base`.
    pub resonator: SweepResult,
}

/// Qubit common/differential detuning map and resonator detuning scan.
/// `parity` overrides the parity of `target`.
pub fn sweep_detuning(
    base: &SystemParams,
    target: &TargetSpec,
    parity: Parity,
    grids: &DetuningGrids,
) -> Result<DetuningSweep> {
    let target = TargetSpec::new(parity, target.psi());
    let base = base.tuned_to(&target);
    let axes = vec![
        Axis::new("delta_common", "rad/s", grids.common.clone()),
        Axis::new("delta_differential", "rad/s", grids.differential.clone()),
    ];
    let qubit = run_grid(axes, meta("sweep_detuning_qubit", &target, &base), |c| {
        let mut p = base;
        p.delta1 = c[0] + c[1];
        p.delta2 = c[0] - c[1];
        Ok(evaluate(&p, &target)?.into())
    })?;
    let resonator = run_grid(
        vec![Axis::new("delta_r", "rad/s", grids.resonator.clone())],
        meta("sweep_detuning_resonator", &target, &base),
        |c| {
            let mut p = base;
            p.delta_r = c[0];
            Ok(evaluate(&p, &target)?.into())
        },
    )?;
    Ok(DetuningSweep { qubit, resonator })
}

/// Error threshold label used in diagnostics, e.g. `t_eps_0.01`.
pub fn threshold_label(thr: f64) -> String {
    format!("t_eps_{}", format_f64(thr))
}

/// `ε∞(g)` with the leakage term at frequency `omega_chi`, plus the
/// resonant-model reference and threshold-crossing times from `|eg,0⟩`.
pub fn sweep_counter_rotating(
    base: &SystemParams,
    target: &TargetSpec,
    policy: RatioPolicy,
    omega_chi: f64,
    g_grid: &[f64],
    thresholds: &[f64],
    samples: usize,
) -> Result<SweepResult> {
    if !(omega_chi > 0.0) {
        return Err(invalid("omega_chi", "must be positive"));
    }
    let axes = vec![Axis::new("g", "rad/s", g_grid.to_vec())];
    let mut m = meta("sweep_counter_rotating", target, base);
    m.kind = format!("sweep_counter_rotating(omega_chi={})", format_f64(omega_chi));
    run_grid(axes, m, |c| {
        let p = policy.apply(base, c[0], target);
        let resonant = evaluate(&p, target)?;
        let cr = evaluate_counter_rotating(&p, target, omega_chi, samples, thresholds, 40.0 * resonant.tau)?;
        let mut o = PointOutcome {
            eps_inf: cr.eps_inf,
            tau: Some(resonant.tau),
            fidelity: 1.0 - cr.eps_inf,
            purity: None,
            diagnostics: BTreeMap::new(),
        };
        o.diagnostics.insert("eps_resonant".into(), resonant.eps_inf);
        o.diagnostics.insert("eps_cycle_max".into(), cr.eps_max);
        o.diagnostics.insert("eps_cycle_min".into(), cr.eps_min);
        for (thr, t) in thresholds.iter().zip(&cr.threshold_times) {
            if let Some(t) = t {
                o.diagnostics.insert(threshold_label(*thr), *t);
            }
        }
        Ok(o)
    })
}
