// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! Continuous rotation of the stabilized state inside a parity manifold,
//! driven by the single phase `ψ`, and two-qubit tomogram export.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{target_state, Parity, PumpPhases, SystemParams, TargetSpec};
use crate::metrics::steady_error;
use crate::metrics::sweep::format_f64;
use crate::quantum::{partial_trace_resonator, purity, DensityMatrix, HilbertSpec};

pub const BASIS_LABELS: [&str; 4] = ["gg", "ge", "eg", "ee"];

/// Steady state for a rotated target.
#[derive(Debug, Clone)]
pub struct Stabilized {
    pub target: TargetSpec,
    pub rho: DensityMatrix,
    pub spec: HilbertSpec,
    pub fidelity: f64,
}

/// Solve for the steady state with pump phases derived from `ψ`. Any pump
/// phases already present in `params` are replaced.
pub fn stabilize_rotated(params: &SystemParams, parity: Parity, psi: f64) -> Result<Stabilized> {
    let target = TargetSpec::new(parity, psi);
    stabilize_inner(&params.tuned_to(&target), target)
}

/// Expert path: explicit raw pump phases, for studies that break the
/// table assignment on purpose.
pub fn stabilize_with_phases(params: &SystemParams, target: TargetSpec, phases: PumpPhases) -> Result<Stabilized> {
    stabilize_inner(&params.with_pump_phases(phases), target)
}

fn stabilize_inner(p: &SystemParams, target: TargetSpec) -> Result<Stabilized> {
    let (rho, eps) = steady_error(p, &target)?;
    Ok(Stabilized {
        target,
        spec: p.hilbert()?,
        rho,
        fidelity: 1.0 - eps,
    })
}

/// Two-qubit reduced density matrix with magnitude and phase per element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tomogram {
    pub basis: Vec<String>,
    pub re: [[f64; 4]; 4],
    pub im: [[f64; 4]; 4],
    pub mag: [[f64; 4]; 4],
    pub phase: [[f64; 4]; 4],
}

/// Wrap to `(−π, π]`.
fn wrap_signed(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y <= -PI {
        y + 2.0 * PI
    } else {
        y
    }
}

impl Tomogram {
    /// Phases are referenced to the largest diagonal element. That element
    /// is real and positive for any valid state, so the reference is zero up
    /// to rounding.
    pub fn from_state(rho: &DensityMatrix, spec: &HilbertSpec) -> Result<Self> {
        let q = if rho.dim() == 4 {
            rho.clone()
        } else {
            partial_trace_resonator(rho, spec)?
        };
        let m = q.matrix();
        let k = (0..4)
            .max_by(|&a, &b| m[(a, a)].re.total_cmp(&m[(b, b)].re))
            .expect("four entries");
        let reference = m[(k, k)].arg();
        let mut t = Tomogram {
            basis: BASIS_LABELS.iter().map(|s| s.to_string()).collect(),
            re: [[0.0; 4]; 4],
            im: [[0.0; 4]; 4],
            mag: [[0.0; 4]; 4],
            phase: [[0.0; 4]; 4],
        };
        for i in 0..4 {
            for j in 0..4 {
                let z = m[(i, j)];
                t.re[i][j] = z.re;
                t.im[i][j] = z.im;
                t.mag[i][j] = z.norm();
                t.phase[i][j] = if z.norm() == 0.0 {
                    0.0
                } else {
                    wrap_signed(z.arg() - reference)
                };
            }
        }
        Ok(t)
    }

    /// Phase of the manifold coherence, `arg⟨ee|ρ|gg⟩` (even) or
    /// `arg⟨eg|ρ|ge⟩` (odd), in `[0, 2π)`. It equals `ψ + π` for the target.
    pub fn coherence_phase(&self, parity: Parity) -> f64 {
        let (i, j) = match parity {
            Parity::Even => (3, 0),
            Parity::Odd => (2, 1),
        };
        self.phase[i][j].rem_euclid(2.0 * PI)
    }

    pub fn to_json(&self) -> Result<String> {
        let v = serde_json::to_value(self).map_err(|e| Error::Serialization(e.to_string()))?;
        serde_json::to_string_pretty(&v).map_err(|e| Error::Serialization(e.to_string()))
    }
}

/// Population of the parity manifold and purity of the two-qubit state.
pub fn manifold_metrics(rho: &DensityMatrix, parity: Parity, spec: &HilbertSpec) -> Result<(f64, f64)> {
    let q = if rho.dim() == 4 {
        rho.clone()
    } else {
        partial_trace_resonator(rho, spec)?
    };
    let m = q.matrix();
    let pop = match parity {
        Parity::Even => m[(0, 0)].re + m[(3, 3)].re,
        Parity::Odd => m[(1, 1)].re + m[(2, 2)].re,
    };
    Ok((pop, purity(&q)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub psi: f64,
    pub fidelity: f64,
    pub population: f64,
    pub purity: f64,
    pub coherence_phase: f64,
}

/// Fidelity, manifold population, purity and coherence phase over `psis`.
pub fn phase_sweep(params: &SystemParams, parity: Parity, psis: &[f64]) -> Result<Vec<PhasePoint>> {
    psis.par_iter()
        .map(|&psi| {
            let s = stabilize_rotated(params, parity, psi)?;
            let (population, purity) = manifold_metrics(&s.rho, parity, &s.spec)?;
            let tomo = Tomogram::from_state(&s.rho, &s.spec)?;
            Ok(PhasePoint {
                psi: s.target.psi(),
                fidelity: s.fidelity,
                population,
                purity,
                coherence_phase: tomo.coherence_phase(parity),
            })
        })
        .collect()
}

/// `n` equally spaced phases on `[0, 2π)`.
pub fn psi_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
}

/// Circular distance between two angles.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    wrap_signed(a - b).abs()
}

pub fn phase_sweep_csv(points: &[PhasePoint]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let ser = |e: csv::Error| Error::Serialization(e.to_string());
    w.write_record(["psi [rad]", "fidelity", "population", "purity", "coherence_phase [rad]"])
        .map_err(ser)?;
    for p in points {
        w.write_record(
            [p.psi, p.fidelity, p.population, p.purity, p.coherence_phase]
                .iter()
                .map(|&x| format_f64(x)),
        )
        .map_err(ser)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Serialization(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
}

/// `c_p(ψ)·ξ(ψ)` norm, zero for every `ψ`.
pub fn dark_state_residual(t: &TargetSpec) -> f64 {
    let c = crate::hamiltonian::collapse_operator(t);
    (&c * target_state(t).as_vector()).norm()
}
