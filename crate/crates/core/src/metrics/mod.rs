// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! Steady-state error, convergence time and the studies built on them.

pub mod analytic;
pub mod optimize;
pub mod sweep;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::evolve::PeriodicLiouvillian;
use crate::hamiltonian::{build_h_eff, target_state, CounterRotating, SystemParams, TargetSpec};
use crate::liouvillian::Liouvillian;
use crate::quantum::{fidelity_to_target, partial_trace_resonator, purity, DensityMatrix, HilbertSpec, Level};

pub use analytic::{analytic_error, analytic_rate, AnalyticEstimates, Regime};
pub use optimize::{optimize_couplings, OptimizeOutcome, Optimum, SearchBox, SearchOptions};
pub use sweep::{Axis, RatioPolicy, Record, SweepResult};

/// Default slices per leakage period.
pub const DEFAULT_CR_SAMPLES: usize = 48;

/// Steady-state figures of merit at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointMetrics {
    pub eps_inf: f64,
    pub fidelity: f64,
    pub purity: f64,
    /// Relaxation time from the spectral gap (s).
    pub tau: f64,
    pub lambda1_re: f64,
    pub lambda1_im: f64,
}

/// Liouvillian for `params` stabilizing `target`.
pub fn liouvillian_for(params: &SystemParams, target: &TargetSpec) -> Result<(Liouvillian, HilbertSpec)> {
    let spec = params.hilbert()?;
    let h = build_h_eff(params, target)?;
    Ok((Liouvillian::build(h, params, &spec)?, spec))
}

/// Steady state and its error `1 − ⟨ξ|ρ_q|ξ⟩`.
pub fn steady_error(params: &SystemParams, target: &TargetSpec) -> Result<(DensityMatrix, f64)> {
    let (l, spec) = liouvillian_for(params, target)?;
    let rho = l.steady_state()?;
    let f = fidelity_to_target(&rho, &target_state(target), &spec)?;
    Ok((rho, 1.0 - f))
}

/// Steady state plus spectral gap.
pub fn evaluate(params: &SystemParams, target: &TargetSpec) -> Result<PointMetrics> {
    let (l, spec) = liouvillian_for(params, target)?;
    let rho = l.steady_state()?;
    let f = fidelity_to_target(&rho, &target_state(target), &spec)?;
    let q = partial_trace_resonator(&rho, &spec)?;
    let gap = l.spectral_gap()?;
    Ok(PointMetrics {
        eps_inf: 1.0 - f,
        fidelity: f,
        purity: purity(&q),
        tau: gap.tau,
        lambda1_re: gap.lambda1.re,
        lambda1_im: gap.lambda1.im,
    })
}

/// `|eg,0⟩`, the initial state used for trajectory metrics.
pub fn initial_state(spec: &HilbertSpec) -> DensityMatrix {
    let v = spec.basis_ket(Level::E, Level::G, 0);
    DensityMatrix::pure(&crate::quantum::Ket::new(v).expect("basis ket"))
}

/// Periodic steady state with the leakage term switched on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterRotatingMetrics {
    /// Error averaged over one period of the periodic steady state.
    pub eps_inf: f64,
    /// Largest and smallest error within that period.
    pub eps_max: f64,
    pub eps_min: f64,
    /// First time the error from `|eg,0⟩` falls below each threshold.
    pub threshold_times: Vec<Option<f64>>,
}

/// Evaluate the leakage model; threshold times are searched up to `t_max`.
pub fn evaluate_counter_rotating(
    params: &SystemParams,
    target: &TargetSpec,
    omega_chi: f64,
    samples: usize,
    thresholds: &[f64],
    t_max: f64,
) -> Result<CounterRotatingMetrics> {
    let (l, spec) = liouvillian_for(params, target)?;
    let cr = CounterRotating::new(params, target, omega_chi)?;
    let pl = PeriodicLiouvillian::new(&l, &cr, samples)?;
    let xi = target_state(target);
    let rho0 = pl.steady_state()?;
    let cycle = pl.cycle(&rho0)?;
    let mut errs = Vec::with_capacity(cycle.len());
    for rho in &cycle {
        errs.push(1.0 - fidelity_to_target(rho, &xi, &spec)?);
    }
    let eps_inf = errs.iter().sum::<f64>() / errs.len() as f64;
    let eps_max = errs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let eps_min = errs.iter().copied().fold(f64::INFINITY, f64::min);

    let mut threshold_times = vec![None; thresholds.len()];
    if !thresholds.is_empty() && t_max > 0.0 {
        // Period-resolved search: one monodromy application per period.
        let periods = (t_max / pl.period()).ceil() as usize;
        let mut v = crate::liouvillian::vectorize(initial_state(&spec).matrix());
        let mut pending: Vec<usize> = (0..thresholds.len()).collect();
        for k in 1..=periods {
            v = pl.monodromy() * v;
            let rho = DensityMatrix::from_unnormalized(crate::liouvillian::devectorize(&v)?)?;
            let e = 1.0 - fidelity_to_target(&rho, &xi, &spec)?;
            pending.retain(|&i| {
                if e <= thresholds[i] {
                    threshold_times[i] = Some(k as f64 * pl.period());
                    false
                } else {
                    true
                }
            });
            if pending.is_empty() {
                break;
            }
        }
    }
    Ok(CounterRotatingMetrics {
        eps_inf,
        eps_max,
        eps_min,
        threshold_times,
    })
}
