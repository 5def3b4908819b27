// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! Single-exponential fit `ε(t) = ε∞ + ε̃·exp(−t/τ)` of an error trajectory.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolve::Trajectory;

/// Fraction of samples at the end of the trajectory used to estimate `ε∞`.
pub const TAIL_FRACTION: f64 = 0.1;
/// Largest relative spread of the tail accepted as converged.
pub const TAIL_SPREAD_TOL: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub eps_inf: f64,
    pub eps_tilde: f64,
    pub tau: f64,
    /// Largest `|ε − model| / ε̃` inside the fit window.
    pub residual: f64,
    /// Time span used for the regression.
    pub window: (f64, f64),
}

impl DecayFit {
    pub fn model(&self, t: f64) -> f64 {
        self.eps_inf + self.eps_tilde * (-t / self.tau).exp()
    }

    /// Largest `|ε(t) − model(t)| / ε̃` over samples with `t ∈ [t0, t1]`.
    pub fn max_relative_residual(&self, times: &[f64], eps: &[f64], t0: f64, t1: f64) -> f64 {
        times
            .iter()
            .zip(eps)
            .filter(|(&t, _)| t >= t0 && t <= t1)
            .map(|(&t, &e)| (e - self.model(t)).abs() / self.eps_tilde)
            .fold(0.0, f64::max)
    }
}

pub fn fit_error_decay(traj: &Trajectory) -> Result<DecayFit> {
    fit_series(&traj.times, &traj.error)
}

/// Fit raw `(t, ε)` samples.
pub fn fit_series(times: &[f64], eps: &[f64]) -> Result<DecayFit> {
    let n = times.len();
    if n != eps.len() {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: eps.len(),
        });
    }
    if n < 20 {
        return Err(Error::FitFailed(format!("need at least 20 samples, got {n}")));
    }
    let tail_len = ((n as f64 * TAIL_FRACTION).ceil() as usize).max(2);
    let tail = &eps[n - tail_len..];
    let eps_inf = tail.iter().sum::<f64>() / tail_len as f64;
    let (lo, hi) = tail
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    let spread = hi - lo;
    if spread > TAIL_SPREAD_TOL * eps_inf.abs() && spread > 0.0 {
        return Err(Error::NotConverged(format!(
            "tail spread {spread:e} exceeds {}% of its mean {eps_inf:e}",
            TAIL_SPREAD_TOL * 100.0
        )));
    }

    let y: Vec<f64> = eps.iter().map(|e| e - eps_inf).collect();
    let y0 = y[0];
    if !(y0 > 0.0) {
        return Err(Error::FitFailed("trajectory does not start above its limit".into()));
    }
    let upper = y0 * (-1.0f64).exp();
    let lower = y0 * (-4.0f64).exp();
    let start = y
        .iter()
        .position(|&v| v <= upper)
        .ok_or_else(|| Error::FitFailed("error never falls to 1/e of its initial excess".into()))?;
    let mut end = start;
    while end + 1 < n && y[end + 1] >= lower {
        end += 1;
    }
    let window = start..=end;
    if end - start + 1 < 3 {
        return Err(Error::FitFailed(format!(
            "only {} samples in the fit window",
            end - start + 1
        )));
    }
    if let Some(i) = window.clone().find(|&i| !(y[i] > 0.0)) {
        return Err(Error::FitFailed(format!(
            "non-positive excess error at t = {}",
            times[i]
        )));
    }

    let m = (end - start + 1) as f64;
    let (sx, sy) = window
        .clone()
        .fold((0.0, 0.0), |(a, b), i| (a + times[i], b + y[i].ln()));
    let (mx, my) = (sx / m, sy / m);
    let (sxy, sxx) = window.clone().fold((0.0, 0.0), |(a, b), i| {
        let dx = times[i] - mx;
        (a + dx * (y[i].ln() - my), b + dx * dx)
    });
    if sxx == 0.0 {
        return Err(Error::FitFailed("degenerate time window".into()));
    }
    let slope = sxy / sxx;
    if !(slope < 0.0) {
        return Err(Error::FitFailed(format!("non-decaying slope {slope:e}")));
    }
    let intercept = my - slope * mx;
    let mut fit = DecayFit {
        eps_inf,
        eps_tilde: intercept.exp(),
        tau: -1.0 / slope,
        residual: 0.0,
        window: (times[start], times[end]),
    };
    fit.residual = fit.max_relative_residual(times, eps, times[start], times[end]);
    Ok(fit)
}
