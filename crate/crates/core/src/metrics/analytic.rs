// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form estimates of the steady-state error and preparation rate,
//! valid at `g_r = (3/4)·g`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Coupling ratio at which the closed forms hold.
pub const ANALYTIC_RATIO: f64 = 0.75;
const RATIO_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `κ ≫ g`.
    KappaDominated,
    /// `κ ≪ g`.
    GDominated,
    /// Optimal ratios.
    Optimal,
}

/// `C = 4g²/(κγ₁)`.
pub fn cooperativity(g: f64, kappa: f64, gamma1: f64) -> f64 {
    4.0 * g * g / (kappa * gamma1)
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("must be positive and finite, got {v}")))
    }
}

/// Asymptotic steady-state error in the requested regime.
pub fn analytic_error(g: f64, g_r: f64, kappa: f64, gamma1: f64, regime: Regime) -> Result<f64> {
    check_positive("g", g)?;
    check_positive("g_r", g_r)?;
    check_positive("kappa", kappa)?;
    check_positive("gamma1", gamma1)?;
    let ratio = g_r / g;
    if (ratio - ANALYTIC_RATIO).abs() > RATIO_TOL {
        return Err(Error::Precondition(format!(
            "closed forms assume g_r/g = {ANALYTIC_RATIO}, got {ratio}"
        )));
    }
    Ok(match regime {
        Regime::KappaDominated => 12.6 * gamma1 / kappa,
        Regime::GDominated => 22.4 / cooperativity(g, kappa, gamma1),
        Regime::Optimal => 16.8 * gamma1 / g,
    })
}

/// `Γ_eff = κg²/(2(g²+κ²))`, an upper bound on the spectral gap.
pub fn analytic_rate(g: f64, kappa: f64) -> Result<f64> {
    check_positive("g", g)?;
    check_positive("kappa", kappa)?;
    Ok(kappa * g * g / (2.0 * (g * g + kappa * kappa)))
}

/// Limit of the rate for `κ ≫ g`.
pub fn rate_strong_damping(g: f64, kappa: f64) -> f64 {
    0.49 * g * g / kappa
}

/// Limit of the rate for `κ ≪ g`.
pub fn rate_weak_damping(kappa: f64) -> f64 {
    0.5 * kappa
}

/// All closed-form numbers for one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticEstimates {
    pub eps_kappa_dom: f64,
    pub eps_g_dom: f64,
    pub eps_min: f64,
    pub cooperativity: f64,
    pub gamma_c0_strong: f64,
    pub gamma_c0_weak: f64,
    pub gamma_eff: f64,
}

impl AnalyticEstimates {
    pub fn new(g: f64, g_r: f64, kappa: f64, gamma1: f64) -> Result<Self> {
        Ok(Self {
            eps_kappa_dom: analytic_error(g, g_r, kappa, gamma1, Regime::KappaDominated)?,
            eps_g_dom: analytic_error(g, g_r, kappa, gamma1, Regime::GDominated)?,
            eps_min: analytic_error(g, g_r, kappa, gamma1, Regime::Optimal)?,
            cooperativity: cooperativity(g, kappa, gamma1),
            gamma_c0_strong: rate_strong_damping(g, kappa),
            gamma_c0_weak: rate_weak_damping(kappa),
            gamma_eff: analytic_rate(g, kappa)?,
        })
    }
}
