// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! SQUID coupler formulas: tunable inductance, static and parametric
//! coupling rates, and coupler-induced relaxation and flux-noise dephasing.
//!
//! Flux arguments are dimensionless, in units of the flux quantum Φ₀.
//! Everything else is SI (H, A, Ω, rad/s, s).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::units::FLUX_QUANTUM;

/// Smallest `|cos(πΦ/Φ₀)|` accepted before the inductance is declared divergent.
pub const COS_FLOOR: f64 = 1e-6;
/// Modulation depth above which the linear parametric-rate formula is unreliable.
pub const SMALL_MODULATION: f64 = 0.15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircuitParams {
    /// Junction critical current (A).
    pub i_c: f64,
    /// Resonator inductance (H).
    pub l_r: f64,
    /// Qubit inductances (H).
    pub l_j: [f64; 2],
    /// Qubit plasma frequencies (rad/s).
    pub omega_j: [f64; 2],
    /// Resonator frequency (rad/s).
    pub omega_r: f64,
    /// Flux modulation amplitude (Φ₀).
    pub delta_phi: f64,
    /// Flux-line termination inductance (H).
    pub l_0: f64,
    /// Flux-line mutual inductance (H).
    pub m: f64,
    /// Flux-line impedance (Ω).
    pub z_0: f64,
    /// 1/f flux-noise amplitude (Φ₀).
    pub a_flux: f64,
    /// Noise integration band (Hz).
    pub f_min: f64,
    pub f_max: f64,
}

impl CircuitParams {
    pub fn validate(&self) -> Result<()> {
        let pos = [
            ("i_c", self.i_c),
            ("l_r", self.l_r),
            ("l_j[0]", self.l_j[0]),
            ("l_j[1]", self.l_j[1]),
            ("omega_j[0]", self.omega_j[0]),
            ("omega_j[1]", self.omega_j[1]),
            ("omega_r", self.omega_r),
            ("delta_phi", self.delta_phi),
            ("l_0", self.l_0),
            ("z_0", self.z_0),
            ("a_flux", self.a_flux),
            ("f_min", self.f_min),
            ("f_max", self.f_max),
        ];
        for (name, v) in pos {
            if !(v > 0.0) || !v.is_finite() {
                return Err(invalid(name, format!("must be positive and finite, got {v}")));
            }
        }
        if !(self.m >= 0.0) || !self.m.is_finite() {
            return Err(invalid("m", "mutual inductance must be non-negative"));
        }
        if self.f_min >= self.f_max {
            return Err(invalid("f_min", "noise band must satisfy f_min < f_max"));
        }
        Ok(())
    }

    fn qubit(&self, j: usize) -> Result<usize> {
        match j {
            1 | 2 => Ok(j - 1),
            _ => Err(invalid("j", format!("qubit index must be 1 or 2, got {j}"))),
        }
    }

    /// `Φ₀/(2π I_c cos(πΦ/Φ₀))`.
    pub fn squid_inductance(&self, phi: f64) -> Result<f64> {
        let c = (PI * phi).cos();
        if c.abs() <= COS_FLOOR {
            return Err(Error::Domain(format!("SQUID inductance diverges at Φ = {phi} Φ₀")));
        }
        Ok(FLUX_QUANTUM / (2.0 * PI * self.i_c * c))
    }

    /// `g_jr(Φ) = L_sq/(2√(L_r L_j)) · √(ω_j ω_r)`.
    pub fn static_coupling(&self, phi: f64, j: usize) -> Result<f64> {
        let k = self.qubit(j)?;
        let lsq = self.squid_inductance(phi)?;
        Ok(lsq / (2.0 * (self.l_r * self.l_j[k]).sqrt()) * (self.omega_j[k] * self.omega_r).sqrt())
    }

    /// Qubit-qubit analogue `L_sq/(2√(L₁L₂)) · √(ω₁ω₂)`.
    pub fn static_coupling_qq(&self, phi: f64) -> Result<f64> {
        let lsq = self.squid_inductance(phi)?;
        Ok(lsq / (2.0 * (self.l_j[0] * self.l_j[1]).sqrt()) * (self.omega_j[0] * self.omega_j[1]).sqrt())
    }

    /// `(∂g/∂Φ)·δΦ = π tan(πΦ/Φ₀) g(Φ) δΦ/Φ₀` for qubit-resonator coupling `j`.
    pub fn parametric_rate(&self, phi_bias: f64, delta_phi: f64, j: usize) -> Result<f64> {
        Ok(PI * (PI * phi_bias).tan() * self.static_coupling(phi_bias, j)? * delta_phi)
    }

    /// Parametric qubit-qubit rate.
    pub fn parametric_rate_qq(&self, phi_bias: f64, delta_phi: f64) -> Result<f64> {
        Ok(PI * (PI * phi_bias).tan() * self.static_coupling_qq(phi_bias)? * delta_phi)
    }

    /// Whether `delta_phi` is small enough for the linear rate formula.
    pub fn modulation_is_small(delta_phi: f64) -> bool {
        delta_phi.abs() <= SMALL_MODULATION
    }

    /// Input impedance seen through the SQUID at flux `phi`:
    /// `iω(L_sq − M) + iωM(iω(L₀ − M) + Z₀)/(iωL₀ + Z₀)`.
    pub fn input_impedance(&self, omega: f64, phi: f64) -> Result<Complex64> {
        if !(omega > 0.0) {
            return Err(invalid("omega", "must be positive"));
        }
        let iw = Complex64::new(0.0, omega);
        let lsq = self.squid_inductance(phi)?;
        let num = iw * (self.l_0 - self.m) + self.z_0;
        let den = iw * self.l_0 + self.z_0;
        Ok(iw * (lsq - self.m) + iw * self.m * num / den)
    }

    /// Closed-form coupler-limited `T₁ = L_j(ω_j²L₀² + Z₀²)/(ω_j²M²Z₀)`;
    /// infinite when `M = 0`.
    pub fn coupler_t1(&self, j: usize) -> Result<f64> {
        let k = self.qubit(j)?;
        if self.m == 0.0 {
            return Ok(f64::INFINITY);
        }
        let w = self.omega_j[k];
        Ok(self.l_j[k] * (w * w * self.l_0 * self.l_0 + self.z_0 * self.z_0) / (w * w * self.m * self.m * self.z_0))
    }

    /// General form `L_j / Re Z_in(ω_j)`.
    pub fn coupler_t1_general(&self, j: usize, phi: f64) -> Result<f64> {
        let k = self.qubit(j)?;
        let re = self.input_impedance(self.omega_j[k], phi)?.re;
        if re <= 0.0 {
            return Ok(f64::INFINITY);
        }
        Ok(self.l_j[k] / re)
    }

    /// RMS flux noise `A·√(2π ln(f_max/f_min))` in Φ₀.
    pub fn flux_noise_rms(&self) -> f64 {
        self.a_flux * (2.0 * PI * (self.f_max / self.f_min).ln()).sqrt()
    }

    /// Flux-noise limited `T₂*` of qubit `j` at bias `phi_bias`; infinite at
    /// the sweet spot.
    pub fn flux_dephasing_t2(&self, phi_bias: f64, j: usize) -> Result<f64> {
        let k = self.qubit(j)?;
        let lsq = self.squid_inductance(phi_bias)?;
        let x = PI * phi_bias;
        let slope = x.tan() / x.cos();
        let dw = (PI * self.omega_j[k] / 2.0) * (lsq / (self.l_j[k] + lsq)) * slope.abs() * self.flux_noise_rms();
        if dw == 0.0 {
            return Ok(f64::INFINITY);
        }
        Ok(1.0 / dw)
    }
}

/// One row of a flux sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluxPoint {
    pub phi: f64,
    pub g_1r: f64,
    pub g_2r: f64,
    pub g_12: f64,
    pub g_1r_param: f64,
    pub g_2r_param: f64,
    pub g_12_param: f64,
}

/// Static and parametric couplings on a flux grid (Φ₀ units).
pub fn flux_sweep(c: &CircuitParams, phis: &[f64]) -> Result<Vec<FluxPoint>> {
    c.validate()?;
    phis.iter()
        .map(|&phi| {
            Ok(FluxPoint {
                phi,
                g_1r: c.static_coupling(phi, 1)?,
                g_2r: c.static_coupling(phi, 2)?,
                g_12: c.static_coupling_qq(phi)?,
                g_1r_param: c.parametric_rate(phi, c.delta_phi, 1)?,
                g_2r_param: c.parametric_rate(phi, c.delta_phi, 2)?,
                g_12_param: c.parametric_rate_qq(phi, c.delta_phi)?,
            })
        })
        .collect()
}

/// CSV for a flux sweep; rates in rad/s.
pub fn flux_sweep_csv(points: &[FluxPoint]) -> Result<String> {
    use crate::metrics::sweep::format_f64;
    let mut w = csv::Writer::from_writer(Vec::new());
    let ser = |e: csv::Error| Error::Serialization(e.to_string());
    w.write_record([
        "phi [Phi0]",
        "g_1r [rad/s]",
        "g_2r [rad/s]",
        "g_12 [rad/s]",
        "g_1r_param [rad/s]",
        "g_2r_param [rad/s]",
        "g_12_param [rad/s]",
    ])
    .map_err(ser)?;
    for p in points {
        w.write_record(
            [p.phi, p.g_1r, p.g_2r, p.g_12, p.g_1r_param, p.g_2r_param, p.g_12_param]
                .iter()
                .map(|&x| format_f64(x)),
        )
        .map_err(ser)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Serialization(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
}

/// Transmon inductance and plasma frequency from `E_J/E_C` and `ω`:
/// `E_J = ħω√(r/8)`, `L_J = (Φ₀/2π)²/E_J`.
pub fn transmon_inductance(ej_over_ec: f64, omega: f64) -> Result<f64> {
    const HBAR: f64 = 1.054_571_817e-34;
    if !(ej_over_ec > 0.0) || !(omega > 0.0) {
        return Err(invalid("E_J/E_C", "ratio and frequency must be positive"));
    }
    let ej = HBAR * omega * (ej_over_ec / 8.0).sqrt();
    let phi_red = FLUX_QUANTUM / (2.0 * PI);
    Ok(phi_red * phi_red / ej)
}
