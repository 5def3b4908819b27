// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! Unit conversions used at the configuration boundary.

use std::f64::consts::TAU;

/// Magnetic flux quantum h/2e in webers.
pub const FLUX_QUANTUM: f64 = 2.067_833_848e-15;

pub fn hz_to_rad_per_s(f: f64) -> f64 {
    TAU * f
}

pub fn rad_per_s_to_hz(w: f64) -> f64 {
    w / TAU
}

/// Linear MHz to angular frequency in rad/s.
pub fn mhz(f: f64) -> f64 {
    TAU * f * 1e6
}

/// Linear GHz to angular frequency in rad/s.
pub fn ghz(f: f64) -> f64 {
    TAU * f * 1e9
}

pub fn us(t: f64) -> f64 {
    t * 1e-6
}

pub fn ns(t: f64) -> f64 {
    t * 1e-9
}

pub fn flux_quanta_to_wb(phi: f64) -> f64 {
    phi * FLUX_QUANTUM
}

pub fn wb_to_flux_quanta(phi: f64) -> f64 {
    phi / FLUX_QUANTUM
}
