// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! Interaction-frame Hamiltonians for parametric two-qubit stabilization.
//!
//! The photon-number conditioned qubit-qubit couplings act through Fock
//! projectors: one coupling is active only in the zero-photon sector and the
//! other only in the one-photon sector. Qubit-resonator couplings are the
//! resonant `0 ↔ 1` photon transitions. Levels `n ≥ 2` carry no engineered
//! coupling and are reached only through detunings and decay.
//!
//! Phase conventions for the qubit-resonator terms follow the static part of
//! the interaction-frame expansion, which is what makes the pump-phase table
//! below produce a dark target:
//!
//! * even parity: `⟨·,1|H|·,0⟩` carries `g_jr e^{iφ_jr}` on `σ₁` and `σ₂†`,
//! * odd parity:  `⟨·,0|H|·,1⟩` carries `g_jr e^{iφ_jr}` on `σ₁` and `σ₂`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::quantum::{CMatrix, CVector, HilbertSpec, Ket, Slot, ONE};

/// Excitation-number parity of the stabilized Bell manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Reduce an angle to `[0, 2π)`.
pub fn wrap_phase(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Which maximally entangled state to stabilize.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetSpec {
    pub parity: Parity,
    psi: f64,
}

impl TargetSpec {
    pub fn new(parity: Parity, psi: f64) -> Self {
        Self {
            parity,
            psi: wrap_phase(psi),
        }
    }

    pub fn even(psi: f64) -> Self {
        Self::new(Parity::Even, psi)
    }

    pub fn odd(psi: f64) -> Self {
        Self::new(Parity::Odd, psi)
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    /// The phase-flipped partner `|ξ̄⟩` in the same parity manifold.
    pub fn complement(&self) -> Self {
        Self::new(self.parity, self.psi + std::f64::consts::PI)
    }
}

/// Pump phases `(φ₁₂⁺, φ₁₂⁻, φ₁r, φ₂r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpPhases {
    pub phi12_plus: f64,
    pub phi12_minus: f64,
    pub phi1r: f64,
    pub phi2r: f64,
}

/// Pump-phase assignment that makes `target_state(t)` the dark state.
pub fn pump_phases(t: &TargetSpec) -> PumpPhases {
    let psi = t.psi();
    match t.parity {
        Parity::Even => PumpPhases {
            phi12_plus: wrap_phase(FRAC_PI_2 - psi),
            phi12_minus: 0.0,
            phi1r: 0.0,
            phi2r: psi,
        },
        Parity::Odd => PumpPhases {
            phi12_plus: 0.0,
            phi12_minus: wrap_phase(FRAC_PI_2 - psi),
            phi1r: 0.0,
            phi2r: psi,
        },
    }
}

/// Two-qubit target: `(|gg⟩ − e^{iψ}|ee⟩)/√2` or `(|ge⟩ − e^{iψ}|eg⟩)/√2`.
pub fn target_state(t: &TargetSpec) -> Ket {
    let mut v = CVector::zeros(4);
    let phase = Complex64::from_polar(FRAC_1_SQRT_2, t.psi());
    let (a, b) = match t.parity {
        Parity::Even => (0, 3),
        Parity::Odd => (1, 2),
    };
    v[a] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    v[b] = -phase;
    Ket::new(v).expect("unit norm by construction")
}

/// Engineered two-qubit collapse operator annihilating the target.
pub fn collapse_operator(t: &TargetSpec) -> CMatrix {
    let sm = crate::quantum::sigma_minus();
    let i2 = CMatrix::identity(2, 2);
    let s1 = sm.kronecker(&i2);
    let s2 = i2.kronecker(&sm);
    let phase = Complex64::from_polar(1.0, t.psi());
    match t.parity {
        Parity::Even => s1 + s2.adjoint() * phase,
        Parity::Odd => s1 + s2 * phase,
    }
}

/// All physical rates (rad/s) and phases (rad) of the scheme.
///
/// `gammaphi_j` follows the master-equation prefactor convention
/// `(γ_φ/2)·𝒟[Z]` with `𝒟[o]ρ = 2oρo† − {o†o, ρ}`, i.e. a standard
/// Lindblad Z channel of rate `2γ_φ` that damps coherences at `4γ_φ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub g12_plus: f64,
    pub g12_minus: f64,
    pub phi12_plus: f64,
    pub phi12_minus: f64,
    pub g1r: f64,
    pub g2r: f64,
    pub phi1r: f64,
    pub phi2r: f64,
    pub kappa: f64,
    pub gamma1_1: f64,
    pub gamma1_2: f64,
    pub gammaphi_1: f64,
    pub gammaphi_2: f64,
    pub chi1: f64,
    pub chi2: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub delta_r: f64,
    pub n_res: usize,
}

/// Qubit coherence times, converted to master-equation rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coherence {
    /// Energy relaxation time T₁ (s).
    pub t1: f64,
    /// Coherence time T₂ (s).
    pub t2: f64,
}

impl Coherence {
    /// T₁ = 100 µs, T₂ = 200 µs.
    pub const BEST_CASE: Coherence = Coherence { t1: 100e-6, t2: 200e-6 };
    /// T₁ = T₂ = 10 µs.
    pub const WORST_CASE: Coherence = Coherence { t1: 10e-6, t2: 10e-6 };

    pub fn new(t1: f64, t2: f64) -> Result<Self> {
        let c = Self { t1, t2 };
        c.rates()?;
        Ok(c)
    }

    /// `(γ₁, γ_φ)` with `γ₁ = 1/T₁` and `γ_φ = Γ_φ/4`, where the pure dephasing
    /// rate `Γ_φ = 1/T₂ − 1/(2T₁)` is the coherence decay it produces.
    /// Infinite times map to zero rates.
    pub fn rates(&self) -> Result<(f64, f64)> {
        if !(self.t1 > 0.0) || !(self.t2 > 0.0) {
            return Err(invalid("T1/T2", "coherence times must be positive"));
        }
        let gamma1 = 1.0 / self.t1;
        let pure = 1.0 / self.t2 - 0.5 * gamma1;
        if pure < -1e-12 * gamma1 {
            return Err(invalid(
                "T2",
                format!("T2 = {} exceeds 2·T1 = {}", self.t2, 2.0 * self.t1),
            ));
        }
        Ok((gamma1, pure.max(0.0) / 4.0))
    }
}

impl SystemParams {
    /// Symmetric couplings `g₁₂± = g`, `g_jr = g_r`, identical qubits, zero
    /// detunings and dispersive shifts, zero phases.
    pub fn symmetric(g: f64, g_r: f64, kappa: f64, coherence: Coherence) -> Result<Self> {
        let (gamma1, gammaphi) = coherence.rates()?;
        let p = Self {
            g12_plus: g,
            g12_minus: g,
            phi12_plus: 0.0,
            phi12_minus: 0.0,
            g1r: g_r,
            g2r: g_r,
            phi1r: 0.0,
            phi2r: 0.0,
            kappa,
            gamma1_1: gamma1,
            gamma1_2: gamma1,
            gammaphi_1: gammaphi,
            gammaphi_2: gammaphi,
            chi1: 0.0,
            chi2: 0.0,
            delta1: 0.0,
            delta2: 0.0,
            delta_r: 0.0,
            n_res: 2,
        };
        p.validate()?;
        Ok(p)
    }

    /// Symmetric parameters along the optimal ray `κ = 2g_r = (3/2)g`.
    pub fn optimal_ray(g: f64, coherence: Coherence) -> Result<Self> {
        Self::symmetric(g, 0.75 * g, 1.5 * g, coherence)
    }

    pub fn with_pump_phases(mut self, p: PumpPhases) -> Self {
        self.phi12_plus = wrap_phase(p.phi12_plus);
        self.phi12_minus = wrap_phase(p.phi12_minus);
        self.phi1r = wrap_phase(p.phi1r);
        self.phi2r = wrap_phase(p.phi2r);
        self
    }

    /// Apply the dark-state phase assignment for `t`.
    pub fn tuned_to(self, t: &TargetSpec) -> Self {
        self.with_pump_phases(pump_phases(t))
    }

    pub fn with_n_res(mut self, n_res: usize) -> Self {
        self.n_res = n_res;
        self
    }

    pub fn with_coherence(mut self, c: Coherence) -> Result<Self> {
        let (g1, gp) = c.rates()?;
        self.gamma1_1 = g1;
        self.gamma1_2 = g1;
        self.gammaphi_1 = gp;
        self.gammaphi_2 = gp;
        Ok(self)
    }

    pub fn pump_phases(&self) -> PumpPhases {
        PumpPhases {
            phi12_plus: self.phi12_plus,
            phi12_minus: self.phi12_minus,
            phi1r: self.phi1r,
            phi2r: self.phi2r,
        }
    }

    pub fn hilbert(&self) -> Result<HilbertSpec> {
        HilbertSpec::new(self.n_res)
    }

    pub fn validate(&self) -> Result<()> {
        let rates = [
            ("g12_plus", self.g12_plus),
            ("g12_minus", self.g12_minus),
            ("g1r", self.g1r),
            ("g2r", self.g2r),
            ("kappa", self.kappa),
            ("gamma1_1", self.gamma1_1),
            ("gamma1_2", self.gamma1_2),
            ("gammaphi_1", self.gammaphi_1),
            ("gammaphi_2", self.gammaphi_2),
        ];
        for (name, v) in rates {
            if !v.is_finite() || v < 0.0 {
                return Err(invalid(name, format!("rate must be finite and non-negative, got {v}")));
            }
        }
        let finite = [
            ("phi12_plus", self.phi12_plus),
            ("phi12_minus", self.phi12_minus),
            ("phi1r", self.phi1r),
            ("phi2r", self.phi2r),
            ("chi1", self.chi1),
            ("chi2", self.chi2),
            ("delta1", self.delta1),
            ("delta2", self.delta2),
            ("delta_r", self.delta_r),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(invalid(name, "must be finite"));
            }
        }
        HilbertSpec::new(self.n_res)?;
        Ok(())
    }

    /// Largest coherent coupling, a natural rate scale for tolerances.
    pub fn coupling_scale(&self) -> f64 {
        [self.g12_plus, self.g12_minus, self.g1r, self.g2r, self.kappa]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Static couplings and bare frequencies that set the dispersive shifts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersiveInputs {
    pub g_bar_1r: f64,
    pub g_bar_2r: f64,
    pub omega_1: f64,
    pub omega_2: f64,
    pub omega_r: f64,
}

/// `χ_j = ḡ_jr² / (ω_r − ω_j)`.
pub fn dispersive_shift(inputs: &DispersiveInputs, j: usize) -> Result<f64> {
    let (g, w) = match j {
        1 => (inputs.g_bar_1r, inputs.omega_1),
        2 => (inputs.g_bar_2r, inputs.omega_2),
        _ => return Err(invalid("j", format!("qubit index must be 1 or 2, got {j}"))),
    };
    let detuning = inputs.omega_r - w;
    if detuning == 0.0 {
        return Err(Error::Domain(format!(
            "qubit {j} is degenerate with the resonator (ω_r = ω_j)"
        )));
    }
    Ok(g * g / detuning)
}

/// Frequency `Ω_χ` of the dominant counter-rotating leakage term:
/// `χ₁ + χ₂` for even parity and `χ₁ − χ₂` for odd parity.
pub fn leakage_frequency(params: &SystemParams, parity: Parity) -> f64 {
    match parity {
        Parity::Even => params.chi1 + params.chi2,
        Parity::Odd => params.chi1 - params.chi2,
    }
}

fn cis(phi: f64) -> Complex64 {
    Complex64::from_polar(1.0, phi)
}

/// Effective resonant Hamiltonian for the target's parity, plus detunings
/// `Σ_j (δ_j/2) Z_j + Δ_r a†a`.
pub fn build_h_eff(params: &SystemParams, t: &TargetSpec) -> Result<CMatrix> {
    params.validate()?;
    let spec = params.hilbert()?;
    let s1 = spec.lowering(Slot::Qubit1);
    let s2 = spec.lowering(Slot::Qubit2);
    let p0 = spec.photon_projector(0);
    let p1 = spec.photon_projector(1);

    // |0⟩⟨1| on the resonator: the resonant part of `a`.
    let mut lower01 = CMatrix::zeros(spec.n_res(), spec.n_res());
    lower01[(0, 1)] = ONE;
    let a01 = spec.embed(&lower01, Slot::Resonator)?;

    let upper = match t.parity {
        Parity::Even => {
            let qq0 = &p0 * (&s1 * s2.adjoint()) * (cis(params.phi12_minus) * params.g12_minus);
            let qq1 = &p1 * (&s1 * &s2) * (cis(params.phi12_plus) * params.g12_plus);
            let jump = &s1 * (cis(params.phi1r) * params.g1r) + s2.adjoint() * (cis(params.phi2r) * params.g2r);
            let qr = jump * a01.adjoint();
            qq0 + qq1 + qr
        }
        Parity::Odd => {
            let qq0 = &p0 * (&s1 * &s2) * (cis(params.phi12_plus) * params.g12_plus);
            let qq1 = &p1 * (&s1 * s2.adjoint()) * (cis(params.phi12_minus) * params.g12_minus);
            let lower = &s1 * (cis(params.phi1r) * params.g1r) + &s2 * (cis(params.phi2r) * params.g2r);
            let qr = lower * a01;
            qq0 + qq1 + qr
        }
    };
    let mut h = &upper + upper.adjoint();

    if params.delta1 != 0.0 {
        h += spec.pauli_z(Slot::Qubit1) * Complex64::new(0.5 * params.delta1, 0.0);
    }
    if params.delta2 != 0.0 {
        h += spec.pauli_z(Slot::Qubit2) * Complex64::new(0.5 * params.delta2, 0.0);
    }
    if params.delta_r != 0.0 {
        h += spec.number() * Complex64::new(params.delta_r, 0.0);
    }
    Ok(h)
}

/// χ-dependent leakage `g e^{iφ} e^{2iΩ_χ t} |ξ̄,0⟩⟨ξ,0| + h.c.`
///
/// `g` and `φ` are the qubit-qubit coupling that is off-resonant in the
/// zero-photon sector: `(g₁₂⁺, φ₁₂⁺)` for even parity, `(g₁₂⁻, φ₁₂⁻)` for odd.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterRotating {
    /// Coefficient of `e^{+2iΩ_χ t}`.
    pub forward: CMatrix,
    pub omega_chi: f64,
}

impl CounterRotating {
    pub fn new(params: &SystemParams, t: &TargetSpec, omega_chi: f64) -> Result<Self> {
        params.validate()?;
        if !omega_chi.is_finite() {
            return Err(invalid("omega_chi", "must be finite"));
        }
        let spec = params.hilbert()?;
        let xi = spec.with_photons(&target_state(t), 0)?;
        let xib = spec.with_photons(&target_state(&t.complement()), 0)?;
        let (g, phi) = match t.parity {
            Parity::Even => (params.g12_plus, params.phi12_plus),
            Parity::Odd => (params.g12_minus, params.phi12_minus),
        };
        let forward = (xib * xi.adjoint()) * (cis(phi) * g);
        Ok(Self { forward, omega_chi })
    }

    /// Period `π/|Ω_χ|` of the leakage term; infinite when `Ω_χ = 0`.
    pub fn period(&self) -> f64 {
        std::f64::consts::PI / self.omega_chi.abs()
    }

    pub fn at(&self, time: f64) -> CMatrix {
        let v = &self.forward * cis(2.0 * self.omega_chi * time);
        &v + v.adjoint()
    }
}

/// Hermitian leakage Hamiltonian at `time`.
pub fn build_h_counter_rotating(params: &SystemParams, t: &TargetSpec, omega_chi: f64, time: f64) -> Result<CMatrix> {
    Ok(CounterRotating::new(params, t, omega_chi)?.at(time))
}

/// `H |ξ,0⟩` for the target embedded in the zero-photon sector.
pub fn apply_to_dark(h: &CMatrix, t: &TargetSpec, spec: &HilbertSpec) -> Result<CVector> {
    let v = spec.with_photons(&target_state(t), 0)?;
    Ok(h * v)
}
