// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! Simulation and optimization of parametrically engineered dissipative
//! stabilization of two-qubit Bell states coupled to a lossy resonator.
//!
//! The crate is layered bottom-up:
//!
//! * [`quantum`]: dense operators on `qubit ⊗ qubit ⊗ resonator`,
//! * [`hamiltonian`]: effective and leakage Hamiltonians, targets, pump phases,
//! * [`liouvillian`] and [`evolve`]: Lindblad generators, steady states,
//!   spectra and time-domain trajectories,
//! * [`fit`], [`metrics`]: error/rate metrics, sweeps and optimization,
//! * [`phase`]: rotations within a parity manifold and tomograms,
//! * [`circuit`]: SQUID coupler formulas.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuit;
pub mod error;
pub mod evolve;
pub mod fit;
pub mod hamiltonian;
pub mod liouvillian;
pub mod metrics;
pub mod phase;
pub mod quantum;
pub mod units;

pub use circuit::CircuitParams;
pub use error::{Error, Result};
pub use evolve::{evolve, Observer, PeriodicLiouvillian, Trajectory};
pub use fit::{fit_error_decay, DecayFit};
pub use hamiltonian::{
    build_h_counter_rotating, build_h_eff, collapse_operator, pump_phases, target_state, Coherence, CounterRotating,
    DispersiveInputs, Parity, PumpPhases, SystemParams, TargetSpec,
};
pub use liouvillian::{Channel, Liouvillian, SpectralGap};
pub use metrics::sweep::RatioPolicy;
pub use metrics::{AnalyticEstimates, PointMetrics, Regime, SweepResult};
pub use num_complex::Complex64;
pub use phase::Tomogram;
pub use quantum::{
    fidelity_to_target, partial_trace_resonator, purity, CMatrix, CVector, DensityMatrix, HilbertSpec, Ket, Level, Slot,
};
