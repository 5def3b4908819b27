// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! Shared fixtures for the solver benchmarks.

use parastab_core::metrics::liouvillian_for;
use parastab_core::units::mhz;
use parastab_core::{Coherence, HilbertSpec, Liouvillian, SystemParams, TargetSpec};

/// Optimal-ray working point at `g = 2π·50 MHz` with `n_res` resonator levels.
pub fn working_point(n_res: usize) -> (SystemParams, TargetSpec) {
    let t = TargetSpec::even(0.0);
    let p = SystemParams::optimal_ray(mhz(50.0), Coherence::BEST_CASE)
        .expect("valid working point")
        .with_n_res(n_res)
        .tuned_to(&t);
    (p, t)
}

pub fn generator(n_res: usize) -> (Liouvillian, HilbertSpec, TargetSpec) {
    let (p, t) = working_point(n_res);
    let (l, spec) = liouvillian_for(&p, &t).expect("generator builds");
    (l, spec, t)
}
