// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use parastab_core::metrics::sweep::{scan_error_and_rate, sweep_asymmetry, AsymmetryKind};
use parastab_core::metrics::{evaluate, optimize_couplings, steady_error, SearchBox, SearchOptions};
use parastab_core::quantum::{hermitian_eigenvalues, Slot};
use parastab_core::units::mhz;
use parastab_core::{build_h_eff, target_state, CMatrix, Coherence, Complex64, RatioPolicy, SystemParams, TargetSpec};

fn base() -> SystemParams {
    SystemParams::optimal_ray(mhz(50.0), Coherence::BEST_CASE).unwrap()
}

#[test]
fn phase_shift_is_a_local_rotation() {
    let alpha = 0.7;
    for t in [TargetSpec::even(0.3), TargetSpec::odd(1.1)] {
        let t2 = parastab_core::TargetSpec::new(t.parity, t.psi() + alpha);
        let p = base().with_n_res(3);
        let h1 = build_h_eff(&p.tuned_to(&t), &t).unwrap();
        let h2 = build_h_eff(&p.tuned_to(&t2), &t2).unwrap();
        let (e1, e2) = (hermitian_eigenvalues(&h1), hermitian_eigenvalues(&h2));
        for (a, b) in e1.iter().zip(&e2) {
            assert!((a - b).abs() <= 1e-6 * mhz(50.0), "{a} vs {b}");
        }
        // exp(−iαZ₁/2) advances the relative phase by α in either parity.
        let spec = p.hilbert().unwrap();
        let z1 = spec.pauli_z(Slot::Qubit1);
        let u = CMatrix::from_diagonal(&z1.diagonal().map(|z| Complex64::from_polar(1.0, -alpha * z.re / 2.0)));
        let v1 = spec.with_photons(&target_state(&t), 0).unwrap();
        let v2 = spec.with_photons(&target_state(&t2), 0).unwrap();
        assert!(((v2.adjoint() * (&u * v1))[(0, 0)].norm() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn three_level_truncation_spot_check() {
    let t = TargetSpec::even(0.0);
    let two = evaluate(&base().tuned_to(&t), &t).unwrap();
    let three = evaluate(&base().with_n_res(3).tuned_to(&t), &t).unwrap();
    assert!((three.eps_inf / two.eps_inf - 1.0).abs() <= 0.05);
    assert!((three.tau / two.tau - 1.0).abs() <= 0.05);
}

#[test]
fn worst_case_decoherence_raises_error_everywhere() {
    let t = TargetSpec::even(0.0);
    let grid: Vec<f64> = [5.0, 10.0, 20.0, 50.0].iter().map(|&g| mhz(g)).collect();
    let best = scan_error_and_rate(&base(), &t, &grid, RatioPolicy::OPTIMAL).unwrap();
    let worst_base = base().with_coherence(Coherence::WORST_CASE).unwrap();
    let worst = scan_error_and_rate(&worst_base, &t, &grid, RatioPolicy::OPTIMAL).unwrap();
    for (b, w) in best.records.iter().zip(&worst.records) {
        assert!(w.eps_inf.unwrap() > b.eps_inf.unwrap());
        assert!((w.tau.unwrap() / b.tau.unwrap() - 1.0).abs() < 0.1);
    }
}

#[test]
fn error_to_time_ratio_is_fixed_along_the_ray() {
    let t = TargetSpec::even(0.0);
    let gamma1 = Coherence::BEST_CASE.rates().unwrap().0;
    let grid: Vec<f64> = [10.0, 20.0, 30.0, 50.0].iter().map(|&g| mhz(g)).collect();
    let r = scan_error_and_rate(&base(), &t, &grid, RatioPolicy::OPTIMAL).unwrap();
    let f: Vec<f64> = r
        .records
        .iter()
        .map(|x| x.eps_inf.unwrap() / x.tau.unwrap() / gamma1)
        .collect();
    let mean = f.iter().sum::<f64>() / f.len() as f64;
    assert!(f.iter().all(|x| (x / mean - 1.0).abs() < 0.25), "{f:?}");
}

#[test]
fn optimizer_is_deterministic_and_weakly_dependent_on_gamma1() {
    let t = TargetSpec::even(0.0);
    let opts = SearchOptions::default();
    let a = optimize_couplings(&base(), &t, SearchBox::default(), opts).unwrap();
    let b = optimize_couplings(&base(), &t, SearchBox::default(), opts).unwrap();
    assert_eq!(a, b);
    assert!(!a.optimum.on_boundary);
    let lossy = base().with_coherence(Coherence::new(10e-6, 20e-6).unwrap()).unwrap();
    let c = optimize_couplings(&lossy, &t, SearchBox::default(), opts).unwrap();
    assert!((c.optimum.g_r_ratio / a.optimum.g_r_ratio - 1.0).abs() < 0.2);
    assert!((c.optimum.kappa_ratio / a.optimum.kappa_ratio - 1.0).abs() < 0.2);
    // Half-width deviations stay comfortably below the 1% level.
    let s = a.optimum.sensitivity;
    assert!([s.g_r_minus, s.g_r_plus, s.kappa_minus, s.kappa_plus]
        .iter()
        .all(|&e| e < 1e-2));
}

#[test]
fn qubit_qubit_asymmetry_is_mild_and_favours_larger_minus_coupling() {
    let t = TargetSpec::odd(0.0);
    let factors = [0.7, 1.0, 1.3];
    let r = sweep_asymmetry(&base(), &t, AsymmetryKind::QubitQubit, &factors, &factors).unwrap();
    let rel: Vec<f64> = r.records.iter().map(|x| x.diagnostics["relative_to_nominal"]).collect();
    assert!(rel.iter().all(|&x| x < 3.0), "{rel:?}");
    // (g₁₂⁺, g₁₂⁻) = (0.7, 1.3) versus (1.3, 0.7).
    let minus_larger = r.at(&[0, 2]).unwrap().eps_inf.unwrap();
    let plus_larger = r.at(&[2, 0]).unwrap().eps_inf.unwrap();
    assert!(minus_larger < plus_larger, "{minus_larger} vs {plus_larger}");
}

#[test]
fn vanishing_relaxation_leaves_solver_floor() {
    let t = TargetSpec::new(parastab_core::Parity::Even, PI / 3.0);
    let mut p = base().tuned_to(&t);
    p.gamma1_1 = 0.0;
    p.gamma1_2 = 0.0;
    let (_, eps) = steady_error(&p, &t).unwrap();
    assert!(eps < 1e-8);
}
