// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

use approx::assert_relative_eq;
use parastab_core::liouvillian::{devectorize, vectorize};
use parastab_core::quantum::{commutator, hermitian_eigenvalues, kron, max_abs, pauli_x, pauli_z, sigma_minus, Slot};
use parastab_core::{
    fidelity_to_target, partial_trace_resonator, CMatrix, Complex64, DensityMatrix, HilbertSpec, Ket, Level,
};
use proptest::prelude::*;

fn matrix(n: usize, seed: &[f64]) -> CMatrix {
    CMatrix::from_fn(n, n, |i, j| {
        let k = 2 * (i * n + j);
        Complex64::new(seed[k % seed.len()], seed[(k + 1) % seed.len()])
    })
}

/// Random density matrix `AA†/Tr(AA†)`.
fn state(n: usize, seed: &[f64]) -> DensityMatrix {
    let a = matrix(n, seed);
    DensityMatrix::from_unnormalized(&a * a.adjoint()).unwrap()
}

fn seeds(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_is_associative_and_bilinear(a in seeds(8), b in seeds(18), c in seeds(8), s in -2.0f64..2.0) {
        let (a, b, c) = (matrix(2, &a), matrix(3, &b), matrix(2, &c));
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(max_abs(&(&left - &right)) <= 1e-12 * max_abs(&left).max(1.0));
        let scaled = kron(&(&a * Complex64::new(s, 0.0) + &c), &b);
        let split = kron(&a, &b) * Complex64::new(s, 0.0) + kron(&c, &b);
        prop_assert!(max_abs(&(&scaled - &split)) <= 1e-12 * max_abs(&split).max(1.0));
    }

    #[test]
    fn mixed_product_rule(a in seeds(8), b in seeds(18), c in seeds(8), d in seeds(18)) {
        let (a, b, c, d) = (matrix(2, &a), matrix(3, &b), matrix(2, &c), matrix(3, &d));
        let lhs = kron(&a, &b) * kron(&c, &d);
        let rhs = kron(&(&a * &c), &(&b * &d));
        prop_assert!(max_abs(&(&lhs - &rhs)) <= 1e-12 * max_abs(&rhs).max(1.0));
    }

    #[test]
    fn vec_of_product(a in seeds(18), r in seeds(18), b in seeds(18)) {
        let (a, r, b) = (matrix(3, &a), matrix(3, &r), matrix(3, &b));
        let lhs = vectorize(&(&a * &r * &b));
        let rhs = kron(&b.transpose(), &a) * vectorize(&r);
        prop_assert!((&lhs - &rhs).camax() <= 1e-12 * rhs.camax().max(1.0));
        prop_assert_eq!(devectorize(&vectorize(&r)).unwrap(), r);
    }

    #[test]
    fn partial_trace_inverts_product(q in seeds(32), res in seeds(18)) {
        let spec = HilbertSpec::new(3).unwrap();
        let rq = state(4, &q);
        let rr = state(3, &res);
        let joint = DensityMatrix::new(kron(rq.matrix(), rr.matrix())).unwrap();
        let back = partial_trace_resonator(&joint, &spec).unwrap();
        prop_assert!(back.trace_distance(&rq) <= 1e-12);
    }

    #[test]
    fn partial_trace_of_random_state_is_physical(s in seeds(128)) {
        let spec = HilbertSpec::new(2).unwrap();
        let q = partial_trace_resonator(&state(8, &s), &spec).unwrap();
        prop_assert!((parastab_core::quantum::trace(q.matrix()).re - 1.0).abs() <= 1e-12);
        prop_assert!(q.min_eigenvalue() >= -1e-12);
    }

    #[test]
    fn bell_basis_fidelities_sum_to_one(s in seeds(128), psi in 0.0f64..6.3) {
        let spec = HilbertSpec::new(2).unwrap();
        let rho = state(8, &s);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let phase = Complex64::from_polar(1.0, psi);
        let mk = |v: [Complex64; 4]| Ket::new(parastab_core::CVector::from_column_slice(&v)).unwrap();
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(h, 0.0);
        let basis = [
            mk([one, z, z, -one * phase]),
            mk([one, z, z, one * phase]),
            mk([z, one, -one * phase, z]),
            mk([z, one, one * phase, z]),
        ];
        let total: f64 = basis.iter().map(|k| fidelity_to_target(&rho, k, &spec).unwrap()).sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn embedding_preserves_spectra() {
    let spec = HilbertSpec::new(3).unwrap();
    let x = pauli_x();
    let ev = hermitian_eigenvalues(&spec.embed(&x, Slot::Qubit2).unwrap());
    assert_eq!(ev.len(), 12);
    for (k, v) in ev.iter().enumerate() {
        assert_relative_eq!(*v, if k < 6 { -1.0 } else { 1.0 }, epsilon = 1e-12);
    }
    let n = spec.number();
    let ev = hermitian_eigenvalues(&n);
    for (k, v) in ev.iter().enumerate() {
        assert_relative_eq!(*v, (k / 4) as f64, epsilon = 1e-12);
    }
}

#[test]
fn disjoint_slots_commute() {
    let spec = HilbertSpec::new(2).unwrap();
    let x1 = spec.embed(&pauli_x(), Slot::Qubit1).unwrap();
    let x2 = spec.embed(&pauli_x(), Slot::Qubit2).unwrap();
    assert_eq!(max_abs(&commutator(&x1, &x2)), 0.0);
    let a = spec.annihilation();
    assert_eq!(max_abs(&commutator(&spec.lowering(Slot::Qubit1), &a)), 0.0);
}

#[test]
fn conventions_are_fixed() {
    let spec = HilbertSpec::new(2).unwrap();
    assert_eq!(spec.index(Level::E, Level::G, 1), 5);
    let sz1 = spec.pauli_z(Slot::Qubit1);
    assert_eq!(sz1[(0, 0)].re, 1.0);
    assert_eq!(sz1[(4, 4)].re, -1.0);
    // σ|e⟩ = |g⟩.
    let s = sigma_minus();
    assert_eq!(s[(0, 1)].re, 1.0);
    assert_eq!(kron(&pauli_z(), &CMatrix::identity(2, 2))[(2, 2)].re, -1.0);
}
