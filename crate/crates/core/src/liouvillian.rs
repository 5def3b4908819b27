// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! Lindblad superoperators in the column-stacking convention
//! `vec(AρB) = (Bᵀ ⊗ A)·vec(ρ)`.

use nalgebra::Complex;
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::hamiltonian::SystemParams;
use crate::quantum::{
    hermitian_deviation, max_abs, CMatrix, CVector, DensityMatrix, HilbertSpec, Slot, OPERATOR_HERMITIAN_TOL,
};

/// Relative singular-value threshold below which a direction counts as null.
pub const NULL_SPACE_THRESHOLD: f64 = 1e-9;
/// Relative magnitude below which an eigenvalue is identified as zero.
pub const ZERO_EIGENVALUE_THRESHOLD: f64 = 1e-9;

/// Column-stack a square matrix.
pub fn vectorize(rho: &CMatrix) -> CVector {
    CVector::from_column_slice(rho.as_slice())
}

/// Inverse of [`vectorize`]; `v` must have square length.
pub fn devectorize(v: &CVector) -> Result<CMatrix> {
    let d = (v.len() as f64).sqrt().round() as usize;
    if d * d != v.len() {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            actual: v.len(),
        });
    }
    Ok(CMatrix::from_column_slice(d, d, v.as_slice()))
}

/// A single Lindblad channel `r·(oρo† − ½{o†o, ρ})`.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    pub label: &'static str,
    pub operator: CMatrix,
    pub rate: f64,
}

impl Channel {
    pub fn new(label: &'static str, operator: CMatrix, rate: f64) -> Self {
        Self { label, operator, rate }
    }
}

/// `−i(I⊗H − Hᵀ⊗I)`.
pub fn hamiltonian_superoperator(h: &CMatrix) -> CMatrix {
    let d = h.nrows();
    let id = CMatrix::identity(d, d);
    let comm = id.kronecker(h) - h.transpose().kronecker(&id);
    comm * Complex64::new(0.0, -1.0)
}

/// Sum of channel superoperators.
pub fn dissipator_superoperator(d: usize, channels: &[Channel]) -> Result<CMatrix> {
    let id = CMatrix::identity(d, d);
    let mut out = CMatrix::zeros(d * d, d * d);
    for c in channels {
        if c.operator.nrows() != d || c.operator.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: c.operator.nrows(),
            });
        }
        if !(c.rate >= 0.0) || !c.rate.is_finite() {
            return Err(invalid("rate", format!("channel {} has rate {}", c.label, c.rate)));
        }
        if c.rate == 0.0 {
            continue;
        }
        let o = &c.operator;
        let odo = o.adjoint() * o;
        let jump = o.conjugate().kronecker(o);
        let anti = id.kronecker(&odo) + odo.transpose().kronecker(&id);
        out += (jump - anti * Complex64::new(0.5, 0.0)) * Complex64::new(c.rate, 0.0);
    }
    Ok(out)
}

/// The five physical decay channels implied by `params`.
pub fn physical_channels(params: &SystemParams, spec: &HilbertSpec) -> Vec<Channel> {
    vec![
        Channel::new("a", spec.annihilation(), params.kappa),
        Channel::new("sigma1", spec.lowering(Slot::Qubit1), params.gamma1_1),
        Channel::new("sigma2", spec.lowering(Slot::Qubit2), params.gamma1_2),
        Channel::new("z1", spec.pauli_z(Slot::Qubit1), 2.0 * params.gammaphi_1),
        Channel::new("z2", spec.pauli_z(Slot::Qubit2), 2.0 * params.gammaphi_2),
    ]
}

/// Dense Lindblad generator with its Hamiltonian and channel list.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    dim: usize,
    hamiltonian: CMatrix,
    channels: Vec<Channel>,
    dissipator: CMatrix,
    matrix: CMatrix,
}

impl Liouvillian {
    pub fn new(h: CMatrix, channels: Vec<Channel>) -> Result<Self> {
        let d = h.nrows();
        if !h.is_square() {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: h.ncols(),
            });
        }
        let dev = hermitian_deviation(&h);
        if dev > OPERATOR_HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let dissipator = dissipator_superoperator(d, &channels)?;
        let matrix = hamiltonian_superoperator(&h) + &dissipator;
        Ok(Self {
            dim: d,
            hamiltonian: h,
            channels,
            dissipator,
            matrix,
        })
    }

    /// Generator for `h` with the channels implied by `params`.
    pub fn build(h: CMatrix, params: &SystemParams, spec: &HilbertSpec) -> Result<Self> {
        if h.nrows() != spec.dim() {
            return Err(Error::DimensionMismatch {
                expected: spec.dim(),
                actual: h.nrows(),
            });
        }
        params.validate()?;
        Self::new(h, physical_channels(params, spec))
    }

    /// Same channels, different Hamiltonian; the dissipator is reused.
    pub fn with_hamiltonian(&self, h: &CMatrix) -> Result<Self> {
        if h.nrows() != self.dim || !h.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: h.nrows(),
            });
        }
        let dev = hermitian_deviation(h);
        if dev > OPERATOR_HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        Ok(Self {
            dim: self.dim,
            hamiltonian: h.clone(),
            channels: self.channels.clone(),
            dissipator: self.dissipator.clone(),
            matrix: hamiltonian_superoperator(h) + &self.dissipator,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn hamiltonian(&self) -> &CMatrix {
        &self.hamiltonian
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    pub fn dissipator(&self) -> &CMatrix {
        &self.dissipator
    }

    /// Largest entry magnitude, used as the spectral scale.
    pub fn scale(&self) -> f64 {
        max_abs(&self.matrix)
    }

    /// `ℒρ` as a matrix.
    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        devectorize(&(&self.matrix * vectorize(rho)))
    }

    /// `‖vec(I)†·L‖_max / ‖L‖_max`.
    pub fn trace_defect(&self) -> f64 {
        let row = vectorize(&CMatrix::identity(self.dim, self.dim)).adjoint() * &self.matrix;
        row.iter().map(|z| z.norm()).fold(0.0, f64::max) / self.scale().max(f64::MIN_POSITIVE)
    }

    /// Unique state with `ℒρ = 0`.
    pub fn steady_state(&self) -> Result<DensityMatrix> {
        let v = null_vector(&self.matrix)?;
        state_from_vector(&v)
    }

    /// All eigenvalues, sorted by descending real part.
    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        let mut ev = eigenvalues(&self.matrix)?;
        ev.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
        Ok(ev)
    }

    /// `(τ, λ₁)` with `τ = −1/Re λ₁` for the slowest decaying nonzero mode.
    pub fn spectral_gap(&self) -> Result<SpectralGap> {
        spectral_gap_of(&self.eigenvalues()?)
    }
}

/// Relaxation time and the eigenvalue that sets it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralGap {
    pub tau: f64,
    pub lambda1: Complex64,
}

/// Extract the gap from an eigenvalue list sorted by descending real part.
pub fn spectral_gap_of(ev: &[Complex64]) -> Result<SpectralGap> {
    let scale = ev.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let threshold = ZERO_EIGENVALUE_THRESHOLD * scale;
    let zeros = ev.iter().filter(|z| z.norm() <= threshold).count();
    if zeros != 1 {
        return Err(Error::AmbiguousZeroEigenvalue {
            count: zeros,
            threshold,
        });
    }
    let lambda1 = ev
        .iter()
        .copied()
        .filter(|z| z.norm() > threshold)
        .max_by(|a, b| a.re.total_cmp(&b.re))
        .ok_or_else(|| Error::NotConverged("no nonzero eigenvalue".into()))?;
    if !(lambda1.re < 0.0) {
        return Err(Error::NotConverged(format!("slowest mode {lambda1} is not decaying")));
    }
    Ok(SpectralGap {
        tau: -1.0 / lambda1.re,
        lambda1,
    })
}

/// Eigenvalues of a general complex matrix from its Schur form.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    let n = m.nrows();
    let schur = nalgebra::Schur::try_new(m.clone(), f64::EPSILON, 100 * n.max(10))
        .ok_or_else(|| Error::NotConverged("Schur decomposition did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

/// Null vector of a singular generator-like matrix.
///
/// The null-space dimension is checked against singular values; the vector
/// comes from shifted inverse iteration, with the right singular vector of
/// the smallest singular value as fallback.
pub fn null_vector(m: &CMatrix) -> Result<CVector> {
    let n = m.nrows();
    if n == 0 || !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: m.ncols(),
        });
    }
    let sv = m.clone().singular_values();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 {
        return Err(Error::DegenerateSteadyState {
            count: n,
            threshold: 0.0,
        });
    }
    let threshold = NULL_SPACE_THRESHOLD * smax;
    let count = sv.iter().filter(|&&s| s <= threshold).count();
    if count > 1 {
        return Err(Error::DegenerateSteadyState { count, threshold });
    }
    if count == 0 {
        return Err(Error::NotConverged(format!(
            "no null direction: smallest singular value exceeds {threshold:e}"
        )));
    }

    let tol = 1e-12 * smax;
    if let Some(v) = inverse_iteration(m, smax) {
        if (m * &v).norm() <= tol {
            return Ok(v);
        }
    }
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.ok_or_else(|| Error::NotConverged("SVD without V".into()))?;
    let k = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("nonempty");
    let v: CVector = vt.row(k).adjoint();
    Ok(v)
}

fn inverse_iteration(m: &CMatrix, smax: f64) -> Option<CVector> {
    let n = m.nrows();
    let shift = Complex::new(-1e-12 * smax, 0.0);
    let shifted = m - CMatrix::identity(n, n) * shift;
    let lu = shifted.lu();
    let mut v = CVector::from_element(n, Complex64::new(1.0 / (n as f64).sqrt(), 0.0));
    for _ in 0..3 {
        let w = lu.solve(&v)?;
        let norm = w.norm();
        if !norm.is_finite() || norm == 0.0 {
            return None;
        }
        v = w.unscale(norm);
    }
    Some(v)
}

/// Density matrix from an arbitrary-phase null vector.
pub fn state_from_vector(v: &CVector) -> Result<DensityMatrix> {
    let m = devectorize(v)?;
    let tr = m.trace();
    if tr.norm() < 1e-300 {
        return Err(Error::InvalidState("null vector is traceless".into()));
    }
    // Remove the arbitrary complex phase of the eigenvector before hermitizing.
    DensityMatrix::from_unnormalized(m.unscale(1.0) * (tr.conj() / tr.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{build_h_eff, Coherence, TargetSpec};
    use crate::quantum::{annihilation, pauli_z, Level};
    use proptest::prelude::*;

    fn random_matrix(seed: u64, n: usize) -> CMatrix {
        // Small LCG; deterministic and dependency-free.
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        };
        CMatrix::from_fn(n, n, |_, _| Complex64::new(next(), next()))
    }

    #[test]
    fn vectorization_conventions() {
        let v = vectorize(&CMatrix::identity(2, 2));
        let expect = [1.0, 0.0, 0.0, 1.0];
        for (a, b) in v.iter().zip(expect) {
            assert_eq!(*a, Complex64::new(b, 0.0));
        }
        let a = random_matrix(1, 3);
        let r = random_matrix(2, 3);
        let b = random_matrix(3, 3);
        let lhs = vectorize(&(&a * &r * &b));
        let rhs = b.transpose().kronecker(&a) * vectorize(&r);
        assert!((lhs - rhs).norm() < 1e-13);
        assert_eq!(devectorize(&vectorize(&r)).unwrap(), r);
        assert!(devectorize(&CVector::zeros(5)).is_err());
    }

    #[test]
    fn single_mode_decay_and_gap() {
        let kappa = 3.0;
        let a = annihilation(2);
        let l = Liouvillian::new(CMatrix::zeros(2, 2), vec![Channel::new("a", a, kappa)]).unwrap();
        let mut rho = CMatrix::zeros(2, 2);
        rho[(1, 1)] = Complex64::new(1.0, 0.0);
        let t = 0.4;
        let prop = (l.matrix() * Complex64::new(t, 0.0)).exp();
        let out = devectorize(&(prop * vectorize(&rho))).unwrap();
        assert!((out[(1, 1)].re - (-kappa * t).exp()).abs() < 1e-12);
        let gap = l.spectral_gap().unwrap();
        assert!((gap.tau - 2.0 / kappa).abs() < 1e-10);
        let ss = l.steady_state().unwrap();
        assert!((ss.matrix()[(0, 0)].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn z_channel_coherence_decay() {
        let gphi = 0.7;
        let l = Liouvillian::new(CMatrix::zeros(2, 2), vec![Channel::new("z", pauli_z(), 2.0 * gphi)]).unwrap();
        let rho = CMatrix::from_element(2, 2, Complex64::new(0.5, 0.0));
        let t = 0.3;
        let prop = (l.matrix() * Complex64::new(t, 0.0)).exp();
        let out = devectorize(&(prop * vectorize(&rho))).unwrap();
        assert!((out[(0, 1)].re - 0.5 * (-4.0 * gphi * t).exp()).abs() < 1e-12);
        assert!((out[(0, 0)].re - 0.5).abs() < 1e-14);
    }

    #[test]
    fn decay_only_relaxes_to_ground() {
        let spec = HilbertSpec::new(2).unwrap();
        let chans = vec![
            Channel::new("a", spec.annihilation(), 1.0),
            Channel::new("s1", spec.lowering(Slot::Qubit1), 0.1),
            Channel::new("s2", spec.lowering(Slot::Qubit2), 0.2),
        ];
        let l = Liouvillian::new(CMatrix::zeros(8, 8), chans).unwrap();
        let ss = l.steady_state().unwrap();
        let k = spec.index(Level::G, Level::G, 0);
        assert!((ss.matrix()[(k, k)].re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn degenerate_null_space_is_an_error() {
        let l = Liouvillian::new(CMatrix::zeros(2, 2), vec![Channel::new("z", pauli_z(), 1.0)]).unwrap();
        assert!(matches!(l.steady_state(), Err(Error::DegenerateSteadyState { .. })));
        assert!(matches!(l.spectral_gap(), Err(Error::AmbiguousZeroEigenvalue { .. })));
    }

    #[test]
    fn non_hermitian_hamiltonian_rejected() {
        let mut h = CMatrix::zeros(2, 2);
        h[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(Liouvillian::new(h, vec![]), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn full_scheme_dimension_and_trace() {
        let t = TargetSpec::even(0.0);
        let p = crate::hamiltonian::SystemParams::optimal_ray(1.0, Coherence::WORST_CASE)
            .unwrap()
            .tuned_to(&t);
        let spec = p.hilbert().unwrap();
        let l = Liouvillian::build(build_h_eff(&p, &t).unwrap(), &p, &spec).unwrap();
        assert_eq!(l.matrix().nrows(), 64);
        assert!(l.trace_defect() < 1e-14);
        let ev = l.eigenvalues().unwrap();
        assert!(ev[0].re <= 1e-9 * l.scale());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn random_generators_preserve_trace(seed in 0u64..10_000, rate in 0.0f64..2.0) {
            let h0 = random_matrix(seed, 3);
            let h = (&h0 + h0.adjoint()) * Complex64::new(0.5, 0.0);
            let o = random_matrix(seed + 1, 3);
            let l = Liouvillian::new(h, vec![Channel::new("o", o, rate)]).unwrap();
            prop_assert!(l.trace_defect() < 1e-13);
        }
    }
}
