// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra on the two-qubit ⊗ resonator space.
//!
//! Basis ordering is `|q1⟩ ⊗ |q2⟩ ⊗ |n⟩` with `q = 0 ↔ |g⟩`, `q = 1 ↔ |e⟩`
//! and row-major index `2·n_res·q1 + n_res·q2 + n`. Every module builds its
//! operators through [`HilbertSpec`] so that the ordering is declared once.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Relative hermiticity tolerance for constructed operators.
pub const OPERATOR_HERMITIAN_TOL: f64 = 1e-12;
/// Absolute hermiticity tolerance for a trace-normalized density matrix.
pub const STATE_HERMITIAN_TOL: f64 = 1e-10;
/// Trace tolerance for a density matrix.
pub const STATE_TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted in a density matrix.
pub const STATE_MIN_EIGENVALUE: f64 = -1e-9;
/// Ket norm tolerance.
pub const KET_NORM_TOL: f64 = 1e-12;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Truncated composite Hilbert space: two qubits and `n_res` resonator levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSpec {
    n_res: usize,
}

/// Tensor factor an operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    Qubit1,
    Qubit2,
    Resonator,
}

/// Qubit level label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    G = 0,
    E = 1,
}

impl HilbertSpec {
    pub fn new(n_res: usize) -> Result<Self> {
        if n_res < 2 {
            return Err(invalid("n_res", format!("need at least 2 levels, got {n_res}")));
        }
        Ok(Self { n_res })
    }

    pub fn n_res(&self) -> usize {
        self.n_res
    }

    /// Total dimension `4·n_res`.
    pub fn dim(&self) -> usize {
        4 * self.n_res
    }

    pub fn slot_dim(&self, slot: Slot) -> usize {
        match slot {
            Slot::Qubit1 | Slot::Qubit2 => 2,
            Slot::Resonator => self.n_res,
        }
    }

    pub fn index(&self, q1: Level, q2: Level, n: usize) -> usize {
        debug_assert!(n < self.n_res);
        2 * self.n_res * q1 as usize + self.n_res * q2 as usize + n
    }

    /// `|q1 q2 n⟩` as a column vector.
    pub fn basis_ket(&self, q1: Level, q2: Level, n: usize) -> CVector {
        let mut v = CVector::zeros(self.dim());
        v[self.index(q1, q2, n)] = ONE;
        v
    }

    /// Lift a two-qubit ket to `|ξ⟩ ⊗ |n⟩`.
    pub fn with_photons(&self, xi: &Ket, n: usize) -> Result<CVector> {
        if xi.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                actual: xi.dim(),
            });
        }
        if n >= self.n_res {
            return Err(invalid("n", format!("level {n} beyond truncation {}", self.n_res)));
        }
        let mut fock = CVector::zeros(self.n_res);
        fock[n] = ONE;
        Ok(xi.as_vector().kronecker(&fock))
    }

    pub fn embed(&self, op: &CMatrix, slot: Slot) -> Result<CMatrix> {
        embed(op, slot, self)
    }

    pub fn identity(&self) -> CMatrix {
        CMatrix::identity(self.dim(), self.dim())
    }

    /// Projector onto the `n`-photon sector.
    pub fn photon_projector(&self, n: usize) -> CMatrix {
        let mut p = CMatrix::zeros(self.n_res, self.n_res);
        if n < self.n_res {
            p[(n, n)] = ONE;
        }
        embed(&p, Slot::Resonator, self).expect("resonator-sized projector")
    }

    /// Full truncated annihilation operator `a` on the composite space.
    pub fn annihilation(&self) -> CMatrix {
        embed(&annihilation(self.n_res), Slot::Resonator, self).expect("resonator-sized operator")
    }

    /// `a†a` on the composite space.
    pub fn number(&self) -> CMatrix {
        let a = self.annihilation();
        a.adjoint() * a
    }

    /// Qubit lowering operator `σ_j = |g⟩⟨e|` on the composite space.
    pub fn lowering(&self, qubit: Slot) -> CMatrix {
        embed(&sigma_minus(), qubit, self).expect("qubit-sized operator")
    }

    pub fn pauli_z(&self, qubit: Slot) -> CMatrix {
        embed(&pauli_z(), qubit, self).expect("qubit-sized operator")
    }
}

/// `σ = |g⟩⟨e|` in the `{g, e}` basis.
pub fn sigma_minus() -> CMatrix {
    let mut m = CMatrix::zeros(2, 2);
    m[(0, 1)] = ONE;
    m
}

/// `Z = |g⟩⟨g| − |e⟩⟨e|`.
pub fn pauli_z() -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_vec(vec![ONE, -ONE]))
}

pub fn pauli_x() -> CMatrix {
    let mut m = CMatrix::zeros(2, 2);
    m[(0, 1)] = ONE;
    m[(1, 0)] = ONE;
    m
}

/// Truncated bosonic annihilation operator with `n` levels.
pub fn annihilation(n: usize) -> CMatrix {
    let mut a = CMatrix::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
    }
    a
}

/// Kronecker product `a ⊗ b`; the left factor indexes the slowest digit.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Lift `op` to the composite space by identity padding in the other slots.
pub fn embed(op: &CMatrix, slot: Slot, spec: &HilbertSpec) -> Result<CMatrix> {
    let want = spec.slot_dim(slot);
    if op.nrows() != want || op.ncols() != want {
        return Err(Error::DimensionMismatch {
            expected: want,
            actual: op.nrows(),
        });
    }
    let i2 = CMatrix::identity(2, 2);
    let ir = CMatrix::identity(spec.n_res, spec.n_res);
    Ok(match slot {
        Slot::Qubit1 => kron(&kron(op, &i2), &ir),
        Slot::Qubit2 => kron(&kron(&i2, op), &ir),
        Slot::Resonator => kron(&kron(&i2, &i2), op),
    })
}

/// Largest `|a_ij|`.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `‖A − A†‖_max`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// True when `‖A − A†‖_max ≤ 1e-12·‖A‖_max`.
pub fn is_hermitian(m: &CMatrix) -> bool {
    m.is_square() && hermitian_deviation(m) <= OPERATOR_HERMITIAN_TOL * max_abs(m).max(f64::MIN_POSITIVE)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

pub fn outer(a: &CVector, b: &CVector) -> CMatrix {
    a * b.adjoint()
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Unit-norm state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket(CVector);

impl Ket {
    pub fn new(v: CVector) -> Result<Self> {
        let norm = v.norm();
        if (norm - 1.0).abs() > KET_NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self(v))
    }

    /// Normalizes `v`; fails on the zero vector.
    pub fn normalized(v: CVector) -> Result<Self> {
        let norm = v.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self(v.unscale(norm)))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_vector(&self) -> &CVector {
        &self.0
    }

    pub fn inner(&self, other: &Ket) -> Complex64 {
        self.0.dotc(&other.0)
    }

    pub fn projector(&self) -> CMatrix {
        outer(&self.0, &self.0)
    }
}

/// Physical density matrix: Hermitian, unit trace, positive semidefinite
/// within the module tolerances.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    /// Validates `m` without modifying it.
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidState("not square".into()));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite entries".into()));
        }
        let tr = trace(&m);
        if (tr - ONE).norm() > STATE_TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr}")));
        }
        let dev = hermitian_deviation(&m);
        if dev > STATE_HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("hermiticity deviation {dev:e}")));
        }
        let min = hermitian_eigenvalues(&m)[0];
        if min < STATE_MIN_EIGENVALUE {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self(m))
    }

    /// Hermitizes and trace-normalizes `m`, then validates.
    pub fn from_unnormalized(m: CMatrix) -> Result<Self> {
        let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        let tr = trace(&h).re;
        if tr.abs() < f64::MIN_POSITIVE || !tr.is_finite() {
            return Err(Error::InvalidState(format!("cannot normalize trace {tr}")));
        }
        Self::new(h.unscale(tr))
    }

    pub fn pure(ket: &Ket) -> Self {
        Self(ket.projector())
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(CMatrix::identity(dim, dim).unscale(dim as f64))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.0)[0]
    }

    /// Expectation value `Tr[ρ O]`.
    pub fn expect(&self, op: &CMatrix) -> Complex64 {
        (&self.0 * op).trace()
    }

    /// Trace norm `‖ρ − σ‖₁`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> f64 {
        let diff = &self.0 - &other.0;
        hermitian_eigenvalues(&diff).iter().map(|e| e.abs()).sum::<f64>() * 0.5
    }
}

/// Two-qubit reduced state obtained by tracing out the resonator.
pub fn partial_trace_resonator(rho: &DensityMatrix, spec: &HilbertSpec) -> Result<DensityMatrix> {
    let d = spec.dim();
    if rho.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: rho.dim(),
        });
    }
    let nr = spec.n_res();
    let m = rho.matrix();
    let mut out = CMatrix::zeros(4, 4);
    for a in 0..4 {
        for b in 0..4 {
            let mut acc = ZERO;
            for n in 0..nr {
                acc += m[(a * nr + n, b * nr + n)];
            }
            out[(a, b)] = acc;
        }
    }
    DensityMatrix::from_unnormalized(out)
}

/// `Tr[ρ · (|ξ⟩⟨ξ| ⊗ I_res)]`.
pub fn fidelity_to_target(rho: &DensityMatrix, xi: &Ket, spec: &HilbertSpec) -> Result<f64> {
    if xi.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: xi.dim(),
        });
    }
    let reduced = partial_trace_resonator(rho, spec)?;
    let v = xi.as_vector();
    let f = v.dotc(&(reduced.matrix() * v)).re;
    Ok(f.clamp(0.0, 1.0))
}

/// `Tr[ρ²]`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    // Tr[ρ²] = Σ |ρ_ij|² for Hermitian ρ.
    m.iter().map(|z| z.norm_sqr()).sum()
}
