// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! Time-domain integration of the master equation.
//!
//! Static generators are propagated with cached matrix exponentials, one per
//! distinct step length. A periodic leakage term is handled by
//! piecewise-constant midpoint sampling of each period.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::hamiltonian::CounterRotating;
use crate::liouvillian::{devectorize, null_vector, state_from_vector, vectorize, Liouvillian};
use crate::quantum::{fidelity_to_target, purity, CMatrix, CVector, DensityMatrix, HilbertSpec, Ket};

/// Maximum tolerated deviation of `Tr ρ(t)` from one.
pub const TRACE_DRIFT_TOL: f64 = 1e-8;
/// Fewest slices per period accepted for periodic generators.
pub const MIN_SAMPLES_PER_PERIOD: usize = 40;

/// Sampled observables along a trajectory.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub fidelity: Vec<f64>,
    pub error: Vec<f64>,
    pub purity: Vec<f64>,
    pub photons: Vec<f64>,
    /// Raw (unnormalized) states if requested.
    #[serde(skip)]
    pub states: Option<Vec<CMatrix>>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// First recorded time at which the error is at or below `threshold`.
    pub fn first_time_below(&self, threshold: f64) -> Option<f64> {
        self.times
            .iter()
            .zip(&self.error)
            .find(|(_, &e)| e <= threshold)
            .map(|(&t, _)| t)
    }
}

/// What gets measured at each checkpoint.
#[derive(Debug, Clone)]
pub struct Observer {
    spec: HilbertSpec,
    target: Ket,
    number: CMatrix,
    store_states: bool,
}

impl Observer {
    pub fn new(spec: HilbertSpec, target: Ket) -> Result<Self> {
        if target.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                actual: target.dim(),
            });
        }
        Ok(Self {
            number: spec.number(),
            spec,
            target,
            store_states: false,
        })
    }

    pub fn storing_states(mut self, yes: bool) -> Self {
        self.store_states = yes;
        self
    }

    fn record(&self, traj: &mut Trajectory, time: f64, raw: &CMatrix) -> Result<()> {
        let tr = raw.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_DRIFT_TOL {
            return Err(Error::TraceDrift { trace: tr.re, time });
        }
        let rho = DensityMatrix::from_unnormalized(raw.clone())?;
        let f = fidelity_to_target(&rho, &self.target, &self.spec)?;
        traj.times.push(time);
        traj.fidelity.push(f);
        traj.error.push(1.0 - f);
        traj.purity.push(purity(&rho));
        traj.photons.push(rho.expect(&self.number).re);
        if self.store_states {
            traj.states.get_or_insert_with(Vec::new).push(raw.clone());
        }
        Ok(())
    }
}

fn check_start(l_dim: usize, rho0: &DensityMatrix, spec: &HilbertSpec) -> Result<()> {
    if rho0.dim() != l_dim || spec.dim() != l_dim {
        return Err(Error::DimensionMismatch {
            expected: l_dim,
            actual: rho0.dim(),
        });
    }
    Ok(())
}

/// Propagate under a time-independent generator and sample on `t_grid`.
pub fn evolve(l: &Liouvillian, rho0: &DensityMatrix, t_grid: &[f64], observer: &Observer) -> Result<Trajectory> {
    check_start(l.dim(), rho0, &observer.spec)?;
    let Some(&t0) = t_grid.first() else {
        return Err(invalid("t_grid", "empty time grid"));
    };
    if !t0.is_finite() {
        return Err(Error::NonMonotoneGrid { index: 0 });
    }
    let mut cache = PropagatorCache::default();
    let mut traj = Trajectory::default();
    let mut v = vectorize(rho0.matrix());
    observer.record(&mut traj, t0, rho0.matrix())?;
    for (k, w) in t_grid.windows(2).enumerate() {
        let dt = w[1] - w[0];
        if !(dt > 0.0) || !w[1].is_finite() {
            return Err(Error::NonMonotoneGrid { index: k + 1 });
        }
        if w[0] + dt == w[0] || dt <= f64::EPSILON * w[0].abs() {
            return Err(Error::StepUnderflow { time: w[0] });
        }
        v = cache.get(l, dt) * v;
        observer.record(&mut traj, w[1], &devectorize(&v)?)?;
    }
    Ok(traj)
}

/// Step lengths equal to within this relative tolerance share a propagator,
/// so that rounding noise in a uniform grid does not defeat the cache.
const STEP_MATCH_TOL: f64 = 1e-12;

#[derive(Default)]
struct PropagatorCache {
    entries: Vec<(f64, CMatrix)>,
}

impl PropagatorCache {
    fn get(&mut self, l: &Liouvillian, dt: f64) -> &CMatrix {
        let hit = self
            .entries
            .iter()
            .position(|(h, _)| (h - dt).abs() <= STEP_MATCH_TOL * dt);
        let idx = match hit {
            Some(i) => i,
            None => {
                self.entries.push((dt, (l.matrix() * Complex64::new(dt, 0.0)).exp()));
                self.entries.len() - 1
            }
        };
        &self.entries[idx].1
    }
}

/// `n + 1` equally spaced times on `[0, t_end]`.
pub fn uniform_grid(t_end: f64, n: usize) -> Vec<f64> {
    let n = n.max(1);
    (0..=n).map(|k| t_end * k as f64 / n as f64).collect()
}

/// Generator with a periodic leakage term, discretized into midpoint slices.
#[derive(Debug, Clone)]
pub struct PeriodicLiouvillian {
    period: f64,
    slice_props: Vec<CMatrix>,
    one_period: CMatrix,
}

impl PeriodicLiouvillian {
    /// `base` must already contain the static Hamiltonian; the leakage term
    /// is added at each slice midpoint.
    pub fn new(base: &Liouvillian, leakage: &CounterRotating, samples: usize) -> Result<Self> {
        if samples < MIN_SAMPLES_PER_PERIOD {
            return Err(invalid(
                "samples",
                format!("need at least {MIN_SAMPLES_PER_PERIOD} slices per period, got {samples}"),
            ));
        }
        let period = leakage.period();
        if !period.is_finite() || period <= 0.0 {
            return Err(invalid("omega_chi", "leakage frequency must be nonzero"));
        }
        if leakage.forward.nrows() != base.dim() {
            return Err(Error::DimensionMismatch {
                expected: base.dim(),
                actual: leakage.forward.nrows(),
            });
        }
        let dt = period / samples as f64;
        let h0 = base.hamiltonian();
        let mut slice_props = Vec::with_capacity(samples);
        let d2 = base.dim() * base.dim();
        let mut one_period = CMatrix::identity(d2, d2);
        for k in 0..samples {
            let mid = (k as f64 + 0.5) * dt;
            let lk = base.with_hamiltonian(&(h0 + leakage.at(mid)))?;
            let p = (lk.matrix() * Complex64::new(dt, 0.0)).exp();
            one_period = &p * one_period;
            slice_props.push(p);
        }
        Ok(Self {
            period,
            slice_props,
            one_period,
        })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn samples(&self) -> usize {
        self.slice_props.len()
    }

    pub fn slice_duration(&self) -> f64 {
        self.period / self.samples() as f64
    }

    /// One-period propagator starting at phase zero.
    pub fn monodromy(&self) -> &CMatrix {
        &self.one_period
    }

    /// State at phase zero of the periodic steady state.
    pub fn steady_state(&self) -> Result<DensityMatrix> {
        let n = self.one_period.nrows();
        let m = &self.one_period - CMatrix::identity(n, n);
        state_from_vector(&null_vector(&m)?)
    }

    /// States at every slice boundary of one period starting from `rho`
    /// (the final, phase-2π state is excluded).
    pub fn cycle(&self, rho: &DensityMatrix) -> Result<Vec<DensityMatrix>> {
        let mut v: CVector = vectorize(rho.matrix());
        let mut out = Vec::with_capacity(self.samples());
        out.push(rho.clone());
        for p in &self.slice_props[..self.samples() - 1] {
            v = p * v;
            out.push(DensityMatrix::from_unnormalized(devectorize(&v)?)?);
        }
        Ok(out)
    }

    /// Integrate for `periods` full periods, recording every slice boundary.
    pub fn evolve(&self, rho0: &DensityMatrix, periods: usize, observer: &Observer) -> Result<Trajectory> {
        let d = rho0.dim();
        check_start(d, rho0, &observer.spec)?;
        if self.one_period.nrows() != d * d {
            return Err(Error::DimensionMismatch {
                expected: self.one_period.nrows(),
                actual: d * d,
            });
        }
        let dt = self.slice_duration();
        let mut traj = Trajectory::default();
        let mut v = vectorize(rho0.matrix());
        observer.record(&mut traj, 0.0, rho0.matrix())?;
        let mut step = 0usize;
        for _ in 0..periods {
            for p in &self.slice_props {
                v = p * v;
                step += 1;
                observer.record(&mut traj, step as f64 * dt, &devectorize(&v)?)?;
            }
        }
        Ok(traj)
    }
}
