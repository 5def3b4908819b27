// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! Coupling-ratio optimization: a log-uniform coarse grid followed by
//! coordinate-wise golden-section refinement. Fully deterministic.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hamiltonian::{SystemParams, TargetSpec};
use crate::metrics::steady_error;
use crate::metrics::sweep::{run_grid, Axis, PointOutcome, RatioPolicy, SweepMeta, SweepResult};

/// Search region in `(g_r/g, κ/g)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBox {
    pub g_r_ratio: (f64, f64),
    pub kappa_ratio: (f64, f64),
}

impl Default for SearchBox {
    fn default() -> Self {
        Self {
            g_r_ratio: (0.25, 3.0),
            kappa_ratio: (0.3, 6.0),
        }
    }
}

impl SearchBox {
    fn validate(&self) -> Result<()> {
        for (name, (lo, hi)) in [("g_r_ratio", self.g_r_ratio), ("kappa_ratio", self.kappa_ratio)] {
            if !(lo > 0.0 && hi > lo && hi.is_finite()) {
                return Err(invalid(name, format!("bad search interval ({lo}, {hi})")));
            }
        }
        Ok(())
    }

    pub fn contains(&self, g_r_ratio: f64, kappa_ratio: f64) -> bool {
        (self.g_r_ratio.0..=self.g_r_ratio.1).contains(&g_r_ratio)
            && (self.kappa_ratio.0..=self.kappa_ratio.1).contains(&kappa_ratio)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Points per axis of the coarse grid.
    pub grid: usize,
    /// Alternating refinement sweeps over both axes.
    pub rounds: usize,
    /// Golden-section stopping width in log-ratio units.
    pub tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            grid: 21,
            rounds: 3,
            tol: 1e-4,
        }
    }
}

/// `ε∞` at ±10% of the optimum along each axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sensitivity {
    pub g_r_minus: f64,
    pub g_r_plus: f64,
    pub kappa_minus: f64,
    pub kappa_plus: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub g_r_ratio: f64,
    pub kappa_ratio: f64,
    pub eps_inf: f64,
    /// Coarse-grid minimizer before refinement.
    pub grid_argmin: (f64, f64),
    /// Set when the minimum sits on an edge of the search box.
    pub on_boundary: bool,
    pub sensitivity: Sensitivity,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeOutcome {
    pub optimum: Optimum,
    pub landscape: SweepResult,
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

struct Objective<'a> {
    base: &'a SystemParams,
    target: &'a TargetSpec,
    g: f64,
    calls: usize,
}

impl Objective<'_> {
    fn params(&self, g_r_ratio: f64, kappa_ratio: f64) -> SystemParams {
        RatioPolicy {
            g_r_over_g: g_r_ratio,
            kappa_over_g: kappa_ratio,
        }
        .apply(self.base, self.g, self.target)
    }

    fn eval(&mut self, g_r_ratio: f64, kappa_ratio: f64) -> f64 {
        self.calls += 1;
        steady_error(&self.params(g_r_ratio, kappa_ratio), self.target)
            .map(|(_, e)| e)
            .unwrap_or(f64::INFINITY)
    }
}

/// Golden-section minimization of `f` on `[a, b]`.
fn golden<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Minimize `ε∞` over `(g_r/g, κ/g)` at the coupling `g = base.g12_plus`.
pub fn optimize_couplings(
    base: &SystemParams,
    target: &TargetSpec,
    bx: SearchBox,
    opts: SearchOptions,
) -> Result<OptimizeOutcome> {
    bx.validate()?;
    if opts.grid < 3 {
        return Err(invalid("grid", "need at least 3 points per axis"));
    }
    if !(opts.tol > 0.0) {
        return Err(invalid("tol", "must be positive"));
    }
    base.validate()?;
    let g = base.g12_plus;
    if !(g > 0.0) {
        return Err(invalid("g12_plus", "optimization needs a positive coupling"));
    }

    let gr_axis = log_grid(bx.g_r_ratio.0, bx.g_r_ratio.1, opts.grid);
    let k_axis = log_grid(bx.kappa_ratio.0, bx.kappa_ratio.1, opts.grid);
    let meta = SweepMeta {
        kind: "optimize_couplings".into(),
        target: *target,
        base: *base,
        code_version: env!("CARGO_PKG_VERSION").into(),
    };
    let probe = Objective {
        base,
        target,
        g,
        calls: 0,
    };
    let landscape = run_grid(
        vec![
            Axis::new("g_r_over_g", "1", gr_axis.clone()),
            Axis::new("kappa_over_g", "1", k_axis.clone()),
        ],
        meta,
        |c| {
            let (_, e) = steady_error(&probe.params(c[0], c[1]), target)?;
            Ok(PointOutcome {
                eps_inf: e,
                fidelity: 1.0 - e,
                ..Default::default()
            })
        },
    )?;

    // First strict minimum in grid order breaks ties deterministically.
    let (best_idx, best) = landscape
        .records
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.eps_inf.filter(|e| e.is_finite()).map(|e| (i, e)))
        .fold(
            (usize::MAX, f64::INFINITY),
            |acc, (i, e)| if e < acc.1 { (i, e) } else { acc },
        );
    if best_idx == usize::MAX {
        return Err(crate::error::Error::NotConverged("no grid point converged".into()));
    }
    let bi = landscape.records[best_idx].index.clone();
    let (i, j) = (bi[0], bi[1]);
    let last = opts.grid - 1;
    let grid_edge = i == 0 || j == 0 || i == last || j == last;

    let mut obj = Objective {
        base,
        target,
        g,
        calls: landscape.len(),
    };
    let (lx0, lx1) = (bx.g_r_ratio.0.ln(), bx.g_r_ratio.1.ln());
    let (ly0, ly1) = (bx.kappa_ratio.0.ln(), bx.kappa_ratio.1.ln());
    let hx = (lx1 - lx0) / last as f64;
    let hy = (ly1 - ly0) / last as f64;
    let (mut x, mut y) = (gr_axis[i].ln(), k_axis[j].ln());
    let mut val = best;
    let mut scale = 1.0;
    for _ in 0..opts.rounds {
        let (a, b) = ((x - scale * hx).max(lx0), (x + scale * hx).min(lx1));
        let (nx, fx) = golden(|t| obj.eval(t.exp(), y.exp()), a, b, opts.tol);
        if fx < val {
            x = nx;
            val = fx;
        }
        let (a, b) = ((y - scale * hy).max(ly0), (y + scale * hy).min(ly1));
        let (ny, fy) = golden(|t| obj.eval(x.exp(), t.exp()), a, b, opts.tol);
        if fy < val {
            y = ny;
            val = fy;
        }
        scale *= 0.5;
    }
    let edge_tol = 2.0 * opts.tol;
    let on_boundary = grid_edge
        || (x - lx0).abs() < edge_tol
        || (lx1 - x).abs() < edge_tol
        || (y - ly0).abs() < edge_tol
        || (ly1 - y).abs() < edge_tol;

    let (gr, kr) = (x.exp(), y.exp());
    let sensitivity = Sensitivity {
        g_r_minus: obj.eval(0.9 * gr, kr),
        g_r_plus: obj.eval(1.1 * gr, kr),
        kappa_minus: obj.eval(gr, 0.9 * kr),
        kappa_plus: obj.eval(gr, 1.1 * kr),
    };
    Ok(OptimizeOutcome {
        optimum: Optimum {
            g_r_ratio: gr,
            kappa_ratio: kr,
            eps_inf: val,
            grid_argmin: (gr_axis[i], k_axis[j]),
            on_boundary,
            sensitivity,
            evaluations: obj.calls,
        },
        landscape,
    })
}
