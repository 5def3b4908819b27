// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! Mode dispatch and output writing.

use std::f64::consts::FRAC_PI_2;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use parastab_core::circuit::{flux_sweep, flux_sweep_csv, CircuitParams};
use parastab_core::evolve::uniform_grid;
use parastab_core::liouvillian::SpectralGap;
use parastab_core::metrics::sweep::{
    scan_error_and_rate, sweep_asymmetry, sweep_counter_rotating, sweep_detuning, sweep_robustness, DetuningGrids,
};
use parastab_core::metrics::{analytic_rate, evaluate, liouvillian_for, optimize_couplings};
use parastab_core::phase::{manifold_metrics, phase_sweep, phase_sweep_csv, psi_grid, stabilize_rotated};
use parastab_core::{
    evolve, fit_error_decay, target_state, CounterRotating, DensityMatrix, Ket, Level, Observer, PeriodicLiouvillian,
    SweepResult, Tomogram, Trajectory,
};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::config::{ConfigError, InitialState, Mode, RunConfig, SweepKind};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("solver error: {0}")]
    Solver(#[from] parastab_core::Error),
    #[error("output error at {path}: {message}")]
    Output { path: String, message: String },
}

impl RunError {
    pub fn kind(&self) -> &'static str {
        match self {
            RunError::Config(_) => "config",
            RunError::Solver(_) => "solver",
            RunError::Output { .. } => "output",
        }
    }

    /// Process exit code for this failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Solver(_) => 3,
            RunError::Output { .. } => 4,
        }
    }

    /// Machine-readable error report.
    pub fn to_json(&self) -> String {
        let v = json!({"error": {"kind": self.kind(), "message": self.to_string(), "exit_code": self.exit_code()}});
        serde_json::to_string(&v).expect("plain json")
    }
}

type RResult<T> = std::result::Result<T, RunError>;

/// Files written by a run, and the summary echoed on stdout.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub out_dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub summary: Value,
}

struct Outputs {
    dir: PathBuf,
    written: Vec<(String, String)>,
}

impl Outputs {
    fn new(dir: &Path) -> RResult<Self> {
        std::fs::create_dir_all(dir).map_err(|e| RunError::Output {
            path: dir.display().to_string(),
            message: e.to_string(),
        })?;
        Ok(Self {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    /// Write through a temp file in the target directory, then rename.
    fn put(&mut self, name: &str, contents: &str) -> RResult<()> {
        let path = self.dir.join(name);
        let err = |message: String| RunError::Output {
            path: path.display().to_string(),
            message,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| err(e.to_string()))?;
        tmp.write_all(contents.as_bytes()).map_err(|e| err(e.to_string()))?;
        tmp.flush().map_err(|e| err(e.to_string()))?;
        tmp.persist(&path).map_err(|e| err(e.to_string()))?;
        self.written
            .push((name.to_string(), hex::encode(Sha256::digest(contents.as_bytes()))));
        Ok(())
    }

    fn put_json<T: Serialize>(&mut self, name: &str, v: &T) -> RResult<Value> {
        let value = to_sorted(v)?;
        self.put(name, &(pretty(&value) + "\n"))?;
        Ok(value)
    }

    fn put_sweep(&mut self, stem: &str, r: &SweepResult) -> RResult<()> {
        self.put(&format!("{stem}.csv"), &r.to_csv()?)?;
        self.put(&format!("{stem}.json"), &(r.to_json()? + "\n"))
    }
}

/// `serde_json::Map` is ordered by key, so converting through `Value`
/// sorts every object.
fn to_sorted<T: Serialize>(v: &T) -> RResult<Value> {
    serde_json::to_value(v).map_err(|e| RunError::Solver(parastab_core::Error::Serialization(e.to_string())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("value serializes")
}

/// Execute `mode` and write its outputs plus `manifest.json` into `out_dir`.
pub fn run(cfg: &RunConfig, mode: Mode, out_dir: &Path) -> RResult<RunOutcome> {
    let mode = cfg.effective_mode(mode)?;
    let start = Instant::now();
    let mut out = Outputs::new(out_dir)?;
    let summary = match mode {
        Mode::Steady => run_steady(cfg, &mut out)?,
        Mode::Gap => run_gap(cfg, &mut out)?,
        Mode::Evolve => run_evolve(cfg, &mut out)?,
        Mode::Optimize => run_optimize(cfg, &mut out)?,
        Mode::Sweep => run_sweep(cfg, &mut out)?,
        Mode::Phase => run_phase(cfg, &mut out)?,
        Mode::Circuit => run_circuit(cfg, &mut out)?,
    };
    let outputs: serde_json::Map<String, Value> = out
        .written
        .iter()
        .map(|(n, h)| (n.clone(), json!({"sha256": h})))
        .collect();
    let resolved = match mode {
        Mode::Circuit => to_sorted(&cfg.circuit_params()?.0)?,
        _ => to_sorted(&cfg.system_params()?)?,
    };
    let manifest = json!({
        "mode": mode.name(),
        "version": env!("CARGO_PKG_VERSION"),
        "config": to_sorted(cfg)?,
        "resolved_si": resolved,
        "threads": rayon::current_num_threads(),
        "wall_time_s": start.elapsed().as_secs_f64(),
        "outputs": outputs,
    });
    out.put("manifest.json", &(pretty(&manifest) + "\n"))?;
    Ok(RunOutcome {
        out_dir: out.dir.clone(),
        files: out.written.iter().map(|(n, _)| out.dir.join(n)).collect(),
        summary,
    })
}

fn gap_json(gap: &SpectralGap) -> Value {
    json!({"tau_s": gap.tau, "lambda1": [gap.lambda1.re, gap.lambda1.im]})
}

fn run_steady(cfg: &RunConfig, out: &mut Outputs) -> RResult<Value> {
    let target = cfg.target()?;
    let p = cfg.system_params()?;
    let (l, spec) = liouvillian_for(&p, &target)?;
    let rho = l.steady_state()?;
    let m = evaluate(&p, &target)?;
    let (population, _) = manifold_metrics(&rho, target.parity, &spec)?;
    let tomo = Tomogram::from_state(&rho, &spec)?;
    let v = json!({
        "eps_inf": m.eps_inf,
        "fidelity": m.fidelity,
        "purity": m.purity,
        "manifold_population": population,
        "tau_s": m.tau,
        "lambda1": [m.lambda1_re, m.lambda1_im],
        "parity": target.parity,
        "psi_rad": target.psi(),
        "photons": rho.expect(&spec.number()).re,
    });
    out.put_json("tomogram.json", &tomo)?;
    out.put_json("steady.json", &v)
}

fn run_gap(cfg: &RunConfig, out: &mut Outputs) -> RResult<Value> {
    let target = cfg.target()?;
    let p = cfg.system_params()?;
    let (l, _) = liouvillian_for(&p, &target)?;
    let ev = l.eigenvalues()?;
    let gap = l.spectral_gap()?;
    let mut v = gap_json(&gap);
    v["gamma_eff_analytic"] = json!(analytic_rate(p.g12_plus, p.kappa)?);
    v["eigenvalues"] = json!(ev.iter().take(12).map(|z| [z.re, z.im]).collect::<Vec<_>>());
    out.put_json("gap.json", &v)
}

fn trajectory_csv(t: &Trajectory) -> String {
    use parastab_core::metrics::sweep::format_f64;
    let mut s = String::from("t [s],fidelity,error,purity,photons\n");
    for i in 0..t.len() {
        let row = [t.times[i], t.fidelity[i], t.error[i], t.purity[i], t.photons[i]];
        s += &row.iter().map(|&x| format_f64(x)).collect::<Vec<_>>().join(",");
        s.push('\n');
    }
    s
}

fn run_evolve(cfg: &RunConfig, out: &mut Outputs) -> RResult<Value> {
    let target = cfg.target()?;
    let p = cfg.system_params()?;
    let ec = cfg.evolve.clone().unwrap_or_default();
    let (l, spec) = liouvillian_for(&p, &target)?;
    let gap = l.spectral_gap()?;
    let t_end = match ec.t_end {
        Some(t) => cfg.units.time.to_seconds(t),
        None => 50.0 * gap.tau,
    };
    if t_end.is_nan() || t_end <= 0.0 {
        return Err(ConfigError::Invalid {
            path: "evolve.t_end".into(),
            message: "must be positive".into(),
        }
        .into());
    }
    let rho0 = match ec.initial {
        InitialState::Eg0 => DensityMatrix::pure(&Ket::new(spec.basis_ket(Level::E, Level::G, 0))?),
        InitialState::Gg0 => DensityMatrix::pure(&Ket::new(spec.basis_ket(Level::G, Level::G, 0))?),
        InitialState::Mixed => DensityMatrix::maximally_mixed(spec.dim()),
    };
    let obs = Observer::new(spec, target_state(&target))?;
    let traj = match ec.omega_chi {
        None => evolve(&l, &rho0, &uniform_grid(t_end, ec.steps), &obs)?,
        Some(w) => {
            let cr = CounterRotating::new(&p, &target, cfg.units.frequency.to_rad_per_s(w))?;
            let pl = PeriodicLiouvillian::new(&l, &cr, parastab_core::metrics::DEFAULT_CR_SAMPLES)?;
            let periods = (t_end / pl.period()).ceil() as usize;
            pl.evolve(&rho0, periods, &obs)?
        }
    };
    out.put("trajectory.csv", &trajectory_csv(&traj))?;
    let fit = match fit_error_decay(&traj) {
        Ok(f) => to_sorted(&f)?,
        Err(e) => json!({"error": e.to_string()}),
    };
    let v = json!({
        "samples": traj.len(),
        "t_end_s": t_end,
        "final_error": traj.error.last().copied(),
        "fit": fit,
        "spectral": gap_json(&gap),
    });
    out.put_json("evolve.json", &v)
}

fn run_optimize(cfg: &RunConfig, out: &mut Outputs) -> RResult<Value> {
    let target = cfg.target()?;
    let p = cfg.system_params()?;
    let (bx, opts) = cfg.search();
    let r = optimize_couplings(&p, &target, bx, opts)?;
    out.put_sweep("landscape", &r.landscape)?;
    out.put_json("optimum.json", &r.optimum)
}

fn dimensionless(cfg_grid: &Option<crate::config::Grid>, path: &str) -> RResult<Vec<f64>> {
    let g = cfg_grid.as_ref().ok_or_else(|| ConfigError::Invalid {
        path: path.into(),
        message: "grid required for this sweep kind".into(),
    })?;
    Ok(g.values(path)?)
}

fn run_sweep(cfg: &RunConfig, out: &mut Outputs) -> RResult<Value> {
    let sw = cfg.sweep.clone().ok_or_else(|| ConfigError::Invalid {
        path: "sweep".into(),
        message: "sweep mode needs a sweep section".into(),
    })?;
    let target = cfg.target()?;
    let p = cfg.system_params()?;
    let summary = |r: &SweepResult| {
        let eps = r.eps_values();
        json!({
            "points": r.len(),
            "converged": r.records.iter().filter(|x| x.converged).count(),
            "eps_min": eps.iter().copied().filter(|x| x.is_finite()).fold(f64::INFINITY, f64::min),
        })
    };
    match sw.kind {
        SweepKind::GScan => {
            let g = cfg.frequency_grid(&sw.g_grid, "sweep.g_grid")?;
            let r = scan_error_and_rate(&p, &target, &g, cfg.ratio_policy()?)?;
            out.put_sweep("sweep", &r)?;
            Ok(summary(&r))
        }
        SweepKind::Asymmetry => {
            let kind = sw.asymmetry.ok_or_else(|| ConfigError::Invalid {
                path: "sweep.asymmetry".into(),
                message: "choose qubit_qubit or qubit_resonator".into(),
            })?;
            let a = dimensionless(&sw.factors_a, "sweep.factors_a")?;
            let b = dimensionless(&sw.factors_b, "sweep.factors_b")?;
            let r = sweep_asymmetry(&p, &target, kind, &a, &b)?;
            out.put_sweep("sweep", &r)?;
            Ok(summary(&r))
        }
        SweepKind::Robustness => {
            let a = dimensionless(&sw.factors_a, "sweep.factors_a")?;
            let b = dimensionless(&sw.factors_b, "sweep.factors_b")?;
            let r = sweep_robustness(&p, &target, &a, &b)?;
            out.put_sweep("sweep", &r)?;
            Ok(summary(&r))
        }
        SweepKind::Detuning => {
            let grids = DetuningGrids {
                common: cfg.frequency_grid(&sw.common, "sweep.common")?,
                differential: cfg.frequency_grid(&sw.differential, "sweep.differential")?,
                resonator: cfg.frequency_grid(&sw.resonator, "sweep.resonator")?,
            };
            let r = sweep_detuning(&p, &target, target.parity, &grids)?;
            out.put_sweep("qubit_detuning", &r.qubit)?;
            out.put_sweep("resonator_detuning", &r.resonator)?;
            Ok(json!({"qubit": summary(&r.qubit), "resonator": summary(&r.resonator)}))
        }
        SweepKind::CounterRotating => {
            let omega = sw.omega_chi.ok_or_else(|| ConfigError::Invalid {
                path: "sweep.omega_chi".into(),
                message: "counter_rotating sweeps need omega_chi".into(),
            })?;
            let g = cfg.frequency_grid(&sw.g_grid, "sweep.g_grid")?;
            let r = sweep_counter_rotating(
                &p,
                &target,
                cfg.ratio_policy()?,
                cfg.units.frequency.to_rad_per_s(omega),
                &g,
                &sw.thresholds,
                sw.samples,
            )?;
            out.put_sweep("sweep", &r)?;
            Ok(summary(&r))
        }
    }
}

fn run_phase(cfg: &RunConfig, out: &mut Outputs) -> RResult<Value> {
    let target = cfg.target()?;
    let p = cfg.system_params()?;
    let n = cfg.phase.clone().unwrap_or_default().points;
    if n == 0 {
        return Err(ConfigError::Invalid {
            path: "phase.points".into(),
            message: "must be positive".into(),
        }
        .into());
    }
    let pts = phase_sweep(&p, target.parity, &psi_grid(n))?;
    out.put("phase.csv", &phase_sweep_csv(&pts)?)?;
    let mut tomos = serde_json::Map::new();
    for k in 0..4 {
        let psi = k as f64 * FRAC_PI_2;
        let s = stabilize_rotated(&p, target.parity, psi)?;
        tomos.insert(
            format!("psi_{k}_pi_over_2"),
            to_sorted(&Tomogram::from_state(&s.rho, &s.spec)?)?,
        );
    }
    out.put_json("tomograms.json", &tomos)?;
    let fmin = pts.iter().map(|x| x.fidelity).fold(f64::INFINITY, f64::min);
    let fmax = pts.iter().map(|x| x.fidelity).fold(f64::NEG_INFINITY, f64::max);
    Ok(json!({"points": pts.len(), "fidelity_min": fmin, "fidelity_max": fmax}))
}

fn circuit_summary(c: &CircuitParams, phi_bias: f64) -> RResult<Value> {
    let mut qubits = Vec::new();
    for j in 1..=2 {
        qubits.push(json!({
            "l_j_h": c.l_j[j - 1],
            "g_r_static_rad_s": c.static_coupling(phi_bias, j)?,
            "g_r_param_rad_s": c.parametric_rate(phi_bias, c.delta_phi, j)?,
            "t1_closed_form_s": finite_or_null(c.coupler_t1(j)?),
            "t1_general_s": finite_or_null(c.coupler_t1_general(j, phi_bias)?),
            "t2_flux_s": finite_or_null(c.flux_dephasing_t2(phi_bias, j)?),
        }));
    }
    Ok(json!({
        "phi_bias": phi_bias,
        "squid_inductance_h": c.squid_inductance(phi_bias)?,
        "g_12_static_rad_s": c.static_coupling_qq(phi_bias)?,
        "g_12_param_rad_s": c.parametric_rate_qq(phi_bias, c.delta_phi)?,
        "modulation_is_small": CircuitParams::modulation_is_small(c.delta_phi),
        "flux_noise_rms_phi0": c.flux_noise_rms(),
        "qubits": qubits,
    }))
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn run_circuit(cfg: &RunConfig, out: &mut Outputs) -> RResult<Value> {
    let (c, phi_bias, grid) = cfg.circuit_params()?;
    let pts = flux_sweep(&c, &grid)?;
    out.put("flux_sweep.csv", &flux_sweep_csv(&pts)?)?;
    let v = circuit_summary(&c, phi_bias)?;
    out.put_json("circuit.json", &v)
}
