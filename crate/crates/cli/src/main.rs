// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use parastab_cli::{parse_config, run, Mode, RunError};

/// Steady-state and transient simulation of autonomously stabilized
/// two-qubit Bell states.
#[derive(Parser, Debug)]
#[command(name = "parastab", version)]
struct Cli {
    /// What to compute.
    #[arg(value_enum)]
    mode: Mode,
    /// JSON run configuration.
    #[arg(long, short)]
    config: PathBuf,
    /// Output directory; overrides `output_dir` in the config.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Worker threads for parallel sweeps.
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!(
                "{}",
                serde_json::json!({"error": {"kind": "threads", "message": e.to_string(), "exit_code": 1}})
            );
            return ExitCode::from(1);
        }
    }
    let result = parse_config(&cli.config).map_err(RunError::from).and_then(|cfg| {
        let out = cli
            .out
            .clone()
            .or_else(|| cfg.output_dir.as_ref().map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"));
        run(&cfg, cli.mode, &out)
    });
    match result {
        Ok(outcome) => {
            println!("{}", serde_json::to_string_pretty(&outcome.summary).expect("json"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
