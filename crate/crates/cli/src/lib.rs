// Copyright 2026 The Parastab Authors
// SPDX-License-Identifier: Apache-2.0

//! Configuration loading and run dispatch for the `parastab` binary.

pub mod config;
pub mod run;

pub use config::{parse_config, parse_config_str, serialize_config, Mode, RunConfig};
pub use run::{run, RunError, RunOutcome};
