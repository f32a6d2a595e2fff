//! Implementations of the `detsfc` subcommands.
//!
//! Each command loads and validates its configuration before touching the
//! output directory, so a bad config never leaves partial files behind.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::error::{ConfigError, OracleError};
use crate::sim::compare::{compare, CompareSummary};
use crate::sim::export::{self, fmt_f64};
use crate::sim::instances::{gap_report, summarize, GapRow, GapSummary};
use crate::sim::{run, SimConfig, SimMetrics};
use crate::strategy::StrategyKind;

pub const ORACLE_CSV: &str = "oracle_check.csv";
pub const ORACLE_SUMMARY_JSON: &str = "oracle_summary.json";
pub const ORACLE_HEADER: &str = "instance,nodes,chain_len,det_feasible,det_profit,det_oracle,det_oracle_feasible,\
sph_feasible,sph_profit,sph_oracle,sph_oracle_feasible,dominance";

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub epochs: Option<usize>,
    pub strategy: Option<StrategyKind>,
}

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("heuristic beat the oracle on {failures} instance(s)")]
    Dominance { failures: usize },
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Dominance { .. } => 1,
            _ => 2,
        }
    }
}

/// Reads `path` (or the built-in defaults) and applies `ov`.
pub fn load_config(path: Option<&Path>, ov: &Overrides) -> Result<SimConfig, ConfigError> {
    let mut cfg = match path {
        Some(p) => SimConfig::load(p)?,
        None => SimConfig::default(),
    };
    if let Some(seed) = ov.seed {
        cfg.seed = seed;
    }
    if let Some(epochs) = ov.epochs {
        cfg.epochs = epochs;
    }
    if let Some(strategy) = ov.strategy {
        cfg.strategy = strategy;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write(out: &Path, files: &[(&'static str, String)]) -> Result<Vec<PathBuf>, CommandError> {
    export::write_files(out, files).map_err(|source| CommandError::Output { path: out.to_path_buf(), source })
}

pub fn cmd_simulate(config: Option<&Path>, ov: &Overrides, out: &Path) -> Result<SimMetrics, CommandError> {
    let cfg = load_config(config, ov)?;
    let result = run(&cfg)?;
    write(out, &export::simulate_files(&result))?;
    Ok(result.metrics)
}

pub fn cmd_compare(config: Option<&Path>, ov: &Overrides, out: &Path) -> Result<CompareSummary, CommandError> {
    let cfg = load_config(config, ov)?;
    let c = compare(&cfg)?;
    write(out, &export::compare_files(&c.det.metrics, &c.sph.metrics, &c.buckets, &c.summary))?;
    Ok(c.summary)
}

pub fn oracle_csv(rows: &[GapRow]) -> String {
    let mut out = format!("{ORACLE_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.instance,
            r.nodes,
            r.chain_len,
            r.det_feasible,
            fmt_f64(r.det_profit),
            fmt_f64(r.det_oracle),
            r.det_oracle_feasible,
            r.sph_feasible,
            fmt_f64(r.sph_profit),
            fmt_f64(r.sph_oracle),
            r.sph_oracle_feasible,
            r.dominance_holds()
        );
    }
    out
}

/// Writes the gap report of `instances` random small instances. Fails with
/// [`CommandError::Dominance`] (after writing the report) if any heuristic
/// outperforms the oracle.
pub fn cmd_oracle_check(
    config: Option<&Path>,
    ov: &Overrides,
    out: &Path,
    instances: usize,
) -> Result<GapSummary, CommandError> {
    let cfg = load_config(config, ov)?;
    let rows = gap_report(cfg.seed, instances, &cfg.oracle_check, &cfg.requests, &cfg.params)?;
    let summary = summarize(&rows);
    let mut json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    json.push('\n');
    write(out, &[(ORACLE_CSV, oracle_csv(&rows)), (ORACLE_SUMMARY_JSON, json)])?;
    if summary.dominance_failures > 0 {
        return Err(CommandError::Dominance { failures: summary.dominance_failures });
    }
    Ok(summary)
}
