//! Command-line front end for `vffcomp-core`: JSON configs, worker pools and
//! atomically written CSV/JSON artifacts.

pub mod artifacts;
pub mod commands;
pub mod config;
pub mod reference;

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use artifacts::{sha256_hex, ArtifactSet, Manifest, MANIFEST_FILE};
use commands::Outcome;
use config::{ExperimentConfig, SchemaError};

/// Overrides the output directory of every command.
pub const OUTPUT_DIR_ENV: &str = "VFFCOMP_OUTPUT_DIR";

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "vffcomp", version, about = "Variationally compressed Trotter circuits for two-surface dynamics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// JSON experiment config; built-in defaults when omitted.
    #[arg(long, short)]
    pub config: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory; beats the environment and the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (0 = logical cores).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Validate the config and write only the manifest.
    #[arg(long)]
    pub manifest_only: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compress a quadratic propagator into W·D·W†.
    Compress(Common),
    /// Simulate one Marcus run and fit its rate.
    Marcus(Common),
    /// Rates over a driving-force grid, explicit and compressed.
    RateScan(Common),
    /// Classical Marcus and Franck-Condon rate curves.
    RatesTheory(Common),
    /// Gate census against the published table.
    Count(Common),
    /// Fit the wavepacket preparation circuit.
    InitWavepacket(Common),
    /// Fast-forwarded versus stepwise free-particle evolution.
    FastforwardCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        steps: Option<u32>,
    },
    /// Print the artifact column reference as Markdown.
    Columns,
}

fn load<P: DeserializeOwned + Default>(path: Option<&Path>) -> Result<ExperimentConfig<P>> {
    match path {
        None => Ok(ExperimentConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(config::parse(&text, p)?)
        }
    }
}

fn output_dir(flag: Option<&Path>, from_config: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(p) = std::env::var_os(OUTPUT_DIR_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(p);
    }
    from_config.map_or_else(|| PathBuf::from("vffcomp-out"), Path::to_path_buf)
}

fn execute<P>(
    name: &str,
    common: &Common,
    adjust: impl FnOnce(&mut ExperimentConfig<P>),
    work: impl FnOnce(&ExperimentConfig<P>) -> Result<Outcome> + Send,
) -> Result<PathBuf>
where
    P: DeserializeOwned + Serialize + Default + Sync,
{
    let start = Instant::now();
    let mut cfg: ExperimentConfig<P> = load(common.config.as_deref())?;
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    adjust(&mut cfg);
    let dir = output_dir(common.out.as_deref(), cfg.output_dir.as_deref());
    cfg.output_dir = None;
    let resolved = serde_json::to_vec(&cfg)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(common.workers).build()?;
    let workers = pool.current_num_threads();
    let mut outcome = if common.manifest_only { Outcome::default() } else { pool.install(|| work(&cfg))? };
    if !common.manifest_only {
        outcome.artifacts.add_json("config.json", &cfg)?;
        outcome.artifacts.commit(&dir)?;
    }
    let manifest = Manifest {
        command: name.to_owned(),
        schema_version: cfg.schema_version,
        config_sha256: sha256_hex(&resolved),
        seed: cfg.seed,
        versions: Manifest::versions(),
        workers,
        wall_time_s: start.elapsed().as_secs_f64(),
        dry_run: common.manifest_only,
        converged: outcome.converged,
        artifacts: outcome.artifacts.records(),
    };
    let mut m = ArtifactSet::default();
    m.add_json(MANIFEST_FILE, &manifest)?;
    m.commit(&dir)?;
    Ok(dir)
}

/// Run a parsed command; returns the directory written to, if any.
pub fn run(cli: Cli) -> Result<Option<PathBuf>> {
    let dir = match &cli.command {
        Command::Compress(c) => execute("compress", c, |_| {}, commands::compress_cmd)?,
        Command::Marcus(c) => execute("marcus", c, |_| {}, commands::marcus_cmd)?,
        Command::RateScan(c) => execute("rate-scan", c, |_| {}, commands::rate_scan_cmd)?,
        Command::RatesTheory(c) => execute("rates-theory", c, |_| {}, commands::rates_theory_cmd)?,
        Command::Count(c) => execute("count", c, |_| {}, commands::count_cmd)?,
        Command::InitWavepacket(c) => execute("init-wavepacket", c, |_| {}, commands::init_wavepacket_cmd)?,
        Command::FastforwardCheck { common, n, steps } => execute(
            "fastforward-check",
            common,
            |cfg: &mut ExperimentConfig<config::FastForwardParams>| {
                if let Some(n) = n {
                    cfg.params.n = *n;
                }
                if let Some(s) = steps {
                    cfg.params.steps = *s;
                }
            },
            commands::fastforward_cmd,
        )?,
        Command::Columns => {
            print!("{}", reference::markdown());
            return Ok(None);
        }
    };
    Ok(Some(dir))
}

/// Exit status for a failed run: 2 for config problems, 3 for lost numerical
/// integrity, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if cause.downcast_ref::<SchemaError>().is_some() {
            return EXIT_SCHEMA;
        }
        match cause.downcast_ref::<vffcomp_core::Error>() {
            Some(vffcomp_core::Error::Numeric(_)) => return EXIT_NUMERIC,
            Some(vffcomp_core::Error::Argument(_)) => return EXIT_SCHEMA,
            _ => {}
        }
    }
    EXIT_FAILURE
}
