//! Versioned JSON experiment configs, one parameter block per command.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use vffcomp_core::builders::StepCoupling;
use vffcomp_core::grid::GridSpec;
use vffcomp_core::marcus::{CouplingSpec, MarcusConfig};
use vffcomp_core::resources::{published_configs, CensusConfig};
use vffcomp_core::vff::OptimizerConfig;
use vffcomp_core::walsh::Topology;

pub const SCHEMA_VERSION: u32 = 1;

/// A config that does not match the command's schema. Maps to exit status 2.
#[derive(Debug)]
pub struct SchemaError(pub String);

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SchemaError {}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig<P> {
    pub schema_version: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub params: P,
}

impl<P: Default> Default for ExperimentConfig<P> {
    fn default() -> Self {
        ExperimentConfig { schema_version: SCHEMA_VERSION, seed: 0, output_dir: None, params: P::default() }
    }
}

/// Parse `text` (read from `origin`) into the schema for `P`.
pub fn parse<P: DeserializeOwned + Default>(text: &str, origin: &Path) -> Result<ExperimentConfig<P>, SchemaError> {
    let cfg: ExperimentConfig<P> = serde_json::from_str(text)
        .map_err(|e| SchemaError(format!("{}:{}:{}: {}", origin.display(), e.line(), e.column(), strip_position(&e.to_string()))))?;
    if cfg.schema_version != SCHEMA_VERSION {
        return Err(SchemaError(format!("{}: schema_version {} is not supported (expected {SCHEMA_VERSION})", origin.display(), cfg.schema_version)));
    }
    Ok(cfg)
}

fn strip_position(msg: &str) -> &str {
    msg.rfind(" at line ").map_or(msg, |i| &msg[..i])
}

/// Seeds `seed, seed+1, …` for `restarts` optimizer runs.
pub fn seed_list(seed: u64, restarts: usize) -> Vec<u64> {
    (0..restarts.max(1) as u64).map(|i| seed.wrapping_add(i)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TargetSpec {
    /// `e^{−iτ(A1(x − centre)² + offset)}` in the position frame.
    Potential {
        #[serde(rename = "A1")]
        a1: f64,
        centre: f64,
        #[serde(default)]
        offset: f64,
    },
    /// `e^{−iτp²/2μ}` in the momentum frame.
    Kinetic { mu: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CompressParams {
    pub grid: GridSpec,
    pub target: TargetSpec,
    pub tau: f64,
    pub l: usize,
    pub topology: Topology,
    pub layers_w: usize,
    pub restarts: usize,
    pub optimizer: OptimizerConfig,
}

impl Default for CompressParams {
    fn default() -> Self {
        CompressParams {
            grid: GridSpec { n: 4, length: 20.0 },
            target: TargetSpec::Potential { a1: 0.015, centre: 11.5, offset: 0.0 },
            tau: 1.0,
            l: 4,
            topology: Topology::Linear,
            layers_w: 1,
            restarts: 5,
            optimizer: OptimizerConfig { cost_tolerance: 1e-7, max_iters: 3000, ..OptimizerConfig::default() },
        }
    }
}

/// Optimizer settings for compressed Trotter operators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OperatorCompression {
    pub layers_w: usize,
    pub restarts: usize,
    pub optimizer: OptimizerConfig,
}

impl Default for OperatorCompression {
    fn default() -> Self {
        OperatorCompression {
            layers_w: 1,
            restarts: 1,
            optimizer: OptimizerConfig { cost_tolerance: 1e-7, max_iters: 3000, ..OptimizerConfig::default() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MarcusParams {
    pub model: MarcusConfig,
    pub t_max: f64,
    pub compression: OperatorCompression,
}

impl Default for MarcusParams {
    fn default() -> Self {
        MarcusParams { model: MarcusConfig::default(), t_max: 100.0, compression: OperatorCompression::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    Explicit,
    Compressed,
}

impl ScanMode {
    pub fn name(self) -> &'static str {
        match self {
            ScanMode::Explicit => "explicit",
            ScanMode::Compressed => "compressed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RateScanParams {
    pub model: MarcusConfig,
    #[serde(rename = "dG_values")]
    pub dg_values: Vec<f64>,
    pub modes: Vec<ScanMode>,
    pub taus: Vec<f64>,
    pub t_max: f64,
    pub l_kinetic: usize,
    pub l_potential: usize,
    pub topology: Topology,
    pub compression: OperatorCompression,
}

/// `0, 0.05, …, 0.3`.
pub fn default_dg_values() -> Vec<f64> {
    (0..=6).map(|i| f64::from(i) * 5.0 / 100.0).collect()
}

/// Proton-mass reaction coordinate with a coupling window spanning both wells.
pub fn scan_model() -> MarcusConfig {
    let grid = GridSpec { n: 8, length: 20.0 };
    MarcusConfig {
        mu: 1836.0,
        coupling: CouplingSpec::Step(StepCoupling { c0: 0.01, beta: 1.0, a: 10.0, span: (64, 191) }),
        ..MarcusConfig::on_grid(grid)
    }
}

impl Default for RateScanParams {
    fn default() -> Self {
        RateScanParams {
            model: scan_model(),
            dg_values: default_dg_values(),
            modes: vec![ScanMode::Explicit, ScanMode::Compressed],
            taus: vec![1.0],
            t_max: 100.0,
            l_kinetic: 4,
            l_potential: 6,
            topology: Topology::Linear,
            compression: OperatorCompression::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RatesTheoryParams {
    pub model: MarcusConfig,
    #[serde(rename = "dG_values")]
    pub dg_values: Vec<f64>,
    #[serde(rename = "kT")]
    pub kt: f64,
    /// `|V_coup|²` for the classical curve; the peak coupling squared when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_coup_sq: Option<f64>,
}

impl Default for RatesTheoryParams {
    fn default() -> Self {
        RatesTheoryParams { model: scan_model(), dg_values: default_dg_values(), kt: 0.01, v_coup_sq: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CountParams {
    pub rows: Vec<CensusConfig>,
    /// `(n, P)` pairs for the register-size table.
    pub registers: Vec<(usize, usize)>,
}

impl Default for CountParams {
    fn default() -> Self {
        CountParams { rows: published_configs(), registers: vec![(8, 3), (4, 1), (2, 2)] }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WavepacketParams {
    pub grid: GridSpec,
    #[serde(rename = "A1")]
    pub a1: f64,
    pub centre: f64,
    pub mu: f64,
    pub layers: usize,
    pub optimizer: OptimizerConfig,
}

impl Default for WavepacketParams {
    fn default() -> Self {
        WavepacketParams {
            grid: GridSpec { n: 3, length: 20.0 },
            a1: 0.015,
            centre: 10.0,
            mu: 1.0,
            layers: 2,
            optimizer: OptimizerConfig { cost_tolerance: 1e-6, max_iters: 2000, ..OptimizerConfig::default() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FastForwardParams {
    pub n: usize,
    pub steps: u32,
    #[serde(rename = "L")]
    pub length: f64,
    pub mu: f64,
    pub tau: f64,
    pub layers_w: usize,
}

impl Default for FastForwardParams {
    fn default() -> Self {
        FastForwardParams { n: 3, steps: 10, length: 20.0, mu: 1.0, tau: 1.0, layers_w: 1 }
    }
}
