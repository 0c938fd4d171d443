//! One function per subcommand. Each returns its artifacts in memory.

use std::f64::consts::PI;

use anyhow::{anyhow, Result};
use rayon::prelude::*;
use serde::Serialize;
use vffcomp_core::builders::{fit_wavepacket, harmonic_ground_state, ucc_circuit, QuadraticPhases};
use vffcomp_core::grid::{position_of_index, GridSpec};
use vffcomp_core::marcus::{
    compress_operators, extract_rate, fc_rate_low_temperature, marcus_rate_theory, rate_point, simulate, CompressedOperators, MarcusConfig,
    MarcusRateParams, OperatorMode, RateResult,
};
use vffcomp_core::resources::{census_table, total_qubits, truncation_removed, Operator};
use vffcomp_core::rng::Rng;
use vffcomp_core::sim::{state_fidelity, StateVector, Unitary};
use vffcomp_core::vff::{
    align_global_phase, analytic_thetas, compress, fast_forward, verify_global_minimum, CompressResult, CompressSettings, OptimizerConfig,
    VffAnsatz,
};
use vffcomp_core::walsh::Topology;
use vffcomp_core::Complex64;

use crate::artifacts::{num, ArtifactSet, Csv};
use crate::config::*;

#[derive(Debug, Default)]
pub struct Outcome {
    pub artifacts: ArtifactSet,
    pub converged: Option<bool>,
}

fn schema(e: impl std::fmt::Display) -> anyhow::Error {
    anyhow::Error::new(SchemaError(e.to_string()))
}

fn diagonal(phases: &QuadraticPhases, n: usize) -> Unitary {
    let d: Vec<Complex64> = (0..1usize << n).map(|m| Complex64::cis(phases.phase(m))).collect();
    Unitary::from_diagonal(&d)
}

/// Lowest cost over `seeds`, run in parallel; ties go to the earlier seed.
fn best_of(target: &Unitary, settings: &CompressSettings, opt: &OptimizerConfig, seeds: &[u64]) -> Result<Vec<(u64, CompressResult)>> {
    let runs: Vec<vffcomp_core::Result<CompressResult>> =
        seeds.par_iter().map(|&seed| compress(target, settings, &OptimizerConfig { seed, ..opt.clone() })).collect();
    let mut out = Vec::with_capacity(runs.len());
    for (seed, r) in seeds.iter().zip(runs) {
        out.push((*seed, r?));
    }
    Ok(out)
}

fn history_csv(r: &CompressResult) -> Csv {
    let mut csv = Csv::new(&["iter", "cost", "best_cost"]);
    for h in &r.history {
        csv.row(&[h.iter.to_string(), num(h.cost), num(h.best_cost)]);
    }
    csv
}

pub fn compress_cmd(cfg: &ExperimentConfig<CompressParams>) -> Result<Outcome> {
    let p = &cfg.params;
    p.grid.validate().map_err(schema)?;
    if p.l == 0 || p.layers_w > 16 {
        return Err(schema("params.l must be at least 1 and params.layers_w at most 16"));
    }
    let phases = match p.target {
        TargetSpec::Potential { a1, centre, offset } => QuadraticPhases::potential(&p.grid, a1, centre, offset, p.tau),
        TargetSpec::Kinetic { mu } => {
            if !(mu > 0.0) {
                return Err(schema("params.target.mu must be positive"));
            }
            QuadraticPhases::kinetic(&p.grid, mu, p.tau)
        }
    };
    let target = diagonal(&phases, p.grid.n);
    let settings = CompressSettings { l: p.l, topology: p.topology, layers_w: p.layers_w, tau: p.tau };
    let runs = best_of(&target, &settings, &p.optimizer, &seed_list(cfg.seed, p.restarts))?;
    let mut restarts = Csv::new(&["seed", "c_lhst", "c_hst", "iterations", "converged"]);
    for (seed, r) in &runs {
        restarts.row(&[seed.to_string(), num(r.report.c_lhst), num(r.report.c_hst), r.history.len().to_string(), r.converged.to_string()]);
    }
    let (_, best) = runs
        .iter()
        .fold(None::<&(u64, CompressResult)>, |b, r| match b {
            Some(b) if b.1.report.c_lhst <= r.1.report.c_lhst => Some(b),
            _ => Some(r),
        })
        .ok_or_else(|| anyhow!("no optimizer runs"))?;
    let mut out = Outcome { converged: Some(best.converged), ..Default::default() };
    out.artifacts.add_json("ansatz.json", &best.ansatz)?;
    out.artifacts.add_csv("restarts.csv", restarts);
    out.artifacts.add_csv("history.csv", history_csv(best));
    out.artifacts.add_json("global_min.json", &verify_global_minimum(&best.ansatz, &phases, 1e-2)?)?;
    Ok(out)
}

fn compressed_model(model: &MarcusConfig, l_kinetic: usize, l_potential: usize, topology: Topology) -> MarcusConfig {
    MarcusConfig { operator_mode: OperatorMode::Compressed { l_kinetic, l_potential, topology }, ..model.clone() }
}

fn compile(model: &MarcusConfig, c: &OperatorCompression, seed: u64) -> Result<(CompressedOperators, [CompressResult; 3])> {
    Ok(compress_operators(model, c.layers_w, &c.optimizer, &seed_list(seed, c.restarts))?)
}

fn compression_rows(csv: &mut Csv, tau: f64, results: &[CompressResult; 3]) {
    for (name, r) in ["T", "V0", "V1"].iter().zip(results) {
        csv.row(&[num(tau), (*name).to_owned(), num(r.report.c_lhst), num(r.report.c_hst), r.converged.to_string()]);
    }
}

const COMPRESSION_HEADER: [&str; 5] = ["tau", "operator", "c_lhst", "c_hst", "converged"];

#[derive(Serialize)]
struct RateReport<'a> {
    rate: &'a RateResult,
    steps: usize,
    max_work_population: f64,
    max_norm_drift: f64,
}

pub fn marcus_cmd(cfg: &ExperimentConfig<MarcusParams>) -> Result<Outcome> {
    let p = &cfg.params;
    p.model.validate().map_err(schema)?;
    if !(p.model.tau > 0.0 && p.t_max >= 2.0 * p.model.tau) {
        return Err(schema("params.model.tau must be positive and params.t_max at least two steps"));
    }
    let mut out = Outcome::default();
    let ops = if let OperatorMode::Compressed { .. } = p.model.operator_mode {
        let (ops, results) = compile(&p.model, &p.compression, cfg.seed)?;
        let mut csv = Csv::new(&COMPRESSION_HEADER);
        compression_rows(&mut csv, p.model.tau, &results);
        out.artifacts.add_csv("compression.csv", csv);
        out.artifacts.add_json("operators.json", &ops)?;
        out.converged = Some(results.iter().all(|r| r.converged));
        Some(ops)
    } else {
        None
    };
    let steps = (p.t_max / p.model.tau + 1e-9).floor() as usize;
    let trace = simulate(&p.model, ops.as_ref(), steps)?;
    let rate = extract_rate(&trace, p.t_max)?;
    let mut csv = Csv::new(&["t", "p0", "p1", "norm"]);
    for i in 0..trace.times.len() {
        csv.row(&[num(trace.times[i]), num(trace.p0_values[i]), num(trace.p1_values[i]), num(trace.norm_values[i])]);
    }
    out.artifacts.add_csv("trace.csv", csv);
    let max_norm_drift = trace.norm_values.iter().fold(0.0f64, |m, v| m.max((v - 1.0).abs()));
    out.artifacts.add_json("rate.json", &RateReport { rate: &rate, steps, max_work_population: trace.max_work_population, max_norm_drift })?;
    Ok(out)
}

pub fn rate_scan_cmd(cfg: &ExperimentConfig<RateScanParams>) -> Result<Outcome> {
    let p = &cfg.params;
    p.model.validate().map_err(schema)?;
    if p.dg_values.is_empty() || p.modes.is_empty() || p.taus.is_empty() {
        return Err(schema("params.dG_values, params.modes and params.taus must be non-empty"));
    }
    if p.taus.iter().any(|&t| !(t > 0.0 && p.t_max >= 2.0 * t)) {
        return Err(schema("every tau must be positive and fit at least two steps in t_max"));
    }
    if p.l_kinetic == 0 || p.l_potential == 0 {
        return Err(schema("locality bounds must be at least 1"));
    }
    let models: Vec<MarcusConfig> = p.taus.iter().map(|&tau| MarcusConfig { tau, operator_mode: OperatorMode::Explicit, ..p.model.clone() }).collect();
    let wants_compressed = p.modes.contains(&ScanMode::Compressed);
    let compiled: Vec<Option<(CompressedOperators, [CompressResult; 3])>> = models
        .par_iter()
        .map(|m| {
            wants_compressed
                .then(|| compile(&compressed_model(m, p.l_kinetic, p.l_potential, p.topology), &p.compression, cfg.seed))
                .transpose()
        })
        .collect::<Result<_>>()?;
    let mut jobs = Vec::new();
    for (ti, _) in p.taus.iter().enumerate() {
        for &mode in &p.modes {
            for &dg in &p.dg_values {
                jobs.push((ti, mode, dg));
            }
        }
    }
    let rates: Vec<RateResult> = jobs
        .par_iter()
        .map(|&(ti, mode, dg)| {
            let ops = match mode {
                ScanMode::Explicit => None,
                ScanMode::Compressed => compiled[ti].as_ref().map(|c| &c.0),
            };
            Ok(rate_point(&models[ti], ops, dg, p.t_max)?)
        })
        .collect::<Result<_>>()?;
    let mut scan = Csv::new(&["dG", "k", "residual", "mode", "tau"]);
    for ((ti, mode, _), r) in jobs.iter().zip(&rates) {
        scan.row(&[num(r.dg), num(r.k), num(r.residual), mode.name().to_owned(), num(p.taus[*ti])]);
    }
    let mut out = Outcome::default();
    out.artifacts.add_csv("scan.csv", scan);
    if wants_compressed {
        let mut csv = Csv::new(&COMPRESSION_HEADER);
        for (tau, c) in p.taus.iter().zip(&compiled) {
            if let Some((_, results)) = c {
                compression_rows(&mut csv, *tau, results);
            }
        }
        out.artifacts.add_csv("compression.csv", csv);
        out.converged = Some(compiled.iter().flatten().all(|(_, rs)| rs.iter().all(|r| r.converged)));
    }
    Ok(out)
}

pub fn rates_theory_cmd(cfg: &ExperimentConfig<RatesTheoryParams>) -> Result<Outcome> {
    let p = &cfg.params;
    p.model.validate().map_err(schema)?;
    if !(p.kt > 0.0) {
        return Err(schema("params.kT must be positive"));
    }
    let v_sq = match p.v_coup_sq {
        Some(v) => v,
        None => p.model.coupling.values(&p.model.grid)?.iter().fold(0.0f64, |m, c| m.max(c * c)),
    };
    let params = MarcusRateParams { v_coup_sq: v_sq, lambda: p.model.reorganization_energy(), kt: p.kt };
    let rows: Vec<(f64, f64, f64)> = p
        .dg_values
        .par_iter()
        .map(|&dg| Ok((dg, marcus_rate_theory(&params, -dg)?, fc_rate_low_temperature(&p.model, dg)?)))
        .collect::<Result<_>>()?;
    let mut csv = Csv::new(&["dG", "k_marcus", "k_fc"]);
    for (dg, km, kf) in rows {
        csv.row(&[num(dg), num(km), num(kf)]);
    }
    let mut out = Outcome::default();
    out.artifacts.add_csv("theory.csv", csv);
    Ok(out)
}

fn opt_cell(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn op_name(op: Operator) -> &'static str {
    op.name()
}

fn topology_name(t: Topology) -> &'static str {
    match t {
        Topology::Linear => "linear",
        Topology::Ring => "ring",
    }
}

pub fn count_cmd(cfg: &ExperimentConfig<CountParams>) -> Result<Outcome> {
    let p = &cfg.params;
    let rows = census_table(&p.rows).map_err(schema)?;
    let mut census = Csv::new(&[
        "n", "op", "l", "topology", "zz_ex_reduced", "zz_ex", "zz_comp", "rz_ex", "rz_comp", "toffoli_ex", "toffoli_comp", "max_l_ex", "max_l_comp",
        "mismatch", "mismatch_columns",
    ]);
    let mut truncation = Csv::new(&["n", "op", "l", "topology", "locality", "removed"]);
    for r in &rows {
        census.row(&[
            r.n.to_string(),
            op_name(r.op).to_owned(),
            r.l.to_string(),
            topology_name(r.topology).to_owned(),
            r.zz_ex_reduced.to_string(),
            r.zz_ex.to_string(),
            r.zz_comp.to_string(),
            r.rz_ex.to_string(),
            r.rz_comp.to_string(),
            opt_cell(r.toffoli_ex),
            opt_cell(r.toffoli_comp),
            r.max_l_ex.to_string(),
            r.max_l_comp.to_string(),
            (!r.matches_published()).to_string(),
            r.mismatches.join(";"),
        ]);
        for (locality, removed) in truncation_removed(r.n, r.l, r.topology) {
            truncation.row(&[r.n.to_string(), op_name(r.op).to_owned(), r.l.to_string(), topology_name(r.topology).to_owned(), locality.to_string(), removed.to_string()]);
        }
    }
    let mut table = Csv::new(&["n", "op", "l", "column", "published", "regenerated", "mismatch"]);
    for r in &rows {
        let Some(pubrow) = vffcomp_core::resources::PUBLISHED_TABLE.iter().find(|x| x.n == r.n && x.op == r.op && x.l == r.l && r.topology == Topology::Linear) else {
            continue;
        };
        let cells = [
            ("zz_ex", Some(pubrow.zz_ex), Some(r.zz_ex)),
            ("zz_comp", Some(pubrow.zz_comp), Some(r.zz_comp)),
            ("rz_ex", Some(pubrow.rz_ex), Some(r.rz_ex)),
            ("rz_comp", Some(pubrow.rz_comp), Some(r.rz_comp)),
            ("toffoli_ex", pubrow.toffoli_ex, r.toffoli_ex),
            ("toffoli_comp", pubrow.toffoli_comp, r.toffoli_comp),
            ("max_l_ex", Some(pubrow.max_l_ex), Some(r.max_l_ex)),
            ("max_l_comp", Some(pubrow.max_l_comp), Some(r.max_l_comp)),
        ];
        for (name, published, regenerated) in cells {
            table.row(&[
                r.n.to_string(),
                op_name(r.op).to_owned(),
                r.l.to_string(),
                name.to_owned(),
                opt_cell(published),
                opt_cell(regenerated),
                (published != regenerated).to_string(),
            ]);
        }
    }
    let mut registers = Csv::new(&["n", "pieces", "total_qubits"]);
    for &(n, pieces) in &p.registers {
        registers.row(&[n.to_string(), pieces.to_string(), total_qubits(n, pieces).map_err(schema)?.to_string()]);
    }
    let mut out = Outcome::default();
    out.artifacts.add_csv("census.csv", census);
    out.artifacts.add_csv("table.csv", table);
    out.artifacts.add_csv("truncation.csv", truncation);
    out.artifacts.add_csv("registers.csv", registers);
    Ok(out)
}

#[derive(Serialize)]
struct FitReport<'a> {
    params: &'a vffcomp_core::builders::UccParams,
    fidelity: f64,
    iterations: usize,
}

pub fn init_wavepacket_cmd(cfg: &ExperimentConfig<WavepacketParams>) -> Result<Outcome> {
    let p = &cfg.params;
    p.grid.validate().map_err(schema)?;
    if p.grid.n < 1 || p.grid.n > 12 {
        return Err(schema("params.grid.n must lie in 1..=12"));
    }
    let target = harmonic_ground_state(&p.grid, p.a1, p.centre, p.mu).map_err(schema)?;
    let fit = fit_wavepacket(&target, p.layers, &OptimizerConfig { seed: cfg.seed, ..p.optimizer.clone() })?;
    let mut state = StateVector::zero(p.grid.n);
    state.apply_circuit(&ucc_circuit(&fit.params)?)?;
    let mut csv = Csv::new(&["k", "x", "target", "prepared"]);
    for (k, (t, a)) in target.iter().zip(state.amplitudes()).enumerate() {
        csv.row(&[k.to_string(), num(position_of_index(&p.grid, k)?), num(*t), num(a.re)]);
    }
    let mut out = Outcome { converged: Some(1.0 - fit.fidelity <= p.optimizer.cost_tolerance), ..Default::default() };
    out.artifacts.add_csv("wavepacket.csv", csv);
    out.artifacts.add_json("fit.json", &FitReport { params: &fit.params, fidelity: fit.fidelity, iterations: fit.history.len() })?;
    Ok(out)
}

/// Exact `l = n` ansatz for the free-particle half step with seeded random `W` angles.
pub fn exact_free_particle_ansatz(p: &FastForwardParams, seed: u64) -> Result<(VffAnsatz, Unitary)> {
    let grid = GridSpec::new(p.n, p.length).map_err(schema)?;
    if !(p.mu > 0.0) || p.n > 10 {
        return Err(schema("params.mu must be positive and params.n at most 10"));
    }
    let phases = QuadraticPhases::kinetic(&grid, p.mu, p.tau);
    let target = diagonal(&phases, p.n);
    let mut a = VffAnsatz::zeros(p.n, p.layers_w, p.n, Topology::Linear, p.tau);
    a.gammas = Rng::seed(seed).symmetric_vec(a.gammas.len(), PI);
    a.thetas = analytic_thetas(&phases, &a);
    align_global_phase(&target, &mut a)?;
    Ok((a, target))
}

pub fn fastforward_cmd(cfg: &ExperimentConfig<FastForwardParams>) -> Result<Outcome> {
    let p = &cfg.params;
    let (ansatz, target) = exact_free_particle_ansatz(p, cfg.seed)?;
    let dim = 1usize << p.n;
    let mut rng = Rng::seed(cfg.seed ^ 0x5eed);
    let psi0 = StateVector::normalized((0..dim).map(|_| Complex64::new(rng.symmetric(1.0), rng.symmetric(1.0))).collect())?;
    let diag = target.diagonal();
    let rows: Vec<(u32, f64)> = (1..=p.steps)
        .into_par_iter()
        .map(|steps| {
            let mut ff = psi0.clone();
            ff.apply_circuit(&fast_forward(&ansatz, steps)?)?;
            let exact: Vec<Complex64> = psi0.amplitudes().iter().zip(&diag).map(|(a, d)| a * d.powu(steps)).collect();
            Ok((steps, state_fidelity(&ff, &StateVector::from_amplitudes(exact)?)?))
        })
        .collect::<Result<_>>()?;
    let mut csv = Csv::new(&["N", "fidelity"]);
    for (steps, f) in rows {
        csv.row(&[steps.to_string(), num(f)]);
    }
    let mut out = Outcome::default();
    out.artifacts.add_csv("fastforward.csv", csv);
    out.artifacts.add_json("ansatz.json", &ansatz)?;
    Ok(out)
}
