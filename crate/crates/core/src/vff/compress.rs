use alloc::vec::Vec;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::adam::{minimize, HistoryRow, OptimizerConfig};
use super::ansatz::{ansatz_circuit, VffAnsatz};
use super::cost::{CostReport, LhstEvaluator};
use super::gradient::{ansatz_cost, gradient_with};
use crate::error::{bail, Result};
use crate::rng::Rng;
use crate::sim::{circuit_unitary_bounded, Unitary};
use crate::walsh::Topology;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompressSettings {
    pub l: usize,
    pub topology: Topology,
    pub layers_w: usize,
    pub tau: f64,
}

#[derive(Clone, Debug)]
pub struct CompressResult {
    pub ansatz: VffAnsatz,
    pub report: CostReport,
    pub history: Vec<HistoryRow>,
    pub converged: bool,
}

/// Set the identity-term phase so that `Tr(A†U)` is real and non-negative.
pub fn align_global_phase(target: &Unitary, ansatz: &mut VffAnsatz) -> Result<()> {
    ansatz.global_phase = 0.0;
    let a = circuit_unitary_bounded(&ansatz_circuit(ansatz)?, 12)?;
    let d = target.dim();
    let tr: Complex64 = (0..d).flat_map(|r| (0..d).map(move |c| (r, c))).map(|(r, c)| a.get(r, c).conj() * target.get(r, c)).sum();
    if tr.norm() > 0.0 {
        ansatz.global_phase = tr.arg();
    }
    Ok(())
}

/// Parameter-shift Adam descent from a seeded random start.
///
/// Non-convergence is reported through `converged`, not as an error.
pub fn compress(target: &Unitary, settings: &CompressSettings, opt: &OptimizerConfig) -> Result<CompressResult> {
    let n = target.num_qubits();
    if settings.l == 0 {
        bail!(Argument, "locality bound must be at least 1");
    }
    let ev = LhstEvaluator::new(target)?;
    let mut ansatz = VffAnsatz::zeros(n, settings.layers_w, settings.l, settings.topology, settings.tau);
    let mut rng = Rng::seed(opt.seed);
    let init = rng.symmetric_vec(ansatz.num_params(), opt.init_scale);
    let template = ansatz.clone();
    let result = minimize(init, opt, |p| {
        let mut a = template.clone();
        a.set_params(p)?;
        Ok((ansatz_cost(&ev, &a)?, gradient_with(&ev, &a)?))
    })?;
    ansatz.set_params(&result.best_params)?;
    align_global_phase(target, &mut ansatz)?;
    let report = ev.evaluate(&ansatz_circuit(&ansatz)?)?;
    Ok(CompressResult { ansatz, report, history: result.history, converged: result.converged })
}

/// Lowest-cost result over several seeds; ties go to the earlier seed.
pub fn compress_best_of(target: &Unitary, settings: &CompressSettings, opt: &OptimizerConfig, seeds: &[u64]) -> Result<CompressResult> {
    let mut best: Option<CompressResult> = None;
    for &seed in seeds {
        let r = compress(target, settings, &OptimizerConfig { seed, ..opt.clone() })?;
        if best.as_ref().is_none_or(|b| r.report.c_lhst < b.report.c_lhst) {
            best = Some(r);
        }
    }
    best.ok_or_else(|| crate::Error::Argument("no seeds given".into()))
}
