use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::step::{build_trotter_step, CompressedOperators};
use super::MarcusConfig;
use crate::error::{bail, Result};
use crate::grid::sample_diagonal;
use crate::sim::StateVector;

/// Fit window used when none is given.
pub const DEFAULT_T_MAX: f64 = 100.0;

/// Largest tolerated `|‖ψ‖² − 1|` during a run.
pub const NORM_DRIFT_LIMIT: f64 = 1e-6;

/// Objective-qubit populations sampled after every step, starting at `t = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PopulationTrace {
    pub times: Vec<f64>,
    pub p0_values: Vec<f64>,
    pub p1_values: Vec<f64>,
    pub norm_values: Vec<f64>,
    /// Largest population seen on a nonzero ancilla or comparator state.
    pub max_work_population: f64,
    #[serde(rename = "dG")]
    pub dg: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateResult {
    pub k: f64,
    pub fit_window: (f64, f64),
    pub residual: f64,
    #[serde(rename = "dG")]
    pub dg: f64,
}

/// Reactant-well ground state displaced by `x0_packet`, boosted by `e^{ip₀x}`, on
/// objective `|0⟩` with all work wires clear.
pub fn initial_state(config: &MarcusConfig) -> Result<StateVector> {
    config.validate()?;
    let layout = config.layout()?;
    let sigma2 = 1.0 / (config.mu * config.omega());
    let centre = config.well_centres().0 + config.x0_packet;
    let envelope = sample_diagonal(&config.grid, |x| (-(x - centre) * (x - centre) / (2.0 * sigma2)).exp())?;
    let mut amps = alloc::vec![Complex64::new(0.0, 0.0); 1usize << layout.num_wires];
    let d = config.grid.delta();
    for (k, e) in envelope.iter().enumerate() {
        amps[k] = Complex64::from_polar(*e, config.p0 * d * k as f64);
    }
    StateVector::normalized(amps)
}

/// Run `steps` Trotter steps from [`initial_state`].
pub fn simulate(config: &MarcusConfig, compressed: Option<&CompressedOperators>, steps: usize) -> Result<PopulationTrace> {
    let layout = config.layout()?;
    let step = build_trotter_step(config, compressed)?.compile();
    let mut state = initial_state(config)?;
    let obj = 1usize << layout.objective;
    let work = layout.work_mask();
    let mut trace = PopulationTrace {
        times: Vec::with_capacity(steps + 1),
        p0_values: Vec::with_capacity(steps + 1),
        p1_values: Vec::with_capacity(steps + 1),
        norm_values: Vec::with_capacity(steps + 1),
        max_work_population: 0.0,
        dg: config.dg,
    };
    for s in 0..=steps {
        if s > 0 {
            step.apply_state(&mut state)?;
        }
        let (mut p0, mut p1) = (0.0, 0.0);
        for (i, a) in state.amplitudes().iter().enumerate() {
            if i & obj == 0 {
                p0 += a.norm_sqr();
            } else {
                p1 += a.norm_sqr();
            }
        }
        let norm = p0 + p1;
        if !((norm - 1.0).abs() <= NORM_DRIFT_LIMIT) {
            bail!(Numeric, "norm drifted to {norm} after {s} steps");
        }
        trace.times.push(s as f64 * config.tau);
        trace.p0_values.push(p0);
        trace.p1_values.push(p1);
        trace.norm_values.push(norm);
        trace.max_work_population = trace.max_work_population.max(state.population_outside_zero(work));
    }
    Ok(trace)
}

/// Least-squares slope of `P₀` against `t` over `t ≤ t_max`; `k = −slope`.
pub fn extract_rate(trace: &PopulationTrace, t_max: f64) -> Result<RateResult> {
    let pts: Vec<(f64, f64)> = trace.times.iter().zip(&trace.p0_values).filter(|(t, _)| **t <= t_max).map(|(t, p)| (*t, *p)).collect();
    if pts.len() < 3 {
        bail!(Argument, "{} samples with t ≤ {t_max}, need at least 3", pts.len());
    }
    let m = pts.len() as f64;
    let tm = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let pm = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - tm) * (p.0 - tm)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - tm) * (p.1 - pm)).sum();
    if sxx == 0.0 {
        bail!(Argument, "all samples share one time");
    }
    let slope = sxy / sxx;
    let icept = pm - slope * tm;
    let ss: f64 = pts.iter().map(|p| (p.1 - icept - slope * p.0).powi(2)).sum();
    Ok(RateResult {
        k: -slope,
        fit_window: (pts[0].0, pts[pts.len() - 1].0),
        residual: (ss / m).sqrt(),
        dg: trace.dg,
    })
}

/// Simulate to `t_max` at driving force `dg` and fit the rate.
pub fn rate_point(config: &MarcusConfig, compressed: Option<&CompressedOperators>, dg: f64, t_max: f64) -> Result<RateResult> {
    let cfg = MarcusConfig { dg, ..config.clone() };
    if !(cfg.tau > 0.0) {
        bail!(Argument, "rate extraction needs a positive time step");
    }
    let steps = (t_max / cfg.tau + 1e-9).floor() as usize;
    extract_rate(&simulate(&cfg, compressed, steps)?, t_max)
}

/// [`rate_point`] for each driving force in order.
pub fn rate_scan(config: &MarcusConfig, compressed: Option<&CompressedOperators>, dg_values: &[f64], t_max: f64) -> Result<Vec<RateResult>> {
    dg_values.iter().map(|&dg| rate_point(config, compressed, dg, t_max)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(f: impl Fn(f64) -> f64) -> PopulationTrace {
        let times: Vec<f64> = (0..=100).map(|t| t as f64).collect();
        let p0: Vec<f64> = times.iter().map(|&t| f(t)).collect();
        PopulationTrace {
            p1_values: p0.iter().map(|p| 1.0 - p).collect(),
            norm_values: alloc::vec![1.0; times.len()],
            times,
            p0_values: p0,
            max_work_population: 0.0,
            dg: 0.0,
        }
    }

    #[test]
    fn linear_decay_is_recovered() {
        let r = extract_rate(&synthetic(|t| 1.0 - 0.001 * t), 100.0).unwrap();
        assert!((r.k - 0.001).abs() < 1e-15);
        assert!(r.residual < 1e-14);
        assert_eq!(r.fit_window, (0.0, 100.0));
    }

    #[test]
    fn constant_trace_has_zero_rate() {
        assert_eq!(extract_rate(&synthetic(|_| 1.0), 100.0).unwrap().k, 0.0);
    }

    #[test]
    fn short_window_is_rejected() {
        assert!(extract_rate(&synthetic(|_| 1.0), 1.5).is_err());
    }

    #[test]
    fn packet_starts_normalized_in_reactant() {
        let cfg = MarcusConfig { p0: -3.0, ..Default::default() };
        let s = initial_state(&cfg).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        assert!(s.amplitudes()[1 << 8..].iter().all(|a| a.norm() == 0.0));
    }
}
