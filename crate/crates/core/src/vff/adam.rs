use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};

/// Adam hyperparameters plus the stopping and initialization policy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    pub max_iters: usize,
    /// Non-improving iterations tolerated before the learning rate is halved.
    pub patience: usize,
    /// Stop as soon as the best cost reaches this value.
    pub cost_tolerance: f64,
    pub seed: u64,
    pub init_scale: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            learning_rate: 0.05,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            max_iters: 1000,
            patience: 50,
            cost_tolerance: 1e-2,
            seed: 0,
            init_scale: 0.1,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0) {
            bail!(Argument, "learning rate must be positive");
        }
        if !(self.beta1 > 0.0 && self.beta1 < 1.0 && self.beta2 > 0.0 && self.beta2 < 1.0) {
            bail!(Argument, "Adam betas must lie in (0, 1)");
        }
        if !(self.epsilon > 0.0) || !(self.init_scale >= 0.0) {
            bail!(Argument, "epsilon must be positive and init_scale non-negative");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizerState {
    pub first_moments: Vec<f64>,
    pub second_moments: Vec<f64>,
    pub step_count: u64,
    pub learning_rate: f64,
    pub best_cost: f64,
    pub best_params: Vec<f64>,
}

impl OptimizerState {
    pub fn new(num_params: usize, config: &OptimizerConfig) -> Self {
        OptimizerState {
            first_moments: vec![0.0; num_params],
            second_moments: vec![0.0; num_params],
            step_count: 0,
            learning_rate: config.learning_rate,
            best_cost: f64::INFINITY,
            best_params: Vec::new(),
        }
    }
}

/// Record `(cost, params)` as best if strictly better, then take one Adam step.
pub fn adam_step(state: &mut OptimizerState, params: &mut [f64], grads: &[f64], cost: f64, config: &OptimizerConfig) -> Result<()> {
    if grads.len() != params.len() || state.first_moments.len() != params.len() {
        bail!(Argument, "gradient, parameter and moment lengths differ");
    }
    if let Some(i) = grads.iter().position(|g| !g.is_finite()) {
        bail!(Numeric, "non-finite gradient entry {i} at step {}", state.step_count);
    }
    if cost.is_nan() {
        bail!(Numeric, "cost is NaN at step {}", state.step_count);
    }
    if cost < state.best_cost {
        state.best_cost = cost;
        state.best_params = params.to_vec();
    }
    state.step_count += 1;
    let t = state.step_count as i32;
    let c1 = 1.0 - config.beta1.powi(t);
    let c2 = 1.0 - config.beta2.powi(t);
    for i in 0..params.len() {
        let g = grads[i];
        state.first_moments[i] = config.beta1 * state.first_moments[i] + (1.0 - config.beta1) * g;
        state.second_moments[i] = config.beta2 * state.second_moments[i] + (1.0 - config.beta2) * g * g;
        let m = state.first_moments[i] / c1;
        let v = state.second_moments[i] / c2;
        params[i] -= state.learning_rate * m / (v.sqrt() + config.epsilon);
        if !params[i].is_finite() {
            bail!(Numeric, "parameter {i} diverged at step {}", state.step_count);
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistoryRow {
    pub iter: usize,
    pub cost: f64,
    pub best_cost: f64,
}

#[derive(Clone, Debug)]
pub struct OptimizeResult {
    pub best_params: Vec<f64>,
    pub best_cost: f64,
    pub history: Vec<HistoryRow>,
    pub converged: bool,
}

/// Adam descent on `eval`, which returns the cost and its gradient.
pub fn minimize(
    initial: Vec<f64>,
    config: &OptimizerConfig,
    mut eval: impl FnMut(&[f64]) -> Result<(f64, Vec<f64>)>,
) -> Result<OptimizeResult> {
    config.validate()?;
    let mut params = initial;
    let mut state = OptimizerState::new(params.len(), config);
    let mut history = Vec::new();
    let mut stale = 0usize;
    for iter in 0..config.max_iters {
        let (cost, grads) = eval(&params)?;
        let before = state.best_cost;
        adam_step(&mut state, &mut params, &grads, cost, config)?;
        history.push(HistoryRow { iter, cost, best_cost: state.best_cost });
        if state.best_cost <= config.cost_tolerance {
            break;
        }
        if state.best_cost < before {
            stale = 0;
        } else {
            stale += 1;
            if stale >= config.patience.max(1) {
                state.learning_rate *= 0.5;
                stale = 0;
            }
        }
    }
    if state.best_cost > config.cost_tolerance && config.max_iters > 0 {
        let (cost, _) = eval(&params)?;
        if cost < state.best_cost {
            state.best_cost = cost;
            state.best_params = params.clone();
        }
        history.push(HistoryRow { iter: history.len(), cost, best_cost: state.best_cost });
    }
    if state.best_params.is_empty() {
        state.best_params = params;
    }
    Ok(OptimizeResult {
        converged: state.best_cost <= config.cost_tolerance,
        best_params: state.best_params,
        best_cost: state.best_cost,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gradient_leaves_params() {
        let cfg = OptimizerConfig::default();
        let mut s = OptimizerState::new(3, &cfg);
        let mut p = vec![0.1, -0.2, 0.3];
        adam_step(&mut s, &mut p, &[0.0; 3], 1.0, &cfg).unwrap();
        assert_eq!(p, vec![0.1, -0.2, 0.3]);
        assert_eq!(s.step_count, 1);
    }

    #[test]
    fn first_step_has_learning_rate_magnitude() {
        let cfg = OptimizerConfig::default();
        let mut s = OptimizerState::new(1, &cfg);
        let mut p = vec![0.0];
        adam_step(&mut s, &mut p, &[3.7], 1.0, &cfg).unwrap();
        assert!((p[0] + cfg.learning_rate).abs() < 1e-8);
    }

    #[test]
    fn nan_gradient_is_rejected() {
        let cfg = OptimizerConfig::default();
        let mut s = OptimizerState::new(1, &cfg);
        assert!(adam_step(&mut s, &mut [0.0], &[f64::NAN], 1.0, &cfg).is_err());
    }

    #[test]
    fn quadratic_bowl() {
        let cfg = OptimizerConfig { learning_rate: 0.1, max_iters: 100, cost_tolerance: 0.0, patience: 1000, ..Default::default() };
        let r = minimize(vec![1.0], &cfg, |x| Ok((x[0] * x[0], vec![2.0 * x[0]]))).unwrap();
        assert!(r.best_params[0].abs() < 0.05);
        assert!(r.history.windows(2).all(|w| w[1].best_cost <= w[0].best_cost));
    }
}
