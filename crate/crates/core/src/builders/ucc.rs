use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::rng::Rng;
use crate::sim::{Circuit, GateOp, StateVector};
use crate::vff::{minimize, HistoryRow, OptimizerConfig};

/// Ry/CNOT-ladder wavepacket ansatz: `n·(layers+1)` angles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UccParams {
    pub n: usize,
    pub layers: usize,
    pub thetas: Vec<f64>,
}

impl UccParams {
    pub fn zeros(n: usize, layers: usize) -> Self {
        UccParams { n, layers, thetas: alloc::vec![0.0; n * (layers + 1)] }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.thetas.len() != self.n * (self.layers + 1) {
            bail!(Argument, "{} angles do not fit n = {} with {} layers", self.thetas.len(), self.n, self.layers);
        }
        Ok(())
    }
}

/// `X` on the top qubit, an Ry layer, then `layers` × (CNOT ladder, Ry layer).
pub fn ucc_circuit(params: &UccParams) -> Result<Circuit> {
    params.validate()?;
    let n = params.n;
    let mut c = Circuit::new(n);
    c.push(GateOp::x(n - 1))?;
    for (layer, angles) in params.thetas.chunks(n).enumerate() {
        if layer > 0 {
            for q in 0..n - 1 {
                c.push(GateOp::cnot(q, q + 1))?;
            }
        }
        for (q, &a) in angles.iter().enumerate() {
            c.push(GateOp::ry(q, a))?;
        }
    }
    Ok(c)
}

fn prepared(params: &UccParams) -> Result<Vec<f64>> {
    let mut s = StateVector::zero(params.n);
    s.apply_circuit(&ucc_circuit(params)?)?;
    Ok(s.amplitudes().iter().map(|a| a.re).collect())
}

fn fidelity(target: &[f64], params: &UccParams) -> Result<f64> {
    let psi = prepared(params)?;
    Ok(target.iter().zip(&psi).map(|(t, p)| t * p).sum::<f64>().powi(2))
}

#[derive(Clone, Debug)]
pub struct WavepacketFit {
    pub params: UccParams,
    pub fidelity: f64,
    pub history: Vec<HistoryRow>,
}

/// Maximize `|⟨target|UCC(θ)|0⟩|²` by parameter-shift Adam on `1 − F`.
pub fn fit_wavepacket(target: &[f64], layers: usize, opt: &OptimizerConfig) -> Result<WavepacketFit> {
    let dim = target.len();
    if dim < 2 || !dim.is_power_of_two() {
        bail!(Argument, "target length {dim} is not a power of two ≥ 2");
    }
    let norm: f64 = target.iter().map(|x| x * x).sum();
    if (norm - 1.0).abs() > 1e-9 {
        bail!(Argument, "target norm² is {norm}, expected 1");
    }
    let n = dim.trailing_zeros() as usize;
    let template = UccParams::zeros(n, layers);
    let init = Rng::seed(opt.seed).symmetric_vec(template.thetas.len(), opt.init_scale);
    let with = |p: &[f64]| UccParams { thetas: p.to_vec(), ..template.clone() };
    let result = minimize(init, opt, |p| {
        let cost = 1.0 - fidelity(target, &with(p))?;
        let mut grad = Vec::with_capacity(p.len());
        let mut shifted = p.to_vec();
        for i in 0..p.len() {
            shifted[i] = p[i] + FRAC_PI_2;
            let fp = fidelity(target, &with(&shifted))?;
            shifted[i] = p[i] - FRAC_PI_2;
            let fm = fidelity(target, &with(&shifted))?;
            shifted[i] = p[i];
            grad.push(-0.5 * (fp - fm));
        }
        Ok((cost, grad))
    })?;
    let params = with(&result.best_params);
    let fidelity = fidelity(target, &params)?;
    Ok(WavepacketFit { params, fidelity, history: result.history })
}

/// Normalized ground state of `a(x − c)²` for mass `μ`, sampled on the grid.
pub fn harmonic_ground_state(grid: &crate::grid::GridSpec, a: f64, c: f64, mu: f64) -> Result<Vec<f64>> {
    if !(a > 0.0 && mu > 0.0) {
        bail!(Argument, "need a > 0 and μ > 0");
    }
    let omega = (2.0 * a / mu).sqrt();
    let width = 1.0 / (mu * omega);
    let raw = crate::grid::sample_diagonal(grid, |x| (-(x - c) * (x - c) / (2.0 * width)).exp())?;
    let s = StateVector::normalized(raw.iter().map(|&v| Complex64::new(v, 0.0)).collect())?;
    Ok(s.amplitudes().iter().map(|a| a.re).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_angles_prepare_top_bit() {
        let mut s = StateVector::zero(3);
        s.apply_circuit(&ucc_circuit(&UccParams::zeros(3, 2)).unwrap()).unwrap();
        assert_eq!(s.amplitudes()[0b100], Complex64::new(1.0, 0.0));
        assert_eq!(UccParams::zeros(3, 2).thetas.len(), 9);
    }

    #[test]
    fn gate_order_for_three_qubits() {
        let c = ucc_circuit(&UccParams::zeros(3, 2)).unwrap();
        let kinds: Vec<_> = c.ops().iter().map(|o| o.kind().name()).collect();
        assert_eq!(kinds, ["X", "Ry", "Ry", "Ry", "CNOT", "CNOT", "Ry", "Ry", "Ry", "CNOT", "CNOT", "Ry", "Ry", "Ry"]);
        assert_eq!(c.ops()[4], GateOp::cnot(0, 1));
        assert_eq!(c.ops()[5], GateOp::cnot(1, 2));
    }

    #[test]
    fn basis_target_is_already_optimal() {
        let mut t = alloc::vec![0.0; 8];
        t[0b100] = 1.0;
        let fit = fit_wavepacket(&t, 1, &OptimizerConfig { max_iters: 200, cost_tolerance: 1e-10, ..Default::default() }).unwrap();
        assert!(fit.fidelity > 1.0 - 1e-8);
    }
}
