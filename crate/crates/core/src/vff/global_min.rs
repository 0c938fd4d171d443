//! Comparison of optimized `D` angles against the closed-form quadratic solution.
//!
//! For `e^{i(φ₁ + φ₂m + φ₃m²)}` on `n` qubits the diagonal ansatz is solved exactly by
//! `θ_j = 2^j·A` and `θ_{jl} = 2^{j+l}·B` with `A = φ₂ + φ₃(2^n − 1) = −2α₀` and
//! `B = −φ₃ = −2α₁`. Adding `π` to `θ_{jl}`, `θ_j` and `θ_l` together leaves the
//! unitary unchanged, so pair angles are compared modulo `π` after moving the
//! difference onto their single-qubit partners.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::ansatz::VffAnsatz;
use crate::builders::QuadraticPhases;
use crate::error::{bail, Result};
use crate::walsh::pair_of;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoParameterFit {
    /// Single-qubit weight `A` in `θ_j = 2^j A`.
    pub a: f64,
    /// Pair weight `B` in `θ_{jl} = 2^{j+l} B`.
    pub b: f64,
    pub r_squared: f64,
    pub rms_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlobalMinReport {
    pub max_theta_deviation: f64,
    pub is_global: bool,
    pub analytic: BTreeMap<usize, f64>,
    pub fit: TwoParameterFit,
}

fn wrap(x: f64) -> f64 {
    x - TAU * ((x + PI) / TAU).floor()
}

fn weight(mask: usize) -> f64 {
    if mask.count_ones() == 1 {
        mask as f64
    } else {
        let (i, j) = pair_of(mask);
        (1u64 << (i + j)) as f64
    }
}

/// Closed-form angles for every mask of `ansatz`.
pub fn analytic_thetas(phases: &QuadraticPhases, ansatz: &VffAnsatz) -> BTreeMap<usize, f64> {
    let a = -2.0 * phases.alpha0(ansatz.n);
    let b = -2.0 * phases.alpha1();
    model(ansatz, a, b)
}

fn model(ansatz: &VffAnsatz, a: f64, b: f64) -> BTreeMap<usize, f64> {
    ansatz.thetas.keys().map(|&m| (m, weight(m) * if m.count_ones() == 1 { a } else { b })).collect()
}

/// Shift pair angles by multiples of `π` toward `reference`, compensating the singles,
/// then report per-mask differences wrapped to `(−π, π]`.
fn canonical_residuals(thetas: &BTreeMap<usize, f64>, reference: &BTreeMap<usize, f64>) -> BTreeMap<usize, f64> {
    let mut t = thetas.clone();
    for (&mask, &r) in reference {
        if mask.count_ones() != 2 {
            continue;
        }
        let k = ((t[&mask] - r) / PI).round();
        if k != 0.0 {
            let (i, j) = pair_of(mask);
            *t.get_mut(&mask).expect("pair present") -= k * PI;
            for q in [1usize << i, 1usize << j] {
                if let Some(v) = t.get_mut(&q) {
                    *v -= k * PI;
                }
            }
        }
    }
    t.iter().map(|(&m, &v)| (m, wrap(v - reference[&m]))).collect()
}

/// Least-squares `(A, B)` for the binary-weight model, with residuals taken modulo the
/// symmetries above. Starts from `(a0, b0)` and refines by Gauss–Newton.
pub fn fit_two_parameter(ansatz: &VffAnsatz, a0: f64, b0: f64) -> TwoParameterFit {
    let (mut a, mut b) = (a0, b0);
    for _ in 0..50 {
        let reference = model(ansatz, a, b);
        let res = canonical_residuals(&ansatz.thetas, &reference);
        let (mut na, mut da, mut nb, mut db) = (0.0, 0.0, 0.0, 0.0);
        for (&m, &r) in &res {
            let w = weight(m);
            if m.count_ones() == 1 {
                na += w * r;
                da += w * w;
            } else {
                nb += w * r;
                db += w * w;
            }
        }
        let step_a = if da > 0.0 { na / da } else { 0.0 };
        let step_b = if db > 0.0 { nb / db } else { 0.0 };
        a += step_a;
        b += step_b;
        if step_a.abs() < 1e-15 * (1.0 + a.abs()) && step_b.abs() < 1e-15 * (1.0 + b.abs()) {
            break;
        }
    }
    let reference = model(ansatz, a, b);
    let res = canonical_residuals(&ansatz.thetas, &reference);
    let observed: Vec<f64> = res.iter().map(|(m, r)| reference[m] + r).collect();
    let mean = observed.iter().sum::<f64>() / observed.len().max(1) as f64;
    let ss_tot: f64 = observed.iter().map(|v| (v - mean).powi(2)).sum();
    let ss_res: f64 = res.values().map(|r| r * r).sum();
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else if ss_res == 0.0 { 1.0 } else { 0.0 };
    TwoParameterFit { a, b, r_squared, rms_residual: (ss_res / res.len().max(1) as f64).sqrt() }
}

/// Compare `ansatz` with the closed-form optimum of `phases`.
pub fn verify_global_minimum(ansatz: &VffAnsatz, phases: &QuadraticPhases, threshold: f64) -> Result<GlobalMinReport> {
    ansatz.validate()?;
    if ansatz.thetas.keys().any(|m| m.count_ones() > 2) {
        bail!(Unsupported, "only single-qubit and pair terms have a closed form");
    }
    let analytic = analytic_thetas(phases, ansatz);
    let res = canonical_residuals(&ansatz.thetas, &analytic);
    let max_theta_deviation = res.values().fold(0.0f64, |m, r| m.max(r.abs()));
    let fit = fit_two_parameter(ansatz, -2.0 * phases.alpha0(ansatz.n), -2.0 * phases.alpha1());
    Ok(GlobalMinReport { max_theta_deviation, is_global: max_theta_deviation < threshold, analytic, fit })
}
