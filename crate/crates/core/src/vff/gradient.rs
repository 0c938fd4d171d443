use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use super::ansatz::{push_d, push_w, VffAnsatz};
use super::cost::LhstEvaluator;
use crate::error::Result;
use crate::sim::{Circuit, Unitary};

/// Local cost with independent angles for the `W` and `W†` occurrences.
fn split_cost(ev: &LhstEvaluator, a: &VffAnsatz, gw: &[f64], gwd: &[f64], thetas: &BTreeMap<usize, f64>) -> Result<f64> {
    let mut c = Circuit::new(a.n);
    push_w(&mut c, a.n, gw)?;
    push_d(&mut c, thetas, a.global_phase)?;
    let mut wd = Circuit::new(a.n);
    push_w(&mut wd, a.n, gwd)?;
    c.append(&wd.inverse())?;
    Ok(ev.evaluate(&c)?.c_lhst)
}

/// Local cost at `ansatz`.
pub fn ansatz_cost(ev: &LhstEvaluator, ansatz: &VffAnsatz) -> Result<f64> {
    split_cost(ev, ansatz, &ansatz.gammas, &ansatz.gammas, &ansatz.thetas)
}

/// Parameter-shift gradient in [`VffAnsatz::params`] order.
///
/// A `D` angle enters once and takes the two-point rule
/// `½[C(θ+π/2) − C(θ−π/2)]`; a `W` angle enters in both `W` and `W†`, so its
/// derivative sums the two-point rule over each occurrence.
pub fn gradient_with(ev: &LhstEvaluator, ansatz: &VffAnsatz) -> Result<Vec<f64>> {
    ansatz.validate()?;
    let mut grad = Vec::with_capacity(ansatz.num_params());
    let g = &ansatz.gammas;
    for i in 0..g.len() {
        let mut total = 0.0;
        for first in [true, false] {
            let mut plus = g.clone();
            let mut minus = g.clone();
            plus[i] += FRAC_PI_2;
            minus[i] -= FRAC_PI_2;
            let (cp, cm) = if first {
                (split_cost(ev, ansatz, &plus, g, &ansatz.thetas)?, split_cost(ev, ansatz, &minus, g, &ansatz.thetas)?)
            } else {
                (split_cost(ev, ansatz, g, &plus, &ansatz.thetas)?, split_cost(ev, ansatz, g, &minus, &ansatz.thetas)?)
            };
            total += 0.5 * (cp - cm);
        }
        grad.push(total);
    }
    for &mask in ansatz.thetas.keys() {
        let mut t = ansatz.thetas.clone();
        let base = t[&mask];
        t.insert(mask, base + FRAC_PI_2);
        let cp = split_cost(ev, ansatz, g, g, &t)?;
        t.insert(mask, base - FRAC_PI_2);
        let cm = split_cost(ev, ansatz, g, g, &t)?;
        grad.push(0.5 * (cp - cm));
    }
    Ok(grad)
}

pub fn parameter_shift_gradient(target: &Unitary, ansatz: &VffAnsatz) -> Result<Vec<f64>> {
    gradient_with(&LhstEvaluator::new(target)?, ansatz)
}
