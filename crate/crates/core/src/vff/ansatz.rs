use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::sim::{circuit_unitary_bounded, Circuit, GateOp, Unitary};
use crate::walsh::{local_masks, rotation_for, Topology};

/// Dense bound for [`ansatz_unitary`].
pub const MAX_ANSATZ_QUBITS: usize = 10;

/// `A(γ, θ) = W(γ)·D(θ)·W(γ)†` with a brick-wall `W` and an `l`-local diagonal `D`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VffAnsatz {
    pub n: usize,
    pub layers_w: usize,
    pub gammas: Vec<f64>,
    /// `D` rotation angles keyed by Walsh mask.
    pub thetas: BTreeMap<usize, f64>,
    /// Phase of the identity term, fixed after optimization.
    #[serde(default)]
    pub global_phase: f64,
    pub tau: f64,
    pub l: usize,
    pub topology: Topology,
}

/// `n` Rz, then ZZ on even-odd pairs, then ZZ on odd-even pairs.
pub fn gammas_per_layer(n: usize) -> usize {
    n + n / 2 + n.saturating_sub(1) / 2
}

impl VffAnsatz {
    /// All-zero parameters over the masks admitted by `(n, l, topology)`.
    pub fn zeros(n: usize, layers_w: usize, l: usize, topology: Topology, tau: f64) -> Self {
        VffAnsatz {
            n,
            layers_w,
            gammas: alloc::vec![0.0; layers_w * gammas_per_layer(n)],
            thetas: local_masks(n, l, topology).into_iter().map(|m| (m, 0.0)).collect(),
            global_phase: 0.0,
            tau,
            l,
            topology,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.gammas.len() != self.layers_w * gammas_per_layer(self.n) {
            bail!(Argument, "{} gammas for {} layers on {} qubits", self.gammas.len(), self.layers_w, self.n);
        }
        let allowed = local_masks(self.n, self.l, self.topology);
        if self.thetas.len() != allowed.len() || !allowed.iter().all(|m| self.thetas.contains_key(m)) {
            bail!(Argument, "theta keys do not match the l = {} {:?} mask set", self.l, self.topology);
        }
        Ok(())
    }

    pub fn num_params(&self) -> usize {
        self.gammas.len() + self.thetas.len()
    }

    /// Optimizable parameters: gammas, then thetas in ascending mask order.
    pub fn params(&self) -> Vec<f64> {
        self.gammas.iter().chain(self.thetas.values()).copied().collect()
    }

    pub fn set_params(&mut self, p: &[f64]) -> Result<()> {
        if p.len() != self.num_params() {
            bail!(Argument, "expected {} parameters, got {}", self.num_params(), p.len());
        }
        let (g, t) = p.split_at(self.gammas.len());
        self.gammas.copy_from_slice(g);
        for (v, x) in self.thetas.values_mut().zip(t) {
            *v = *x;
        }
        Ok(())
    }

    /// Copy with every `D` angle (and the identity phase) multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        let mut a = self.clone();
        a.thetas.values_mut().for_each(|t| *t *= k);
        a.global_phase *= k;
        a.tau *= k;
        a
    }
}

pub(crate) fn push_w(c: &mut Circuit, n: usize, gammas: &[f64]) -> Result<()> {
    let per = gammas_per_layer(n);
    for layer in gammas.chunks(per.max(1)) {
        let mut g = layer.iter().copied();
        for q in 0..n {
            c.push(GateOp::rz(q, g.next().unwrap_or(0.0)))?;
        }
        for start in [0usize, 1] {
            let mut q = start;
            while q + 1 < n {
                c.push(GateOp::zz(q, q + 1, g.next().unwrap_or(0.0)))?;
                q += 2;
            }
        }
    }
    Ok(())
}

/// `W(γ)` as a circuit of Rz and ZZ gates.
pub fn build_w(ansatz: &VffAnsatz) -> Result<Circuit> {
    ansatz.validate()?;
    let mut c = Circuit::new(ansatz.n);
    push_w(&mut c, ansatz.n, &ansatz.gammas)?;
    Ok(c)
}

pub(crate) fn push_d(c: &mut Circuit, thetas: &BTreeMap<usize, f64>, global_phase: f64) -> Result<()> {
    for (&mask, &theta) in thetas {
        match rotation_for(mask, theta) {
            Some(g) => c.push(g)?,
            None => bail!(Argument, "mask {mask} is not a single qubit or pair"),
        }
    }
    if global_phase != 0.0 {
        c.push(GateOp::global_phase(global_phase))?;
    }
    Ok(())
}

/// `D(θ)`: one Rz or ZZ per mask.
pub fn build_d(ansatz: &VffAnsatz) -> Result<Circuit> {
    ansatz.validate()?;
    let mut c = Circuit::new(ansatz.n);
    push_d(&mut c, &ansatz.thetas, ansatz.global_phase)?;
    Ok(c)
}

/// `W·D·W†` as one circuit.
pub fn ansatz_circuit(ansatz: &VffAnsatz) -> Result<Circuit> {
    let w = build_w(ansatz)?;
    let mut c = w.clone();
    c.append(&build_d(ansatz)?)?;
    c.append(&w.inverse())?;
    Ok(c)
}

pub fn ansatz_unitary(ansatz: &VffAnsatz) -> Result<Unitary> {
    circuit_unitary_bounded(&ansatz_circuit(ansatz)?, MAX_ANSATZ_QUBITS)
}

/// `W·D(Nθ)·W†`.
pub fn fast_forward(ansatz: &VffAnsatz, steps: u32) -> Result<Circuit> {
    ansatz_circuit(&ansatz.scaled(steps as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::GateKind;

    #[test]
    fn w_layer_census() {
        let mut a = VffAnsatz::zeros(4, 1, 4, Topology::Linear, 1.0);
        a.gammas.iter_mut().enumerate().for_each(|(i, g)| *g = i as f64);
        let w = build_w(&a).unwrap();
        let count = |k| w.ops().iter().filter(|o| o.kind() == k).count();
        assert_eq!(count(GateKind::Rz), 4);
        assert_eq!(count(GateKind::Zz), 3);
        assert_eq!(w.ops()[4], GateOp::zz(0, 1, 4.0));
        assert_eq!(w.ops()[5], GateOp::zz(2, 3, 5.0));
        assert_eq!(w.ops()[6], GateOp::zz(1, 2, 6.0));
    }

    #[test]
    fn d_census_for_three_local() {
        let a = VffAnsatz::zeros(8, 1, 3, Topology::Linear, 1.0);
        let d = build_d(&a).unwrap();
        assert_eq!(d.ops().iter().filter(|o| o.kind() == GateKind::Rz).count(), 8);
        assert_eq!(d.ops().iter().filter(|o| o.kind() == GateKind::Zz).count(), 13);
    }

    #[test]
    fn zero_parameters_give_identity() {
        let a = VffAnsatz::zeros(3, 1, 3, Topology::Linear, 1.0);
        assert!(ansatz_unitary(&a).unwrap().max_abs_diff(&Unitary::identity(8)) < 1e-15);
    }

    #[test]
    fn foreign_theta_key_is_rejected() {
        let mut a = VffAnsatz::zeros(4, 1, 2, Topology::Linear, 1.0);
        a.thetas.insert(0b1001, 0.3);
        assert!(build_d(&a).is_err());
    }
}
