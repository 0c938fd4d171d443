use alloc::vec::Vec;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ansatz::{ansatz_circuit, VffAnsatz};
use crate::error::{bail, Result};
use crate::sim::{circuit_unitary_bounded, Circuit, Unitary};

/// Largest register for which the local cost is evaluated.
pub const MAX_COST_QUBITS: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub c_lhst: f64,
    pub per_qubit_fidelities: Vec<f64>,
    pub c_hst: f64,
}

fn report(fids: Vec<f64>, trace: Complex64, dim: usize) -> CostReport {
    let n = fids.len().max(1);
    let mean = fids.iter().sum::<f64>() / n as f64;
    let c_hst = (1.0 - trace.norm_sqr() / (dim * dim) as f64).clamp(0.0, 1.0);
    CostReport { c_lhst: (1.0 - mean).clamp(0.0, 1.0), per_qubit_fidelities: fids, c_hst }
}

/// Local and global costs for diagonal `U = diag(u)` and `A = diag(a)`.
pub fn lhst_diagonal(u: &[Complex64], a: &[Complex64]) -> Result<CostReport> {
    if u.len() != a.len() || !u.len().is_power_of_two() {
        bail!(Argument, "diagonal lengths {} and {} differ or are not powers of two", u.len(), a.len());
    }
    let dim = u.len();
    let n = dim.trailing_zeros() as usize;
    let q: Vec<Complex64> = u.iter().zip(a).map(|(x, y)| x * y.conj()).collect();
    let norm = 1.0 / (4.0 * (dim / 2).max(1) as f64);
    let fids = (0..n)
        .map(|j| {
            let bit = 1usize << j;
            (0..dim).filter(|i| i & bit == 0).map(|i| (q[i] + q[i | bit]).norm_sqr()).sum::<f64>() * norm
        })
        .collect();
    Ok(report(fids, q.iter().sum(), dim))
}

/// Local and global costs for dense `U` and `A`.
///
/// Both registers start in Bell pairs; `U` acts on one half and `A*` on the other,
/// which leaves `(Q ⊗ 1)|Φ⁺⟩` with `Q = U·A†`. Pair `j` then overlaps `|Φ⁺⟩` with
/// probability `(4·2^{n−1})^{-1} Σ_{a,b} |Q[(a,0),(b,0)] + Q[(a,1),(b,1)]|²` where
/// `a, b` run over the other qubits.
pub fn lhst_dense(u: &Unitary, a: &Unitary) -> Result<CostReport> {
    if u.dim() != a.dim() {
        bail!(Argument, "target dimension {} differs from ansatz dimension {}", u.dim(), a.dim());
    }
    let dim = u.dim();
    let n = u.num_qubits();
    if n > MAX_COST_QUBITS {
        bail!(Resource, "local cost limited to {MAX_COST_QUBITS} qubits, got {n}");
    }
    let q = u.mul(&a.adjoint())?;
    let norm = 1.0 / (4.0 * (dim / 2).max(1) as f64);
    let fids = (0..n)
        .map(|j| {
            let bit = 1usize << j;
            let mut s = 0.0;
            for r in (0..dim).filter(|i| i & bit == 0) {
                for c in (0..dim).filter(|i| i & bit == 0) {
                    s += (q.get(r, c) + q.get(r | bit, c | bit)).norm_sqr();
                }
            }
            s * norm
        })
        .collect();
    Ok(report(fids, q.trace(), dim))
}

/// `1 − |Tr(A†U)|²/4^n`.
pub fn hs_cost(u: &Unitary, a: &Unitary) -> Result<f64> {
    if u.dim() != a.dim() {
        bail!(Argument, "dimension mismatch {} vs {}", u.dim(), a.dim());
    }
    let d = u.dim();
    let tr: Complex64 = (0..d).flat_map(|r| (0..d).map(move |c| (r, c))).map(|(r, c)| a.get(r, c).conj() * u.get(r, c)).sum();
    Ok((1.0 - tr.norm_sqr() / (d * d) as f64).clamp(0.0, 1.0))
}

/// Cost evaluator that keeps the target in the cheapest form available.
#[derive(Clone, Debug)]
pub struct LhstEvaluator {
    n: usize,
    diagonal: Option<Vec<Complex64>>,
    dense: Unitary,
}

impl LhstEvaluator {
    pub fn new(target: &Unitary) -> Result<Self> {
        if target.num_qubits() > MAX_COST_QUBITS {
            bail!(Resource, "local cost limited to {MAX_COST_QUBITS} qubits");
        }
        let diagonal = (target.max_off_diagonal() == 0.0).then(|| target.diagonal());
        Ok(LhstEvaluator { n: target.num_qubits(), diagonal, dense: target.clone() })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> &Unitary {
        &self.dense
    }

    /// Target diagonal, when the target is diagonal.
    pub fn target_diagonal(&self) -> Option<&[Complex64]> {
        self.diagonal.as_deref()
    }

    pub fn evaluate(&self, circuit: &Circuit) -> Result<CostReport> {
        if circuit.num_qubits() != self.n {
            bail!(Argument, "circuit has {} qubits, target has {}", circuit.num_qubits(), self.n);
        }
        if let (Some(u), Some(a)) = (&self.diagonal, circuit.diagonal_phases()) {
            return lhst_diagonal(u, &a);
        }
        lhst_dense(&self.dense, &circuit_unitary_bounded(circuit, MAX_COST_QUBITS)?)
    }
}

/// Exact local cost of `ansatz` against `target`.
pub fn lhst_cost(target: &Unitary, ansatz: &VffAnsatz) -> Result<CostReport> {
    if target.num_qubits() != ansatz.n {
        bail!(Argument, "target has {} qubits, ansatz has {}", target.num_qubits(), ansatz.n);
    }
    LhstEvaluator::new(target)?.evaluate(&ansatz_circuit(ansatz)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{circuit_unitary, GateOp};

    #[test]
    fn phase_only_difference_costs_nothing() {
        let mut c = Circuit::new(2);
        c.push(GateOp::rx(0, 0.4)).unwrap();
        c.push(GateOp::cnot(0, 1)).unwrap();
        let u = circuit_unitary(&c).unwrap();
        c.push(GateOp::global_phase(1.1)).unwrap();
        let a = circuit_unitary(&c).unwrap();
        let r = lhst_dense(&u, &a).unwrap();
        assert!(r.c_lhst < 1e-14 && r.c_hst < 1e-14);
    }

    #[test]
    fn diagonal_path_agrees_with_dense() {
        let mut c = Circuit::new(3);
        c.push(GateOp::rz(0, 0.3)).unwrap();
        c.push(GateOp::zz(0, 2, 1.3)).unwrap();
        c.push(GateOp::crz(1, 2, -0.8)).unwrap();
        let u = circuit_unitary(&c).unwrap();
        let a = Unitary::identity(8);
        let d = lhst_diagonal(&u.diagonal(), &a.diagonal()).unwrap();
        let e = lhst_dense(&u, &a).unwrap();
        for (x, y) in d.per_qubit_fidelities.iter().zip(&e.per_qubit_fidelities) {
            assert!((x - y).abs() < 1e-13);
        }
        assert!((d.c_hst - e.c_hst).abs() < 1e-13);
    }
}
