use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;

use super::circuit::Circuit;
use super::gate::GateOp;
use super::kernel;
use crate::error::{bail, Result};

/// Tolerance on `|‖ψ‖² − 1|` accepted at API boundaries.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Dense statevector over `2^num_qubits` basis states.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if index >= dim {
            bail!(Argument, "basis index {index} out of range for {num_qubits} qubits");
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    pub fn zero(num_qubits: usize) -> Self {
        Self::basis(num_qubits, 0).expect("index 0 always valid")
    }

    /// Wrap an amplitude vector, which must be normalized.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            bail!(Argument, "amplitude count {dim} is not a power of two");
        }
        let s = Self { num_qubits: dim.trailing_zeros() as usize, amps };
        s.check_normalized()?;
        Ok(s)
    }

    /// Wrap an amplitude vector after rescaling it to unit norm.
    pub fn normalized(mut amps: Vec<Complex64>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            bail!(Domain, "cannot normalize a vector of norm {norm}");
        }
        for a in amps.iter_mut() {
            *a /= norm;
        }
        Self::from_amplitudes(amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn check_normalized(&self) -> Result<()> {
        let n = self.norm_sqr();
        if (n - 1.0).abs() > NORM_TOLERANCE || !n.is_finite() {
            bail!(Contract, "state norm² is {n}, expected 1");
        }
        Ok(())
    }

    /// Apply one gate in place.
    pub fn apply(&mut self, gate: &GateOp) -> Result<()> {
        gate.validate(self.num_qubits)?;
        kernel::compile(gate).apply(&mut self.amps);
        Ok(())
    }

    /// Apply every op of `circuit` in order, in place.
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() != self.num_qubits {
            bail!(Argument, "circuit has {} qubits, state has {}", circuit.num_qubits(), self.num_qubits);
        }
        circuit.compile().apply(&mut self.amps);
        Ok(())
    }

    /// Tensor product `self ⊗ low`, with `low` occupying the low qubits.
    pub fn tensor(&self, low: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.dim() * low.dim());
        for h in &self.amps {
            for l in &low.amps {
                amps.push(h * l);
            }
        }
        StateVector { num_qubits: self.num_qubits + low.num_qubits, amps }
    }

    /// Total probability of basis states whose bits in `mask` are not all zero.
    pub fn population_outside_zero(&self, mask: usize) -> f64 {
        self.amps.iter().enumerate().filter(|(i, _)| i & mask != 0).map(|(_, a)| a.norm_sqr()).sum()
    }
}

/// `U_gate·ψ` for a normalized `ψ`.
pub fn apply_gate(state: &StateVector, gate: &GateOp) -> Result<StateVector> {
    state.check_normalized()?;
    let mut out = state.clone();
    out.apply(gate)?;
    Ok(out)
}

/// Sequential application of the ops of `circuit` to a normalized `ψ`.
pub fn apply_circuit(state: &StateVector, circuit: &Circuit) -> Result<StateVector> {
    state.check_normalized()?;
    circuit.validate()?;
    let mut out = state.clone();
    out.apply_circuit(circuit)?;
    Ok(out)
}

/// `|⟨a|b⟩|²`.
pub fn state_fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    if a.dim() != b.dim() {
        bail!(Argument, "state sizes differ: {} vs {}", a.dim(), b.dim());
    }
    let overlap: Complex64 = a.amps.iter().zip(b.amps.iter()).map(|(x, y)| x.conj() * y).sum();
    Ok(overlap.norm_sqr().min(1.0))
}

/// `⟨Z_qubit⟩ = Σ_k |ψ_k|² (−1)^{bit(k, qubit)}`.
pub fn expectation_z(state: &StateVector, qubit: usize) -> Result<f64> {
    if qubit >= state.num_qubits {
        bail!(Argument, "qubit {qubit} out of range for {} qubits", state.num_qubits);
    }
    let bit = 1usize << qubit;
    Ok(state.amps.iter().enumerate().map(|(i, a)| if i & bit == 0 { a.norm_sqr() } else { -a.norm_sqr() }).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rz_leaves_zero_unchanged() {
        let s = apply_gate(&StateVector::zero(1), &GateOp::rz(0, 1.3)).unwrap();
        assert_eq!(s.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn zz_phases_odd_parity_only() {
        let a = 0.7;
        let s11 = apply_gate(&StateVector::basis(2, 0b11).unwrap(), &GateOp::zz(0, 1, a)).unwrap();
        assert_abs_diff_eq!(s11.amplitudes()[3].re, 1.0, epsilon = 1e-15);
        let s01 = apply_gate(&StateVector::basis(2, 0b01).unwrap(), &GateOp::zz(0, 1, a)).unwrap();
        assert_abs_diff_eq!(s01.amplitudes()[1].re, a.cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(s01.amplitudes()[1].im, a.sin(), epsilon = 1e-15);
    }

    #[test]
    fn toffoli_flips_target_when_both_controls_set() {
        let s = apply_gate(&StateVector::basis(3, 0b110).unwrap(), &GateOp::toffoli(2, 1, 0)).unwrap();
        assert_eq!(s.amplitudes()[0b111], c(1.0, 0.0));
    }

    #[test]
    fn unnormalized_input_is_rejected() {
        let s = StateVector { num_qubits: 1, amps: vec![c(1.0, 0.0), c(1.0, 0.0)] };
        assert!(apply_gate(&s, &GateOp::x(0)).is_err());
        assert!(apply_gate(&StateVector::zero(1), &GateOp::x(1)).is_err());
    }

    #[test]
    fn fidelity_and_z_basics() {
        let plus = StateVector::normalized(vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let one = StateVector::basis(1, 1).unwrap();
        let zero = StateVector::zero(1);
        assert_abs_diff_eq!(expectation_z(&zero, 0).unwrap(), 1.0);
        assert_abs_diff_eq!(expectation_z(&one, 0).unwrap(), -1.0);
        assert_abs_diff_eq!(expectation_z(&plus, 0).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(state_fidelity(&zero, &one).unwrap(), 0.0);
        let rotated = apply_gate(&plus, &GateOp::global_phase(PI / 3.0)).unwrap();
        assert_abs_diff_eq!(state_fidelity(&plus, &rotated).unwrap(), 1.0, epsilon = 1e-15);
        assert!(expectation_z(&zero, 1).is_err());
    }
}
