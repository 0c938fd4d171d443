use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gate::GateOp;
use super::kernel::{self, CompiledOp};
use super::state::StateVector;
use crate::error::{bail, Error, Result};

/// Ordered gate list over a fixed register.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CircuitDoc", into = "CircuitDoc")]
pub struct Circuit {
    num_qubits: usize,
    ops: Vec<GateOp>,
}

#[derive(Serialize, Deserialize)]
struct CircuitDoc {
    num_qubits: usize,
    ops: Vec<GateOp>,
}

impl TryFrom<CircuitDoc> for Circuit {
    type Error = Error;
    fn try_from(doc: CircuitDoc) -> Result<Self> {
        Circuit::from_ops(doc.num_qubits, doc.ops)
    }
}

impl From<Circuit> for CircuitDoc {
    fn from(c: Circuit) -> Self {
        CircuitDoc { num_qubits: c.num_qubits, ops: c.ops }
    }
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self { num_qubits, ops: Vec::new() }
    }

    pub fn from_ops(num_qubits: usize, ops: Vec<GateOp>) -> Result<Self> {
        let c = Self { num_qubits, ops };
        c.validate()?;
        Ok(c)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        for (i, op) in self.ops.iter().enumerate() {
            op.validate(self.num_qubits).map_err(|e| Error::Argument(alloc::format!("op {i}: {e}")))?;
        }
        Ok(())
    }

    pub fn push(&mut self, op: GateOp) -> Result<()> {
        op.validate(self.num_qubits)?;
        self.ops.push(op);
        Ok(())
    }

    /// Append `other` after the current ops; registers must match.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.num_qubits != self.num_qubits {
            bail!(Argument, "cannot append a {}-qubit circuit to a {}-qubit one", other.num_qubits, self.num_qubits);
        }
        self.ops.extend(other.ops.iter().cloned());
        Ok(())
    }

    pub fn inverse(&self) -> Circuit {
        Circuit { num_qubits: self.num_qubits, ops: self.ops.iter().rev().map(GateOp::inverse).collect() }
    }

    /// Place this circuit into a `num_qubits`-wide register, qubit `i` going to `map[i]`.
    pub fn embed(&self, num_qubits: usize, map: &[usize]) -> Result<Circuit> {
        if map.len() != self.num_qubits {
            bail!(Argument, "qubit map has {} entries for a {}-qubit circuit", map.len(), self.num_qubits);
        }
        let ops = self.ops.iter().map(|op| op.map_qubits(&|q| map[q])).collect();
        Circuit::from_ops(num_qubits, ops)
    }

    /// Condition every op on `control` holding `polarity`.
    pub fn controlled(&self, control: usize, polarity: bool) -> Result<Circuit> {
        let ops = self.ops.iter().map(|op| op.controlled(control, polarity)).collect();
        Circuit::from_ops(self.num_qubits, ops)
    }

    /// True when every op is diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        self.ops.iter().all(GateOp::is_diagonal)
    }

    /// Diagonal of the circuit unitary, or `None` when some op is not diagonal.
    pub fn diagonal_phases(&self) -> Option<Vec<Complex64>> {
        if !self.is_diagonal() {
            return None;
        }
        let mut d = vec![Complex64::new(1.0, 0.0); 1usize << self.num_qubits];
        self.compile().apply(&mut d);
        Some(d)
    }

    pub fn compile(&self) -> CompiledCircuit {
        CompiledCircuit { num_qubits: self.num_qubits, ops: self.ops.iter().map(kernel::compile).collect() }
    }
}

/// A circuit lowered to kernels, for repeated application.
#[derive(Clone, Debug)]
pub struct CompiledCircuit {
    num_qubits: usize,
    ops: Vec<CompiledOp>,
}

impl CompiledCircuit {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Apply to a raw amplitude slice of length `2^num_qubits`.
    pub fn apply(&self, amps: &mut [Complex64]) {
        debug_assert_eq!(amps.len(), 1usize << self.num_qubits);
        for op in &self.ops {
            op.apply(amps);
        }
    }

    pub fn apply_state(&self, state: &mut StateVector) -> Result<()> {
        if state.num_qubits() != self.num_qubits {
            bail!(Argument, "circuit has {} qubits, state has {}", self.num_qubits, state.num_qubits());
        }
        self.apply(state.amplitudes_mut());
        Ok(())
    }
}
