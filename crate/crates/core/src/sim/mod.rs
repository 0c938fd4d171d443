//! Dense statevector emulation.

mod circuit;
mod gate;
mod kernel;
mod state;
mod unitary;

pub use circuit::{Circuit, CompiledCircuit};
pub use gate::{GateKind, GateOp, OpRecord};
pub use state::{apply_circuit, apply_gate, expectation_z, state_fidelity, StateVector, NORM_TOLERANCE};
pub use unitary::{circuit_unitary, circuit_unitary_bounded, Unitary, MAX_DENSE_QUBITS};
