//! Variational fast-forwarding: ansatz, local Hilbert–Schmidt cost, gradients and Adam.

mod adam;
mod ansatz;
mod compress;
mod cost;
mod global_min;
mod gradient;

pub use adam::{adam_step, minimize, HistoryRow, OptimizeResult, OptimizerConfig, OptimizerState};
pub use ansatz::{
    ansatz_circuit, ansatz_unitary, build_d, build_w, fast_forward, gammas_per_layer, VffAnsatz, MAX_ANSATZ_QUBITS,
};
pub use compress::{align_global_phase, compress, compress_best_of, CompressResult, CompressSettings};
pub use cost::{hs_cost, lhst_cost, lhst_dense, lhst_diagonal, CostReport, LhstEvaluator, MAX_COST_QUBITS};
pub use global_min::{analytic_thetas, fit_two_parameter, verify_global_minimum, GlobalMinReport, TwoParameterFit};
pub use gradient::{ansatz_cost, gradient_with, parameter_shift_gradient};
