use alloc::vec::Vec;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{MarcusConfig, OperatorMode, RegisterLayout};
use crate::builders::{explicit_quadratic_circuit, kinetic_circuit, momentum_sandwich, piecewise_coupling_circuit, QuadraticPhases};
use crate::error::{bail, Result};
use crate::sim::{Circuit, Unitary};
use crate::vff::{ansatz_circuit, build_d, build_w, compress_best_of, CompressResult, CompressSettings, OptimizerConfig, VffAnsatz};

/// Compressed half-step operators: `T'` in the momentum frame and `V₀'`, `V₁'` in
/// the position frame, each for time `τ/2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompressedOperators {
    pub kinetic: VffAnsatz,
    pub v0: VffAnsatz,
    pub v1: VffAnsatz,
    /// Driving force `v1` was compiled for.
    #[serde(rename = "dG")]
    pub dg: f64,
}

/// Diagonal half-step targets on the `n` position qubits.
#[derive(Clone, Debug)]
pub struct OperatorTargets {
    /// `e^{−ip²τ/4μ}` indexed by the centred momentum slot.
    pub kinetic: Unitary,
    pub v0: Unitary,
    pub v1: Unitary,
}

fn diagonal_target(phases: &QuadraticPhases, n: usize) -> Unitary {
    let d: Vec<Complex64> = (0..1usize << n).map(|m| Complex64::cis(phases.phase(m))).collect();
    Unitary::from_diagonal(&d)
}

pub fn operator_targets(config: &MarcusConfig) -> Result<OperatorTargets> {
    config.validate()?;
    let n = config.grid.n;
    let half = config.tau / 2.0;
    Ok(OperatorTargets {
        kinetic: diagonal_target(&QuadraticPhases::kinetic(&config.grid, config.mu, half), n),
        v0: diagonal_target(&config.potential_phases(0, half), n),
        v1: diagonal_target(&config.potential_phases(1, half), n),
    })
}

/// Compress the three half-step operators with the localities of `config.operator_mode`,
/// keeping the best of `seeds` for each.
///
/// Returns the operators with the per-operator results, in the order kinetic, V₀, V₁.
pub fn compress_operators(
    config: &MarcusConfig,
    layers_w: usize,
    opt: &OptimizerConfig,
    seeds: &[u64],
) -> Result<(CompressedOperators, [CompressResult; 3])> {
    let OperatorMode::Compressed { l_kinetic, l_potential, topology } = config.operator_mode else {
        bail!(Argument, "operator mode is explicit");
    };
    let targets = operator_targets(config)?;
    let half = config.tau / 2.0;
    let settings = |l| CompressSettings { l, topology, layers_w, tau: half };
    let kinetic = compress_best_of(&targets.kinetic, &settings(l_kinetic), opt, seeds)?;
    let v0 = compress_best_of(&targets.v0, &settings(l_potential), opt, seeds)?;
    let v1 = compress_best_of(&targets.v1, &settings(l_potential), opt, seeds)?;
    let ops = CompressedOperators { kinetic: kinetic.ansatz.clone(), v0: v0.ansatz.clone(), v1: v1.ansatz.clone(), dg: config.dg };
    Ok((ops, [kinetic, v0, v1]))
}

fn positions(layout: &RegisterLayout) -> Vec<usize> {
    (0..layout.n).collect()
}

/// `W·D·W†` with only `D` conditioned on the objective qubit.
fn controlled_ansatz(a: &VffAnsatz, layout: &RegisterLayout, polarity: bool) -> Result<Circuit> {
    let map = positions(layout);
    let w = build_w(a)?.embed(layout.num_wires, &map)?;
    let d = build_d(a)?.embed(layout.num_wires, &map)?.controlled(layout.objective, polarity)?;
    let mut c = w.clone();
    c.append(&d)?;
    c.append(&w.inverse())?;
    Ok(c)
}

fn check_ansatz(name: &str, a: &VffAnsatz, config: &MarcusConfig) -> Result<()> {
    a.validate()?;
    if a.n != config.grid.n {
        bail!(Argument, "{name} ansatz has {} qubits, grid has {}", a.n, config.grid.n);
    }
    if (a.tau - config.tau / 2.0).abs() > 1e-12 * config.tau.abs().max(1.0) {
        bail!(Argument, "{name} ansatz was compiled for τ = {}, half step is {}", a.tau, config.tau / 2.0);
    }
    Ok(())
}

/// One symmetric second-order step:
/// `T(τ/2) · V(τ/2) · C(τ) · V(τ/2) · T(τ/2)` with `V = V₀ ⊗ |0⟩⟨0| + V₁ ⊗ |1⟩⟨1|`.
///
/// With `compressed`, `T'`, `V₀'` and `V₁'` replace the explicit circuits. A `V₁'`
/// compiled for another driving force is corrected by its constant phase.
pub fn build_trotter_step(config: &MarcusConfig, compressed: Option<&CompressedOperators>) -> Result<Circuit> {
    config.validate()?;
    let layout = config.layout()?;
    let map = positions(&layout);
    let half = config.tau / 2.0;
    let (kinetic, potentials) = match compressed {
        None => {
            let t = kinetic_circuit(&config.grid, config.mu, half, true)?.embed(layout.num_wires, &map)?;
            let mut v = Circuit::new(layout.num_wires);
            for (surface, polarity) in [(0, false), (1, true)] {
                let c = explicit_quadratic_circuit(&config.potential_phases(surface, half), config.grid.n, true)?;
                v.append(&c.embed(layout.num_wires, &map)?.controlled(layout.objective, polarity)?)?;
            }
            (t, v)
        }
        Some(ops) => {
            check_ansatz("kinetic", &ops.kinetic, config)?;
            check_ansatz("V0", &ops.v0, config)?;
            check_ansatz("V1", &ops.v1, config)?;
            let t = momentum_sandwich(&ansatz_circuit(&ops.kinetic)?)?.embed(layout.num_wires, &map)?;
            let mut v1 = ops.v1.clone();
            v1.global_phase += (config.dg - ops.dg) * half;
            let mut v = controlled_ansatz(&ops.v0, &layout, false)?;
            v.append(&controlled_ansatz(&v1, &layout, true)?)?;
            (t, v)
        }
    };
    let coupling = piecewise_coupling_circuit(
        &config.grid,
        &config.coupling.to_piecewise(&config.grid)?,
        &layout.comparators,
        config.tau,
        layout.objective,
    )?;
    let mut step = kinetic.clone();
    step.append(&potentials)?;
    step.append(&coupling)?;
    step.append(&potentials)?;
    step.append(&kinetic)?;
    Ok(step)
}
