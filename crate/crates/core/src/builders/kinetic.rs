use super::quadratic::{explicit_quadratic_circuit, QuadraticPhases};
use crate::error::{bail, Result};
use crate::grid::{centered_qft_circuit, GridSpec};
use crate::sim::Circuit;

/// Wrap a momentum-diagonal circuit as `cQFT† · inner · cQFT`.
pub fn momentum_sandwich(inner: &Circuit) -> Result<Circuit> {
    let n = inner.num_qubits();
    let fwd = centered_qft_circuit(n)?;
    let mut c = fwd.clone();
    c.append(inner)?;
    c.append(&fwd.inverse())?;
    Ok(c)
}

/// `e^{−iτp²/2μ}` acting on the position register.
pub fn kinetic_circuit(grid: &GridSpec, mu: f64, tau: f64, reduced: bool) -> Result<Circuit> {
    if !(mu > 0.0) {
        bail!(Argument, "mass must be positive, got {mu}");
    }
    let phases = QuadraticPhases::kinetic(grid, mu, tau);
    momentum_sandwich(&explicit_quadratic_circuit(&phases, grid.n, reduced)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{apply_circuit, circuit_unitary, state_fidelity, StateVector};
    use alloc::vec;
    use num_complex::Complex64;

    #[test]
    fn zero_momentum_only_picks_up_a_phase() {
        let g = GridSpec::new(4, 20.0).unwrap();
        let s = StateVector::normalized(vec![Complex64::new(1.0, 0.0); 16]).unwrap();
        let out = apply_circuit(&s, &kinetic_circuit(&g, 1.0, 0.7, true).unwrap()).unwrap();
        assert!((state_fidelity(&s, &out).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn doubling_time_composes() {
        let g = GridSpec::new(3, 8.0).unwrap();
        let one = circuit_unitary(&kinetic_circuit(&g, 1.0, 0.3, true).unwrap()).unwrap();
        let two = circuit_unitary(&kinetic_circuit(&g, 1.0, 0.6, false).unwrap()).unwrap();
        assert!(one.mul(&one).unwrap().max_abs_diff_up_to_phase(&two) < 1e-10);
    }
}
