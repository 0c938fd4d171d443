use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::grid::GridSpec;
use crate::sim::{Circuit, GateOp};

/// Phases of `e^{i(φ₁ + φ₂m + φ₃m²)}` with `m = Σ_j 2^j k_j`, which equals
/// `e^{−iτ(η(mΔ − x₀)² + δ)}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticPhases {
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
}

impl QuadraticPhases {
    /// Phases for `η(x − x₀)² + δ` sampled at `x = mΔ`, evolved for time `τ`.
    pub fn new(eta: f64, x0: f64, delta_e: f64, tau: f64, spacing: f64) -> Self {
        QuadraticPhases {
            phi1: -tau * (eta * x0 * x0 + delta_e),
            phi2: 2.0 * tau * eta * x0 * spacing,
            phi3: -tau * eta * spacing * spacing,
        }
    }

    /// Phases for a potential `a(x − c)²` on `grid`.
    pub fn potential(grid: &GridSpec, a: f64, c: f64, offset: f64, tau: f64) -> Self {
        Self::new(a, c, offset, tau, grid.delta())
    }

    /// Phases for `p²/2μ` on the centered momentum grid, indexed by the momentum slot.
    pub fn kinetic(grid: &GridSpec, mu: f64, tau: f64) -> Self {
        let dp = grid.delta_p();
        Self::new(dp * dp / (2.0 * mu), (grid.points() / 2) as f64, 0.0, tau, 1.0)
    }

    /// Phase at basis index `m`.
    pub fn phase(&self, m: usize) -> f64 {
        let m = m as f64;
        self.phi1 + self.phi2 * m + self.phi3 * m * m
    }

    /// Linear Walsh-form amplitude `α₀ = −(φ₂ + φ₃(2^n − 1))/2` on `n` qubits.
    pub fn alpha0(&self, n: usize) -> f64 {
        -(self.phi2 + self.phi3 * ((1u64 << n) - 1) as f64) / 2.0
    }

    /// Quadratic Walsh-form amplitude `α₁ = φ₃/2`.
    pub fn alpha1(&self) -> f64 {
        self.phi3 / 2.0
    }
}

/// Constant phase `e^{iφ}` from `Rz(φ)·X·Rz(φ)·X` on `q`.
fn constant_phase(c: &mut Circuit, q: usize, phi: f64) -> Result<()> {
    c.push(GateOp::rz(q, phi))?;
    c.push(GateOp::x(q))?;
    c.push(GateOp::rz(q, phi))?;
    c.push(GateOp::x(q))
}

/// Diagonal circuit for `phases` on `n` qubits.
///
/// `reduced = false` keeps separate linear and square terms (`2(1+n)` Rz and one
/// controlled Rz per ordered pair); `reduced = true` merges them into `2+n` Rz and
/// `n(n−1)/2` controlled Rz.
pub fn explicit_quadratic_circuit(phases: &QuadraticPhases, n: usize, reduced: bool) -> Result<Circuit> {
    if n == 0 {
        bail!(Argument, "need at least one qubit");
    }
    let QuadraticPhases { phi1, phi2, phi3 } = *phases;
    let w = |j: usize| (1u64 << j) as f64;
    let mut c = Circuit::new(n);
    constant_phase(&mut c, 0, phi1)?;
    if reduced {
        for j in 0..n {
            c.push(GateOp::rz(j, phi2 * w(j) + phi3 * w(2 * j)))?;
        }
        for j in 0..n {
            for l in j + 1..n {
                c.push(GateOp::crz(j, l, 2.0 * phi3 * w(j + l)))?;
            }
        }
    } else {
        for j in 0..n {
            c.push(GateOp::rz(j, phi2 * w(j)))?;
        }
        for j in 0..n {
            c.push(GateOp::rz(j, phi3 * w(2 * j)))?;
            for l in 0..n {
                if l != j {
                    c.push(GateOp::crz(j, l, phi3 * w(j + l)))?;
                }
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{circuit_unitary, GateKind};
    use num_complex::Complex64;

    fn oracle(eta: f64, x0: f64, d: f64, tau: f64, spacing: f64, k: usize) -> Complex64 {
        let x = spacing * k as f64;
        Complex64::cis(-tau * (eta * (x - x0) * (x - x0) + d))
    }

    #[test]
    fn zero_potential_is_identity() {
        let p = QuadraticPhases::new(0.0, 3.0, 0.0, 1.0, 0.5);
        let u = circuit_unitary(&explicit_quadratic_circuit(&p, 3, true).unwrap()).unwrap();
        assert!(u.diagonal().iter().all(|d| (d - Complex64::new(1.0, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn reduced_census_at_three_qubits() {
        let p = QuadraticPhases::new(0.2, 1.0, 0.1, 1.0, 1.0);
        let c = explicit_quadratic_circuit(&p, 3, true).unwrap();
        let count = |k| c.ops().iter().filter(|o| o.kind() == k).count();
        assert_eq!(count(GateKind::Rz), 5);
        assert_eq!(count(GateKind::ControlledRz), 3);
        let c = explicit_quadratic_circuit(&p, 3, false).unwrap();
        let count = |k| c.ops().iter().filter(|o| o.kind() == k).count();
        assert_eq!(count(GateKind::Rz), 8);
        assert_eq!(count(GateKind::ControlledRz), 6);
    }

    #[test]
    fn matches_exponentiated_potential() {
        let (eta, x0, d, tau) = (0.015, 10.0, 0.0, 1.0);
        let grid = GridSpec::new(4, 20.0).unwrap();
        let p = QuadraticPhases::potential(&grid, eta, x0, d, tau);
        for reduced in [true, false] {
            let u = circuit_unitary(&explicit_quadratic_circuit(&p, 4, reduced).unwrap()).unwrap();
            for (k, z) in u.diagonal().iter().enumerate() {
                assert!((z - oracle(eta, x0, d, tau, grid.delta(), k)).norm() < 1e-10);
            }
        }
    }
}
