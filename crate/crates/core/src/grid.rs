//! Binary position grid, centered momentum grid and the centered QFT.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::sim::{Circuit, GateOp, StateVector};

/// `n` qubits encoding `2^n` positions `x_k = kΔ` on `[0, L)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
    #[serde(rename = "L")]
    pub length: f64,
}

impl GridSpec {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        let g = GridSpec { n, length };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > 24 {
            bail!(Argument, "grid qubit count {} outside 1..=24", self.n);
        }
        if !(self.length > 0.0 && self.length.is_finite()) {
            bail!(Argument, "box length must be positive and finite, got {}", self.length);
        }
        Ok(())
    }

    pub fn points(&self) -> usize {
        1usize << self.n
    }

    /// `Δ = L / 2^n`.
    pub fn delta(&self) -> f64 {
        self.length / self.points() as f64
    }

    /// `Δp = 2π / L`.
    pub fn delta_p(&self) -> f64 {
        2.0 * PI / self.length
    }

    /// `π / Δ`.
    pub fn nyquist(&self) -> f64 {
        PI / self.delta()
    }

    /// Momentum stored at basis index `idx` after the centered QFT.
    pub fn momentum_of_index(&self, idx: usize) -> f64 {
        (idx as f64 - (self.points() / 2) as f64) * self.delta_p()
    }
}

pub fn position_of_index(grid: &GridSpec, k: usize) -> Result<f64> {
    if k >= grid.points() {
        bail!(Argument, "index {k} outside a grid of {} points", grid.points());
    }
    Ok(grid.delta() * k as f64)
}

/// `f(x_k)` for every grid point.
pub fn sample_diagonal(grid: &GridSpec, f: impl Fn(f64) -> f64) -> Result<Vec<f64>> {
    let d = grid.delta();
    let mut out = Vec::with_capacity(grid.points());
    for k in 0..grid.points() {
        let v = f(d * k as f64);
        if !v.is_finite() {
            bail!(Domain, "function is not finite at x = {}", d * k as f64);
        }
        out.push(v);
    }
    Ok(out)
}

fn transform(state: &StateVector, inverse: bool) -> Result<StateVector> {
    state.check_normalized()?;
    let dim = state.dim();
    let half = (dim / 2) as f64;
    let norm = 1.0 / (dim as f64).sqrt();
    let sign = if inverse { 1.0 } else { -1.0 };
    let amps = state.amplitudes();
    let out = (0..dim)
        .map(|r| {
            amps.iter()
                .enumerate()
                .map(|(c, a)| {
                    let (m, k) = if inverse { (c as f64 - half, r as f64) } else { (r as f64 - half, c as f64) };
                    a * Complex64::cis(sign * 2.0 * PI * m * k / dim as f64)
                })
                .sum::<Complex64>()
                * norm
        })
        .collect();
    StateVector::from_amplitudes(out)
}

/// Momentum representation: the plane wave `e^{2πimk/2^n}` lands on index `m + 2^{n−1}`.
pub fn centered_qft(state: &StateVector) -> Result<StateVector> {
    transform(state, false)
}

pub fn inverse_centered_qft(state: &StateVector) -> Result<StateVector> {
    transform(state, true)
}

fn hadamard(c: &mut Circuit, q: usize) -> Result<()> {
    c.push(GateOp::rz(q, PI))?;
    c.push(GateOp::ry(q, FRAC_PI_2))
}

fn swap(c: &mut Circuit, a: usize, b: usize) -> Result<()> {
    c.push(GateOp::cnot(a, b))?;
    c.push(GateOp::cnot(b, a))?;
    c.push(GateOp::cnot(a, b))
}

/// Standard QFT `|k⟩ → 2^{-n/2} Σ_m e^{2πimk/2^n}|m⟩` on `n` qubits.
pub fn qft_circuit(n: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n);
    for i in (0..n).rev() {
        hadamard(&mut c, i)?;
        for j in (0..i).rev() {
            c.push(GateOp::crz(j, i, PI / (1u64 << (i - j)) as f64))?;
        }
    }
    for t in 0..n / 2 {
        swap(&mut c, t, n - 1 - t)?;
    }
    Ok(c)
}

/// Centered QFT as a gate circuit: inverse QFT followed by `X` on the top qubit.
pub fn centered_qft_circuit(n: usize) -> Result<Circuit> {
    let mut c = qft_circuit(n)?.inverse();
    c.push(GateOp::x(n - 1))?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{circuit_unitary, state_fidelity};
    use alloc::vec;

    fn grid(n: usize, l: f64) -> GridSpec {
        GridSpec::new(n, l).unwrap()
    }

    #[test]
    fn positions() {
        assert_eq!(position_of_index(&grid(8, 20.0), 0).unwrap(), 0.0);
        assert_eq!(position_of_index(&grid(8, 20.0), 128).unwrap(), 10.0);
        assert_eq!(position_of_index(&grid(3, 8.0), 5).unwrap(), 5.0);
        assert!(position_of_index(&grid(3, 8.0), 8).is_err());
    }

    #[test]
    fn grid_identities() {
        let g = grid(8, 20.0);
        assert_eq!(g.delta() * g.points() as f64, g.length);
        assert!((g.delta_p() * g.points() as f64 - 2.0 * g.nyquist()).abs() < 1e-12);
    }

    #[test]
    fn sampling() {
        assert_eq!(sample_diagonal(&grid(2, 4.0), |x| x).unwrap(), vec![0.0, 1.0, 2.0, 3.0]);
        assert!(sample_diagonal(&grid(2, 4.0), |x| 1.0 / x).is_err());
        let v = sample_diagonal(&grid(8, 20.0), |x| 0.015 * (x - 10.0 - 1.5).powi(2)).unwrap();
        assert!(v[147] < 1e-4);
    }

    #[test]
    fn uniform_state_goes_to_zero_momentum() {
        let n = 4;
        let s = StateVector::normalized(vec![Complex64::new(1.0, 0.0); 1 << n]).unwrap();
        let m = centered_qft(&s).unwrap();
        assert!((m.amplitudes()[1 << (n - 1)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circuit_matches_direct_transform() {
        for n in 1..=5 {
            let dim = 1usize << n;
            let u = circuit_unitary(&centered_qft_circuit(n).unwrap()).unwrap();
            for k in 0..dim {
                let direct = centered_qft(&StateVector::basis(n, k).unwrap()).unwrap();
                for (r, a) in direct.amplitudes().iter().enumerate() {
                    assert!((u.get(r, k) - a).norm() < 1e-10, "n={n} k={k} r={r}");
                }
            }
        }
    }

    #[test]
    fn plane_wave_lands_on_shifted_index() {
        let n = 5;
        let dim = 1usize << n;
        for m in -(dim as i64 / 2)..(dim as i64 / 2) {
            let amps = (0..dim)
                .map(|k| Complex64::cis(2.0 * PI * m as f64 * k as f64 / dim as f64) / (dim as f64).sqrt())
                .collect();
            let s = StateVector::normalized(amps).unwrap();
            let out = centered_qft(&s).unwrap();
            let target = StateVector::basis(n, (m + dim as i64 / 2) as usize).unwrap();
            assert!((state_fidelity(&out, &target).unwrap() - 1.0).abs() < 1e-10);
            let back = inverse_centered_qft(&out).unwrap();
            assert!((state_fidelity(&back, &s).unwrap() - 1.0).abs() < 1e-10);
        }
    }
}
