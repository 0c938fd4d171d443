use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::circuit::Circuit;
use crate::error::{bail, Result};

/// Default qubit bound for dense unitary extraction.
pub const MAX_DENSE_QUBITS: usize = 12;

/// Dense `dim × dim` complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitary {
    dim: usize,
    entries: Vec<Complex64>,
}

impl Unitary {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Self { dim, entries }
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let dim = diag.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, d) in diag.iter().enumerate() {
            entries[i * dim + i] = *d;
        }
        Self { dim, entries }
    }

    /// Build from row-major entries; `dim` must be a power of two.
    pub fn from_rows(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if !dim.is_power_of_two() || entries.len() != dim * dim {
            bail!(Argument, "need a power-of-two dimension and dim² entries, got dim {dim} with {}", entries.len());
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// Largest off-diagonal magnitude.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut m = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                if r != c {
                    m = m.max(self.get(r, c).norm());
                }
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for c in 0..d {
                entries[c * d + r] = self.entries[r * d + c].conj();
            }
        }
        Self { dim: d, entries }
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Unitary) -> Result<Self> {
        if self.dim != rhs.dim {
            bail!(Argument, "dimension mismatch {} vs {}", self.dim, rhs.dim);
        }
        let d = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.entries[r * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &rhs.entries[k * d..(k + 1) * d];
                let out = &mut entries[r * d..(r + 1) * d];
                for (o, b) in out.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { dim: d, entries })
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// `max |(U†U − I)_{rc}|`.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.adjoint().mul(self).expect("square");
        p.max_abs_diff(&Unitary::identity(self.dim))
    }

    pub fn max_abs_diff(&self, other: &Unitary) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Distance after removing the best global phase, `min_φ max|A − e^{iφ}B|` estimated
    /// by aligning on the trace overlap.
    pub fn max_abs_diff_up_to_phase(&self, other: &Unitary) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        let overlap: Complex64 = other.entries.iter().zip(&self.entries).map(|(b, a)| b.conj() * a).sum();
        let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { Complex64::new(1.0, 0.0) };
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b * phase).norm()).fold(0.0, f64::max)
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut result = Unitary::identity(self.dim);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base).expect("square");
            }
            base = base.mul(&base).expect("square");
            n >>= 1;
        }
        result
    }
}

/// Dense unitary of `circuit` under the default qubit bound.
pub fn circuit_unitary(circuit: &Circuit) -> Result<Unitary> {
    circuit_unitary_bounded(circuit, MAX_DENSE_QUBITS)
}

/// Dense unitary of `circuit`; column `j` is the circuit applied to `|j⟩`.
pub fn circuit_unitary_bounded(circuit: &Circuit, max_qubits: usize) -> Result<Unitary> {
    let n = circuit.num_qubits();
    if n > max_qubits {
        bail!(Resource, "{n} qubits exceeds the dense bound of {max_qubits}");
    }
    circuit.validate()?;
    let dim = 1usize << n;
    if let Some(d) = circuit.diagonal_phases() {
        return Ok(Unitary::from_diagonal(&d));
    }
    let compiled = circuit.compile();
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    let mut col = vec![Complex64::new(0.0, 0.0); dim];
    for j in 0..dim {
        col.iter_mut().for_each(|a| *a = Complex64::new(0.0, 0.0));
        col[j] = Complex64::new(1.0, 0.0);
        compiled.apply(&mut col);
        for (r, a) in col.iter().enumerate() {
            entries[r * dim + j] = *a;
        }
    }
    Ok(Unitary { dim, entries })
}
