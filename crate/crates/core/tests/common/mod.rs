//! Brute-force dense references shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use vffcomp_core::marcus::MarcusConfig;
use vffcomp_core::sim::{Circuit, StateVector};
use vffcomp_core::Complex64;

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `e^{−iHt}` for Hermitian `h` by eigendecomposition.
pub fn expm_herm(h: &CMat, t: f64) -> CMat {
    let eig = h.clone().symmetric_eigen();
    let phases = DVector::from_iterator(eig.eigenvalues.len(), eig.eigenvalues.iter().map(|e| Complex64::cis(-e * t)));
    &eig.eigenvectors * CMat::from_diagonal(&phases) * eig.eigenvectors.adjoint()
}

/// Unitary DFT onto the centred momentum slots `m − N/2`.
pub fn centred_dft(n_points: usize) -> CMat {
    let half = (n_points / 2) as f64;
    let norm = (n_points as f64).sqrt();
    CMat::from_fn(n_points, n_points, |m, k| Complex64::cis(-TAU * (m as f64 - half) * k as f64 / n_points as f64) / norm)
}

/// Position-basis `p²/2μ` built as `F† diag(p²/2μ) F`.
pub fn kinetic_matrix(cfg: &MarcusConfig) -> CMat {
    let n = cfg.grid.points();
    let f = centred_dft(n);
    let half = (n / 2) as f64;
    let dp = TAU / cfg.grid.length;
    let diag = DVector::from_iterator(n, (0..n).map(|m| c(((m as f64 - half) * dp).powi(2) / (2.0 * cfg.mu))));
    f.adjoint() * CMat::from_diagonal(&diag) * f
}

pub fn grid_x(cfg: &MarcusConfig, k: usize) -> f64 {
    k as f64 * cfg.grid.length / cfg.grid.points() as f64
}

/// Two-surface model on index `surface·N + k`: kinetic, diabatic diagonal, coupling.
pub struct DenseModel {
    pub kinetic: CMat,
    pub diabatic: CMat,
    pub coupling: CMat,
}

pub fn dense_model(cfg: &MarcusConfig) -> DenseModel {
    let n = cfg.grid.points();
    let t = kinetic_matrix(cfg);
    let mut kinetic = CMat::zeros(2 * n, 2 * n);
    kinetic.view_mut((0, 0), (n, n)).copy_from(&t);
    kinetic.view_mut((n, n), (n, n)).copy_from(&t);
    let c_mid = cfg.grid.length / 2.0;
    let mut diabatic = CMat::zeros(2 * n, 2 * n);
    for k in 0..n {
        let x = grid_x(cfg, k);
        diabatic[(k, k)] = c(cfg.a1 * (x - c_mid - cfg.a0).powi(2));
        diabatic[(n + k, n + k)] = c(cfg.a1 * (x - c_mid + cfg.a0).powi(2) - cfg.dg);
    }
    let values = cfg.coupling.values(&cfg.grid).unwrap();
    let mut coupling = CMat::zeros(2 * n, 2 * n);
    for k in 0..n {
        coupling[(k, n + k)] = c(values[k]);
        coupling[(n + k, k)] = c(values[k]);
    }
    DenseModel { kinetic, diabatic, coupling }
}

/// Symmetric splitting `K(τ/2) V(τ/2) C(τ) V(τ/2) K(τ/2)`.
pub fn split_step(m: &DenseModel, tau: f64) -> CMat {
    let k = expm_herm(&m.kinetic, tau / 2.0);
    let v = expm_herm(&m.diabatic, tau / 2.0);
    let cp = expm_herm(&m.coupling, tau);
    &k * &v * cp * &v * &k
}

pub fn exact_step(m: &DenseModel, tau: f64) -> CMat {
    expm_herm(&(&m.kinetic + &m.diabatic + &m.coupling), tau)
}

/// Circuit action restricted to inputs in `0..sub_dim` and the largest amplitude that
/// leaves that block.
pub fn restricted(circuit: &Circuit, sub_dim: usize) -> (CMat, f64) {
    let compiled = circuit.compile();
    let mut out = CMat::zeros(sub_dim, sub_dim);
    let mut leak = 0.0f64;
    for j in 0..sub_dim {
        let mut s = StateVector::basis(circuit.num_qubits(), j).unwrap();
        compiled.apply_state(&mut s).unwrap();
        for (i, a) in s.amplitudes().iter().enumerate() {
            if i < sub_dim {
                out[(i, j)] = *a;
            } else {
                leak = leak.max(a.norm());
            }
        }
    }
    (out, leak)
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Evaluate an X/CNOT/Toffoli-only circuit on a classical bit string.
pub fn classical_run(circuit: &Circuit, mut bits: u64) -> u64 {
    for op in circuit.ops() {
        let (base, controls, polarity) = op.flatten();
        let target = match base {
            vffcomp_core::sim::GateOp::X { target } => target,
            other => panic!("non-classical gate {other:?}"),
        };
        if controls.iter().zip(&polarity).all(|(&q, &p)| ((bits >> q) & 1 == 1) == p) {
            bits ^= 1 << target;
        }
    }
    bits
}
