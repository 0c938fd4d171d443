use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::MarcusConfig;
use crate::eigen::symmetric_eigen;
use crate::error::{bail, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarcusRateParams {
    pub v_coup_sq: f64,
    pub lambda: f64,
    #[serde(rename = "kT")]
    pub kt: f64,
}

/// Classical Marcus rate `2π|V|² (4πλkT)^{−1/2} exp(−(ΔG⁰ + λ)²/4λkT)` with `ħ = 1`.
pub fn marcus_rate_theory(params: &MarcusRateParams, dg: f64) -> Result<f64> {
    let MarcusRateParams { v_coup_sq, lambda, kt } = *params;
    if !(kt > 0.0) {
        bail!(Argument, "kT must be positive, got {kt}");
    }
    if !(lambda > 0.0) {
        bail!(Argument, "reorganization energy must be positive, got {lambda}");
    }
    let s = dg + lambda;
    Ok(TAU * v_coup_sq / (4.0 * PI * lambda * kt).sqrt() * (-s * s / (4.0 * lambda * kt)).exp())
}

/// Row-major grid Hamiltonian `K + V_surface` with `K` diagonal on the centred
/// momentum grid.
pub fn surface_hamiltonian(config: &MarcusConfig, surface: usize) -> Result<Vec<f64>> {
    config.validate()?;
    let g = &config.grid;
    let n = g.points();
    let half = (n / 2) as f64;
    // Kinetic matrix elements depend only on (j − k) mod N.
    let kin: Vec<f64> = (0..n)
        .map(|d| {
            (0..n)
                .map(|m| {
                    let p = (m as f64 - half) * g.delta_p();
                    p * p / (2.0 * config.mu) * (TAU * (m as f64 - half) * d as f64 / n as f64).cos()
                })
                .sum::<f64>()
                / n as f64
        })
        .collect();
    let mut h = vec![0.0; n * n];
    for j in 0..n {
        for k in 0..n {
            h[j * n + k] = kin[(j + n - k) % n];
        }
        let x = g.delta() * j as f64;
        h[j * n + j] += if surface == 0 { config.v0(x) } else { config.v1(x) };
    }
    // Enforce exact symmetry against rounding in the cosine sums.
    for j in 0..n {
        for k in 0..j {
            let m = 0.5 * (h[j * n + k] + h[k * n + j]);
            h[j * n + k] = m;
            h[k * n + j] = m;
        }
    }
    Ok(h)
}

/// Vibronic decomposition of the reactant ground state over product eigenstates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FcSpectrum {
    /// Reactant ground-state energy.
    pub ground_energy: f64,
    /// Product eigenvalues, ascending.
    pub energies: Vec<f64>,
    /// `|⟨χ₀⁽⁰⁾|χ_v⁽¹⁾⟩|²` for each product state.
    pub factors: Vec<f64>,
    pub completeness: f64,
    /// Width of the energy-matching window.
    pub window: f64,
    /// Bound states below the grid-edge potential, reactant then product.
    pub bound_states: (usize, usize),
}

fn bound_count(values: &[f64], edge: f64) -> usize {
    values.iter().take_while(|&&e| e < edge).count()
}

/// Franck–Condon factors of the two surfaces at driving force `dg`.
///
/// The window width is the mean product level spacing around the reactant ground
/// energy. Fewer than 3 bound states on either surface is a domain error.
pub fn franck_condon(config: &MarcusConfig, dg: f64) -> Result<FcSpectrum> {
    let cfg = MarcusConfig { dg, ..config.clone() };
    let n = cfg.grid.points();
    let e0 = symmetric_eigen(&surface_hamiltonian(&cfg, 0)?, n)?;
    let e1 = symmetric_eigen(&surface_hamiltonian(&cfg, 1)?, n)?;
    let x_last = cfg.grid.delta() * (n - 1) as f64;
    let bound = (
        bound_count(&e0.values, cfg.v0(0.0).min(cfg.v0(x_last))),
        bound_count(&e1.values, cfg.v1(0.0).min(cfg.v1(x_last))),
    );
    if bound.0 < 3 || bound.1 < 3 {
        bail!(Domain, "grid resolves only {} reactant and {} product bound states", bound.0, bound.1);
    }
    let chi = e0.vector(0);
    let factors: Vec<f64> = (0..n).map(|v| e1.vector(v).iter().zip(chi).map(|(a, b)| a * b).sum::<f64>().powi(2)).collect();
    let ground = e0.values[0];
    let levels = &e1.values;
    let i = (0..n).min_by(|&a, &b| (levels[a] - ground).abs().total_cmp(&(levels[b] - ground).abs())).unwrap_or(0);
    let lo = i.saturating_sub(1);
    let hi = (i + 1).min(n - 1);
    let window = if hi > lo { (levels[hi] - levels[lo]) / (hi - lo) as f64 } else { 0.0 };
    Ok(FcSpectrum {
        ground_energy: ground,
        energies: levels.clone(),
        completeness: factors.iter().sum(),
        factors,
        window,
        bound_states: bound,
    })
}

/// Zero-temperature rate `2π|V|² Σ_v FC_v g(E_v − E₀)` with a normalized Gaussian
/// window `g`, taking `|V|²` from the peak coupling value.
pub fn fc_rate_low_temperature(config: &MarcusConfig, dg: f64) -> Result<f64> {
    let fc = franck_condon(config, dg)?;
    if !(fc.window > 0.0) {
        bail!(Numeric, "degenerate level spacing at the reactant energy");
    }
    let v = config.coupling.values(&config.grid)?.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let w = fc.window;
    let density: f64 = fc
        .energies
        .iter()
        .zip(&fc.factors)
        .map(|(e, f)| {
            let d = (e - fc.ground_energy) / w;
            f * (-0.5 * d * d).exp() / (w * TAU.sqrt())
        })
        .sum();
    Ok(TAU * v * v * density)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: MarcusRateParams = MarcusRateParams { v_coup_sq: 1e-4, lambda: 0.135, kt: 0.01 };

    #[test]
    fn peak_and_symmetry() {
        let top = marcus_rate_theory(&P, -P.lambda).unwrap();
        assert!((top - TAU * 1e-4 / (4.0 * PI * 0.135 * 0.01).sqrt()).abs() < 1e-18);
        for x in [0.01, 0.05, 0.2] {
            let a = marcus_rate_theory(&P, -P.lambda + x).unwrap();
            let b = marcus_rate_theory(&P, -P.lambda - x).unwrap();
            assert!((a - b).abs() <= 1e-15 * a);
            assert!(a < top);
        }
    }

    #[test]
    fn golden_value_at_zero_driving_force() {
        let k = marcus_rate_theory(&P, 0.0).unwrap();
        assert!((k - 0.0001650684889262985).abs() < 1e-16);
    }

    #[test]
    fn zero_temperature_is_rejected() {
        assert!(marcus_rate_theory(&MarcusRateParams { kt: 0.0, ..P }, 0.0).is_err());
    }

    #[test]
    fn kinetic_matrix_is_free_particle_on_plane_waves() {
        let cfg = MarcusConfig { a1: 1e-300, ..MarcusConfig::on_grid(crate::grid::GridSpec { n: 4, length: 20.0 }) };
        let h = surface_hamiltonian(&cfg, 0).unwrap();
        let n = 16;
        let m = 3.0;
        let psi: Vec<f64> = (0..n).map(|k| (TAU * m * k as f64 / n as f64).cos()).collect();
        let p = m * cfg.grid.delta_p();
        for j in 0..n {
            let hp: f64 = (0..n).map(|k| h[j * n + k] * psi[k]).sum();
            assert!((hp - p * p / 2.0 * psi[j]).abs() < 1e-12);
        }
    }
}
