//! Two-surface Marcus model: Trotterized dynamics, rate extraction and rate theory.
//!
//! Register layout: position qubits `0..n`, the objective qubit `n`, then the
//! comparator ancillas, then one comparator wire per interior coupling breakpoint.

mod dynamics;
mod step;
mod theory;

use alloc::vec::Vec;

#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::builders::{ancilla_count, ComparatorLayout, PiecewiseCoupling, QuadraticPhases, StepCoupling};
use crate::error::{bail, Result};
use crate::grid::GridSpec;
use crate::walsh::Topology;

pub use dynamics::{extract_rate, initial_state, rate_point, rate_scan, simulate, PopulationTrace, RateResult, DEFAULT_T_MAX, NORM_DRIFT_LIMIT};
pub use step::{build_trotter_step, compress_operators, operator_targets, CompressedOperators, OperatorTargets};
pub use theory::{fc_rate_low_temperature, franck_condon, marcus_rate_theory, surface_hamiltonian, FcSpectrum, MarcusRateParams};

/// Diabatic coupling profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CouplingSpec {
    Step(StepCoupling),
    Piecewise(PiecewiseCoupling),
}

impl CouplingSpec {
    pub fn to_piecewise(&self, grid: &GridSpec) -> Result<PiecewiseCoupling> {
        match self {
            CouplingSpec::Step(s) => s.to_piecewise(grid),
            CouplingSpec::Piecewise(p) => {
                p.validate(grid)?;
                Ok(p.clone())
            }
        }
    }

    pub fn values(&self, grid: &GridSpec) -> Result<Vec<f64>> {
        self.to_piecewise(grid)?.values(grid)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum OperatorMode {
    #[default]
    Explicit,
    Compressed { l_kinetic: usize, l_potential: usize, topology: Topology },
}

/// Marcus model in atomic units.
///
/// `V₀(x) = A1(x − L/2 − A0)²` and `V₁(x) = A1(x − L/2 + A0)² − dG`, so a positive
/// `dG` lowers the product surface.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarcusConfig {
    pub grid: GridSpec,
    pub mu: f64,
    #[serde(rename = "A1")]
    pub a1: f64,
    #[serde(rename = "A0")]
    pub a0: f64,
    #[serde(rename = "dG")]
    pub dg: f64,
    pub coupling: CouplingSpec,
    pub tau: f64,
    pub p0: f64,
    /// Packet displacement from the reactant minimum.
    pub x0_packet: f64,
    #[serde(default)]
    pub operator_mode: OperatorMode,
}

impl Default for MarcusConfig {
    fn default() -> Self {
        Self::on_grid(GridSpec { n: 8, length: 20.0 })
    }
}

impl MarcusConfig {
    /// Default parameters with the three-point step centred on `grid`.
    pub fn on_grid(grid: GridSpec) -> Self {
        MarcusConfig {
            grid,
            mu: 1.0,
            a1: 0.015,
            a0: 1.5,
            dg: 0.0,
            coupling: CouplingSpec::Step(StepCoupling::centered(&grid, 0.01, 1.0)),
            tau: 1.0,
            p0: 0.0,
            x0_packet: 0.0,
            operator_mode: OperatorMode::Explicit,
        }
    }
}

/// Wire assignment of the full simulation register.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterLayout {
    pub n: usize,
    pub objective: usize,
    pub comparators: ComparatorLayout,
    pub num_wires: usize,
}

impl RegisterLayout {
    /// Mask of the ancilla and comparator wires.
    pub fn work_mask(&self) -> usize {
        self.comparators.ancilla.iter().chain(&self.comparators.comparators).fold(0, |m, &w| m | (1 << w))
    }
}

impl MarcusConfig {
    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        if self.grid.n < 3 {
            bail!(Argument, "need at least 3 position qubits, got {}", self.grid.n);
        }
        if !(self.a1 > 0.0) {
            bail!(Argument, "A1 must be positive, got {}", self.a1);
        }
        if !(self.mu > 0.0) {
            bail!(Argument, "mass must be positive, got {}", self.mu);
        }
        for (name, v) in [("A0", self.a0), ("dG", self.dg), ("tau", self.tau), ("p0", self.p0), ("x0_packet", self.x0_packet)] {
            if !v.is_finite() {
                bail!(Argument, "{name} is not finite");
            }
        }
        if self.tau < 0.0 {
            bail!(Argument, "time step must be non-negative, got {}", self.tau);
        }
        self.coupling.to_piecewise(&self.grid)?;
        if let OperatorMode::Compressed { l_kinetic, l_potential, .. } = self.operator_mode {
            if l_kinetic == 0 || l_potential == 0 {
                bail!(Argument, "locality bounds must be at least 1");
            }
        }
        Ok(())
    }

    /// `λ = A1(2A0)²`.
    pub fn reorganization_energy(&self) -> f64 {
        self.a1 * (2.0 * self.a0) * (2.0 * self.a0)
    }

    /// `ω = √(2A1/μ)`.
    pub fn omega(&self) -> f64 {
        (2.0 * self.a1 / self.mu).sqrt()
    }

    /// Centres of the reactant and product wells.
    pub fn well_centres(&self) -> (f64, f64) {
        let c = self.grid.length / 2.0;
        (c + self.a0, c - self.a0)
    }

    pub fn v0(&self, x: f64) -> f64 {
        let d = x - self.well_centres().0;
        self.a1 * d * d
    }

    pub fn v1(&self, x: f64) -> f64 {
        let d = x - self.well_centres().1;
        self.a1 * d * d - self.dg
    }

    /// Phases of `e^{−iV₀t}` (`surface = 0`) or `e^{−iV₁t}` on the position register.
    pub fn potential_phases(&self, surface: usize, t: f64) -> QuadraticPhases {
        let (c0, c1) = self.well_centres();
        match surface {
            0 => QuadraticPhases::potential(&self.grid, self.a1, c0, 0.0, t),
            _ => QuadraticPhases::potential(&self.grid, self.a1, c1, -self.dg, t),
        }
    }

    pub fn num_pieces(&self) -> Result<usize> {
        Ok(self.coupling.to_piecewise(&self.grid)?.pieces.len())
    }

    pub fn layout(&self) -> Result<RegisterLayout> {
        let n = self.grid.n;
        let ncomp = self.num_pieces()? - 1;
        let na = ancilla_count(n);
        let num_wires = n + 1 + na + ncomp;
        let comparators = ComparatorLayout::placed(n, ncomp, n + 1, n + 1 + na, num_wires)?;
        Ok(RegisterLayout { n, objective: n, comparators, num_wires })
    }
}
