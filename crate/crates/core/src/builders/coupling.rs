use alloc::vec::Vec;

#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::comparator::{comparator_circuit, ComparatorLayout, Relation};
use crate::error::{bail, Result};
use crate::grid::GridSpec;
use crate::sim::{Circuit, GateOp};

/// Piecewise-linear coupling `α_i x + β_i` on `[b_{i−1}, b_i)` in basis-index units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseCoupling {
    /// `(α_i, β_i)` per piece.
    pub pieces: Vec<(f64, f64)>,
    /// Interior breakpoints, one fewer than the pieces.
    pub breakpoints: Vec<usize>,
}

/// Gaussian `C0·e^{−β(x−a)²}` replaced by a flat step over an index window.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepCoupling {
    #[serde(rename = "C0")]
    pub c0: f64,
    pub beta: f64,
    pub a: f64,
    /// Inclusive index window `[lo, hi]`.
    pub span: (usize, usize),
}

impl StepCoupling {
    /// Three-state window centered on the middle of the grid.
    pub fn centered(grid: &GridSpec, c0: f64, beta: f64) -> Self {
        let mid = grid.points() / 2;
        StepCoupling { c0, beta, a: grid.length / 2.0, span: (mid - 1, mid + 1) }
    }

    /// `∫ C0 e^{−β(x−a)²} dx = C0 √(π/β)`.
    pub fn area(&self) -> f64 {
        self.c0 * (core::f64::consts::PI / self.beta).sqrt()
    }

    pub fn width(&self) -> usize {
        self.span.1 + 1 - self.span.0
    }

    /// Height that preserves the Gaussian area over the window.
    pub fn height(&self, grid: &GridSpec) -> f64 {
        self.area() / (self.width() as f64 * grid.delta())
    }

    pub fn validate(&self, grid: &GridSpec) -> Result<()> {
        if self.span.0 > self.span.1 || self.span.1 >= grid.points() {
            bail!(Argument, "window {:?} is not inside 0..{}", self.span, grid.points());
        }
        if !(self.beta > 0.0) || !self.c0.is_finite() {
            bail!(Argument, "need β > 0 and finite C0");
        }
        Ok(())
    }

    /// The equivalent piecewise description (zero outside the window).
    pub fn to_piecewise(&self, grid: &GridSpec) -> Result<PiecewiseCoupling> {
        self.validate(grid)?;
        let h = self.height(grid);
        let (lo, hi) = self.span;
        let mut pieces = Vec::new();
        let mut breakpoints = Vec::new();
        if lo > 0 {
            pieces.push((0.0, 0.0));
            breakpoints.push(lo);
        }
        pieces.push((0.0, h));
        if hi + 1 < grid.points() {
            breakpoints.push(hi + 1);
            pieces.push((0.0, 0.0));
        }
        Ok(PiecewiseCoupling { pieces, breakpoints })
    }

    /// Coupling value at every grid index.
    pub fn values(&self, grid: &GridSpec) -> Result<Vec<f64>> {
        self.to_piecewise(grid)?.values(grid)
    }
}

impl PiecewiseCoupling {
    pub fn validate(&self, grid: &GridSpec) -> Result<()> {
        if self.pieces.is_empty() || self.breakpoints.len() + 1 != self.pieces.len() {
            bail!(Argument, "{} pieces need {} breakpoints, got {}", self.pieces.len(), self.pieces.len().saturating_sub(1), self.breakpoints.len());
        }
        let mut prev = 0;
        for &b in &self.breakpoints {
            if b <= prev || b >= grid.points() {
                bail!(Argument, "breakpoints must increase strictly inside 1..{}", grid.points());
            }
            prev = b;
        }
        if self.pieces.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
            bail!(Argument, "non-finite piece coefficient");
        }
        Ok(())
    }

    pub fn piece_of(&self, k: usize) -> usize {
        self.breakpoints.iter().take_while(|&&b| k >= b).count()
    }

    pub fn values(&self, grid: &GridSpec) -> Result<Vec<f64>> {
        self.validate(grid)?;
        Ok((0..grid.points())
            .map(|k| {
                let (a, b) = self.pieces[self.piece_of(k)];
                a * grid.delta() * k as f64 + b
            })
            .collect())
    }
}

/// `e^{−iτ f(x) σ_x}` on `objective`, with piece selection by comparators.
///
/// Comparator `i` holds `k < b_i`; piece `i` is active when comparator `i−1` is 0
/// and comparator `i` is 1.
pub fn piecewise_coupling_circuit(
    grid: &GridSpec,
    coupling: &PiecewiseCoupling,
    layout: &ComparatorLayout,
    tau: f64,
    objective: usize,
) -> Result<Circuit> {
    coupling.validate(grid)?;
    if layout.n != grid.n {
        bail!(Argument, "layout is for {} qubits, grid has {}", layout.n, grid.n);
    }
    if layout.num_comparators() < coupling.breakpoints.len() {
        bail!(Argument, "{} pieces need {} comparator wires", coupling.pieces.len(), coupling.breakpoints.len());
    }
    let cw = &layout.comparators;
    if objective >= layout.num_wires || objective < grid.n || layout.ancilla.contains(&objective) || cw.contains(&objective) {
        bail!(Argument, "objective wire {objective} collides with the layout");
    }
    let mut compare = Circuit::new(layout.num_wires);
    for (i, &b) in coupling.breakpoints.iter().enumerate() {
        compare.append(&comparator_circuit(layout, b, Relation::Less, cw[i])?)?;
    }
    let mut c = compare.clone();
    let last = coupling.pieces.len() - 1;
    for (i, &(alpha, beta)) in coupling.pieces.iter().enumerate() {
        let mut controls = Vec::new();
        let mut polarity = Vec::new();
        if i < last {
            controls.push(cw[i]);
            polarity.push(true);
        }
        if i > 0 {
            controls.push(cw[i - 1]);
            polarity.push(false);
        }
        let gate = |g: GateOp, extra: Option<usize>| -> GateOp {
            let mut ctl = controls.clone();
            let mut pol = polarity.clone();
            if let Some(q) = extra {
                ctl.push(q);
                pol.push(true);
            }
            if ctl.is_empty() {
                g
            } else {
                GateOp::MultiControlled { gate: alloc::boxed::Box::new(g), controls: ctl, polarity: pol }
            }
        };
        if beta != 0.0 {
            c.push(gate(GateOp::rx(objective, 2.0 * tau * beta), None))?;
        }
        if alpha != 0.0 {
            for j in 0..grid.n {
                let angle = 2.0 * tau * alpha * grid.delta() * (1u64 << j) as f64;
                c.push(gate(GateOp::rx(objective, angle), Some(j)))?;
            }
        }
    }
    c.append(&compare.inverse())?;
    Ok(c)
}

/// Area-preserving step coupling applied for time `τ`.
pub fn step_coupling_circuit(
    grid: &GridSpec,
    step: &StepCoupling,
    layout: &ComparatorLayout,
    tau: f64,
    objective: usize,
) -> Result<Circuit> {
    piecewise_coupling_circuit(grid, &step.to_piecewise(grid)?, layout, tau, objective)
}
