use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{bail, Error, Result};

/// A single gate acting on a register where qubit 0 is the low bit.
///
/// `MultiControlled` only ever wraps a *base* gate (`X`, `Rz`, `Rx`, `Ry`,
/// `Zz`, `GlobalPhase`); [`GateOp::controlled`] flattens `Cnot`, `Toffoli`
/// and the controlled rotations into that form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OpRecord", into = "OpRecord")]
pub enum GateOp {
    X { target: usize },
    Rz { target: usize, angle: f64 },
    Rx { target: usize, angle: f64 },
    Ry { target: usize, angle: f64 },
    Cnot { control: usize, target: usize },
    Toffoli { controls: [usize; 2], target: usize },
    Zz { qubits: [usize; 2], angle: f64 },
    ControlledRz { control: usize, target: usize, angle: f64 },
    ControlledRx { control: usize, target: usize, angle: f64 },
    GlobalPhase { angle: f64 },
    MultiControlled { gate: Box<GateOp>, controls: Vec<usize>, polarity: Vec<bool> },
}

/// Discriminant of [`GateOp`] without its operands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    X,
    Rz,
    Rx,
    Ry,
    Cnot,
    Toffoli,
    Zz,
    ControlledRz,
    ControlledRx,
    GlobalPhase,
    MultiControlled,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::Rz => "Rz",
            GateKind::Rx => "Rx",
            GateKind::Ry => "Ry",
            GateKind::Cnot => "CNOT",
            GateKind::Toffoli => "Toffoli",
            GateKind::Zz => "ZZ",
            GateKind::ControlledRz => "ControlledRz",
            GateKind::ControlledRx => "ControlledRx",
            GateKind::GlobalPhase => "GlobalPhase",
            GateKind::MultiControlled => "MultiControlled",
        }
    }
}

impl GateOp {
    pub fn x(target: usize) -> Self {
        GateOp::X { target }
    }
    pub fn rz(target: usize, angle: f64) -> Self {
        GateOp::Rz { target, angle }
    }
    pub fn rx(target: usize, angle: f64) -> Self {
        GateOp::Rx { target, angle }
    }
    pub fn ry(target: usize, angle: f64) -> Self {
        GateOp::Ry { target, angle }
    }
    pub fn cnot(control: usize, target: usize) -> Self {
        GateOp::Cnot { control, target }
    }
    pub fn toffoli(c0: usize, c1: usize, target: usize) -> Self {
        GateOp::Toffoli { controls: [c0, c1], target }
    }
    pub fn zz(a: usize, b: usize, angle: f64) -> Self {
        GateOp::Zz { qubits: [a, b], angle }
    }
    pub fn crz(control: usize, target: usize, angle: f64) -> Self {
        GateOp::ControlledRz { control, target, angle }
    }
    pub fn crx(control: usize, target: usize, angle: f64) -> Self {
        GateOp::ControlledRx { control, target, angle }
    }
    pub fn global_phase(angle: f64) -> Self {
        GateOp::GlobalPhase { angle }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            GateOp::X { .. } => GateKind::X,
            GateOp::Rz { .. } => GateKind::Rz,
            GateOp::Rx { .. } => GateKind::Rx,
            GateOp::Ry { .. } => GateKind::Ry,
            GateOp::Cnot { .. } => GateKind::Cnot,
            GateOp::Toffoli { .. } => GateKind::Toffoli,
            GateOp::Zz { .. } => GateKind::Zz,
            GateOp::ControlledRz { .. } => GateKind::ControlledRz,
            GateOp::ControlledRx { .. } => GateKind::ControlledRx,
            GateOp::GlobalPhase { .. } => GateKind::GlobalPhase,
            GateOp::MultiControlled { .. } => GateKind::MultiControlled,
        }
    }

    /// Rotation angle, if the gate carries one.
    pub fn angle(&self) -> Option<f64> {
        match self {
            GateOp::Rz { angle, .. }
            | GateOp::Rx { angle, .. }
            | GateOp::Ry { angle, .. }
            | GateOp::Zz { angle, .. }
            | GateOp::ControlledRz { angle, .. }
            | GateOp::ControlledRx { angle, .. }
            | GateOp::GlobalPhase { angle } => Some(*angle),
            GateOp::MultiControlled { gate, .. } => gate.angle(),
            _ => None,
        }
    }

    /// Same gate with its angle replaced. Gates without an angle are returned unchanged.
    pub fn with_angle(&self, new: f64) -> Self {
        let mut g = self.clone();
        match &mut g {
            GateOp::Rz { angle, .. }
            | GateOp::Rx { angle, .. }
            | GateOp::Ry { angle, .. }
            | GateOp::Zz { angle, .. }
            | GateOp::ControlledRz { angle, .. }
            | GateOp::ControlledRx { angle, .. }
            | GateOp::GlobalPhase { angle } => *angle = new,
            GateOp::MultiControlled { gate, .. } => **gate = gate.with_angle(new),
            _ => {}
        }
        g
    }

    /// Qubits the gate acts on non-trivially as a target (controls excluded).
    pub fn targets(&self) -> Vec<usize> {
        match self {
            GateOp::X { target }
            | GateOp::Rz { target, .. }
            | GateOp::Rx { target, .. }
            | GateOp::Ry { target, .. }
            | GateOp::Cnot { target, .. }
            | GateOp::Toffoli { target, .. }
            | GateOp::ControlledRz { target, .. }
            | GateOp::ControlledRx { target, .. } => vec![*target],
            GateOp::Zz { qubits, .. } => qubits.to_vec(),
            GateOp::GlobalPhase { .. } => Vec::new(),
            GateOp::MultiControlled { gate, .. } => gate.targets(),
        }
    }

    /// Control qubits together with the basis value each one must hold.
    pub fn controls(&self) -> Vec<(usize, bool)> {
        match self {
            GateOp::Cnot { control, .. }
            | GateOp::ControlledRz { control, .. }
            | GateOp::ControlledRx { control, .. } => vec![(*control, true)],
            GateOp::Toffoli { controls, .. } => vec![(controls[0], true), (controls[1], true)],
            GateOp::MultiControlled { gate, controls, polarity } => {
                let mut all: Vec<(usize, bool)> = controls.iter().copied().zip(polarity.iter().copied()).collect();
                all.extend(gate.controls());
                all
            }
            _ => Vec::new(),
        }
    }

    /// Every qubit touched by the gate, controls first.
    pub fn qubits(&self) -> Vec<usize> {
        let mut q: Vec<usize> = self.controls().into_iter().map(|(c, _)| c).collect();
        q.extend(self.targets());
        q
    }

    /// True when the gate is diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        match self {
            GateOp::Rz { .. } | GateOp::Zz { .. } | GateOp::ControlledRz { .. } | GateOp::GlobalPhase { .. } => true,
            GateOp::MultiControlled { gate, .. } => gate.is_diagonal(),
            _ => false,
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            GateOp::X { .. } | GateOp::Cnot { .. } | GateOp::Toffoli { .. } => self.clone(),
            GateOp::MultiControlled { gate, controls, polarity } => GateOp::MultiControlled {
                gate: Box::new(gate.inverse()),
                controls: controls.clone(),
                polarity: polarity.clone(),
            },
            other => other.with_angle(-other.angle().unwrap_or(0.0)),
        }
    }

    /// Wrap the gate so that it fires only when `control` holds `polarity`.
    pub fn controlled(&self, control: usize, polarity: bool) -> Self {
        let (base, mut controls, mut pol) = self.flatten();
        controls.insert(0, control);
        pol.insert(0, polarity);
        GateOp::MultiControlled { gate: Box::new(base), controls, polarity: pol }
    }

    /// Split into a base gate plus its controls.
    pub fn flatten(&self) -> (GateOp, Vec<usize>, Vec<bool>) {
        match self {
            GateOp::Cnot { control, target } => (GateOp::x(*target), vec![*control], vec![true]),
            GateOp::Toffoli { controls, target } => (GateOp::x(*target), controls.to_vec(), vec![true, true]),
            GateOp::ControlledRz { control, target, angle } => (GateOp::rz(*target, *angle), vec![*control], vec![true]),
            GateOp::ControlledRx { control, target, angle } => (GateOp::rx(*target, *angle), vec![*control], vec![true]),
            GateOp::MultiControlled { gate, controls, polarity } => {
                let (base, mut c, mut p) = gate.flatten();
                let mut cs = controls.clone();
                let mut ps = polarity.clone();
                cs.append(&mut c);
                ps.append(&mut p);
                (base, cs, ps)
            }
            base => (base.clone(), Vec::new(), Vec::new()),
        }
    }

    /// Relabel every qubit index through `f`.
    pub fn map_qubits(&self, f: &impl Fn(usize) -> usize) -> Self {
        match self {
            GateOp::X { target } => GateOp::X { target: f(*target) },
            GateOp::Rz { target, angle } => GateOp::Rz { target: f(*target), angle: *angle },
            GateOp::Rx { target, angle } => GateOp::Rx { target: f(*target), angle: *angle },
            GateOp::Ry { target, angle } => GateOp::Ry { target: f(*target), angle: *angle },
            GateOp::Cnot { control, target } => GateOp::Cnot { control: f(*control), target: f(*target) },
            GateOp::Toffoli { controls, target } => {
                GateOp::Toffoli { controls: [f(controls[0]), f(controls[1])], target: f(*target) }
            }
            GateOp::Zz { qubits, angle } => GateOp::Zz { qubits: [f(qubits[0]), f(qubits[1])], angle: *angle },
            GateOp::ControlledRz { control, target, angle } => {
                GateOp::ControlledRz { control: f(*control), target: f(*target), angle: *angle }
            }
            GateOp::ControlledRx { control, target, angle } => {
                GateOp::ControlledRx { control: f(*control), target: f(*target), angle: *angle }
            }
            GateOp::GlobalPhase { angle } => GateOp::GlobalPhase { angle: *angle },
            GateOp::MultiControlled { gate, controls, polarity } => GateOp::MultiControlled {
                gate: Box::new(gate.map_qubits(f)),
                controls: controls.iter().map(|&c| f(c)).collect(),
                polarity: polarity.clone(),
            },
        }
    }

    /// Check the gate against a register of `num_qubits` qubits.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        if let GateOp::MultiControlled { gate, controls, polarity } = self {
            if controls.len() != polarity.len() {
                bail!(Argument, "{} controls but {} polarities", controls.len(), polarity.len());
            }
            if matches!(**gate, GateOp::MultiControlled { .. }) {
                bail!(Argument, "nested MultiControlled gate; flatten it first");
            }
        }
        let qs = self.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= num_qubits {
                bail!(Argument, "qubit {q} out of range for a {num_qubits}-qubit register");
            }
            if qs[..i].contains(&q) {
                bail!(Argument, "qubit {q} used twice in {}", self.kind().name());
            }
        }
        if let Some(a) = self.angle() {
            if !a.is_finite() {
                bail!(Argument, "non-finite angle in {}", self.kind().name());
            }
        }
        Ok(())
    }
}

/// Flat serialized form: `{kind, targets, controls, polarities, angle}`.
///
/// Multi-controlled gates serialize as their base kind with a non-empty
/// `controls` list; `CNOT`, `Toffoli`, `ControlledRz` and `ControlledRx` keep
/// their own kind and list their native controls.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpRecord {
    pub kind: String,
    #[serde(default)]
    pub targets: Vec<usize>,
    #[serde(default)]
    pub controls: Vec<usize>,
    #[serde(default)]
    pub polarities: Vec<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
}

impl From<GateOp> for OpRecord {
    fn from(op: GateOp) -> Self {
        let kind = op.kind();
        match op {
            GateOp::MultiControlled { gate, controls, polarity } => {
                let mut rec = OpRecord::from(*gate);
                rec.controls = controls;
                rec.polarities = polarity;
                rec
            }
            other => {
                let ctrl = other.controls();
                OpRecord {
                    kind: kind.name().to_string(),
                    targets: other.targets(),
                    controls: ctrl.iter().map(|c| c.0).collect(),
                    polarities: ctrl.iter().map(|c| c.1).collect(),
                    angle: other.angle(),
                }
            }
        }
    }
}

impl TryFrom<OpRecord> for GateOp {
    type Error = Error;

    fn try_from(rec: OpRecord) -> Result<Self> {
        let need = |n: usize| -> Result<()> {
            if rec.targets.len() != n {
                bail!(Argument, "{} expects {n} targets, got {}", rec.kind, rec.targets.len());
            }
            Ok(())
        };
        let angle = || rec.angle.ok_or_else(|| Error::Argument(alloc::format!("{} requires an angle", rec.kind)));
        let native_controls = |n: usize| -> Result<()> {
            if rec.controls.len() != n || !(rec.polarities.is_empty() || rec.polarities.iter().all(|&p| p)) {
                bail!(Argument, "{} expects {n} positive controls", rec.kind);
            }
            Ok(())
        };
        let base = match rec.kind.as_str() {
            "X" => {
                need(1)?;
                GateOp::x(rec.targets[0])
            }
            "Rz" => {
                need(1)?;
                GateOp::rz(rec.targets[0], angle()?)
            }
            "Rx" => {
                need(1)?;
                GateOp::rx(rec.targets[0], angle()?)
            }
            "Ry" => {
                need(1)?;
                GateOp::ry(rec.targets[0], angle()?)
            }
            "ZZ" => {
                need(2)?;
                GateOp::zz(rec.targets[0], rec.targets[1], angle()?)
            }
            "GlobalPhase" => {
                need(0)?;
                GateOp::global_phase(angle()?)
            }
            "CNOT" => {
                need(1)?;
                native_controls(1)?;
                return Ok(GateOp::cnot(rec.controls[0], rec.targets[0]));
            }
            "Toffoli" => {
                need(1)?;
                native_controls(2)?;
                return Ok(GateOp::toffoli(rec.controls[0], rec.controls[1], rec.targets[0]));
            }
            "ControlledRz" => {
                need(1)?;
                native_controls(1)?;
                return Ok(GateOp::crz(rec.controls[0], rec.targets[0], angle()?));
            }
            "ControlledRx" => {
                need(1)?;
                native_controls(1)?;
                return Ok(GateOp::crx(rec.controls[0], rec.targets[0], angle()?));
            }
            other => bail!(Argument, "unknown gate kind {other:?}"),
        };
        if rec.controls.is_empty() {
            return Ok(base);
        }
        let polarity = if rec.polarities.is_empty() { vec![true; rec.controls.len()] } else { rec.polarities };
        if polarity.len() != rec.controls.len() {
            bail!(Argument, "controls and polarities differ in length");
        }
        Ok(GateOp::MultiControlled { gate: Box::new(base), controls: rec.controls, polarity })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_rejects_repeated_and_out_of_range_qubits() {
        assert!(GateOp::cnot(1, 1).validate(3).is_err());
        assert!(GateOp::x(3).validate(3).is_err());
        assert!(GateOp::toffoli(0, 1, 2).validate(3).is_ok());
        let bad = GateOp::MultiControlled { gate: Box::new(GateOp::x(0)), controls: vec![1, 2], polarity: vec![true] };
        assert!(bad.validate(3).is_err());
    }

    #[test]
    fn controlled_flattens_native_controls() {
        let g = GateOp::toffoli(0, 1, 2).controlled(3, false);
        let (base, c, p) = g.flatten();
        assert_eq!(base, GateOp::x(2));
        assert_eq!(c, vec![3, 0, 1]);
        assert_eq!(p, vec![false, true, true]);
    }

    #[test]
    fn record_distinguishes_cnot_from_controlled_x() {
        let native = OpRecord::from(GateOp::cnot(0, 1));
        assert_eq!(native.kind, "CNOT");
        let wrapped = OpRecord::from(GateOp::x(1).controlled(0, true));
        assert_eq!(wrapped.kind, "X");
        assert_eq!(GateOp::try_from(wrapped).unwrap(), GateOp::x(1).controlled(0, true));
        assert_eq!(GateOp::try_from(native).unwrap(), GateOp::cnot(0, 1));
    }
}
