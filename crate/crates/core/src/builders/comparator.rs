//! Log-ancilla comparators on the position register.
//!
//! `k > t` is evaluated along the chain `G_i = k_i ∧ G_{i−1}` (when `t_i = 1`) or
//! `G_i = k_i ∨ G_{i−1}` (when `t_i = 0`), which starts at the lowest zero bit `z` of
//! `t` with `G_z = k_z`. Intermediate `G_i` live on ancilla wires scheduled by a
//! reversible pebble game, so `⌈log₂ n⌉` ancillas cover any chain length.
//! `k < t` is the same test on the one's complement of both operands.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::sim::{Circuit, GateOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Less,
    Greater,
}

/// Ancilla needed for an `n`-qubit comparator: `⌈log₂ n⌉`, at least 1.
pub fn ancilla_count(n: usize) -> usize {
    if n <= 3 {
        1
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Wire map for position qubits `0..n`, ancilla and comparator wires.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparatorLayout {
    pub n: usize,
    pub ancilla: Vec<usize>,
    pub comparators: Vec<usize>,
    pub num_wires: usize,
}

impl ComparatorLayout {
    /// Stand-alone register: position, then ancilla, then comparators.
    pub fn new(n: usize, num_comparators: usize) -> Self {
        let na = ancilla_count(n);
        ComparatorLayout {
            n,
            ancilla: (n..n + na).collect(),
            comparators: (n + na..n + na + num_comparators).collect(),
            num_wires: n + na + num_comparators,
        }
    }

    /// Layout inside a wider register with ancilla and comparators starting at the given wires.
    pub fn placed(n: usize, num_comparators: usize, ancilla_start: usize, comparator_start: usize, num_wires: usize) -> Result<Self> {
        let na = ancilla_count(n);
        let l = ComparatorLayout {
            n,
            ancilla: (ancilla_start..ancilla_start + na).collect(),
            comparators: (comparator_start..comparator_start + num_comparators).collect(),
            num_wires,
        };
        l.validate()?;
        Ok(l)
    }

    pub fn num_ancilla(&self) -> usize {
        self.ancilla.len()
    }

    pub fn num_comparators(&self) -> usize {
        self.comparators.len()
    }

    pub fn validate(&self) -> Result<()> {
        let mut all: Vec<usize> = (0..self.n).chain(self.ancilla.iter().copied()).chain(self.comparators.iter().copied()).collect();
        if all.iter().any(|&w| w >= self.num_wires) {
            bail!(Argument, "layout wire outside a {}-wire register", self.num_wires);
        }
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            bail!(Argument, "layout wires overlap");
        }
        Ok(())
    }
}

/// A comparator split into the part that sets the comparator wire and the part that
/// clears the ancilla.
#[derive(Clone, Debug)]
pub struct ComparatorParts {
    pub compute: Circuit,
    pub cleanup: Circuit,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Event {
    Compute(usize),
    Uncompute(usize),
}

fn max_reach(p: usize) -> usize {
    (1usize << p) - 1
}

fn reversed(events: &[Event]) -> Vec<Event> {
    events
        .iter()
        .rev()
        .map(|e| match *e {
            Event::Compute(i) => Event::Uncompute(i),
            Event::Uncompute(i) => Event::Compute(i),
        })
        .collect()
}

/// Pebble node `from + d` starting from a pebbled `from`, holding at most `p` pebbles.
fn reach(from: usize, d: usize, p: usize, out: &mut Vec<Event>) {
    if d == 0 {
        return;
    }
    let a = d.min(max_reach(p - 1) + 1);
    let mut first = Vec::new();
    reach(from, a - 1, p - 1, &mut first);
    out.extend_from_slice(&first);
    out.push(Event::Compute(from + a));
    out.extend(reversed(&first));
    reach(from + a, d - a, p - 1, out);
}

/// `target ^= a ∧ b` when `and`, otherwise `target ^= a ∨ b`.
fn logic(c: &mut Circuit, a: usize, b: usize, target: usize, and: bool) -> Result<()> {
    if and {
        return c.push(GateOp::toffoli(a, b, target));
    }
    c.push(GateOp::x(a))?;
    c.push(GateOp::x(b))?;
    c.push(GateOp::toffoli(a, b, target))?;
    c.push(GateOp::x(target))?;
    c.push(GateOp::x(a))?;
    c.push(GateOp::x(b))
}

/// Comparator split into compute and cleanup blocks.
///
/// After `compute`, the comparator wire holds the truth value and the ancilla may be
/// dirty; `cleanup` restores the ancilla without touching the comparator.
pub fn comparator_parts(layout: &ComparatorLayout, threshold: usize, relation: Relation, target: usize) -> Result<ComparatorParts> {
    layout.validate()?;
    let n = layout.n;
    let dim = 1usize << n;
    if threshold >= dim {
        bail!(Argument, "threshold {threshold} outside 0..{dim}");
    }
    if !layout.comparators.contains(&target) {
        bail!(Argument, "wire {target} is not a comparator wire");
    }
    let mut compute = Circuit::new(layout.num_wires);
    let mut cleanup = Circuit::new(layout.num_wires);
    let t = match relation {
        Relation::Greater => {
            if threshold == dim - 1 {
                return Ok(ComparatorParts { compute, cleanup });
            }
            threshold
        }
        Relation::Less => {
            if threshold == 0 {
                return Ok(ComparatorParts { compute, cleanup });
            }
            dim - 1 - threshold
        }
    };
    let z = (!t).trailing_zeros() as usize;
    let depth = n - 1 - z;
    let flip: Vec<usize> = if relation == Relation::Less { (z..n).collect() } else { Vec::new() };
    let flip_all = |c: &mut Circuit| -> Result<()> {
        for &q in &flip {
            c.push(GateOp::x(q))?;
        }
        Ok(())
    };

    if depth == 0 {
        flip_all(&mut compute)?;
        compute.push(GateOp::cnot(z, target))?;
        flip_all(&mut compute)?;
        return Ok(ComparatorParts { compute, cleanup });
    }

    // Chain nodes 1..depth-1 need pebbles; node `depth` goes straight into `target`.
    let inner = depth - 1;
    let pebbles = layout.num_ancilla();
    if inner > max_reach(pebbles) {
        bail!(Resource, "{pebbles} ancilla cannot hold a comparator chain of length {inner}");
    }
    let mut events = Vec::new();
    reach(0, inner, pebbles, &mut events);

    let bit = |r: usize| (t >> (z + r)) & 1 == 1;
    let mut wire_of: Vec<Option<usize>> = alloc::vec![None; depth + 1];
    wire_of[0] = Some(z);
    let mut free: Vec<bool> = alloc::vec![true; pebbles];
    let mut emit = |c: &mut Circuit, e: Event, wire_of: &mut Vec<Option<usize>>| -> Result<()> {
        match e {
            Event::Compute(r) => {
                let slot = free.iter().position(|f| *f).expect("pebble budget checked");
                free[slot] = false;
                let w = layout.ancilla[slot];
                wire_of[r] = Some(w);
                logic(c, wire_of[r - 1].expect("predecessor pebbled"), z + r, w, bit(r))
            }
            Event::Uncompute(r) => {
                let w = wire_of[r].take().expect("node pebbled");
                let slot = layout.ancilla.iter().position(|&a| a == w).expect("ancilla wire");
                free[slot] = true;
                logic(c, wire_of[r - 1].expect("predecessor pebbled"), z + r, w, bit(r))
            }
        }
    };

    flip_all(&mut compute)?;
    for &e in &events {
        emit(&mut compute, e, &mut wire_of)?;
    }
    logic(&mut compute, wire_of[inner].expect("last inner node pebbled"), z + depth, target, bit(depth))?;
    flip_all(&mut compute)?;

    flip_all(&mut cleanup)?;
    for e in reversed(&events) {
        emit(&mut cleanup, e, &mut wire_of)?;
    }
    flip_all(&mut cleanup)?;
    Ok(ComparatorParts { compute, cleanup })
}

/// Flip `target` iff the position register satisfies `k <relation> threshold`,
/// leaving every ancilla clean.
pub fn comparator_circuit(layout: &ComparatorLayout, threshold: usize, relation: Relation, target: usize) -> Result<Circuit> {
    let parts = comparator_parts(layout, threshold, relation, target)?;
    let mut c = parts.compute;
    c.append(&parts.cleanup)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::StateVector;

    fn run(c: &Circuit, input: usize) -> usize {
        let mut s = StateVector::basis(c.num_qubits(), input).unwrap();
        s.apply_circuit(c).unwrap();
        let (idx, amp) = s.amplitudes().iter().enumerate().max_by(|a, b| a.1.norm().total_cmp(&b.1.norm())).unwrap();
        assert!((amp.norm() - 1.0).abs() < 1e-12);
        idx
    }

    #[test]
    fn ancilla_budget() {
        assert_eq!(ancilla_count(2), 1);
        assert_eq!(ancilla_count(3), 1);
        assert_eq!(ancilla_count(4), 2);
        assert_eq!(ancilla_count(5), 3);
        assert_eq!(ancilla_count(8), 3);
        assert_eq!(ancilla_count(9), 4);
    }

    #[test]
    fn greater_than_three_is_one_cnot() {
        let layout = ComparatorLayout::new(3, 1);
        let c = comparator_circuit(&layout, 3, Relation::Greater, layout.comparators[0]).unwrap();
        assert_eq!(c.ops(), &[GateOp::cnot(2, layout.comparators[0])]);
    }

    #[test]
    fn exhaustive_small_registers() {
        for n in 1..=5 {
            let layout = ComparatorLayout::new(n, 1);
            let cw = layout.comparators[0];
            for t in 0..1usize << n {
                for rel in [Relation::Less, Relation::Greater] {
                    let Ok(c) = comparator_circuit(&layout, t, rel, cw) else {
                        assert!(rel == Relation::Greater && t == (1 << n) - 1);
                        continue;
                    };
                    for k in 0..1usize << n {
                        let want = match rel {
                            Relation::Less => k < t,
                            Relation::Greater => k > t,
                        };
                        assert_eq!(run(&c, k), k | (usize::from(want) << cw), "n={n} t={t} {rel:?} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn deferred_cleanup_keeps_comparator() {
        let layout = ComparatorLayout::new(6, 1);
        let cw = layout.comparators[0];
        let parts = comparator_parts(&layout, 21, Relation::Greater, cw).unwrap();
        let mut full = parts.compute.clone();
        full.append(&parts.cleanup).unwrap();
        for k in 0..64 {
            assert_eq!(run(&full, k), k | (usize::from(k > 21) << cw));
        }
    }
}
