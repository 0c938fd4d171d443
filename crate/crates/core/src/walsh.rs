//! Walsh-basis expansion of diagonal operators.
//!
//! A real function on `2^n` basis states is written `f(k) = Σ_j f̂_j W_j(k)` with
//! `W_j(k) = (−1)^{popcount(j & k)}`; the term with mask `j` is the Pauli-Z string
//! on the qubits set in `j`.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{bail, Error, Result};
use crate::sim::{Circuit, GateOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    #[default]
    Linear,
    Ring,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalshTerm {
    pub mask: usize,
    pub coeff: f64,
}

/// A diagonal operator as a list of Walsh terms with distinct masks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecDoc", into = "SpecDoc")]
pub struct DiagonalSpec {
    n: usize,
    terms: Vec<WalshTerm>,
}

#[derive(Serialize, Deserialize)]
struct SpecDoc {
    n: usize,
    terms: Vec<WalshTerm>,
}

impl TryFrom<SpecDoc> for DiagonalSpec {
    type Error = Error;
    fn try_from(d: SpecDoc) -> Result<Self> {
        DiagonalSpec::new(d.n, d.terms)
    }
}

impl From<DiagonalSpec> for SpecDoc {
    fn from(s: DiagonalSpec) -> Self {
        SpecDoc { n: s.n, terms: s.terms }
    }
}

impl DiagonalSpec {
    pub fn new(n: usize, terms: Vec<WalshTerm>) -> Result<Self> {
        if n >= usize::BITS as usize {
            bail!(Argument, "{n} qubits is too many for a mask");
        }
        let mut seen: Vec<usize> = terms.iter().map(|t| t.mask).collect();
        seen.sort_unstable();
        for w in seen.windows(2) {
            if w[0] == w[1] {
                bail!(Argument, "duplicate Walsh mask {}", w[0]);
            }
        }
        if let Some(&m) = seen.last() {
            if m >> n != 0 {
                bail!(Argument, "mask {m} does not fit in {n} qubits");
            }
        }
        Ok(Self { n, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[WalshTerm] {
        &self.terms
    }

    pub fn coeff(&self, mask: usize) -> f64 {
        self.terms.iter().find(|t| t.mask == mask).map_or(0.0, |t| t.coeff)
    }

    /// Same spec without terms whose magnitude is at most `tol`.
    pub fn nonzero(&self, tol: f64) -> DiagonalSpec {
        DiagonalSpec { n: self.n, terms: self.terms.iter().copied().filter(|t| t.coeff.abs() > tol).collect() }
    }
}

/// In-place unnormalized fast Walsh–Hadamard butterfly.
fn fwht(v: &mut [f64]) {
    let mut h = 1;
    while h < v.len() {
        for block in v.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Full expansion `f̂_j = 2^{-n} Σ_k f(k) W_j(k)`, one term per mask.
pub fn walsh_transform(values: &[f64]) -> Result<DiagonalSpec> {
    let dim = values.len();
    if dim == 0 || !dim.is_power_of_two() {
        bail!(Argument, "length {dim} is not a power of two");
    }
    let mut v = values.to_vec();
    fwht(&mut v);
    let scale = 1.0 / dim as f64;
    let terms = v.iter().enumerate().map(|(mask, c)| WalshTerm { mask, coeff: c * scale }).collect();
    Ok(DiagonalSpec { n: dim.trailing_zeros() as usize, terms })
}

/// `f(k) = Σ_j f̂_j W_j(k)`; absent masks count as zero.
pub fn inverse_walsh(spec: &DiagonalSpec) -> Vec<f64> {
    let mut v = vec![0.0; 1usize << spec.n];
    for t in &spec.terms {
        v[t.mask] += t.coeff;
    }
    fwht(&mut v);
    v
}

pub fn term_order(term: &WalshTerm) -> u32 {
    term.mask.count_ones()
}

/// Qubit distance under `topology`.
pub fn qubit_distance(a: usize, b: usize, topology: Topology, n: usize) -> usize {
    let d = a.abs_diff(b);
    match topology {
        Topology::Linear => d,
        Topology::Ring => d.min(n - d),
    }
}

fn mask_locality(mask: usize, topology: Topology, n: usize) -> Result<usize> {
    match mask.count_ones() {
        0 => Ok(0),
        1 => Ok(1),
        2 => {
            let i = mask.trailing_zeros() as usize;
            let j = (usize::BITS - 1 - mask.leading_zeros()) as usize;
            Ok(qubit_distance(i, j, topology, n) + 1)
        }
        k => bail!(Unsupported, "locality is defined for orders up to 2, mask {mask} has order {k}"),
    }
}

/// 1 for single-qubit terms, distance + 1 for pairs, 0 for the identity.
pub fn term_locality(term: &WalshTerm, topology: Topology, n: usize) -> Result<usize> {
    mask_locality(term.mask, topology, n)
}

/// Keep terms with order ≤ `max_order` and locality ≤ `max_locality`.
pub fn truncate(spec: &DiagonalSpec, max_order: u32, max_locality: usize, topology: Topology) -> Result<DiagonalSpec> {
    if max_order > 2 && max_locality < spec.n {
        bail!(Unsupported, "locality filtering needs max_order ≤ 2");
    }
    let mut terms = Vec::new();
    for t in &spec.terms {
        let order = term_order(t);
        if order > max_order {
            continue;
        }
        if order <= 2 && mask_locality(t.mask, topology, spec.n)? > max_locality {
            continue;
        }
        terms.push(*t);
    }
    Ok(DiagonalSpec { n: spec.n, terms })
}

/// Masks of order 1 and 2 with locality ≤ `l`: single qubits ascending, then pairs
/// `(i, j)` in lexicographic order.
pub fn local_masks(n: usize, l: usize, topology: Topology) -> Vec<usize> {
    let mut masks: Vec<usize> = (0..n).map(|q| 1usize << q).collect();
    for i in 0..n {
        for j in i + 1..n {
            if qubit_distance(i, j, topology, n) + 1 <= l {
                masks.push((1 << i) | (1 << j));
            }
        }
    }
    masks
}

/// The two qubits of an order-2 mask, low first.
pub fn pair_of(mask: usize) -> (usize, usize) {
    let i = mask.trailing_zeros() as usize;
    let j = (usize::BITS - 1 - mask.leading_zeros()) as usize;
    (i, j)
}

/// Gate realizing `e^{−iτ c Z^{mask}}` up to the phase `e^{−iτc}`.
pub(crate) fn rotation_for(mask: usize, angle: f64) -> Option<GateOp> {
    match mask.count_ones() {
        1 => Some(GateOp::rz(mask.trailing_zeros() as usize, angle)),
        2 => {
            let (i, j) = pair_of(mask);
            Some(GateOp::zz(i, j, angle))
        }
        _ => None,
    }
}

/// `Π_j e^{−iτ f̂_j Z^{j}}` as `Rz`/`ZZ` gates with angle `2τf̂_j` plus one global phase.
pub fn diagonal_circuit(spec: &DiagonalSpec, tau: f64) -> Result<Circuit> {
    let mut c = Circuit::new(spec.n);
    let mut phase = 0.0;
    for t in &spec.terms {
        let order = term_order(t);
        if order > 2 {
            bail!(Unsupported, "cannot synthesize Walsh term of order {order} (mask {})", t.mask);
        }
        phase -= tau * t.coeff;
        if let Some(g) = rotation_for(t.mask, 2.0 * tau * t.coeff) {
            c.push(g)?;
        }
    }
    if phase != 0.0 {
        c.push(GateOp::global_phase(phase))?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::circuit_unitary;
    use core::f64::consts::PI;
    use num_complex::Complex64;

    #[test]
    fn constant_and_single_bit() {
        let s = walsh_transform(&[2.5; 8]).unwrap();
        assert_eq!(s.coeff(0), 2.5);
        assert!(s.terms().iter().filter(|t| t.mask != 0).all(|t| t.coeff == 0.0));
        let s = walsh_transform(&[0.0, 1.0]).unwrap();
        assert_eq!(s.coeff(0), 0.5);
        assert_eq!(s.coeff(1), -0.5);
        assert!(walsh_transform(&[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn squares_have_no_order_three_terms() {
        for n in 1..=8 {
            let v: Vec<f64> = (0..1usize << n).map(|k| (k * k) as f64).collect();
            let s = walsh_transform(&v).unwrap();
            assert!(s.terms().iter().filter(|t| term_order(t) >= 3).all(|t| t.coeff.abs() < 1e-9));
        }
    }

    #[test]
    fn orders_and_localities() {
        let t = |mask| WalshTerm { mask, coeff: 1.0 };
        assert_eq!(term_order(&t(0)), 0);
        assert_eq!(term_order(&t(0b101)), 2);
        assert_eq!(term_order(&t(0b1111)), 4);
        assert_eq!(term_locality(&t(0b11), Topology::Linear, 4).unwrap(), 2);
        assert_eq!(term_locality(&t(0b1000_0001), Topology::Ring, 8).unwrap(), 2);
        assert_eq!(term_locality(&t(0b1000), Topology::Linear, 8).unwrap(), 1);
        assert!(term_locality(&t(0b111), Topology::Linear, 8).is_err());
    }

    #[test]
    fn truncation_counts() {
        let full = |n: usize| walsh_transform(&(0..1usize << n).map(|k| k as f64).collect::<Vec<_>>()).unwrap();
        let pairs = |s: &DiagonalSpec| s.terms().iter().filter(|t| term_order(t) == 2).count();
        assert_eq!(pairs(&truncate(&full(8), 2, 4, Topology::Linear).unwrap()), 18);
        assert_eq!(pairs(&truncate(&full(6), 2, 4, Topology::Linear).unwrap()), 12);
        assert_eq!(pairs(&truncate(&full(6), 2, 6, Topology::Linear).unwrap()), 15);
    }

    #[test]
    fn linear_ramp_at_pi() {
        let s = walsh_transform(&[0.0, 1.0, 2.0, 3.0]).unwrap();
        let d = circuit_unitary(&diagonal_circuit(&s, PI).unwrap()).unwrap().diagonal();
        let want = [1.0, -1.0, 1.0, -1.0];
        for (a, w) in d.iter().zip(want) {
            assert!((a - Complex64::new(w, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn constant_spec_is_a_global_phase() {
        let s = DiagonalSpec::new(2, vec![WalshTerm { mask: 0, coeff: 0.3 }]).unwrap();
        let c = diagonal_circuit(&s, 2.0).unwrap();
        assert_eq!(c.ops(), &[GateOp::global_phase(-0.6)]);
    }

    #[test]
    fn rejects_duplicate_and_wide_masks() {
        let t = |mask| WalshTerm { mask, coeff: 1.0 };
        assert!(DiagonalSpec::new(2, vec![t(1), t(1)]).is_err());
        assert!(DiagonalSpec::new(2, vec![t(4)]).is_err());
        let bad = DiagonalSpec::new(3, vec![t(7)]).unwrap();
        assert!(diagonal_circuit(&bad, 1.0).is_err());
    }
}
