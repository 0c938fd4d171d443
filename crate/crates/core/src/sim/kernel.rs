//! Precompiled gate kernels acting on raw amplitude slices.

use num_complex::Complex64;
#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;

use super::gate::GateOp;

#[derive(Clone, Copy, Debug)]
pub(crate) enum Kernel {
    /// Swap amplitudes across the target bit.
    Flip { bit: usize },
    /// Multiply by `phase` where the parity of `mask` bits equals `odd`.
    Phase { mask: usize, odd: bool, phase: Complex64 },
    /// General 2×2 unitary `[m00, m01, m10, m11]` on one target bit.
    Mat2 { bit: usize, m: [Complex64; 4] },
}

/// A gate lowered to a kernel plus a control condition `(i & cmask) == cval`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct CompiledOp {
    pub kernel: Kernel,
    pub cmask: usize,
    pub cval: usize,
}

pub(crate) fn compile(op: &GateOp) -> CompiledOp {
    let (base, controls, polarity) = op.flatten();
    let mut cmask = 0usize;
    let mut cval = 0usize;
    for (c, p) in controls.iter().zip(polarity.iter()) {
        cmask |= 1 << c;
        if *p {
            cval |= 1 << c;
        }
    }
    let kernel = match base {
        GateOp::X { target } => Kernel::Flip { bit: 1 << target },
        GateOp::Rz { target, angle } => Kernel::Phase { mask: 1 << target, odd: true, phase: Complex64::cis(angle) },
        GateOp::Zz { qubits, angle } => {
            Kernel::Phase { mask: (1 << qubits[0]) | (1 << qubits[1]), odd: true, phase: Complex64::cis(angle) }
        }
        GateOp::GlobalPhase { angle } => Kernel::Phase { mask: 0, odd: false, phase: Complex64::cis(angle) },
        GateOp::Rx { target, angle } => {
            let (s, c) = (angle / 2.0).sin_cos();
            let c = Complex64::new(c, 0.0);
            let mis = Complex64::new(0.0, -s);
            Kernel::Mat2 { bit: 1 << target, m: [c, mis, mis, c] }
        }
        GateOp::Ry { target, angle } => {
            let (s, c) = (angle / 2.0).sin_cos();
            Kernel::Mat2 {
                bit: 1 << target,
                m: [Complex64::new(c, 0.0), Complex64::new(-s, 0.0), Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
            }
        }
        _ => unreachable!("flatten returns a base gate"),
    };
    CompiledOp { kernel, cmask, cval }
}

impl CompiledOp {
    pub(crate) fn apply(&self, amps: &mut [Complex64]) {
        let (cmask, cval) = (self.cmask, self.cval);
        match self.kernel {
            Kernel::Flip { bit } => {
                for i in 0..amps.len() {
                    if i & bit == 0 && i & cmask == cval {
                        amps.swap(i, i | bit);
                    }
                }
            }
            Kernel::Phase { mask, odd, phase } => {
                for (i, a) in amps.iter_mut().enumerate() {
                    if i & cmask == cval && ((i & mask).count_ones() & 1 == 1) == odd {
                        *a *= phase;
                    }
                }
            }
            Kernel::Mat2 { bit, m } => {
                for i in 0..amps.len() {
                    if i & bit == 0 && i & cmask == cval {
                        let a0 = amps[i];
                        let a1 = amps[i | bit];
                        amps[i] = m[0] * a0 + m[1] * a1;
                        amps[i | bit] = m[2] * a0 + m[3] * a1;
                    }
                }
            }
        }
    }
}
