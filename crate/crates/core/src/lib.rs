//! Classical emulation of variationally compressed Trotter circuits.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure
//! computation: a dense statevector emulator, Walsh-basis expansion of
//! diagonal operators, explicit and comparator circuit builders, the
//! `W·D·W†` fast-forwarding ansatz with its local Hilbert–Schmidt cost and
//! Adam optimizer, Marcus-model Trotter dynamics and gate-count accounting.
//! File formats, the CLI and worker pools live in the `vffcomp` crate.
//!
//! Conventions used throughout:
//! * qubit 0 is the least significant bit of a basis index;
//! * `Rz(α) = diag(1, e^{iα})`, `ZZ(α) = CNOT·(1⊗Rz(α))·CNOT`;
//! * `Rx(φ) = e^{-iφX/2}`, `Ry(φ) = e^{-iφY/2}`;
//! * evolution phases are `e^{-iτ f}` and all quantities are in atomic units.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod builders;
pub mod eigen;
mod error;
pub mod grid;
pub mod marcus;
pub mod resources;
pub mod rng;
pub mod sim;
pub mod vff;
pub mod walsh;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Crate version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
