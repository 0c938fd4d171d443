//! Circuit constructors for quadratic phases, comparators, couplings and wavepackets.

mod comparator;
mod coupling;
mod kinetic;
mod quadratic;
mod ucc;

pub use comparator::{ancilla_count, comparator_circuit, comparator_parts, ComparatorLayout, ComparatorParts, Relation};
pub use coupling::{piecewise_coupling_circuit, step_coupling_circuit, PiecewiseCoupling, StepCoupling};
pub use kinetic::{kinetic_circuit, momentum_sandwich};
pub use quadratic::{explicit_quadratic_circuit, QuadraticPhases};
pub use ucc::{fit_wavepacket, harmonic_ground_state, ucc_circuit, UccParams, WavepacketFit};
