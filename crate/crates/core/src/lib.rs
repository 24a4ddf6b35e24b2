//! Closed-form tomograms of open quantum systems.
//!
//! Spin-1/2 under dephasing (QND) and squeezed generalized amplitude damping
//! (SGAD) baths, two qubits in a vacuum bath, spin-1, a qutrit undergoing
//! spontaneous emission, and the optical tomogram of a dissipative
//! oscillator. Every closed form has an independent brute-force route in
//! [`oracles`] and a named check in [`verify`].
//!
//! Units: `hbar = k_B = 1`.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baths;
pub mod channels;
pub mod error;
pub mod linalg;
pub mod oracles;
pub mod parallel;
pub mod quadrature;
pub mod rotations;
pub mod sweep;
pub mod tomography;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, HalfInt, C64};
pub use parallel::Execution;
pub use rotations::EulerAngles;
