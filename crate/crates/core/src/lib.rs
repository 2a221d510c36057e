//! Direct tomography of wave functions recast as estimation of a complex phase.
//!
//! A system state `|psi>` is coupled to a qubit pointer, post-selected onto the
//! uniform superposition, and the pointer is left rotated by a complex angle
//! `phi = phi1 + i phi2` that encodes one amplitude `psi_x`. The crate covers:
//!
//! - [`statekit`]: system states and the global-phase convention,
//! - [`coupling`]: the `(alpha, beta)` amplitudes and the map to and from `phi`,
//! - [`qubit`]: the single-pointer reconstruction and its optimal measurements,
//! - [`noon`], [`dicke`], [`tr`]: entangled-pointer schemes reaching the
//!   Heisenberg limit,
//! - [`metrology`]: error propagation, Fisher information, Cramér–Rao bounds,
//! - [`sampler`]: seeded Monte Carlo measurement simulation,
//! - [`runner`]: JSON-configured experiments emitting CSV.
//!
//! Every closed form is paired with an independent numerical route (dense
//! matrices, matrix exponentials, sampling), and the test suites compare them.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` is deliberate: it rejects NaN too

pub mod coupling;
pub mod dicke;
pub mod error;
pub mod expm;
pub mod legendre;
pub mod metrology;
pub mod noon;
pub mod qubit;
pub mod runner;
pub mod sampler;
pub mod spin;
pub mod statekit;
pub mod tr;

pub mod numeric;

pub use coupling::{AlphaBeta, ComplexPhase, CouplingConfig, PointerAxis, QubitState};
pub use error::{Error, Result};
pub use metrology::{CovarianceReport, CovarianceSource, FisherMatrix};
pub use statekit::SystemState;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
