//! Gabor g-frames over the finite phase space `Z_L x Z_L`.
//!
//! Signals live in `C^L`, operators are dense `L x L` matrices and lattices
//! are subgroups of `Z_L x Z_L`. Every operator is trace class here, so the
//! operator Poisson summation (Janssen representation), Wexler-Raz
//! biorthogonality and the dual-generator reconstruction formulas hold
//! exactly and can be checked to floating-point precision.
//!
//! Conventions used throughout:
//!
//! * `pi(k, l)` acts by `(pi(k,l) psi)(t) = exp(2 pi i l t / L) psi(t - k)`.
//! * Inner products are linear in the first slot.
//! * Spreading coefficients are `c_S(z) = tr(S pi(z)^*) / L`, so that
//!   `S = sum_z c_S(z) pi(z)`.
//! * The symplectic form is `sigma((k1,l1),(k2,l2)) = l1 k2 - l2 k1 mod L`.

pub mod error;
pub mod generators;
pub mod gframe;
pub mod lattice;
pub mod seqspace;
pub mod spreading;
pub mod tfcore;

#[cfg(feature = "cli")]
pub mod cli;

pub use error::{Error, Result};
pub use gframe::{CoefSeq, GFrameReport};
pub use lattice::Lattice;
pub use spreading::SpreadingCoeffs;
pub use tfcore::{Op, PhasePoint, PhaseTable, Signal, C64};
