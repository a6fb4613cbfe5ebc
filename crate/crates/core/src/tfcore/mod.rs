//! Signals, operators and time-frequency shifts on `Z_L x Z_L`.

mod eig;
mod op;
mod phase;
pub mod random;
mod signal;
mod stft;
mod svd;
pub mod textio;

#[cfg(test)]
pub(crate) mod testutil;

pub use eig::{eigh, Eigh};
pub use op::{rank_one, tf_shift, translate_op, Op};
pub use phase::{symplectic, PhasePoint, PhaseTable};
pub use signal::{unit_root, Signal, C64};
pub use stft::{stft, stft_direct};
pub use svd::{svd, Svd, RANK_TOL};
