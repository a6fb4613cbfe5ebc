use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("signal length must be at least 2, got {0}")]
    TooShort(usize),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("coefficient sequence does not match lattice: {0}")]
    ShapeMismatch(String),

    #[error("not-periodic: alpha_({k},{l})(T) differs from T by {residual:e} (relative)")]
    NotPeriodic { k: usize, l: usize, residual: f64 },

    #[error("not-a-frame: lower bound {lower:e} <= {threshold:e} * upper bound {upper:e}")]
    NotAFrame {
        lower: f64,
        upper: f64,
        threshold: f64,
    },

    #[error("not-underspread: difference ({k},{l}) lies in the adjoint lattice")]
    NotUnderspread { k: usize, l: usize },

    #[error("{windows} windows cannot be attached to an orthonormal system in dimension {len}")]
    TooManyWindows { windows: usize, len: usize },

    #[error("window has zero norm")]
    ZeroWindow,

    #[error("invalid window width {width} for length {len}")]
    InvalidWidth { width: usize, len: usize },

    #[error("rank {rank} exceeds dimension {len}")]
    InvalidRank { rank: usize, len: usize },

    #[error("exponent p must satisfy p >= 1, got {0}")]
    InvalidExponent(f64),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid mask: {0}")]
    InvalidMask(String),

    #[error("Hermitian eigensolver did not converge for dimension {0}")]
    EigenFailure(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
