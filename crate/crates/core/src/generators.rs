//! Constructors for generator operators: rank-one and multi-window
//! operators, localization operators, underspread operators, and the
//! singular value bridge from an arbitrary operator to a weighted
//! multi-window family.

use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::spreading::{synthesize, SpreadingCoeffs};
use crate::tfcore::random::{gaussian_signal, seeded};
use crate::tfcore::{svd, Op, PhasePoint, PhaseTable, Signal, C64};

pub use crate::tfcore::rank_one;

/// Windows `phi_n` with positive weights `s_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowSet {
    len: usize,
    windows: Vec<Signal>,
    weights: Vec<f64>,
}

impl WindowSet {
    pub fn new(len: usize, windows: Vec<Signal>, weights: Vec<f64>) -> Result<Self> {
        if windows.len() != weights.len() {
            return Err(Error::LengthMismatch {
                expected: windows.len(),
                found: weights.len(),
            });
        }
        if let Some(w) = windows.iter().find(|w| w.len() != len) {
            return Err(Error::LengthMismatch {
                expected: len,
                found: w.len(),
            });
        }
        if let Some(&s) = weights.iter().find(|&&s| !(s > 0.0 && s.is_finite())) {
            return Err(Error::InvalidWeight(format!(
                "window weights must be positive, got {s}"
            )));
        }
        Ok(Self {
            len,
            windows,
            weights,
        })
    }

    /// All weights equal to one.
    pub fn uniform(len: usize, windows: Vec<Signal>) -> Result<Self> {
        let weights = vec![1.0; windows.len()];
        Self::new(len, windows, weights)
    }

    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.len
    }

    pub fn windows(&self) -> &[Signal] {
        &self.windows
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// `S = sum_n s_n e_n (x) phi_n` with the standard basis as orthonormal system,
/// so that `S^* S = sum_n s_n^2 phi_n (x) phi_n`.
pub fn multiwindow_op(ws: &WindowSet) -> Result<Op> {
    let len = ws.dim();
    if ws.len() > len {
        return Err(Error::TooManyWindows {
            windows: ws.len(),
            len,
        });
    }
    let mut acc = Op::zeros(len)?;
    for (n, (phi, &s)) in ws.windows.iter().zip(&ws.weights).enumerate() {
        let e = Signal::basis(len, n)?;
        acc = &acc + &rank_one(&e, phi)?.scale_real(s);
    }
    Ok(acc)
}

/// Windows and weights from the singular value decomposition
/// `S = sum_n s_n xi_n (x) phi_n`; the windows are the right singular vectors.
pub fn svd_to_multiwindow(s: &Op) -> WindowSet {
    let dec = svd(s);
    WindowSet::new(s.dim(), dec.right, dec.values).expect("singular values are positive")
}

/// Localization operator `A psi = (1/L) sum_z h(z) V_phi psi(z) pi(z) phi`,
/// normalized so that `h = 1` and `||phi|| = 1` give the identity.
///
/// Kernel: `A[x][y] = (1/L) sum_k H_k(x - y) phi(x - k) conj(phi(y - k))`
/// with `H_k(m) = sum_l h(k, l) exp(2 pi i l m / L)`.
pub fn localization_op(h: &PhaseTable<C64>, phi: &Signal) -> Result<Op> {
    let len = phi.len();
    if h.len() != len {
        return Err(Error::LengthMismatch {
            expected: len,
            found: h.len(),
        });
    }
    if phi.norm() == 0.0 {
        return Err(Error::ZeroWindow);
    }
    let fft = FftPlanner::<f64>::new().plan_fft_inverse(len);
    let mut m = nalgebra::DMatrix::zeros(len, len);
    let mut row = vec![C64::new(0.0, 0.0); len];
    let scale = 1.0 / len as f64;
    for k in 0..len {
        row.copy_from_slice(&h.as_slice()[k * len..(k + 1) * len]);
        fft.process(&mut row);
        for x in 0..len {
            let px = phi[(x + len - k) % len] * scale;
            for y in 0..len {
                let py = phi[(y + len - k) % len].conj();
                m[(x, y)] += row[(x + len - y) % len] * px * py;
            }
        }
    }
    Op::from_matrix(m)
}

/// Real-valued mask convenience wrapper.
pub fn localization_op_real(h: &PhaseTable<f64>, phi: &Signal) -> Result<Op> {
    localization_op(&h.map(|&v| C64::new(v, 0.0)), phi)
}

/// Periodization of a nonnegative mask over a lattice, with its extreme values.
#[derive(Clone, Debug, PartialEq)]
pub struct MaskCover {
    /// `sum_lambda base(z - lambda)`.
    pub table: PhaseTable<f64>,
    pub lower: f64,
    pub upper: f64,
}

pub fn partition_mask(lattice: &Lattice, base: &PhaseTable<f64>) -> Result<MaskCover> {
    let len = lattice.len();
    if base.len() != len {
        return Err(Error::LengthMismatch {
            expected: len,
            found: base.len(),
        });
    }
    if let Some((z, v)) = base.iter().find(|(_, v)| !(**v >= 0.0)) {
        return Err(Error::InvalidMask(format!(
            "negative or NaN value {v} at {z}"
        )));
    }
    let table = PhaseTable::from_fn(len, |z| {
        lattice
            .enumerate()
            .map(|lambda| base[z.sub(lambda, len)])
            .sum()
    });
    let lower = table
        .as_slice()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let upper = table.as_slice().iter().copied().fold(0.0, f64::max);
    Ok(MaskCover {
        table,
        lower,
        upper,
    })
}

/// Indicator of the lexicographically first coset representatives of the
/// lattice: an exact tiling of phase space by lattice translates. For
/// `sep:a,b` this is the box `[0, a) x [0, b)`.
pub fn fundamental_domain(lattice: &Lattice) -> PhaseTable<f64> {
    let len = lattice.len();
    let mut covered = vec![false; len * len];
    let mut mask = PhaseTable::filled(len, 0.0);
    for i in 0..len * len {
        if covered[i] {
            continue;
        }
        let z = PhasePoint::new(i / len, i % len);
        mask[z] = 1.0;
        for lambda in lattice.enumerate() {
            let w = z.add(lambda, len);
            covered[w.k * len + w.l] = true;
        }
    }
    mask
}

/// `S = sum_{z in D} c_z pi(z)` where no nonzero difference of points of `D`
/// lies in the adjoint lattice; such an `S` generates a tight g-frame with
/// bound `card(Lambda) ||S||_HS^2 / L`.
pub fn underspread_op(points: &[PhasePoint], coeffs: &[C64], lattice: &Lattice) -> Result<Op> {
    let len = lattice.len();
    if points.len() != coeffs.len() {
        return Err(Error::LengthMismatch {
            expected: points.len(),
            found: coeffs.len(),
        });
    }
    let adjoint = lattice.adjoint();
    for &p in points {
        for &q in points {
            let d = p.reduce(len).sub(q.reduce(len), len);
            if !d.is_origin() && adjoint.contains(d) {
                return Err(Error::NotUnderspread { k: d.k, l: d.l });
            }
        }
    }
    let mut table = PhaseTable::filled(len, C64::new(0.0, 0.0));
    for (&p, &c) in points.iter().zip(coeffs) {
        table[p.reduce(len)] += c;
    }
    Ok(synthesize(&SpreadingCoeffs::new(table)))
}

/// Number of wrapped terms on each side of the periodized Gaussian.
const GAUSSIAN_WRAPS: i64 = 8;

/// Unit-norm periodized Gaussian `g(t) = sum_j exp(-pi (t + j L)^2 / L)`.
pub fn window_gaussian(len: usize) -> Result<Signal> {
    if len < 2 {
        return Err(Error::TooShort(len));
    }
    let l = len as f64;
    let values: Vec<f64> = (0..len)
        .map(|t| {
            (-GAUSSIAN_WRAPS..=GAUSSIAN_WRAPS)
                .map(|j| {
                    let x = t as f64 + j as f64 * l;
                    (-std::f64::consts::PI * x * x / l).exp()
                })
                .sum()
        })
        .collect();
    Signal::from_real(&values)?.normalized()
}

/// Unit-norm box of `width` samples centred at `t = 0` (cyclically).
pub fn window_box(len: usize, width: usize) -> Result<Signal> {
    if width == 0 || width > len {
        return Err(Error::InvalidWidth { width, len });
    }
    let mut values = vec![0.0; len];
    let start = len - width / 2;
    for i in 0..width {
        values[(start + i) % len] = 1.0;
    }
    Signal::from_real(&values)?.normalized()
}

/// Unit-norm complex Gaussian random window.
pub fn window_random(len: usize, seed: u64) -> Result<Signal> {
    if len < 2 {
        return Err(Error::TooShort(len));
    }
    gaussian_signal(&mut seeded(seed), len).normalized()
}

/// `sum_{r < rank} xi_r (x) phi_r` with complex Gaussian factors, scaled to
/// unit Hilbert-Schmidt norm. Deterministic for a fixed seed.
pub fn random_op(len: usize, rank: usize, seed: u64) -> Result<Op> {
    if len < 2 {
        return Err(Error::TooShort(len));
    }
    if rank > len {
        return Err(Error::InvalidRank { rank, len });
    }
    let mut rng = seeded(seed);
    let mut acc = Op::zeros(len)?;
    for _ in 0..rank {
        let xi = gaussian_signal(&mut rng, len);
        let phi = gaussian_signal(&mut rng, len);
        acc = &acc + &rank_one(&xi, &phi)?;
    }
    let n = acc.hs_norm();
    Ok(if n > 0.0 {
        acc.scale_real(1.0 / n)
    } else {
        acc
    })
}
