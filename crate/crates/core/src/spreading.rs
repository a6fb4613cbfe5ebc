//! Spreading coefficients: the expansion of an operator in the basis of
//! time-frequency shifts.
//!
//! `c_S(z) = tr(S pi(z)^*) / L` and `S = sum_z c_S(z) pi(z)`. The
//! half-phase of the continuous Fourier-Wigner transform is not used; it
//! has no consistent meaning for odd `L`, and the frame identities below
//! only depend on `c_S` up to unimodular factors.

use std::ops::Index;

use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::tfcore::{
    symplectic, tf_shift, translate_op, unit_root, Op, PhasePoint, PhaseTable, C64,
};

#[derive(Clone, Debug, PartialEq)]
pub struct SpreadingCoeffs {
    table: PhaseTable<C64>,
}

impl SpreadingCoeffs {
    pub fn new(table: PhaseTable<C64>) -> Self {
        Self { table }
    }

    /// A single coefficient `value` at `z`.
    pub fn delta(len: usize, z: PhasePoint, value: C64) -> Self {
        let mut table = PhaseTable::filled(len, C64::new(0.0, 0.0));
        table[z] = value;
        Self { table }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn table(&self) -> &PhaseTable<C64> {
        &self.table
    }

    pub fn into_table(self) -> PhaseTable<C64> {
        self.table
    }

    /// `sum_z |c(z)|`.
    pub fn l1_norm(&self) -> f64 {
        self.table.as_slice().iter().map(|c| c.norm()).sum()
    }

    /// Points where `|c(z)| > tol`.
    pub fn support(&self, tol: f64) -> Vec<PhasePoint> {
        self.table
            .iter()
            .filter(|(_, c)| c.norm() > tol)
            .map(|(z, _)| z)
            .collect()
    }
}

impl Index<PhasePoint> for SpreadingCoeffs {
    type Output = C64;

    fn index(&self, z: PhasePoint) -> &C64 {
        &self.table[z]
    }
}

/// Spreading coefficients via FFT of the generalized diagonals
/// `d_k(t) = S[t][t - k]`: `c_S(k, .) = DFT(d_k) / L`.
pub fn spreading_of(s: &Op) -> SpreadingCoeffs {
    let len = s.dim();
    let fft = FftPlanner::<f64>::new().plan_fft_forward(len);
    let scale = 1.0 / len as f64;
    let mut data = Vec::with_capacity(len * len);
    let mut diag = vec![C64::new(0.0, 0.0); len];
    for k in 0..len {
        for (t, slot) in diag.iter_mut().enumerate() {
            *slot = s.get(t, (t + len - k) % len);
        }
        fft.process(&mut diag);
        data.extend(diag.iter().map(|c| c * scale));
    }
    SpreadingCoeffs::new(PhaseTable::from_vec(len, data).expect("L*L entries"))
}

/// Reference path: one trace `tr(S pi(z)^*) / L` per phase-space point.
pub fn spreading_of_direct(s: &Op) -> SpreadingCoeffs {
    let len = s.dim();
    let table = PhaseTable::from_fn(len, |z| {
        let p = tf_shift(len, z).expect("dim >= 2");
        s.hs_inner(&p).expect("same dim") / len as f64
    });
    SpreadingCoeffs::new(table)
}

/// `S = sum_z c(z) pi(z)`, assembled diagonal by diagonal in O(L^2).
pub fn synthesize(c: &SpreadingCoeffs) -> Op {
    let len = c.len();
    let fft = FftPlanner::<f64>::new().plan_fft_inverse(len);
    let mut m = nalgebra::DMatrix::zeros(len, len);
    let mut diag = vec![C64::new(0.0, 0.0); len];
    for k in 0..len {
        // d_k(t) = sum_l c(k, l) exp(2 pi i l t / L)
        diag.copy_from_slice(&c.table.as_slice()[k * len..(k + 1) * len]);
        fft.process(&mut diag);
        for (t, v) in diag.iter().enumerate() {
            m[(t, (t + len - k) % len)] = *v;
        }
    }
    Op::from_matrix(m).expect("square")
}

/// Weyl symbol `a_S(u) = sum_z c_S(z) exp(2 pi i sigma(z, u) / L)`.
///
/// With `z = (k, l)` and `u = (p, q)`, `sigma(z, u) = l p - q k`, so this is an
/// inverse DFT over `l` followed by a forward DFT over `k`.
pub fn weyl_symbol(s: &Op) -> PhaseTable<C64> {
    weyl_from_spreading(&spreading_of(s))
}

pub fn weyl_from_spreading(c: &SpreadingCoeffs) -> PhaseTable<C64> {
    let len = c.len();
    let mut planner = FftPlanner::<f64>::new();
    let inv = planner.plan_fft_inverse(len);
    let fwd = planner.plan_fft_forward(len);
    // b[k][p] = sum_l c(k,l) exp(2 pi i l p / L)
    let mut b = c.table.as_slice().to_vec();
    for row in b.chunks_mut(len) {
        inv.process(row);
    }
    // a[p][q] = sum_k b[k][p] exp(-2 pi i q k / L)
    let mut out = vec![C64::new(0.0, 0.0); len * len];
    let mut col = vec![C64::new(0.0, 0.0); len];
    for p in 0..len {
        for (k, slot) in col.iter_mut().enumerate() {
            *slot = b[k * len + p];
        }
        fwd.process(&mut col);
        out[p * len..(p + 1) * len].copy_from_slice(&col);
    }
    PhaseTable::from_vec(len, out).expect("L*L entries")
}

/// Direct O(L^4) evaluation of the symplectic transform, for tests.
pub fn weyl_from_spreading_direct(c: &SpreadingCoeffs) -> PhaseTable<C64> {
    let len = c.len();
    PhaseTable::from_fn(len, |u| {
        c.table
            .iter()
            .map(|(z, v)| v * unit_root(symplectic(z, u, len), len))
            .sum()
    })
}

/// Relative tolerance for the periodicity precondition.
pub const PERIODIC_TOL: f64 = 1e-8;

/// Fourier coefficients of a `lattice`-periodic operator: its spreading
/// coefficients on the adjoint lattice, in enumeration order.
pub fn fourier_series_of_periodic(t: &Op, lattice: &Lattice) -> Result<Vec<(PhasePoint, C64)>> {
    if t.dim() != lattice.len() {
        return Err(Error::LengthMismatch {
            expected: lattice.len(),
            found: t.dim(),
        });
    }
    let scale = t.hs_norm();
    for lambda in lattice.enumerate() {
        let diff = (&translate_op(t, lambda) - t).hs_norm();
        if diff > PERIODIC_TOL * scale {
            return Err(Error::NotPeriodic {
                k: lambda.k,
                l: lambda.l,
                residual: if scale > 0.0 { diff / scale } else { diff },
            });
        }
    }
    let c = spreading_of(t);
    Ok(lattice.adjoint().enumerate().map(|z| (z, c[z])).collect())
}

/// Restricts a coefficient list back to a full table (zero elsewhere).
pub fn coeffs_from_points(len: usize, points: &[(PhasePoint, C64)]) -> SpreadingCoeffs {
    let mut table = PhaseTable::filled(len, C64::new(0.0, 0.0));
    for &(z, v) in points {
        table[z] = v;
    }
    SpreadingCoeffs::new(table)
}
