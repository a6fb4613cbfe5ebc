use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};

use super::phase::PhasePoint;
use super::signal::{unit_root, Signal, C64};
use crate::error::{Error, Result};

/// A dense operator on `C^L`. The matrix is the discrete kernel:
/// `(S psi)(x) = sum_y M[x][y] psi(y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Op {
    matrix: DMatrix<C64>,
}

impl Op {
    pub fn from_matrix(matrix: DMatrix<C64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::LengthMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        if matrix.nrows() < 2 {
            return Err(Error::TooShort(matrix.nrows()));
        }
        Ok(Self { matrix })
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        Self::from_matrix(DMatrix::from_fn(dim, dim, f))
    }

    /// Row-major entries.
    pub fn from_rows(dim: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::LengthMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Self::from_fn(dim, |x, y| entries[x * dim + y])
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_matrix(DMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::from_matrix(DMatrix::zeros(dim, dim))
    }

    pub(crate) fn wrap(matrix: DMatrix<C64>) -> Self {
        debug_assert_eq!(matrix.nrows(), matrix.ncols());
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn get(&self, x: usize, y: usize) -> C64 {
        self.matrix[(x, y)]
    }

    pub fn adjoint(&self) -> Op {
        Op::wrap(self.matrix.adjoint())
    }

    pub fn scale(&self, factor: C64) -> Op {
        Op::wrap(&self.matrix * factor)
    }

    pub fn scale_real(&self, factor: f64) -> Op {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn compose(&self, other: &Op) -> Result<Op> {
        self.check_dim(other.dim())?;
        Ok(Op::wrap(&self.matrix * &other.matrix))
    }

    pub fn apply(&self, psi: &Signal) -> Result<Signal> {
        self.check_dim(psi.len())?;
        let v = DVector::from_column_slice(psi.as_slice());
        Signal::new((&self.matrix * v).as_slice().to_vec())
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// Hilbert-Schmidt (Frobenius) norm.
    pub fn hs_norm(&self) -> f64 {
        self.hs_norm_sqr().sqrt()
    }

    pub fn hs_norm_sqr(&self) -> f64 {
        self.matrix.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `<A, B>_HS = tr(A B^*)`.
    pub fn hs_inner(&self, other: &Op) -> Result<C64> {
        self.check_dim(other.dim())?;
        Ok(self
            .matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    /// Spectral norm, from the largest singular value.
    pub fn op_norm(&self) -> f64 {
        self.matrix
            .singular_values()
            .iter()
            .fold(0.0_f64, |acc, &s| acc.max(s))
    }

    /// `||self - other||_F / ||other||_F`, or the absolute error if `other` is zero.
    pub fn rel_diff(&self, other: &Op) -> f64 {
        let diff = (&self.matrix - &other.matrix).norm();
        let scale = other.matrix.norm();
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }

    pub(crate) fn check_dim(&self, other: usize) -> Result<()> {
        if self.dim() != other {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                found: other,
            });
        }
        Ok(())
    }
}

impl<'a> Add<&'a Op> for &'a Op {
    type Output = Op;

    fn add(self, rhs: &'a Op) -> Op {
        Op::wrap(&self.matrix + &rhs.matrix)
    }
}

impl<'a> Sub<&'a Op> for &'a Op {
    type Output = Op;

    fn sub(self, rhs: &'a Op) -> Op {
        Op::wrap(&self.matrix - &rhs.matrix)
    }
}

impl<'a> Mul<&'a Op> for &'a Op {
    type Output = Op;

    fn mul(self, rhs: &'a Op) -> Op {
        Op::wrap(&self.matrix * &rhs.matrix)
    }
}

/// The time-frequency shift `pi(k, l)` as a matrix:
/// `pi[x][y] = exp(2 pi i l x / L)` when `x = y + k`, else 0.
pub fn tf_shift(len: usize, z: PhasePoint) -> Result<Op> {
    let z = z.reduce(len.max(1));
    let mut m = DMatrix::zeros(len, len);
    for y in 0..len {
        let x = (y + z.k) % len;
        m[(x, y)] = unit_root(z.l * x, len);
    }
    Op::from_matrix(m)
}

/// `alpha_z(S) = pi(z) S pi(z)^*`, computed entrywise in O(L^2):
/// `alpha_z(S)[x][y] = exp(2 pi i l (x - y) / L) S[x - k][y - k]`.
pub fn translate_op(s: &Op, z: PhasePoint) -> Op {
    let len = s.dim();
    let z = z.reduce(len);
    let m = DMatrix::from_fn(len, len, |x, y| {
        let src = s.matrix[((x + len - z.k) % len, (y + len - z.k) % len)];
        let phase = (z.l * ((x + len - y) % len)) % len;
        unit_root(phase, len) * src
    });
    Op::wrap(m)
}

/// `xi (x) phi`, the operator `psi -> <psi, phi> xi`, with kernel
/// `xi(x) conj(phi(y))`.
pub fn rank_one(xi: &Signal, phi: &Signal) -> Result<Op> {
    xi.check_len(phi.len())?;
    Op::from_fn(xi.len(), |x, y| xi[x] * phi[y].conj())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tfcore::phase::symplectic;
    use crate::tfcore::testutil::{random_op, random_signal};

    fn all_points(len: usize) -> impl Iterator<Item = PhasePoint> {
        (0..len * len).map(move |i| PhasePoint::new(i / len, i % len))
    }

    #[test]
    fn zero_shift_is_identity() {
        let p = tf_shift(5, PhasePoint::ORIGIN).unwrap();
        assert_eq!(p, Op::identity(5).unwrap());
    }

    #[test]
    fn pure_translation_moves_basis_vector() {
        let p = tf_shift(4, PhasePoint::new(1, 0)).unwrap();
        let e0 = Signal::basis(4, 0).unwrap();
        assert_eq!(p.apply(&e0).unwrap(), Signal::basis(4, 1).unwrap());
    }

    #[test]
    fn matrix_agrees_with_signal_shift() {
        let psi = random_signal(6, 1);
        for z in all_points(6) {
            let a = tf_shift(6, z).unwrap().apply(&psi).unwrap();
            let b = psi.tf_shifted(z.k, z.l);
            assert!(a.sub(&b).unwrap().norm() < 1e-14);
        }
    }

    #[test]
    fn shifts_are_unitary_and_obey_adjoint_phase_law() {
        for len in 2..=8 {
            let id = Op::identity(len).unwrap();
            for z in all_points(len) {
                let p = tf_shift(len, z).unwrap();
                let pp = &p * &p.adjoint();
                assert!((&pp - &id).matrix().camax() <= 1e-12);

                // pi(z)^* = exp(-2 pi i k l / L) pi(-z)
                let phase = unit_root(len - (z.k * z.l) % len, len);
                let rhs = tf_shift(len, z.neg(len)).unwrap().scale(phase);
                assert!((&p.adjoint() - &rhs).matrix().camax() <= 1e-12);
            }
        }
    }

    #[test]
    fn commutation_phase_is_symplectic_form() {
        // Brute force over all L^4 pairs at L = 5.
        let len = 5;
        let shifts: Vec<Op> = all_points(len).map(|z| tf_shift(len, z).unwrap()).collect();
        for (i, z1) in all_points(len).enumerate() {
            for (j, z2) in all_points(len).enumerate() {
                let lhs = &shifts[i] * &shifts[j];
                let rhs = (&shifts[j] * &shifts[i]).scale(unit_root(symplectic(z1, z2, len), len));
                assert!((&lhs - &rhs).matrix().camax() < 1e-12, "{z1} {z2}");
            }
        }
    }

    #[test]
    fn translate_fixes_identity() {
        let id = Op::identity(6).unwrap();
        for z in all_points(6) {
            assert!(translate_op(&id, z).rel_diff(&id) < 1e-14);
        }
    }

    #[test]
    fn translate_matches_conjugation_and_rank_one_law() {
        let len = 6;
        let psi = random_signal(len, 3);
        let phi = random_signal(len, 4);
        let s = rank_one(&psi, &phi).unwrap();
        for z in all_points(len) {
            let p = tf_shift(len, z).unwrap();
            let direct = &(&p * &s) * &p.adjoint();
            let fast = translate_op(&s, z);
            assert!(fast.rel_diff(&direct) < 1e-13);
            let expected = rank_one(&psi.tf_shifted(z.k, z.l), &phi.tf_shifted(z.k, z.l)).unwrap();
            assert!(fast.rel_diff(&expected) < 1e-13);
        }
    }

    #[test]
    fn translation_is_isometric_and_multiplicative() {
        let len = 5;
        let s = random_op(len, 10);
        let t = random_op(len, 11);
        for z in all_points(len) {
            let ts = translate_op(&s, z);
            assert!((ts.hs_norm() - s.hs_norm()).abs() < 1e-12 * s.hs_norm());
            assert!((ts.op_norm() - s.op_norm()).abs() < 1e-12 * s.op_norm());
            let prod = translate_op(&(&s * &t), z);
            assert!(prod.rel_diff(&(&ts * &translate_op(&t, z))) < 1e-12);
        }
    }

    #[test]
    fn rank_one_kernel_and_trace() {
        let xi = random_signal(5, 20);
        let phi = random_signal(5, 21);
        let r = rank_one(&xi, &phi).unwrap();
        assert!((r.get(2, 3) - xi[2] * phi[3].conj()).norm() < 1e-15);
        assert!((r.trace() - xi.inner(&phi).unwrap()).norm() < 1e-13);
        assert!((r.hs_norm() - xi.norm() * phi.norm()).abs() < 1e-13);
        let e = Signal::basis(5, 0).unwrap();
        let e00 = rank_one(&e, &e).unwrap();
        assert_eq!(e00.get(0, 0), C64::new(1.0, 0.0));
        assert_eq!(e00.hs_norm_sqr(), 1.0);
    }
}
