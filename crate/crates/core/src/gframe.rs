//! Gabor g-frames `{alpha_lambda(S)}_{lambda in Lambda}`.
//!
//! The g-frame operator `S_S = sum_lambda alpha_lambda(S^* S)` is the
//! lattice periodization of `S^* S`; its extreme eigenvalues are the optimal
//! frame bounds. By the operator Poisson summation formula
//!
//! ```text
//! sum_lambda alpha_lambda(S) = card(Lambda) sum_{mu in Lambda°} c_S(mu) pi(mu)
//! ```
//!
//! so every statement about `S_S` can be read off the spreading
//! coefficients of `S^* S` on the adjoint lattice.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::spreading::{coeffs_from_points, spreading_of, synthesize};
use crate::tfcore::{eigh, translate_op, unit_root, Op, PhasePoint, PhaseTable, Signal, C64};

/// `is_frame` iff `lower > FRAME_EPS * upper`.
pub const FRAME_EPS: f64 = 1e-10;

/// Residual threshold for reconstruction and biorthogonality checks.
pub const DUAL_TOL: f64 = 1e-9;

/// Relative threshold for the periodization / Janssen identity.
pub const JANSSEN_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct GFrameReport {
    pub lower: f64,
    pub upper: f64,
    pub is_frame: bool,
    /// `upper / lower`, infinite when `lower <= 0`.
    pub tightness: f64,
    /// Relative Frobenius distance between the periodization of `S^* S`
    /// and its Janssen series.
    pub janssen_residual: f64,
    /// Normalized `||D_S C_R - I||_F / sqrt(L)` for the canonical dual `R`;
    /// only present for frames.
    pub dual_residual: Option<f64>,
}

impl GFrameReport {
    /// Flat `key=value` lines.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let dual = self
            .dual_residual
            .map_or_else(|| "nan".to_string(), |d| format!("{d:e}"));
        writeln!(out, "A={:e}", self.lower).unwrap();
        writeln!(out, "B={:e}", self.upper).unwrap();
        writeln!(out, "tightness={:e}", self.tightness).unwrap();
        writeln!(out, "janssen_residual={:e}", self.janssen_residual).unwrap();
        writeln!(out, "dual_residual={dual}").unwrap();
        writeln!(out, "is_frame={}", self.is_frame).unwrap();
        out
    }
}

/// An element of `l^2(Lambda; C^L)`: one vector per lattice point, in the
/// lattice enumeration order.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefSeq {
    lattice: Lattice,
    vecs: Vec<Signal>,
}

impl CoefSeq {
    pub fn new(lattice: Lattice, vecs: Vec<Signal>) -> Result<Self> {
        if vecs.len() != lattice.card() {
            return Err(Error::ShapeMismatch(format!(
                "{} vectors for a lattice with {} points",
                vecs.len(),
                lattice.card()
            )));
        }
        if let Some(v) = vecs.iter().find(|v| v.len() != lattice.len()) {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} in dimension {}",
                v.len(),
                lattice.len()
            )));
        }
        Ok(Self { lattice, vecs })
    }

    pub fn zeros(lattice: &Lattice) -> Self {
        let vecs = vec![Signal::zeros(lattice.len()).expect("L >= 2"); lattice.card()];
        Self {
            lattice: lattice.clone(),
            vecs,
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn vecs(&self) -> &[Signal] {
        &self.vecs
    }

    pub fn iter(&self) -> impl Iterator<Item = (PhasePoint, &Signal)> {
        self.lattice.enumerate().zip(self.vecs.iter())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.vecs.iter().map(Signal::norm_sqr).sum()
    }

    /// `sum_lambda <self_lambda, other_lambda>`.
    pub fn inner(&self, other: &CoefSeq) -> Result<C64> {
        self.check_shape(other)?;
        self.vecs
            .iter()
            .zip(&other.vecs)
            .map(|(a, b)| a.inner(b))
            .sum()
    }

    pub(crate) fn check_shape(&self, other: &CoefSeq) -> Result<()> {
        if self.lattice.points() != other.lattice.points() {
            return Err(Error::ShapeMismatch(
                "sequences are indexed by different lattices".into(),
            ));
        }
        Ok(())
    }
}

/// `P_Lambda(S) = sum_lambda alpha_lambda(S)`.
///
/// Lattice points sharing a time shift `k` differ only in the phase
/// `e^{2 pi i l (x - y) / L}`, so their phases are summed once per
/// diagonal offset `x - y` before touching the matrix.
pub fn periodize(s: &Op, lattice: &Lattice) -> Result<Op> {
    s.check_dim(lattice.len())?;
    let len = s.dim();
    let roots: Vec<C64> = (0..len).map(|n| unit_root(n, len)).collect();
    let mut weights = vec![vec![C64::new(0.0, 0.0); len]; len];
    for lambda in lattice.enumerate() {
        for (d, w) in weights[lambda.k].iter_mut().enumerate() {
            *w += roots[(lambda.l * d) % len];
        }
    }
    let m = s.matrix();
    let mut acc = DMatrix::zeros(len, len);
    for (k, w) in weights.iter().enumerate() {
        if w.iter().all(|v| *v == C64::new(0.0, 0.0)) {
            continue;
        }
        for y in 0..len {
            let ys = (y + len - k) % len;
            for x in 0..len {
                acc[(x, y)] += w[(x + len - y) % len] * m[((x + len - k) % len, ys)];
            }
        }
    }
    Op::from_matrix(acc)
}

/// Reference periodization summing each `alpha_lambda(S)` explicitly.
pub fn periodize_direct(s: &Op, lattice: &Lattice) -> Result<Op> {
    s.check_dim(lattice.len())?;
    let mut acc = Op::zeros(s.dim())?;
    for lambda in lattice.enumerate() {
        acc = &acc + &translate_op(s, lambda);
    }
    Ok(acc)
}

/// `card(Lambda) sum_{mu in Lambda°} c_S(mu) pi(mu)`.
pub fn janssen_rep(s: &Op, lattice: &Lattice) -> Result<Op> {
    s.check_dim(lattice.len())?;
    let c = spreading_of(s);
    let on_adjoint: Vec<(PhasePoint, C64)> = lattice
        .adjoint()
        .enumerate()
        .map(|mu| (mu, c[mu]))
        .collect();
    let series = synthesize(&coeffs_from_points(s.dim(), &on_adjoint));
    Ok(series.scale_real(lattice.card() as f64))
}

/// Relative Frobenius error between `periodize` and `janssen_rep`.
pub fn janssen_residual(s: &Op, lattice: &Lattice) -> Result<f64> {
    Ok(janssen_rep(s, lattice)?.rel_diff(&periodize(s, lattice)?))
}

/// `S_S = sum_lambda alpha_lambda(S^* S)`.
pub fn gframe_operator(s: &Op, lattice: &Lattice) -> Result<Op> {
    periodize(&(&s.adjoint() * s), lattice)
}

fn hermitian_part(op: &Op) -> Op {
    (op + &op.adjoint()).scale_real(0.5)
}

fn normalized_identity_residual(op: &Op) -> f64 {
    let id = Op::identity(op.dim()).expect("dim >= 2");
    (op - &id).hs_norm() / (op.dim() as f64).sqrt()
}

/// Frame bounds from a Hermitian eigendecomposition of `S_S`, with the
/// Janssen and canonical-dual residuals.
pub fn frame_bounds(s: &Op, lattice: &Lattice) -> Result<GFrameReport> {
    let frame_op = hermitian_part(&gframe_operator(s, lattice)?);
    let eig = eigh(&frame_op)?;
    let lower = eig.min().max(0.0);
    let upper = eig.max().max(0.0);
    let is_frame = upper > 0.0 && lower > FRAME_EPS * upper;
    let tightness = if lower > 0.0 {
        upper / lower
    } else {
        f64::INFINITY
    };
    let gram = &s.adjoint() * s;
    let janssen_residual = janssen_residual(&gram, lattice)?;
    let dual_residual = if is_frame {
        let inverse = eig.apply_fn(|v| 1.0 / v);
        let dual = s * &inverse;
        Some(normalized_identity_residual(&periodize(
            &(&s.adjoint() * &dual),
            lattice,
        )?))
    } else {
        None
    };
    Ok(GFrameReport {
        lower,
        upper,
        is_frame,
        tightness,
        janssen_residual,
        dual_residual,
    })
}

fn frame_eig_checked(s: &Op, lattice: &Lattice) -> Result<crate::tfcore::Eigh> {
    let frame_op = hermitian_part(&gframe_operator(s, lattice)?);
    let eig = eigh(&frame_op)?;
    let (lower, upper) = (eig.min(), eig.max());
    if !(upper > 0.0 && lower > FRAME_EPS * upper) {
        return Err(Error::NotAFrame {
            lower,
            upper,
            threshold: FRAME_EPS,
        });
    }
    Ok(eig)
}

/// `S_S^{-1}` via the Hermitian eigendecomposition.
pub fn frame_operator_inverse(s: &Op, lattice: &Lattice) -> Result<Op> {
    Ok(frame_eig_checked(s, lattice)?.apply_fn(|v| 1.0 / v))
}

/// `S_S^{-1/2}`; `S S_S^{-1/2}` generates a tight g-frame with bound 1.
pub fn frame_operator_inverse_sqrt(s: &Op, lattice: &Lattice) -> Result<Op> {
    Ok(frame_eig_checked(s, lattice)?.apply_fn(|v| 1.0 / v.sqrt()))
}

/// Canonical dual generator `R = S S_S^{-1}`.
pub fn canonical_dual(s: &Op, lattice: &Lattice) -> Result<Op> {
    Ok(s * &frame_operator_inverse(s, lattice)?)
}

/// `(pi(z)^* psi)(y) = exp(-2 pi i l (y + k) / L) psi(y + k)`.
fn tf_shift_adjoint_apply(psi: &Signal, z: PhasePoint) -> Signal {
    let len = psi.len();
    let data = (0..len)
        .map(|y| {
            let t = (y + z.k) % len;
            unit_root(len - (z.l * t) % len, len) * psi[t]
        })
        .collect();
    Signal::new(data).expect("len >= 2")
}

/// `alpha_z(S) psi = pi(z) S pi(z)^* psi` without forming `alpha_z(S)`.
fn apply_translated(s: &Op, z: PhasePoint, psi: &Signal) -> Result<Signal> {
    let inner = s.apply(&tf_shift_adjoint_apply(psi, z))?;
    Ok(inner.tf_shifted(z.k, z.l))
}

/// `C_S psi = {alpha_lambda(S) psi}_lambda`.
pub fn analysis(s: &Op, lattice: &Lattice, psi: &Signal) -> Result<CoefSeq> {
    s.check_dim(lattice.len())?;
    s.check_dim(psi.len())?;
    let vecs = lattice
        .enumerate()
        .map(|lambda| apply_translated(s, lambda, psi))
        .collect::<Result<Vec<_>>>()?;
    CoefSeq::new(lattice.clone(), vecs)
}

/// `D_S {psi_lambda} = sum_lambda alpha_lambda(S^*) psi_lambda`, the adjoint of `analysis`.
pub fn synthesis(s: &Op, lattice: &Lattice, c: &CoefSeq) -> Result<Signal> {
    s.check_dim(lattice.len())?;
    if c.lattice().points() != lattice.points() {
        return Err(Error::ShapeMismatch(
            "coefficient sequence is indexed by a different lattice".into(),
        ));
    }
    let adj = s.adjoint();
    let mut acc = Signal::zeros(s.dim())?;
    for (lambda, v) in c.iter() {
        acc = acc.add(&apply_translated(&adj, lambda, v)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq)]
pub struct WexlerRaz {
    /// `card(Lambda) c_{S^*T}(mu) = delta_{mu,0}` on the adjoint lattice.
    pub biorth_ok: bool,
    /// `sum_lambda alpha_lambda(S^* T) = I`.
    pub recon_ok: bool,
    /// `max_mu |card(Lambda) c_{S^*T}(mu) - delta_{mu,0}|`.
    pub biorth_residual: f64,
    /// `||sum_lambda alpha_lambda(S^* T) - I||_F / sqrt(L)`.
    pub recon_residual: f64,
}

impl WexlerRaz {
    /// The two conditions are equivalent; disagreement signals a bug.
    pub fn consistent(&self) -> bool {
        self.biorth_ok == self.recon_ok
    }
}

/// Evaluates both sides of the Wexler-Raz equivalence independently: the
/// biorthogonality side from spreading coefficients of `S^* T`, the
/// reconstruction side by direct periodization.
pub fn wexler_raz_check(s: &Op, t: &Op, lattice: &Lattice) -> Result<WexlerRaz> {
    s.check_dim(lattice.len())?;
    t.check_dim(lattice.len())?;
    let st = &s.adjoint() * t;
    let c = spreading_of(&st);
    let card = lattice.card() as f64;
    let biorth_residual = lattice
        .adjoint()
        .enumerate()
        .map(|mu| {
            let target = if mu.is_origin() { 1.0 } else { 0.0 };
            (c[mu] * card - C64::new(target, 0.0)).norm()
        })
        .fold(0.0, f64::max);
    let recon_residual = normalized_identity_residual(&periodize(&st, lattice)?);
    Ok(WexlerRaz {
        biorth_ok: biorth_residual <= DUAL_TOL,
        recon_ok: recon_residual <= DUAL_TOL,
        biorth_residual,
        recon_residual,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JanssenTest {
    pub passes: bool,
    /// `card(Lambda) (c(0) - sum_{mu != 0} |c(mu)|)` with `c = c_{S^*S}`;
    /// a lower frame bound whenever `passes`.
    pub guaranteed_lower: f64,
    /// `sum_{mu != 0} |c_{S^*S}(mu)|` over the adjoint lattice.
    pub off_origin_mass: f64,
}

/// Sufficient condition: the off-origin Janssen coefficients of `S^* S`
/// are dominated by the origin coefficient (Neumann series).
pub fn janssen_sufficient(s: &Op, lattice: &Lattice) -> Result<JanssenTest> {
    s.check_dim(lattice.len())?;
    let c = spreading_of(&(&s.adjoint() * s));
    let origin = c[PhasePoint::ORIGIN].re;
    let off_origin_mass: f64 = lattice
        .adjoint()
        .enumerate()
        .filter(|mu| !mu.is_origin())
        .map(|mu| c[mu].norm())
        .sum();
    let passes = off_origin_mass < origin;
    let guaranteed_lower = if passes {
        lattice.card() as f64 * (origin - off_origin_mass)
    } else {
        0.0
    };
    Ok(JanssenTest {
        passes,
        guaranteed_lower,
        off_origin_mass,
    })
}

/// `card(Lambda) sum_z |c_{S^*S}(z)|`, an explicit upper frame bound.
pub fn upper_bound_estimate(s: &Op, lattice: &Lattice) -> Result<f64> {
    s.check_dim(lattice.len())?;
    Ok(lattice.card() as f64 * spreading_of(&(&s.adjoint() * s)).l1_norm())
}

/// The stacked `(card * L) x L` matrix whose block rows are `alpha_lambda(S)`.
pub fn analysis_matrix(s: &Op, lattice: &Lattice) -> Result<DMatrix<C64>> {
    s.check_dim(lattice.len())?;
    let len = s.dim();
    let mut m = DMatrix::zeros(lattice.card() * len, len);
    for (i, lambda) in lattice.enumerate().enumerate() {
        m.view_mut((i * len, 0), (len, len))
            .copy_from(translate_op(s, lambda).matrix());
    }
    Ok(m)
}

/// Singular values of the stacked analysis matrix, descending.
pub fn analysis_singular_values(s: &Op, lattice: &Lattice) -> Result<Vec<f64>> {
    let mut sv: Vec<f64> = analysis_matrix(s, lattice)?
        .singular_values()
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Whether `C_S` is injective: `sigma_min^2 > FRAME_EPS * sigma_max^2` on the
/// stacked analysis matrix. Uses the same scale-free threshold as
/// `frame_bounds`, since `sigma^2` are the eigenvalues of `S_S`.
pub fn injectivity_check(s: &Op, lattice: &Lattice) -> Result<bool> {
    let sv = analysis_singular_values(s, lattice)?;
    let (top, bottom) = (sv[0], *sv.last().expect("L >= 2"));
    Ok(top > 0.0 && bottom * bottom > FRAME_EPS * top * top)
}

/// Right singular vector of the stacked analysis matrix for the smallest
/// singular value: the direction least seen by `C_S`.
pub fn weakest_direction(s: &Op, lattice: &Lattice) -> Result<Signal> {
    let m = analysis_matrix(s, lattice)?;
    let dec = m.svd(false, true);
    let v_t = dec.v_t.expect("right vectors requested");
    let idx = dec
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("nonempty");
    Signal::new(v_t.row(idx).iter().map(|c| c.conj()).collect())
}

/// Cohen's class map `Q(z) = ||alpha_z(S) psi||^2` over all of phase space.
///
/// `||alpha_z(S) psi|| = ||S pi(z)^* psi||`, and for fixed `k` the vectors
/// `S pi(k,l)^* psi` are, up to a phase, a DFT in `l` of the rows of
/// `S[x][y] psi(y + k)`.
pub fn cohen_map(s: &Op, psi: &Signal) -> Result<PhaseTable<f64>> {
    s.check_dim(psi.len())?;
    let len = s.dim();
    let fft = FftPlanner::<f64>::new().plan_fft_forward(len);
    let mut q = vec![0.0; len * len];
    let mut row = vec![C64::new(0.0, 0.0); len];
    for k in 0..len {
        for x in 0..len {
            for (y, slot) in row.iter_mut().enumerate() {
                *slot = s.get(x, y) * psi[(y + k) % len];
            }
            fft.process(&mut row);
            for (l, v) in row.iter().enumerate() {
                q[k * len + l] += v.norm_sqr();
            }
        }
    }
    PhaseTable::from_vec(len, q)
}

/// Reference O(L^4) Cohen map applying each `alpha_z(S)` directly.
pub fn cohen_map_direct(s: &Op, psi: &Signal) -> Result<PhaseTable<f64>> {
    s.check_dim(psi.len())?;
    let len = s.dim();
    let mut out = Vec::with_capacity(len * len);
    for k in 0..len {
        for l in 0..len {
            out.push(apply_translated(s, PhasePoint::new(k, l), psi)?.norm_sqr());
        }
    }
    PhaseTable::from_vec(len, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::window_gaussian;
    use crate::tfcore::testutil::{random_op, random_signal};
    use crate::tfcore::{rank_one, stft, tf_shift};

    fn unit_gaussian_rank_one(len: usize) -> Op {
        let g = window_gaussian(len).unwrap();
        rank_one(&g, &g).unwrap()
    }

    #[test]
    fn periodize_identity_and_full_group() {
        let lat = Lattice::separable(6, 2, 3).unwrap();
        let id = Op::identity(6).unwrap();
        assert!(
            periodize(&id, &lat)
                .unwrap()
                .rel_diff(&id.scale_real(lat.card() as f64))
                < 1e-14
        );
        // Over the whole phase space the periodization is L tr(S) I.
        let s = random_op(5, 1);
        let full = periodize(&s, &Lattice::full(5).unwrap()).unwrap();
        let expected = Op::identity(5).unwrap().scale(s.trace() * 5.0);
        assert!(full.rel_diff(&expected) < 1e-12);
    }

    #[test]
    fn fast_periodization_matches_direct_sum() {
        let s = random_op(12, 21);
        for lattice in [
            Lattice::separable(12, 2, 3).unwrap(),
            Lattice::separable(12, 1, 12).unwrap(),
            Lattice::generated(12, &[PhasePoint::new(2, 1), PhasePoint::new(0, 4)]).unwrap(),
        ] {
            let fast = periodize(&s, &lattice).unwrap();
            assert!(fast.rel_diff(&periodize_direct(&s, &lattice).unwrap()) < 1e-13);
        }
    }

    #[test]
    fn periodization_is_periodic() {
        let lat = Lattice::separable(8, 2, 4).unwrap();
        let p = periodize(&random_op(8, 2), &lat).unwrap();
        for mu in lat.enumerate() {
            assert!(translate_op(&p, mu).rel_diff(&p) < 1e-12);
        }
    }

    #[test]
    fn janssen_matches_periodization() {
        for (len, a, b) in [(8, 2, 2), (6, 1, 3), (12, 3, 4), (5, 1, 5), (8, 8, 8)] {
            let lat = Lattice::separable(len, a, b).unwrap();
            let s = random_op(len, 7);
            let r = janssen_residual(&s, &lat).unwrap();
            assert!(r < 1e-12, "L={len} sep({a},{b}): {r}");
        }
        let g = Lattice::generated(8, &[PhasePoint::new(1, 2), PhasePoint::new(0, 4)]).unwrap();
        assert!(janssen_residual(&random_op(8, 9), &g).unwrap() < 1e-12);
    }

    #[test]
    fn janssen_of_identity_is_single_term() {
        let lat = Lattice::separable(6, 2, 3).unwrap();
        let j = janssen_rep(&Op::identity(6).unwrap(), &lat).unwrap();
        assert!(j.rel_diff(&Op::identity(6).unwrap().scale_real(6.0)) < 1e-14);
    }

    #[test]
    fn frame_operator_is_hermitian_and_sums_energies() {
        let len = 8;
        let lat = Lattice::separable(len, 2, 2).unwrap();
        let s = random_op(len, 3);
        let f = gframe_operator(&s, &lat).unwrap();
        assert!((&f - &f.adjoint()).hs_norm() <= 1e-12 * f.hs_norm());
        let psi = random_signal(len, 4);
        let quad = f.apply(&psi).unwrap().inner(&psi).unwrap();
        let energy = analysis(&s, &lat, &psi).unwrap().norm_sqr();
        assert!((quad.re - energy).abs() < 1e-10 * energy);
        assert!(quad.im.abs() < 1e-10 * energy);
    }

    #[test]
    fn rank_one_frame_operator_is_classical_gabor_frame_operator() {
        let len = 8;
        let lat = Lattice::separable(len, 2, 2).unwrap();
        let phi = window_gaussian(len).unwrap();
        let f = gframe_operator(&rank_one(&phi, &phi).unwrap(), &lat).unwrap();
        let psi = random_signal(len, 5);
        let v = stft(&psi, &phi).unwrap();
        let mut classical = Signal::zeros(len).unwrap();
        for lambda in lat.enumerate() {
            classical = classical
                .add(&phi.tf_shifted(lambda.k, lambda.l).scale(v[lambda]))
                .unwrap();
        }
        let ours = f.apply(&psi).unwrap();
        assert!(ours.sub(&classical).unwrap().norm() < 1e-12 * classical.norm());
    }

    #[test]
    fn zero_operator_is_not_a_frame() {
        let lat = Lattice::separable(6, 2, 2).unwrap();
        let r = frame_bounds(&Op::zeros(6).unwrap(), &lat).unwrap();
        assert_eq!((r.lower, r.upper, r.is_frame), (0.0, 0.0, false));
        assert!(r.tightness.is_infinite());
        assert!(r.dual_residual.is_none());
        assert!(!injectivity_check(&Op::zeros(6).unwrap(), &lat).unwrap());
        assert!(matches!(
            canonical_dual(&Op::zeros(6).unwrap(), &lat),
            Err(Error::NotAFrame { .. })
        ));
    }

    #[test]
    fn analysis_of_identity_and_rank_one() {
        let len = 6;
        let lat = Lattice::separable(len, 2, 3).unwrap();
        let psi = random_signal(len, 1);
        let c = analysis(&Op::identity(len).unwrap(), &lat, &psi).unwrap();
        assert!(c.vecs().iter().all(|v| v.sub(&psi).unwrap().norm() < 1e-13));

        let xi = random_signal(len, 2).normalized().unwrap();
        let phi = random_signal(len, 3);
        let c = analysis(&rank_one(&xi, &phi).unwrap(), &lat, &psi).unwrap();
        let v = stft(&psi, &phi).unwrap();
        for (lambda, vec) in c.iter() {
            assert!((vec.norm() - v[lambda].norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn synthesis_is_adjoint_of_analysis() {
        let len = 8;
        let lat = Lattice::separable(len, 2, 4).unwrap();
        let s = random_op(len, 11);
        for seed in 0..5 {
            let psi = random_signal(len, 100 + seed);
            let vecs = (0..lat.card())
                .map(|i| random_signal(len, 200 + 16 * seed + i as u64))
                .collect();
            let c = CoefSeq::new(lat.clone(), vecs).unwrap();
            let lhs = analysis(&s, &lat, &psi).unwrap().inner(&c).unwrap();
            let rhs = psi.inner(&synthesis(&s, &lat, &c).unwrap()).unwrap();
            assert!((lhs - rhs).norm() < 1e-10 * lhs.norm().max(1.0));
        }
        // D_S C_S = S_S
        let psi = random_signal(len, 9);
        let round = synthesis(&s, &lat, &analysis(&s, &lat, &psi).unwrap()).unwrap();
        let direct = gframe_operator(&s, &lat).unwrap().apply(&psi).unwrap();
        assert!(round.sub(&direct).unwrap().norm() < 1e-11 * direct.norm());
    }

    #[test]
    fn identity_synthesis_sums_coefficients() {
        let lat = Lattice::separable(4, 2, 2).unwrap();
        let vecs: Vec<Signal> = (0..4).map(|i| random_signal(4, i)).collect();
        let mut sum = Signal::zeros(4).unwrap();
        for v in &vecs {
            sum = sum.add(v).unwrap();
        }
        let c = CoefSeq::new(lat.clone(), vecs).unwrap();
        let out = synthesis(&Op::identity(4).unwrap(), &lat, &c).unwrap();
        assert!(out.sub(&sum).unwrap().norm() < 1e-13);
    }

    #[test]
    fn shape_errors() {
        let lat = Lattice::separable(4, 2, 2).unwrap();
        assert!(CoefSeq::new(lat.clone(), vec![]).is_err());
        let other = Lattice::separable(4, 1, 4).unwrap();
        let c = CoefSeq::zeros(&other);
        assert!(synthesis(&Op::identity(4).unwrap(), &lat, &c).is_err());
        let psi = random_signal(5, 1);
        assert!(analysis(&Op::identity(4).unwrap(), &lat, &psi).is_err());
    }

    #[test]
    fn canonical_dual_reconstructs() {
        let len = 12;
        let lat = Lattice::separable(len, 2, 3).unwrap();
        let s = unit_gaussian_rank_one(len);
        let r = canonical_dual(&s, &lat).unwrap();
        let sum = periodize(&(&s.adjoint() * &r), &lat).unwrap();
        assert!((&sum - &Op::identity(len).unwrap()).op_norm() <= 1e-9);
        let inv = frame_operator_inverse(&s, &lat).unwrap();
        let c = spreading_of(&inv);
        let adj = lat.adjoint();
        let off: f64 = c
            .table()
            .iter()
            .filter(|(z, _)| !adj.contains(*z))
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max);
        assert!(off <= 1e-9 * inv.hs_norm());
        let wr = wexler_raz_check(&s, &r, &lat).unwrap();
        assert!(wr.biorth_ok && wr.recon_ok);
    }

    #[test]
    fn tight_frame_dual_is_rescaling() {
        let len = 8;
        let lat = Lattice::separable(len, 4, 4).unwrap();
        let s = Op::identity(len).unwrap().scale_real(0.5);
        let report = frame_bounds(&s, &lat).unwrap();
        assert!((report.lower - report.upper).abs() < 1e-12);
        let r = canonical_dual(&s, &lat).unwrap();
        assert!(r.rel_diff(&s.scale_real(1.0 / report.lower)) < 1e-12);
        let half_inv = frame_operator_inverse_sqrt(&s, &lat).unwrap();
        let tight = &s * &half_inv;
        let tb = frame_bounds(&tight, &lat).unwrap();
        assert!((tb.lower - 1.0).abs() < 1e-12 && (tb.upper - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wexler_raz_full_lattice_scaling() {
        let len = 6;
        let lat = Lattice::full(len).unwrap();
        let s = unit_gaussian_rank_one(len);
        let wr = wexler_raz_check(&s, &s, &lat).unwrap();
        assert!(!wr.recon_ok && !wr.biorth_ok);
        let scaled = s.scale_real(1.0 / len as f64);
        let wr = wexler_raz_check(&s, &scaled, &lat).unwrap();
        assert!(wr.recon_ok && wr.biorth_ok);
        let zero = Op::zeros(len).unwrap();
        let wr = wexler_raz_check(&s, &zero, &lat).unwrap();
        assert!(!wr.recon_ok && !wr.biorth_ok);
    }

    #[test]
    fn janssen_test_on_trivial_cases() {
        let lat = Lattice::separable(6, 3, 3).unwrap();
        let t = janssen_sufficient(&Op::zeros(6).unwrap(), &lat).unwrap();
        assert!(!t.passes);
        let t = janssen_sufficient(&Op::identity(6).unwrap(), &lat).unwrap();
        assert!(t.passes);
        assert!((t.guaranteed_lower - lat.card() as f64).abs() < 1e-12);
    }

    #[test]
    fn janssen_test_fails_for_concentrated_off_origin_mass() {
        // S = I + pi(mu) with mu in the adjoint lattice: S^*S has equal mass
        // at 0 and +-mu, so the test cannot pass.
        let len = 8;
        let lat = Lattice::separable(len, 2, 2).unwrap();
        let mu = lat.adjoint().points()[1];
        let s = &Op::identity(len).unwrap() + &tf_shift(len, mu).unwrap();
        assert!(!janssen_sufficient(&s, &lat).unwrap().passes);
    }

    #[test]
    fn upper_bound_estimate_dominates() {
        let len = 8;
        let lat = Lattice::separable(len, 2, 2).unwrap();
        let s = random_op(len, 12);
        let b = frame_bounds(&s, &lat).unwrap().upper;
        assert!(b <= upper_bound_estimate(&s, &lat).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn sparse_lattice_cannot_span() {
        for len in 2..=8 {
            let lat = Lattice::separable(len, len, len).unwrap();
            let s = unit_gaussian_rank_one(len);
            assert!(!injectivity_check(&s, &lat).unwrap());
            assert!(!frame_bounds(&s, &lat).unwrap().is_frame);
            assert!(injectivity_check(&Op::identity(len).unwrap(), &lat).unwrap());
        }
    }

    #[test]
    fn cohen_map_paths_and_spectrogram() {
        let len = 8;
        let s = random_op(len, 2);
        let psi = random_signal(len, 3);
        let fast = cohen_map(&s, &psi).unwrap();
        let direct = cohen_map_direct(&s, &psi).unwrap();
        for (a, b) in fast.as_slice().iter().zip(direct.as_slice()) {
            assert!((a - b).abs() < 1e-10 * b.max(1.0));
        }
        let total: f64 = fast.as_slice().iter().sum();
        let expected = len as f64 * s.hs_norm_sqr() * psi.norm_sqr();
        assert!((total - expected).abs() <= 1e-10 * expected);

        let phi = window_gaussian(len).unwrap();
        let q = cohen_map(&rank_one(&phi, &phi).unwrap(), &psi).unwrap();
        let v = stft(&psi, &phi).unwrap();
        for (z, val) in q.iter() {
            assert!((val - v[z].norm_sqr()).abs() < 1e-11);
        }
        let zero = cohen_map(&s, &Signal::zeros(len).unwrap()).unwrap();
        assert!(zero.as_slice().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn report_kv_block() {
        let lat = Lattice::separable(4, 2, 2).unwrap();
        let r = frame_bounds(&Op::identity(4).unwrap(), &lat).unwrap();
        let kv = r.to_kv();
        assert!(kv.contains("A=4e0\n"));
        assert!(kv.contains("is_frame=true"));
    }
}
