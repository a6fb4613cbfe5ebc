//! Weighted vector-valued sequence norms on lattices and the norm
//! equivalence between g-frame coefficients and a reference STFT norm.

use crate::error::{Error, Result};
use crate::generators::window_gaussian;
use crate::gframe::{analysis, weakest_direction, CoefSeq};
use crate::lattice::Lattice;
use crate::tfcore::random::{gaussian_signal, seeded};
use crate::tfcore::{stft, Op, PhasePoint, PhaseTable, Signal, C64};

/// A strictly positive weight on `Z_L x Z_L`.
#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    Constant,
    /// `(1 + d(z))^s` with the wrap-around distance
    /// `d(k, l) = sqrt(min(k, L-k)^2 + min(l, L-l)^2)`.
    Polynomial(f64),
    Table(PhaseTable<f64>),
}

impl Weight {
    pub fn polynomial(s: f64) -> Result<Self> {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::InvalidWeight(format!(
                "polynomial exponent must be finite and >= 0, got {s}"
            )));
        }
        Ok(Weight::Polynomial(s))
    }

    pub fn table(values: PhaseTable<f64>) -> Result<Self> {
        if let Some((z, v)) = values.iter().find(|(_, v)| !(**v > 0.0 && v.is_finite())) {
            return Err(Error::InvalidWeight(format!(
                "weight must be positive and finite, got {v} at {z}"
            )));
        }
        Ok(Weight::Table(values))
    }

    /// Parses `const`, `poly:s`. Tables come from CSV files via the CLI.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec == "const" || spec == "1" {
            Ok(Weight::Constant)
        } else if let Some(s) = spec.strip_prefix("poly:") {
            let s: f64 = s
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("weight '{spec}': {e}")))?;
            Self::polynomial(s)
        } else {
            Err(Error::Parse(format!(
                "weight '{spec}': expected 'const' or 'poly:s'"
            )))
        }
    }

    /// Polynomial exponent for reports (0 for constant, NaN for tables).
    pub fn exponent(&self) -> f64 {
        match self {
            Weight::Constant => 0.0,
            Weight::Polynomial(s) => *s,
            Weight::Table(_) => f64::NAN,
        }
    }

    pub fn value(&self, z: PhasePoint, len: usize) -> f64 {
        match self {
            Weight::Constant => 1.0,
            Weight::Polynomial(s) => (1.0 + torus_distance(z, len)).powf(*s),
            Weight::Table(t) => t[z],
        }
    }

    /// `1 / m`, as a table on `Z_L x Z_L`.
    pub fn reciprocal(&self, len: usize) -> Weight {
        match self {
            Weight::Constant => Weight::Constant,
            _ => Weight::Table(PhaseTable::from_fn(len, |z| 1.0 / self.value(z, len))),
        }
    }
}

pub fn torus_distance(z: PhasePoint, len: usize) -> f64 {
    let k = (z.k % len).min(len - z.k % len) as f64;
    let l = (z.l % len).min(len - z.l % len) as f64;
    (k * k + l * l).sqrt()
}

fn check_exponent(p: f64) -> Result<()> {
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    Ok(())
}

/// `p' = p / (p - 1)`, with `1' = inf` and `inf' = 1`.
pub fn conjugate_exponent(p: f64) -> Result<f64> {
    check_exponent(p)?;
    Ok(if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    })
}

/// `(sum_i (a_i m_i)^p)^(1/p)` or `max_i a_i m_i` for `p = inf`.
fn weighted_lp(values: impl Iterator<Item = (f64, f64)>, p: f64) -> f64 {
    if p.is_infinite() {
        values.map(|(a, m)| a * m).fold(0.0, f64::max)
    } else if p == 1.0 {
        values.map(|(a, m)| a * m).sum()
    } else {
        values
            .map(|(a, m)| (a * m).powf(p))
            .sum::<f64>()
            .powf(1.0 / p)
    }
}

/// `||{psi_lambda}||_{l^p_m} = (sum_lambda ||psi_lambda||^p m(lambda)^p)^(1/p)`.
pub fn seq_norm(c: &CoefSeq, p: f64, m: &Weight) -> Result<f64> {
    check_exponent(p)?;
    let len = c.lattice().len();
    Ok(weighted_lp(
        c.iter().map(|(lambda, v)| (v.norm(), m.value(lambda, len))),
        p,
    ))
}

/// `sum_lambda <c_lambda, d_lambda>`.
pub fn holder_pairing(c: &CoefSeq, d: &CoefSeq) -> Result<C64> {
    c.inner(d)
}

/// `||c||_{l^{p'}_{1/m}} ||d||_{l^p_m}`, which dominates `|holder_pairing(c, d)|`.
pub fn holder_bound(c: &CoefSeq, d: &CoefSeq, p: f64, m: &Weight) -> Result<f64> {
    c.check_shape(d)?;
    let q = conjugate_exponent(p)?;
    let inv = m.reciprocal(c.lattice().len());
    Ok(seq_norm(c, q, &inv)? * seq_norm(d, p, m)?)
}

/// Weighted `l^p` norm of `V_g psi` over all of phase space.
pub fn reference_norm(psi: &Signal, p: f64, m: &Weight, window: &Signal) -> Result<f64> {
    check_exponent(p)?;
    let len = psi.len();
    let v = stft(psi, window)?;
    Ok(weighted_lp(
        v.iter().map(|(z, c)| (c.norm(), m.value(z, len))),
        p,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeKind {
    Random,
    /// Least-seen direction of the analysis operator.
    Weakest,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeRatio {
    pub index: usize,
    pub kind: ProbeKind,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormEquivalence {
    pub seed: u64,
    pub p: f64,
    pub ratios: Vec<ProbeRatio>,
    /// Empirical lower constant: smallest ratio over the probes.
    pub c_emp: f64,
    /// Empirical upper constant: largest ratio over the probes.
    pub d_emp: f64,
}

/// Ratios `||C_S psi||_{l^p_m} / ||V_g psi||_{l^p_m}` over seeded Gaussian
/// probes plus the weakest direction of `C_S`, with `g` the periodized
/// Gaussian.
pub fn norm_equivalence_experiment(
    s: &Op,
    lattice: &Lattice,
    p: f64,
    m: &Weight,
    probes: usize,
    seed: u64,
) -> Result<NormEquivalence> {
    let window = window_gaussian(s.dim())?;
    norm_equivalence_with_window(s, lattice, p, m, probes, seed, &window)
}

/// As [`norm_equivalence_experiment`] with a caller-chosen reference window.
pub fn norm_equivalence_with_window(
    s: &Op,
    lattice: &Lattice,
    p: f64,
    m: &Weight,
    probes: usize,
    seed: u64,
    window: &Signal,
) -> Result<NormEquivalence> {
    check_exponent(p)?;
    s.check_dim(lattice.len())?;
    s.check_dim(window.len())?;
    let window = window.normalized()?;
    let mut rng = seeded(seed);
    let mut inputs: Vec<(ProbeKind, Signal)> = (0..probes)
        .map(|_| (ProbeKind::Random, gaussian_signal(&mut rng, s.dim())))
        .collect();
    inputs.push((ProbeKind::Weakest, weakest_direction(s, lattice)?));

    let mut ratios = Vec::with_capacity(inputs.len());
    for (index, (kind, psi)) in inputs.into_iter().enumerate() {
        let num = seq_norm(&analysis(s, lattice, &psi)?, p, m)?;
        let den = reference_norm(&psi, p, m, &window)?;
        ratios.push(ProbeRatio {
            index,
            kind,
            ratio: num / den,
        });
    }
    let c_emp = ratios.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let d_emp = ratios.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(NormEquivalence {
        seed,
        p,
        ratios,
        c_emp,
        d_emp,
    })
}
