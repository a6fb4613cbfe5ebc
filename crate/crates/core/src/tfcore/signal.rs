use std::ops::Index;

use num_complex::Complex;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// A finite signal in `C^L`, `L >= 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Signal {
    data: Vec<C64>,
}

impl Signal {
    pub fn new(data: Vec<C64>) -> Result<Self> {
        if data.len() < 2 {
            return Err(Error::TooShort(data.len()));
        }
        Ok(Self { data })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| C64::new(v, 0.0)).collect())
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::new(vec![C64::new(0.0, 0.0); len])
    }

    /// Standard basis vector `e_index`.
    pub fn basis(len: usize, index: usize) -> Result<Self> {
        let mut s = Self::zeros(len)?;
        s.data[index % len] = C64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    /// `<self, other> = sum_t self(t) conj(other(t))`.
    pub fn inner(&self, other: &Signal) -> Result<C64> {
        self.check_len(other.len())?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, factor: C64) -> Signal {
        Signal {
            data: self.data.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn normalized(&self) -> Result<Signal> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroWindow);
        }
        Ok(self.scale(C64::new(1.0 / n, 0.0)))
    }

    pub fn add(&self, other: &Signal) -> Result<Signal> {
        self.check_len(other.len())?;
        Ok(Signal {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Signal) -> Result<Signal> {
        self.check_len(other.len())?;
        Ok(Signal {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// `(pi(k,l) self)(t) = exp(2 pi i l t / L) self(t - k)`, computed in O(L).
    pub fn tf_shifted(&self, k: usize, l: usize) -> Signal {
        let len = self.len();
        let (k, l) = (k % len, l % len);
        let data = (0..len)
            .map(|t| {
                let phase = (l * t) % len;
                unit_root(phase, len) * self.data[(t + len - k) % len]
            })
            .collect();
        Signal { data }
    }

    pub(crate) fn check_len(&self, other: usize) -> Result<()> {
        if self.len() != other {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other,
            });
        }
        Ok(())
    }
}

impl Index<usize> for Signal {
    type Output = C64;

    fn index(&self, index: usize) -> &C64 {
        &self.data[index]
    }
}

/// `exp(2 pi i n / len)` with `n` reduced mod `len` first, which keeps
/// the argument in `[0, 2 pi)` and the phase table exact under reindexing.
pub fn unit_root(n: usize, len: usize) -> C64 {
    let n = n % len;
    let theta = 2.0 * std::f64::consts::PI * (n as f64) / (len as f64);
    C64::from_polar(1.0, theta)
}
