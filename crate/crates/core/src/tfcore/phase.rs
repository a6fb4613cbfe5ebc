use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// A point `(k, l)` of the phase space `Z_L x Z_L`: time shift `k`,
/// frequency shift `l`. Coordinates are kept canonical in `[0, L)` by the
/// constructors that know `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhasePoint {
    pub k: usize,
    pub l: usize,
}

impl PhasePoint {
    pub const ORIGIN: PhasePoint = PhasePoint { k: 0, l: 0 };

    pub fn new(k: usize, l: usize) -> Self {
        Self { k, l }
    }

    /// Reduces possibly negative coordinates mod `len`.
    pub fn wrap(k: i64, l: i64, len: usize) -> Self {
        let m = len as i64;
        Self {
            k: k.rem_euclid(m) as usize,
            l: l.rem_euclid(m) as usize,
        }
    }

    pub fn reduce(self, len: usize) -> Self {
        Self::new(self.k % len, self.l % len)
    }

    pub fn add(self, other: PhasePoint, len: usize) -> Self {
        Self::new((self.k + other.k) % len, (self.l + other.l) % len)
    }

    pub fn neg(self, len: usize) -> Self {
        Self::new((len - self.k % len) % len, (len - self.l % len) % len)
    }

    pub fn sub(self, other: PhasePoint, len: usize) -> Self {
        self.add(other.neg(len), len)
    }

    pub fn is_origin(self) -> bool {
        self.k == 0 && self.l == 0
    }
}

impl fmt::Display for PhasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

/// `sigma(z1, z2) = l1 k2 - l2 k1 mod L`.
///
/// `pi(z1) pi(z2) = exp(2 pi i sigma(z1, z2) / L) pi(z2) pi(z1)`.
pub fn symplectic(z1: PhasePoint, z2: PhasePoint, len: usize) -> usize {
    let a = (z1.l % len) * (z2.k % len) % len;
    let b = (z2.l % len) * (z1.k % len) % len;
    (a + len - b) % len
}

/// A function on `Z_L x Z_L`, stored row-major in `k` then `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseTable<T> {
    len: usize,
    data: Vec<T>,
}

impl<T: Clone> PhaseTable<T> {
    pub fn filled(len: usize, value: T) -> Self {
        Self {
            len,
            data: vec![value; len * len],
        }
    }
}

impl<T> PhaseTable<T> {
    pub fn from_fn(len: usize, mut f: impl FnMut(PhasePoint) -> T) -> Self {
        let mut data = Vec::with_capacity(len * len);
        for k in 0..len {
            for l in 0..len {
                data.push(f(PhasePoint::new(k, l)));
            }
        }
        Self { len, data }
    }

    pub fn from_vec(len: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != len * len {
            return Err(Error::LengthMismatch {
                expected: len * len,
                found: data.len(),
            });
        }
        Ok(Self { len, data })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn get(&self, k: usize, l: usize) -> &T {
        &self.data[(k % self.len) * self.len + l % self.len]
    }

    pub fn iter(&self) -> impl Iterator<Item = (PhasePoint, &T)> {
        let len = self.len;
        self.data
            .iter()
            .enumerate()
            .map(move |(i, v)| (PhasePoint::new(i / len, i % len), v))
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> PhaseTable<U> {
        PhaseTable {
            len: self.len,
            data: self.data.iter().map(&mut f).collect(),
        }
    }
}

impl<T: Clone> PhaseTable<T> {
    /// `(T_w h)(z) = h(z - w)`.
    pub fn translated(&self, w: PhasePoint) -> Self {
        let len = self.len;
        Self::from_fn(len, |z| self[z.sub(w, len)].clone())
    }
}

impl<T> Index<PhasePoint> for PhaseTable<T> {
    type Output = T;

    fn index(&self, z: PhasePoint) -> &T {
        self.get(z.k, z.l)
    }
}

impl<T> IndexMut<PhasePoint> for PhaseTable<T> {
    fn index_mut(&mut self, z: PhasePoint) -> &mut T {
        let len = self.len;
        &mut self.data[(z.k % len) * len + z.l % len]
    }
}
