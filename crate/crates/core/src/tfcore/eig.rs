use nalgebra::{DMatrix, SymmetricEigen};

use super::op::Op;
use super::signal::{Signal, C64};
use crate::error::{Error, Result};

/// Eigendecomposition of a Hermitian operator, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct Eigh {
    pub values: Vec<f64>,
    /// Column `i` is the eigenvector for `values[i]`.
    pub vectors: DMatrix<C64>,
}

impl Eigh {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().expect("dim >= 2")
    }

    pub fn vector(&self, i: usize) -> Signal {
        Signal::new(self.vectors.column(i).iter().copied().collect()).expect("dim >= 2")
    }

    /// `U f(D) U^*`.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> Op {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (j, &v) in self.values.iter().enumerate() {
            let fv = f(v);
            for i in 0..n {
                scaled[(i, j)] *= fv;
            }
        }
        Op::wrap(&scaled * self.vectors.adjoint())
    }
}

/// Hermitian eigensolver. Only the lower triangle is read, so callers pass
/// operators that are Hermitian up to rounding.
pub fn eigh(op: &Op) -> Result<Eigh> {
    let n = op.dim();
    let dec = SymmetricEigen::try_new(op.matrix().clone(), f64::EPSILON, 10_000 * n)
        .ok_or(Error::EigenFailure(n))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| dec.eigenvalues[a].total_cmp(&dec.eigenvalues[b]));
    let values = order.iter().map(|&i| dec.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| dec.eigenvectors[(r, order[c])]);
    Ok(Eigh { values, vectors })
}
