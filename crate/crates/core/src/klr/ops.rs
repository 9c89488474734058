use crate::exactmath::{ExactMatrix, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Sparse rational vector indexed by basis position.
pub type QVec = BTreeMap<usize, Rational>;

/// `x += c * y`.
pub fn axpy(x: &mut QVec, c: &Rational, y: &QVec) {
    for (k, v) in y {
        let t = c * v;
        match x.get_mut(k) {
            Some(slot) => {
                *slot += t;
                if slot.is_zero() {
                    x.remove(k);
                }
            }
            None => {
                if !t.is_zero() {
                    x.insert(*k, t);
                }
            }
        }
    }
}

pub fn unit(k: usize) -> QVec {
    QVec::from([(k, Rational::one())])
}

/// Linear map on a module with a fixed basis; column `j` is the image of
/// basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseOp {
    pub dim: usize,
    pub cols: Vec<QVec>,
}

impl SparseOp {
    pub fn zero(dim: usize) -> Self {
        SparseOp {
            dim,
            cols: vec![QVec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        SparseOp {
            dim,
            cols: (0..dim).map(unit).collect(),
        }
    }

    /// Diagonal projection onto the basis vectors selected by `keep`.
    pub fn projection(dim: usize, keep: impl Fn(usize) -> bool) -> Self {
        SparseOp {
            dim,
            cols: (0..dim)
                .map(|j| if keep(j) { unit(j) } else { QVec::new() })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, v: &QVec) -> QVec {
        let mut out = QVec::new();
        for (k, c) in v {
            axpy(&mut out, c, &self.cols[*k]);
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SparseOp) -> SparseOp {
        SparseOp {
            dim: self.dim,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &SparseOp) {
        for (x, y) in self.cols.iter_mut().zip(&other.cols) {
            axpy(x, c, y);
        }
    }

    pub fn scaled(&self, c: &Rational) -> SparseOp {
        let mut z = SparseOp::zero(self.dim);
        z.add_scaled(c, self);
        z
    }

    pub fn to_matrix(&self) -> ExactMatrix<Rational> {
        let mut m = ExactMatrix::new(self.dim, self.dim);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }
}
