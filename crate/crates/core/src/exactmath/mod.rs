//! Exact scalars and exact sparse linear algebra.

mod cyclotomic;
mod laurent;
mod matrix;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, quantum_integer, Cyclotomic};
pub use laurent::{bar, Laurent};
pub use matrix::{
    inverse, pivot_columns, rank, rank_and_kernel, solve_unique, ExactMatrix, SparseVec,
};

use num_traits::{One, Zero};
use std::fmt::Debug;

/// Arbitrary precision rational number, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Build a rational from a small integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Build a rational `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Exact field operations shared by rationals and cyclotomic elements.
///
/// Cyclotomic elements carry their conductor, so constants are produced
/// relative to an existing element and mixing conductors is an error.
pub trait Field: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse; callers never pass zero.
    fn inv_ref(&self) -> Self;
    /// Label of the scalar field, used to reject mixed matrices.
    fn field_tag(&self) -> u64 {
        0
    }
    /// A unit available without a sample element, if the field has one.
    fn canonical_one() -> Option<Self> {
        None
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv_ref(&self) -> Self {
        self.recip()
    }
    fn canonical_one() -> Option<Self> {
        Some(Rational::one())
    }
}
