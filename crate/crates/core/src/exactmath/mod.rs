//! Exact arithmetic: rationals, sparse multivariate polynomials and dense
//! matrices over either.
//!
//! Everything downstream is generic over [`Ring`]; the two rings in use are
//! [`Rational`] (numeric runs) and [`MultiPoly`] (symbolic runs). `i64` is a
//! ring too and is used for the small integer matrices of edge systems.

mod matrix;
mod poly;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use matrix::{Echelon, ExactMatrix};
pub use poly::{Monomial, MultiPoly};
pub use rational::{int, parse_rational, random_rational, rat, Rational};

/// A commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// The quotient `self / divisor` if it exists in the ring.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;

    /// Determinant of a square matrix. Fraction-free Bareiss unless the
    /// ring overrides it.
    fn determinant(m: &ExactMatrix<Self>) -> Self {
        matrix::bareiss_det(m)
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Ring for Rational {
    fn from_i64(v: i64) -> Self {
        int(v)
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            None
        } else {
            Some(self / divisor)
        }
    }

    fn determinant(m: &ExactMatrix<Self>) -> Self {
        matrix::gaussian_det(m)
    }
}

impl Ring for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if *divisor == 0 || self % divisor != 0 {
            None
        } else {
            Some(self / divisor)
        }
    }
}
