//! Exact arithmetic over the rationals and quadratic fields.

mod parse;
mod poly;
mod quad;

use std::fmt;
use std::hash::Hash;

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use thiserror::Error;

pub use parse::{parse_quad, parse_rational, ParseError};
pub use poly::{Bound, Poly};
pub use quad::{arith, sqrt_in_field, ArithOp, Quad};

/// Integer backing for every exact type in the crate.
pub trait Int:
    Integer
    + Signed
    + Clone
    + Roots
    + FromPrimitive
    + ToPrimitive
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Int for T where
    T: Integer
        + Signed
        + Clone
        + Roots
        + FromPrimitive
        + ToPrimitive
        + Hash
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("operands live in different fields (disc {left} vs {right})")]
    DiscMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
}

/// Splits `n` as `m^2 * f` with `f` squarefree and carrying the sign of `n`.
pub fn squarefree_split<T: Int>(n: &T) -> (T, T) {
    if n.is_zero() {
        return (T::one(), T::zero());
    }
    let mut rest = n.abs();
    let mut square = T::one();
    let mut free = T::one();
    let mut p = T::from_u32(2).unwrap();
    while p.clone() * p.clone() <= rest {
        let mut count = 0u32;
        while rest.is_multiple_of(&p) {
            rest = rest / p.clone();
            count += 1;
        }
        for _ in 0..count / 2 {
            square = square * p.clone();
        }
        if count % 2 == 1 {
            free = free * p.clone();
        }
        p = p + T::one();
    }
    free = free * rest;
    if n.is_negative() {
        free = -free;
    }
    (square, free)
}

/// Exact square root of a nonnegative rational, if it is a rational square.
pub fn rational_sqrt<T: Int>(q: &Ratio<T>) -> Option<Ratio<T>> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if n.clone() * n.clone() == *q.numer() && d.clone() * d.clone() == *q.denom() {
        Some(Ratio::new(n, d))
    } else {
        None
    }
}

/// True when `q` is the square of a rational integer.
pub fn is_integer_square<T: Int>(q: &Ratio<T>) -> bool {
    q.is_integer() && rational_sqrt(q).is_some()
}
