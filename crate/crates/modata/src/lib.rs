//! Exact verification, conversion, screening and classification of
//! Fourier matrices, Allen matrices and first eigenmatrices of C-algebras.

extern crate self as modata;

pub mod classify;
pub mod exactnum;
pub mod format;
pub mod screen;
pub mod tables;

use num_bigint::BigInt;

pub type Integer = BigInt;
pub type Rational = num_rational::Ratio<BigInt>;
pub type QuadNum = exactnum::Quad<BigInt>;
pub type Polynomial = exactnum::Poly<BigInt>;

#[cfg(test)]
#[path = "../tests/common/oracle.rs"]
mod oracle;
