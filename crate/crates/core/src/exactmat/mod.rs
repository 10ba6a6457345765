//! Exact linear algebra over ℚ, prime fields, ℤ and ℤ/m.
//!
//! Every rank, kernel and quotient computation in the crate goes through
//! this module. Nothing here touches floating point.

mod bits;
mod integer;
mod prime;
mod rational;
mod residue;

pub use bits::BitMatrix;
pub use integer::{IntegerMatrix, SmithDecomposition};
pub use prime::PrimeFieldMatrix;
pub use rational::{parse_rational, RationalMatrix};
pub use residue::{ResidueKernel, ResidueMatrix};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    Shape {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Extended gcd on signed integers: returns (g, s, t) with s·a + t·b = g ≥ 0.
pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, s, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(s.rem_euclid(m as i128) as u64)
}
