//! Exact coefficient arithmetic and the polynomial/series containers every
//! other module builds on.
//!
//! The ground field is `Q`. Everything is generic over [`Coeff`], a
//! commutative `Q`-algebra with exact (partial) division, so the same code
//! runs over rationals, over polynomials in the `A`-variables and over
//! rational functions in them.

mod matrix;
mod monomial;
mod poly;
mod ratfunc;
mod series;
pub mod text;
mod var;
mod ypoly;

pub mod json;

pub use matrix::{adjugate, determinant, mat_mul, solve_linear_system};
pub use monomial::Monomial;
pub use poly::MultiPoly;
pub(crate) use ratfunc::rational_content;
pub use ratfunc::RationalFunction;
pub use series::TruncatedSeries;
pub use var::{Var, VarRegistry};
pub use ypoly::YSeriesPoly;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact arbitrary-precision fraction.
pub type Rational = num_rational::BigRational;

/// Coefficient ring: a commutative `Q`-algebra that is an integral domain.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    /// Multiplicative inverse, if `self` is a unit.
    fn inv(&self) -> Option<Self>;

    /// Exact quotient, `None` when `d` does not divide `self`.
    fn div_exact(&self, d: &Self) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn scale(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(q))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Marker for coefficient rings in which every nonzero element is a unit.
pub trait Field: Coeff {}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        (!Zero::is_zero(d)).then(|| self / d)
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

impl Field for Rational {}

/// `p/q` as a [`Rational`]. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `p` or `p/q` (optional sign, decimal digits only).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Exact decimal-string form `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
