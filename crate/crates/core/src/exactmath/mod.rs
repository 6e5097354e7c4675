//! Exact arithmetic substrate: arbitrary-precision rationals, dense
//! univariate polynomials, rational functions with power-series expansion,
//! and determinants of square polynomial matrices.
//!
//! Everything here is exact. No floating point enters any computation;
//! decimal rendering is a display concern that lives with the callers.

mod matrix;
mod poly;
mod ratfn;

pub(crate) use matrix::det_rational;
pub use matrix::PolyMatrix;
pub use poly::Poly;
pub use ratfn::{RatFn, SeriesError};

/// Exact rational scalar. Stored canonically: the denominator is positive
/// and coprime with the numerator.
pub type Rational = num_rational::BigRational;

/// Shorthand for the exact fraction `n/d`.
///
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Shorthand for the exact integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Nearest double. Exists only for statistical comparisons and display;
/// nothing downstream of exact arithmetic depends on it.
pub fn to_f64(x: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(x).expect("rationals always round to a double")
}
