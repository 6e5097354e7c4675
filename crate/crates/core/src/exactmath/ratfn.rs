//! Rational functions (ratios of polynomials) and their formal power series.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use super::{Poly, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    /// The denominator vanishes at `s = 0`, so no power-series expansion
    /// around the origin exists.
    #[error("denominator has zero constant term; no power series at s = 0")]
    ZeroConstantDenominator,
}

/// Ratio of two polynomials. Stored unreduced: no polynomial GCD is ever
/// cancelled, so the numerator and denominator stay exactly as constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    numer: Poly,
    denom: Poly,
}

impl RatFn {
    /// Panics if `denom` is the zero polynomial.
    pub fn new(numer: Poly, denom: Poly) -> Self {
        assert!(!denom.is_zero(), "rational function with zero denominator");
        RatFn { numer, denom }
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }

    pub fn denom(&self) -> &Poly {
        &self.denom
    }

    /// First `n_terms` coefficients of the formal power series around 0,
    /// computed by exact long division.
    pub fn series(&self, n_terms: usize) -> Result<Vec<Rational>, SeriesError> {
        let d0 = self.denom.coeff(0);
        if d0.is_zero() {
            return Err(SeriesError::ZeroConstantDenominator);
        }
        let mut out = Vec::with_capacity(n_terms);
        for n in 0..n_terms {
            let mut acc = self.numer.coeff(n);
            for k in 1..=n.min(self.denom.coeffs().len().saturating_sub(1)) {
                let c: &Rational = &out[n - k];
                acc -= self.denom.coeff(k) * c;
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numer, self.denom)
    }
}
