//! Exact significant-digit rendering. Display only: nothing rendered here
//! ever feeds back into a computation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use patrace_core::Rational;

/// Renders `x` with `sig` significant digits, rounding half away from zero.
/// The walk to the leading digit and the rounding are done in exact
/// arithmetic, so the output is the correctly rounded decimal.
pub fn decimal(x: &Rational, sig: usize) -> String {
    assert!(sig >= 1, "need at least one significant digit");
    if x.is_zero() {
        return "0".to_string();
    }
    let a = x.abs();
    // estimate floor(log10 a) from digit counts, then correct it
    let mut exp = digit_count(a.numer()) as i64 - digit_count(a.denom()) as i64;
    while a >= pow10(exp + 1) {
        exp += 1;
    }
    while a < pow10(exp) {
        exp -= 1;
    }
    let scaled = &a * pow10(sig as i64 - 1 - exp);
    // floor(scaled + 1/2); operands are positive so this is half away from zero
    let mut mantissa: BigInt = (scaled.numer() * 2 + scaled.denom()) / (scaled.denom() * 2);
    if mantissa == big_pow10(sig) {
        mantissa = big_pow10(sig - 1);
        exp += 1;
    }
    let digits = mantissa.to_string();
    debug_assert_eq!(digits.len(), sig);
    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else if (exp as usize) < sig - 1 {
        let split = exp as usize + 1;
        format!("{}.{}", &digits[..split], &digits[split..])
    } else {
        format!("{}{}", digits, "0".repeat(exp as usize - (sig - 1)))
    };
    if x.is_negative() {
        format!("-{body}")
    } else {
        body
    }
}

/// Same rendering for floating-point statistics, via the exact binary
/// expansion of the double.
pub fn decimal_f64(v: f64, sig: usize) -> String {
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    decimal(&Rational::from_float(v).expect("finite doubles convert exactly"), sig)
}

fn digit_count(n: &BigInt) -> usize {
    n.magnitude().to_string().len()
}

fn pow10(k: i64) -> Rational {
    let p = BigInt::from(10).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

fn big_pow10(k: usize) -> BigInt {
    BigInt::from(10).pow(k as u32)
}
