use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::CoreError;

/// Exact rational value: arbitrary-precision numerator and denominator.
///
/// Integers are rationals with denominator 1. Every permanent, sequence
/// value, and spectrum element in this workspace is an `ExactValue`; the
/// arithmetic never rounds.
pub type ExactValue = BigRational;

/// Parses a rational literal: `"p"` or `"p/q"` with optional leading sign.
pub fn parse_exact(text: &str) -> Result<ExactValue, CoreError> {
    let bad = |_| CoreError::Parse(format!("invalid rational literal {text:?}"));
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(bad)?;
            let den: BigInt = den.trim().parse().map_err(bad)?;
            if den.is_zero() {
                return Err(CoreError::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num: BigInt = text.trim().parse().map_err(bad)?;
            Ok(BigRational::from_integer(num))
        }
    }
}

/// Formats a rational as `"p"` when integral, `"p/q"` otherwise.
pub fn format_exact(value: &ExactValue) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Convenience constructor for small integer values.
pub fn from_i64(v: i64) -> ExactValue {
    BigRational::from_integer(BigInt::from(v))
}

/// Convenience constructor for small ratios.
pub fn from_ratio(num: i64, den: i64) -> ExactValue {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Best-effort `f64` view of an exact rational, for advisory output only.
pub fn to_f64_lossy(value: &ExactValue) -> f64 {
    // Scale into a range where numerator/denominator both fit in f64.
    let (mut num, mut den) = (value.numer().clone(), value.denom().clone());
    let limit = BigInt::from(1u64 << 52);
    while num.abs() > limit || den.abs() > limit {
        num >>= 16;
        den >>= 16;
        if den.is_zero() {
            den = BigInt::one();
        }
    }
    let num_f = num.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let den_f = den.to_string().parse::<f64>().unwrap_or(f64::NAN);
    num_f / den_f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_ratios() {
        assert_eq!(parse_exact("42").unwrap(), from_i64(42));
        assert_eq!(parse_exact("-7").unwrap(), from_i64(-7));
        assert_eq!(parse_exact("3/4").unwrap(), from_ratio(3, 4));
        assert_eq!(parse_exact("-6/8").unwrap(), from_ratio(-3, 4));
        assert!(parse_exact("1/0").is_err());
        assert!(parse_exact("x").is_err());
    }

    #[test]
    fn formats_reduced_forms() {
        assert_eq!(format_exact(&from_i64(-5)), "-5");
        assert_eq!(format_exact(&from_ratio(9, 16)), "9/16");
        assert_eq!(format_exact(&from_ratio(8, 4)), "2");
    }

    #[test]
    fn lossy_float_view_is_close() {
        let v = from_ratio(355, 113);
        assert!((to_f64_lossy(&v) - 3.14159).abs() < 1e-4);
    }
}
