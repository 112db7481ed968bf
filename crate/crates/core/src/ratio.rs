//! Helpers for exact rationals in the text formats used by the CLI and the
//! JSON payloads: rationals travel as `"p/q"` strings so no float
//! contamination enters exact pipelines.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Parse `"p/q"`, a bare integer, or a decimal literal into an exact
/// rational. Decimal literals are converted digit-exactly (`"0.25"` is
/// 1/4), not through floating point.
pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let invalid = || Error::InvalidFunction(format!("cannot parse rational from {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| invalid())?;
        let den: BigInt = den.trim().parse().map_err(|_| invalid())?;
        if den.is_zero() {
            return Err(invalid());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_part: BigInt = if int_part.is_empty() || int_part == "-" {
            BigInt::zero()
        } else {
            int_part.parse().map_err(|_| invalid())?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let digits: BigInt = frac_part.parse().map_err(|_| invalid())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = BigRational::new(digits, scale);
        let int = BigRational::from_integer(int_part.abs());
        let mag = int + frac;
        return Ok(if negative { -mag } else { mag });
    }
    let int: BigInt = s.parse().map_err(|_| invalid())?;
    Ok(BigRational::from_integer(int))
}

/// Render a rational as `"p/q"` (or `"p"` when the denominator is one).
pub fn format_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn ratio_from_u64(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio_from_i64(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `p/q` as an exact rational.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64()
        .unwrap_or_else(|| r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_ratio("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_ratio("-1/3").unwrap(), ratio(-1, 3));
        assert_eq!(parse_ratio("5").unwrap(), ratio(5, 1));
        assert_eq!(parse_ratio("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_ratio("-0.5").unwrap(), ratio(-1, 2));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x").is_err());
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_ratio(&ratio(6, 8)), "3/4");
        assert_eq!(format_ratio(&ratio(4, 2)), "2");
        assert_eq!(format_ratio(&ratio(-1, 2)), "-1/2");
    }
}
