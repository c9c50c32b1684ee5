use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator. Displays as `p/q`, or `p` when `q = 1`.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    input: alloc::string::String,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a rational literal (expected p/q or an integer): {:?}", self.input)
    }
}

impl core::error::Error for ParseRationalError {}

/// Parses `p/q` or an integer. Decimal and exponent forms are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError { input: s.into() };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (t, None),
    };
    let is_int = |x: &str| {
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num) || den.is_some_and(|q| !is_int(q)) {
        return Err(err());
    }
    let p = BigInt::from_str(num.trim_start_matches('+')).map_err(|_| err())?;
    let q = match den {
        Some(q) => BigInt::from_str(q.trim_start_matches('+')).map_err(|_| err())?,
        None => BigInt::from(1),
    };
    if q.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn display_is_p_over_q_with_sign_on_numerator() {
        assert_eq!(rat(3, -6).to_string(), "-1/2");
        assert_eq!(rat(4, 2).to_string(), "2");
        assert_eq!(int(0).to_string(), "0");
    }

    #[test]
    fn parse_accepts_fractions_and_integers() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("2/-3").unwrap(), rat(-2, 3));
    }

    #[test]
    fn parse_rejects_decimals_and_zero_denominators() {
        for bad in ["0.5", "1e3", "1/0", "", "/3", "abc", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn arithmetic_stays_normalized() {
        let x = rat(1, 6) + rat(1, 3);
        assert_eq!(x.numer(), &BigInt::from(1));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!((rat(2, 3) * rat(3, 4)).to_string(), "1/2");
    }
}
