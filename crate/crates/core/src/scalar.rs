//! Exact rational scalars.
//!
//! Every computation in this crate runs over ℚ with arbitrary-precision
//! integers; no rounding ever occurs. `BigRational` already keeps the
//! canonical form we need (reduced fraction, positive denominator), so the
//! scalar type is an alias plus a few constructors.

use num::{BigInt, BigRational, One, Zero};

pub type Scalar = BigRational;

/// The integer `n` as a scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// The fraction `p/q` as a scalar. Panics on `q == 0`.
pub fn frac(p: i64, q: i64) -> Scalar {
    assert!(q != 0, "zero denominator");
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `(-1)^e` for an integer exponent of either sign.
pub fn sign_pow(e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        one()
    } else {
        -one()
    }
}

/// Renders a scalar the way the file format and reports spell it:
/// `p` for integers, `p/q` otherwise.
pub fn render(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses the `p` / `p/q` spelling used by the file format.
pub fn parse(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(frac(2, 4), frac(1, 2));
        assert_eq!(frac(1, -2), frac(-1, 2));
        assert_eq!(render(&frac(-3, 6)), "-1/2");
        assert_eq!(render(&int(7)), "7");
    }

    #[test]
    fn parse_round_trip() {
        for text in ["0", "5", "-12", "3/4", "-7/13"] {
            let s = parse(text).unwrap();
            assert_eq!(render(&s), text);
        }
        assert!(parse("1/0").is_none());
        assert!(parse("x").is_none());
    }

    #[test]
    fn signs() {
        assert_eq!(sign_pow(0), one());
        assert_eq!(sign_pow(3), -one());
        assert_eq!(sign_pow(-1), -one());
        assert_eq!(sign_pow(-2), one());
    }
}
