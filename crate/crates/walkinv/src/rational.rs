//! Exact rational scalars.
//!
//! Every invariant of a finite connected graph handled by this crate is a
//! rational number, so all verification paths work over arbitrary-precision
//! rationals. Floating point only appears in the Monte Carlo module.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_i(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Rational from an unsigned count.
pub fn rat_u(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Rational `p / q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Renders a rational as `"p"` when integral and `"p/q"` otherwise.
///
/// This is the wire form used in all JSON reports; JSON numbers cannot
/// represent big rationals faithfully.
pub fn frac_string(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses the output of [`frac_string`].
pub fn parse_frac(s: &str) -> Option<Rational> {
    let mut parts = s.splitn(2, '/');
    let numer: BigInt = parts.next()?.trim().parse().ok()?;
    let denom: BigInt = match parts.next() {
        Some(d) => d.trim().parse().ok()?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return None;
    }
    Some(Rational::new(numer, denom))
}

/// Approximate decimal value, for human-facing convenience fields only.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Out-of-range big rationals: fall back on the sign.
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_string_integral_and_fractional() {
        assert_eq!(frac_string(&rat_i(4)), "4");
        assert_eq!(frac_string(&rat(2, 3)), "2/3");
        assert_eq!(frac_string(&rat(-6, 4)), "-3/2");
    }

    #[test]
    fn parse_frac_round_trip() {
        for s in ["0", "7", "-3", "2/3", "-14/6", "16807/6"] {
            let x = parse_frac(s).unwrap();
            assert_eq!(parse_frac(&frac_string(&x)).unwrap(), x);
        }
        assert!(parse_frac("1/0").is_none());
        assert!(parse_frac("a/b").is_none());
    }

    #[test]
    fn to_f64_matches() {
        assert_eq!(to_f64(&rat(1, 2)), 0.5);
        assert_eq!(to_f64(&rat_i(-3)), -3.0);
    }
}
