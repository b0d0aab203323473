//! Big-rational helpers shared across the crate.
//!
//! All exact coefficients bottom out in `QRat`, an arbitrary-precision
//! fraction kept reduced with positive denominator by `num-rational`.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type QRat = num_rational::Ratio<BigInt>;

/// Integer as a rational.
pub fn qi(n: i64) -> QRat {
    QRat::from_integer(BigInt::from(n))
}

/// Fraction n/d from machine words; d must be nonzero.
pub fn qr(n: i64, d: i64) -> QRat {
    QRat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "744", "-137/81" or "1/2". Whitespace around tokens is ignored.
pub fn parse_rat(s: &str) -> Result<QRat> {
    let s = s.trim();
    let err = || Error::ParseError { line: 0, msg: format!("bad rational `{s}`") };
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QRat::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| err())?;
        Ok(QRat::from_integer(n))
    }
}

/// "744" when the denominator is 1, otherwise "num/den".
pub fn fmt_rat(q: &QRat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact-scaled conversion to f64: the quotient is shifted into a ~96-bit
/// integer before the final floating division, so numerator and denominator
/// sizes far beyond f64 range do not overflow. Intended for O(1)-magnitude
/// ratios (convergence-radius estimates).
pub fn rat_to_f64(q: &QRat) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let neg = q.is_negative();
    let num = q.numer().abs();
    let den = q.denom().clone();
    let shift: i64 = 96 + den.bits() as i64 - num.bits() as i64;
    let scaled: BigInt = if shift >= 0 {
        (num << shift as u64) / &den
    } else {
        (num >> (-shift) as u64) / &den
    };
    let mut v = scaled.to_f64().unwrap_or(f64::MAX) * 2f64.powi(-shift as i32);
    if neg {
        v = -v;
    }
    v
}

/// Greatest common divisor of two nonnegative integers, gcd(0, n) = n.
pub fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::gcd(a, b)
}

/// Sign-and-magnitude decimal check used when comparing float-valued
/// fixtures: true when `v` rounds to `target` at `digits` significant
/// decimal digits.
pub fn agrees_to_sig_digits(v: f64, target: f64, digits: u32) -> bool {
    if target == 0.0 {
        return v.abs() < 10f64.powi(-(digits as i32));
    }
    if v.signum() != target.signum() {
        return false;
    }
    let scale = 10f64.powi(digits as i32 - 1 - target.abs().log10().floor() as i32);
    (v * scale).round() == (target * scale).round()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["744", "-137/81", "1/2", "0"] {
            let q = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&q), s);
        }
        assert_eq!(fmt_rat(&parse_rat("4/8").unwrap()), "1/2");
        assert_eq!(fmt_rat(&parse_rat("3/-9").unwrap()), "-1/3");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn float_conversion_handles_huge_entries() {
        // ratio of ~1500-bit numbers with a small quotient
        let big = BigInt::from(2).pow(1500u32) * 433u32;
        let q = QRat::new(big.clone(), big * 100000u32 / 433u32);
        let v = rat_to_f64(&q);
        assert!((v - 0.00433).abs() < 1e-7, "{v}");
        assert_eq!(rat_to_f64(&qr(-1, 4)), -0.25);
    }

    #[test]
    fn sig_digit_agreement() {
        assert!(agrees_to_sig_digits(-0.0043168104, -0.004316810242, 6));
        assert!(!agrees_to_sig_digits(-0.0043169, -0.004316810242, 6));
        assert!(!agrees_to_sig_digits(0.0043168, -0.004316810242, 6));
    }
}
