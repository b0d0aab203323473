//! Arithmetic mod a prime: scalars, dense polynomials, truncated series.
//!
//! These types are kept outside the `Ring` trait on purpose. That trait
//! promises an embedding of the rationals, and F_p has none: a rational
//! with p in its denominator has no image. Reduction is therefore a
//! fallible operation (`BadReduction`) rather than a ring homomorphism,
//! and everything downstream that needs mod-p data goes through it
//! explicitly.
//!
//! Invariants:
//! - `Fp` values are always reduced to `0..p`; mixing moduli panics.
//! - `FpPoly` stores ascending coefficients and keeps no trailing zeros
//!   beyond a single constant. The zero polynomial is `[0]`.
//! - Primes are assumed small enough that `u64 * u64` fits in `u128`,
//!   which holds for every prime used here.

use crate::rat::QRat;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::fmt;

/// An element of F_p, reduced representative in 0..p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
    v: u64,
}

impl Fp {
    pub fn new(p: u64, v: i64) -> Self {
        let m = v.rem_euclid(p as i64) as u64;
        Fp { p, v: m }
    }

    pub fn from_u64(p: u64, v: u64) -> Self {
        Fp { p, v: v % p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn check(&self, other: &Fp) {
        assert_eq!(self.p, other.p, "mixed moduli {} and {}", self.p, other.p);
    }

    pub fn add(&self, other: &Fp) -> Fp {
        self.check(other);
        Fp { p: self.p, v: (self.v + other.v) % self.p }
    }

    pub fn sub(&self, other: &Fp) -> Fp {
        self.check(other);
        Fp { p: self.p, v: (self.v + self.p - other.v) % self.p }
    }

    pub fn neg(&self) -> Fp {
        Fp { p: self.p, v: if self.v == 0 { 0 } else { self.p - self.v } }
    }

    pub fn mul(&self, other: &Fp) -> Fp {
        self.check(other);
        let prod = (self.v as u128 * other.v as u128) % self.p as u128;
        Fp { p: self.p, v: prod as u64 }
    }

    pub fn pow(&self, mut e: u64) -> Fp {
        let mut base = *self;
        let mut acc = Fp { p: self.p, v: 1 % self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat; None at zero.
    pub fn inv(&self) -> Option<Fp> {
        if self.v == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }

    /// Reduce an exact rational mod p; fails when p divides the denominator.
    pub fn reduce(p: u64, q: &QRat) -> Result<Fp> {
        let pb = BigInt::from(p);
        let den = q.denom().mod_floor(&pb);
        if den.is_zero() {
            return Err(Error::BadReduction { prime: p, index: usize::MAX });
        }
        let num = q.numer().mod_floor(&pb);
        let n = num.to_u64().expect("reduced numerator fits u64");
        let d = den.to_u64().expect("reduced denominator fits u64");
        let dinv = Fp::from_u64(p, d).inv().expect("denominator unit mod p");
        Ok(Fp::from_u64(p, n).mul(&dinv))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

/// Dense polynomial over F_p, ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<i64>) -> Self {
        let c = coeffs.into_iter().map(|v| v.rem_euclid(p as i64) as u64).collect();
        FpPoly { p, coeffs: c }.trimmed()
    }

    pub fn from_residues(p: u64, coeffs: Vec<u64>) -> Self {
        let c = coeffs.into_iter().map(|v| v % p).collect();
        FpPoly { p, coeffs: c }.trimmed()
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![0] }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.len() > 1 && *self.coeffs.last().unwrap() == 0 {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(0);
        }
        self
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Reduce an exact rational polynomial coefficientwise. The failing
    /// coefficient index is reported so callers can tell a pole collision
    /// apart from a structural error.
    pub fn reduce(p: u64, coeffs: &[QRat]) -> Result<FpPoly> {
        let mut out = Vec::with_capacity(coeffs.len());
        for (i, q) in coeffs.iter().enumerate() {
            match Fp::reduce(p, q) {
                Ok(f) => out.push(f.value()),
                Err(_) => return Err(Error::BadReduction { prime: p, index: i }),
            }
        }
        Ok(FpPoly { p, coeffs: out }.trimmed())
    }

    fn check(&self, other: &FpPoly) {
        assert_eq!(self.p, other.p, "mixed moduli {} and {}", self.p, other.p);
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        self.check(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] = c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            out[i] = (out[i] + c) % self.p;
        }
        FpPoly { p: self.p, coeffs: out }.trimmed()
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        self.check(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] = c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            out[i] = (out[i] + self.p - c) % self.p;
        }
        FpPoly { p: self.p, coeffs: out }.trimmed()
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let t = (a as u128 * b as u128 + out[i + j] as u128) % self.p as u128;
                out[i + j] = t as u64;
            }
        }
        FpPoly { p: self.p, coeffs: out }.trimmed()
    }

    pub fn scale(&self, c: Fp) -> FpPoly {
        assert_eq!(self.p, c.p);
        let out = self
            .coeffs
            .iter()
            .map(|&a| ((a as u128 * c.v as u128) % self.p as u128) as u64)
            .collect();
        FpPoly { p: self.p, coeffs: out }.trimmed()
    }

    pub fn deriv(&self) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        let out = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| ((c as u128 * (i as u128 + 1)) % self.p as u128) as u64)
            .collect();
        FpPoly { p: self.p, coeffs: out }.trimmed()
    }

    pub fn pow(&self, e: u32) -> FpPoly {
        let mut acc = FpPoly::from_residues(self.p, vec![1]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Truncated power series over F_p: known coefficients for x^0..x^{prec-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPSeries {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPSeries {
    pub fn from_residues(p: u64, coeffs: Vec<u64>) -> Self {
        let c = coeffs.into_iter().map(|v| v % p).collect();
        ModPSeries { p, coeffs: c }
    }

    /// Reduce exact rational series coefficients mod p, reporting the first
    /// coefficient whose denominator p divides.
    pub fn reduce(p: u64, coeffs: &[QRat]) -> Result<ModPSeries> {
        let mut out = Vec::with_capacity(coeffs.len());
        for (i, q) in coeffs.iter().enumerate() {
            match Fp::reduce(p, q) {
                Ok(f) => out.push(f.value()),
                Err(_) => return Err(Error::BadReduction { prime: p, index: i }),
            }
        }
        Ok(ModPSeries { p, coeffs: out })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    fn check(&self, other: &ModPSeries) {
        assert_eq!(self.p, other.p, "mixed moduli {} and {}", self.p, other.p);
    }

    pub fn add(&self, other: &ModPSeries) -> ModPSeries {
        self.check(other);
        let n = self.prec().min(other.prec());
        let out = (0..n).map(|i| (self.coeffs[i] + other.coeffs[i]) % self.p).collect();
        ModPSeries { p: self.p, coeffs: out }
    }

    pub fn sub(&self, other: &ModPSeries) -> ModPSeries {
        self.check(other);
        let n = self.prec().min(other.prec());
        let out = (0..n)
            .map(|i| (self.coeffs[i] + self.p - other.coeffs[i]) % self.p)
            .collect();
        ModPSeries { p: self.p, coeffs: out }
    }

    pub fn mul(&self, other: &ModPSeries) -> ModPSeries {
        self.check(other);
        let n = self.prec().min(other.prec());
        let mut out = vec![0u64; n];
        for i in 0..n.min(self.coeffs.len()) {
            let a = self.coeffs[i];
            if a == 0 {
                continue;
            }
            for j in 0..(n - i).min(other.coeffs.len()) {
                let b = other.coeffs[j];
                if b == 0 {
                    continue;
                }
                let t = (a as u128 * b as u128 + out[i + j] as u128) % self.p as u128;
                out[i + j] = t as u64;
            }
        }
        ModPSeries { p: self.p, coeffs: out }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qr;

    #[test]
    fn scalar_arithmetic() {
        let p = 13;
        let a = Fp::new(p, -5);
        assert_eq!(a.value(), 8);
        assert_eq!(a.add(&Fp::new(p, 7)).value(), 2);
        assert_eq!(a.mul(&Fp::new(p, 2)).value(), 3);
        let i = a.inv().unwrap();
        assert_eq!(a.mul(&i).value(), 1);
        assert!(Fp::new(p, 0).inv().is_none());
    }

    #[test]
    fn rational_reduction() {
        // 1/2 mod 7 is 4; 1/7 mod 7 has no meaning
        assert_eq!(Fp::reduce(7, &qr(1, 2)).unwrap().value(), 4);
        assert_eq!(Fp::reduce(7, &qr(-3, 5)).unwrap().value(), 5);
        assert!(Fp::reduce(7, &qr(1, 7)).is_err());
        assert!(Fp::reduce(7, &qr(2, 21)).is_err());
    }

    #[test]
    fn poly_ops() {
        let p = 101;
        let f = FpPoly::new(p, vec![1, 2, 3]);
        let g = FpPoly::new(p, vec![5, 1]);
        let h = f.mul(&g);
        assert_eq!(h.coeffs(), &[5, 11, 17, 3]);
        assert_eq!(f.deriv().coeffs(), &[2, 6]);
        let z = f.sub(&f);
        assert!(z.is_zero());
        assert_eq!(z.coeffs(), &[0]);
    }

    #[test]
    fn series_reduction_reports_index() {
        let coeffs = vec![qr(1, 1), qr(1, 3), qr(1, 5)];
        match ModPSeries::reduce(5, &coeffs) {
            Err(crate::Error::BadReduction { prime, index }) => {
                assert_eq!(prime, 5);
                assert_eq!(index, 2);
            }
            other => panic!("expected BadReduction, got {other:?}"),
        }
        let ok = ModPSeries::reduce(7, &coeffs).unwrap();
        assert_eq!(ok.coeffs(), &[1, 5, 3]);
    }

    #[test]
    fn series_mul_truncates() {
        let p = 11;
        let a = ModPSeries::from_residues(p, vec![1, 1, 1, 1]);
        let b = a.mul(&a);
        assert_eq!(b.coeffs(), &[1, 2, 3, 4]);
    }
}
