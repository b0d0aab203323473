//! The coefficient-ring abstraction used by the series engine.
//!
//! Every ring here is a commutative Q-algebra: rationals embed canonically
//! via `from_rat`, which is what lets one series implementation serve
//! rational, parameter-polynomial, parameter-rational-function and
//! cyclotomic coefficients alike. Prime fields stay outside this trait
//! (they are not Q-algebras) and get their own dense machinery in
//! `primefield`.
//!
//! Integers are the one deliberate exception: their embedding is partial,
//! accepting only integral rationals and panicking otherwise. The nome,
//! mirror and modular solution series all have integer coefficients, and
//! on those pipelines rational arithmetic spends nearly all of its time
//! normalizing fractions that are secretly integers. Running them over
//! `BigInt` removes that cost; any operation that would genuinely leave
//! the integers fails loudly instead of silently denormalizing.

use crate::rat::QRat;
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn neg(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Canonical image of a rational number.
    fn from_rat(q: &QRat) -> Self;
    /// Multiplicative inverse when the element is a unit.
    fn inv(&self) -> Option<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    /// Exact quotient self/other when one exists. The default handles
    /// fields; non-field rings override.
    fn exact_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
    fn mul_rat(&self, q: &QRat) -> Self {
        self.mul(&Self::from_rat(q))
    }
    fn mul_i64(&self, n: i64) -> Self {
        self.mul_rat(&crate::rat::qi(n))
    }
}

impl Ring for QRat {
    fn zero() -> Self {
        <QRat as Zero>::zero()
    }
    fn one() -> Self {
        <QRat as One>::one()
    }
    fn is_zero(&self) -> bool {
        <QRat as Zero>::is_zero(self)
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_rat(q: &QRat) -> Self {
        q.clone()
    }
    fn inv(&self) -> Option<Self> {
        if <QRat as Zero>::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        <BigInt as One>::one()
    }
    fn is_zero(&self) -> bool {
        <BigInt as Zero>::is_zero(self)
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_rat(q: &QRat) -> Self {
        assert!(
            q.denom().is_one(),
            "integer coefficients cannot hold {}",
            q
        );
        q.numer().clone()
    }
    fn inv(&self) -> Option<Self> {
        if self.is_one() || (-self).is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if <BigInt as Zero>::is_zero(other) || !<BigInt as Zero>::is_zero(&(self % other)) {
            None
        } else {
            Some(self / other)
        }
    }
    fn mul_rat(&self, q: &QRat) -> Self {
        let scaled = self * q.numer();
        assert!(
            <BigInt as Zero>::is_zero(&(&scaled % q.denom())),
            "inexact rational scale on integer coefficients"
        );
        scaled / q.denom()
    }
}
