//! The cyclotomic field Q[w]/Phi_N(w) with exact rational coordinates.
//!
//! Elements are reduced modulo the N-th cyclotomic polynomial, never modulo
//! x^N - 1, so the representation has exactly phi(N) coordinates and w
//! really has multiplicative order N. Rational constants are carried at
//! order 1 and promoted on contact; mixing two orders > 1 is a programming
//! error and panics.

use crate::rat::QRat;
use crate::ring::Ring;
use std::fmt;

/// Euler phi for small arguments.
pub fn phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if m > 1 {
        result = result / m * (m - 1);
    }
    result
}

/// Ascending coefficients of the N-th cyclotomic polynomial (monic, exact).
/// Computed as (x^n - 1) divided by the product of the lower Phi_d.
pub fn cyclotomic_poly(n: u32) -> Vec<QRat> {
    assert!(n >= 1);
    if n == 1 {
        return vec![-QRat::one(), QRat::one()];
    }
    let mut num = vec![QRat::zero(); n as usize + 1];
    num[0] = -QRat::one();
    num[n as usize] = QRat::one();
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

/// Exact division of univariate polynomials (ascending coefficients); the
/// divisor must divide evenly, which holds for every call site here.
fn poly_div_exact(a: &[QRat], b: &[QRat]) -> Vec<QRat> {
    let mut rem: Vec<QRat> = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    assert!(!lead.is_zero());
    let da = rem.len() - 1;
    assert!(da >= db);
    let mut quot = vec![QRat::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = bc * &c;
            rem[k + i] -= t;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
    quot
}

#[derive(Clone, Debug)]
pub struct Cyclo {
    order: u32,
    /// Coordinates on 1, w, ..., w^{phi(order)-1}.
    coords: Vec<QRat>,
}

impl Cyclo {
    pub fn constant(order: u32, q: QRat) -> Self {
        let d = phi(order) as usize;
        let mut coords = vec![QRat::zero(); d.max(1)];
        coords[0] = q;
        Cyclo { order, coords }
    }

    /// w itself, a primitive order-th root of unity.
    pub fn omega(order: u32) -> Self {
        Cyclo::from_omega_poly(order, &[QRat::zero(), QRat::one()])
    }

    pub fn omega_pow(order: u32, k: i64) -> Self {
        let k = k.rem_euclid(order as i64) as u32;
        let mut coeffs = vec![QRat::zero(); k as usize + 1];
        coeffs[k as usize] = QRat::one();
        Cyclo::from_omega_poly(order, &coeffs)
    }

    /// Element given as a polynomial in w (any length); reduced mod Phi_N.
    pub fn from_omega_poly(order: u32, coeffs: &[QRat]) -> Self {
        let modulus = cyclotomic_poly(order);
        let d = modulus.len() - 1;
        let mut rem: Vec<QRat> = coeffs.to_vec();
        while rem.len() > d {
            let top = rem.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = rem.len() - d;
            // subtract top * x^k * (Phi - x^d), i.e. fold the leading term
            for i in 0..d {
                let t = &modulus[i] * &top;
                rem[k + i] -= t;
            }
        }
        rem.resize(d.max(1), QRat::zero());
        Cyclo { order, coords: rem }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[QRat] {
        &self.coords
    }

    /// Rational part when the element is a constant, else None.
    pub fn as_rat(&self) -> Option<QRat> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn promoted(&self, order: u32) -> Self {
        if self.order == order {
            return self.clone();
        }
        assert_eq!(self.order, 1, "mixed cyclotomic orders {} and {}", self.order, order);
        Cyclo::constant(order, self.coords[0].clone())
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        let order = self.order.max(other.order);
        (self.promoted(order), other.promoted(order))
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.align(other);
        a.coords == b.coords
    }
}

impl Ring for Cyclo {
    fn zero() -> Self {
        Cyclo::constant(1, QRat::zero())
    }
    fn one() -> Self {
        Cyclo::constant(1, QRat::one())
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
    fn neg(&self) -> Self {
        Cyclo { order: self.order, coords: self.coords.iter().map(|c| -c.clone()).collect() }
    }
    fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.align(other);
        for (x, y) in a.coords.iter_mut().zip(b.coords.iter()) {
            *x += y;
        }
        a
    }
    fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        let mut prod = vec![QRat::zero(); a.coords.len() + b.coords.len()];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        Cyclo::from_omega_poly(a.order, &prod)
    }
    fn from_rat(q: &QRat) -> Self {
        Cyclo::constant(1, q.clone())
    }
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        if self.order == 1 {
            return Some(Cyclo::constant(1, self.coords[0].recip()));
        }
        // extended euclid in Q[x] against Phi_N: s*self + t*Phi = 1
        let modulus = cyclotomic_poly(self.order);
        let (g, s) = xgcd_mod(&self.coords, &modulus);
        // self is nonzero in a field extension, so g is a nonzero constant
        let c = g[0].clone();
        debug_assert!(g[1..].iter().all(|x| x.is_zero()));
        let coeffs: Vec<QRat> = s.iter().map(|x| x / &c).collect();
        Some(Cyclo::from_omega_poly(self.order, &coeffs))
    }
}

/// Returns (gcd, s) with s*a = gcd mod m, for univariate rational polys.
fn xgcd_mod(a: &[QRat], m: &[QRat]) -> (Vec<QRat>, Vec<QRat>) {
    let trim = |v: &mut Vec<QRat>| {
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
    };
    let mut r0: Vec<QRat> = m.to_vec();
    let mut r1: Vec<QRat> = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<QRat> = vec![QRat::zero()];
    let mut s1: Vec<QRat> = vec![QRat::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        trim(&mut r1);
    }
    (r0, s0)
}

fn poly_mul(a: &[QRat], b: &[QRat]) -> Vec<QRat> {
    let mut out = vec![QRat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[QRat], b: &[QRat]) -> Vec<QRat> {
    let n = a.len().max(b.len());
    let mut out = vec![QRat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

fn poly_divmod(a: &[QRat], b: &[QRat]) -> (Vec<QRat>, Vec<QRat>) {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (vec![QRat::zero()], rem);
    }
    let mut quot = vec![QRat::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = bc * &c;
            rem[k + i] -= t;
        }
        quot[k] = c;
    }
    rem.truncate(db.max(1));
    (quot, rem)
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Ring::is_zero(self) {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = crate::rat::fmt_rat(c);
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{s}")?,
                1 => write!(f, "({s})*w")?,
                _ => write!(f, "({s})*w^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qi;

    #[test]
    fn phi_and_polynomials() {
        assert_eq!(phi(1), 1);
        assert_eq!(phi(2), 1);
        assert_eq!(phi(3), 2);
        assert_eq!(phi(4), 2);
        assert_eq!(phi(5), 4);
        assert_eq!(phi(12), 4);
        // Phi_3 = 1 + x + x^2, Phi_4 = 1 + x^2, Phi_6 = 1 - x + x^2
        assert_eq!(cyclotomic_poly(3), vec![qi(1), qi(1), qi(1)]);
        assert_eq!(cyclotomic_poly(4), vec![qi(1), qi(0), qi(1)]);
        assert_eq!(cyclotomic_poly(6), vec![qi(1), qi(-1), qi(1)]);
    }

    #[test]
    fn omega_reduction_examples() {
        // order 3: w^2 + w reduces to -1
        let w = Cyclo::omega(3);
        let s = Ring::add(&Ring::mul(&w, &w), &w);
        assert_eq!(s.as_rat().unwrap(), qi(-1));
        // order 4: w^3 = -w
        let w4 = Cyclo::omega(4);
        let c = Ring::mul(&Ring::mul(&w4, &w4), &w4);
        assert_eq!(c, Ring::neg(&w4));
    }

    #[test]
    fn omega_has_exact_order() {
        for n in [2u32, 3, 4, 5, 6, 8, 12, 13] {
            let w = Cyclo::omega(n);
            let mut p = Cyclo::one();
            for k in 1..=n {
                p = Ring::mul(&p, &w);
                let is_one = p == Cyclo::one();
                assert_eq!(is_one, k == n, "order {n}, power {k}");
            }
        }
    }

    #[test]
    fn prime_order_power_sum_vanishes() {
        for n in [3u32, 5, 7, 13] {
            let mut s = Cyclo::one();
            for k in 1..n {
                s = Ring::add(&s, &Cyclo::omega_pow(n, k as i64));
            }
            assert!(Ring::is_zero(&s), "sum of all order-{n} roots");
        }
    }

    #[test]
    fn field_inverse() {
        let w = Cyclo::omega(5);
        let x = Ring::add(&Ring::mul(&w, &w), &Ring::sub(&w, &Cyclo::constant(5, qi(3))));
        let i = Ring::inv(&x).unwrap();
        assert_eq!(Ring::mul(&x, &i), Cyclo::one());
    }
}
