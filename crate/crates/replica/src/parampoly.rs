//! Polynomials and rational functions in named parameters over Q.
//!
//! `ParamPoly` is a sparse multivariate polynomial with an ordered variable
//! list and a map from exponent tuples to nonzero rational coefficients.
//! Invariants kept by every constructor and operation:
//!
//! * variable names are sorted and deduplicated,
//! * exponent vectors have exactly one entry per variable,
//! * no stored coefficient is zero,
//! * variables that no term uses are dropped (canonical form, so `==` is
//!   structural equality).
//!
//! `ParamRat` is a quotient of two `ParamPoly`s. Normalization is cheap on
//! purpose: integer content and common monomial factors are stripped and one
//! exact-division attempt is made, but no polynomial gcd is ever computed.
//! Equality is decided by cross-multiplication.

use crate::rat::{fmt_rat, qi, QRat};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::Signed;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, QRat>,
}

impl ParamPoly {
    pub fn zero_poly() -> Self {
        ParamPoly { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn constant(q: QRat) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Vec::new(), q);
        }
        ParamPoly { vars: Vec::new(), terms }
    }

    /// The variable `name` itself.
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1u32], QRat::one());
        ParamPoly { vars: vec![name.to_string()], terms }
    }

    /// c * name^k.
    pub fn monomial(name: &str, k: u32, c: QRat) -> Self {
        if c.is_zero() || k == 0 {
            return ParamPoly::constant(c);
        }
        let mut terms = BTreeMap::new();
        terms.insert(vec![k], c);
        ParamPoly { vars: vec![name.to_string()], terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    /// The constant value when `is_constant`, else None.
    pub fn as_rat(&self) -> Option<QRat> {
        if self.terms.is_empty() {
            return Some(QRat::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    /// Drops variables no term uses and re-sorts; restores canonical form.
    fn compress(mut self) -> Self {
        if self.terms.is_empty() {
            return ParamPoly::zero_poly();
        }
        let n = self.vars.len();
        let mut used = vec![false; n];
        for exps in self.terms.keys() {
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        if used.iter().all(|&u| u) {
            return self;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        let vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut terms = BTreeMap::new();
        for (exps, c) in std::mem::take(&mut self.terms) {
            let e: Vec<u32> = keep.iter().map(|&i| exps[i]).collect();
            terms.insert(e, c);
        }
        ParamPoly { vars, terms }
    }

    /// Rewrites both polynomials over the union of their variable lists.
    fn aligned(&self, other: &Self) -> (Vec<String>, BTreeMap<Vec<u32>, QRat>, BTreeMap<Vec<u32>, QRat>) {
        if self.vars == other.vars {
            return (self.vars.clone(), self.terms.clone(), other.terms.clone());
        }
        let mut vars: Vec<String> = self.vars.iter().chain(other.vars.iter()).cloned().collect();
        vars.sort();
        vars.dedup();
        let remap = |p: &ParamPoly| -> BTreeMap<Vec<u32>, QRat> {
            let idx: Vec<usize> = p
                .vars
                .iter()
                .map(|v| vars.iter().position(|w| w == v).unwrap())
                .collect();
            p.terms
                .iter()
                .map(|(exps, c)| {
                    let mut e = vec![0u32; vars.len()];
                    for (i, &x) in exps.iter().enumerate() {
                        e[idx[i]] = x;
                    }
                    (e, c.clone())
                })
                .collect()
        };
        let a = remap(self);
        let b = remap(other);
        (vars, a, b)
    }

    pub fn scale(&self, q: &QRat) -> Self {
        if q.is_zero() {
            return ParamPoly::zero_poly();
        }
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect();
        ParamPoly { vars: self.vars.clone(), terms: terms }.compress()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = ParamPoly::constant(QRat::one());
        for _ in 0..k {
            acc = Ring::mul(&acc, self);
        }
        acc
    }

    /// Partial derivative with respect to `name`; zero if the variable is
    /// absent.
    pub fn deriv(&self, name: &str) -> Self {
        let Some(i) = self.vars.iter().position(|v| v == name) else {
            return ParamPoly::zero_poly();
        };
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            if exps[i] == 0 {
                continue;
            }
            let mut e = exps.clone();
            let k = e[i];
            e[i] -= 1;
            let v = c * qi(k as i64);
            merge_term(&mut terms, e, v);
        }
        ParamPoly { vars: self.vars.clone(), terms }.compress()
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        let Some(i) = self.vars.iter().position(|v| v == name) else {
            return 0;
        };
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Coefficient of `name^k`, a polynomial in the remaining variables.
    pub fn coeff_of(&self, name: &str, k: u32) -> Self {
        let Some(i) = self.vars.iter().position(|v| v == name) else {
            return if k == 0 { self.clone() } else { ParamPoly::zero_poly() };
        };
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            if exps[i] != k {
                continue;
            }
            let mut e = exps.clone();
            e[i] = 0;
            terms.insert(e, c.clone());
        }
        ParamPoly { vars: self.vars.clone(), terms }.compress()
    }

    /// Full evaluation; every variable must be assigned.
    pub fn eval(&self, assign: &BTreeMap<String, QRat>) -> QRat {
        let points: Vec<&QRat> = self
            .vars
            .iter()
            .map(|v| assign.get(v).unwrap_or_else(|| panic!("unassigned parameter `{v}`")))
            .collect();
        let mut acc = QRat::zero();
        for (exps, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    t *= points[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes a polynomial for one variable.
    pub fn subst(&self, name: &str, value: &ParamPoly) -> Self {
        let Some(i) = self.vars.iter().position(|v| v == name) else {
            return self.clone();
        };
        // group by exponent of `name`, Horner over the grouped coefficients
        let dmax = self.degree_in(name);
        let mut by_deg: Vec<ParamPoly> = vec![ParamPoly::zero_poly(); dmax as usize + 1];
        for (exps, c) in &self.terms {
            let k = exps[i] as usize;
            let mut e = exps.clone();
            e[i] = 0;
            let part = ParamPoly { vars: self.vars.clone(), terms: BTreeMap::from([(e, c.clone())]) }.compress();
            by_deg[k] = Ring::add(&by_deg[k], &part);
        }
        let mut acc = by_deg[dmax as usize].clone();
        for k in (0..dmax as usize).rev() {
            acc = Ring::add(&Ring::mul(&acc, value), &by_deg[k]);
        }
        acc
    }

    /// Simultaneous substitution: every listed variable is replaced by its
    /// image at once, so images may mention the variables being replaced.
    /// Unlisted variables stay themselves.
    pub fn subst_simul(&self, map: &BTreeMap<String, ParamPoly>) -> Self {
        let mut acc = ParamPoly::zero_poly();
        for (exps, c) in &self.terms {
            let mut term = ParamPoly::constant(c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = &self.vars[i];
                let base = map
                    .get(v)
                    .cloned()
                    .unwrap_or_else(|| ParamPoly::var(v));
                term = Ring::mul(&term, &base.pow(e));
            }
            acc = Ring::add(&acc, &term);
        }
        acc
    }

    /// Exact multivariate division; None when the division leaves a
    /// remainder. Uses plain lexicographic leading-term elimination, which
    /// terminates with zero remainder exactly when `other` divides `self`.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.terms.is_empty() {
            return None;
        }
        if self.terms.is_empty() {
            return Some(ParamPoly::zero_poly());
        }
        let (vars, a, b) = self.aligned(other);
        let (lt_e, lt_c) = b.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut rem = a;
        let mut quot: BTreeMap<Vec<u32>, QRat> = BTreeMap::new();
        while let Some((re, rc)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let mut qe = Vec::with_capacity(re.len());
            for (x, y) in re.iter().zip(lt_e.iter()) {
                if x < y {
                    return None;
                }
                qe.push(x - y);
            }
            let qc = &rc / &lt_c;
            // rem -= (qc * X^qe) * b
            for (be, bc) in &b {
                let e: Vec<u32> = be.iter().zip(qe.iter()).map(|(x, y)| x + y).collect();
                let delta = -(bc * &qc);
                merge_term(&mut rem, e, delta);
            }
            merge_term(&mut quot, qe, qc);
        }
        Some(ParamPoly { vars, terms: quot }.compress())
    }

    /// Rational content: the positive rational c with self = c * (integer
    /// polynomial with coprime coefficients). Zero polynomial gives 1.
    pub fn content(&self) -> QRat {
        if self.terms.is_empty() {
            return QRat::one();
        }
        let mut num_gcd = BigInt::from(0);
        let mut den_lcm = BigInt::from(1);
        for c in self.terms.values() {
            num_gcd = crate::rat::big_gcd(&num_gcd, &c.numer().abs());
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
        QRat::new(num_gcd, den_lcm)
    }

    /// Leading coefficient in lexicographic term order.
    pub fn lead_coeff(&self) -> QRat {
        self.terms.values().next_back().cloned().unwrap_or_else(QRat::zero)
    }
}

fn merge_term(map: &mut BTreeMap<Vec<u32>, QRat>, e: Vec<u32>, c: QRat) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl Ring for ParamPoly {
    fn zero() -> Self {
        ParamPoly::zero_poly()
    }
    fn one() -> Self {
        ParamPoly::constant(QRat::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect();
        ParamPoly { vars: self.vars.clone(), terms }
    }
    fn add(&self, other: &Self) -> Self {
        let (vars, a, b) = self.aligned(other);
        let mut terms = a;
        for (e, c) in b {
            merge_term(&mut terms, e, c);
        }
        ParamPoly { vars, terms }.compress()
    }
    fn mul(&self, other: &Self) -> Self {
        if self.terms.is_empty() || other.terms.is_empty() {
            return ParamPoly::zero_poly();
        }
        let (vars, a, b) = self.aligned(other);
        let mut terms = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<u32> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                merge_term(&mut terms, e, ca * cb);
            }
        }
        ParamPoly { vars, terms }.compress()
    }
    fn from_rat(q: &QRat) -> Self {
        ParamPoly::constant(q.clone())
    }
    fn inv(&self) -> Option<Self> {
        let c = self.as_rat()?;
        if c.is_zero() {
            None
        } else {
            Some(ParamPoly::constant(c.recip()))
        }
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        ParamPoly::exact_div(self, other)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest lex term first reads like handwritten polynomials
        for (exps, c) in self.terms.iter().rev() {
            let mut mon = String::new();
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !mon.is_empty() {
                    mon.push('*');
                }
                mon.push_str(&self.vars[i]);
                if e > 1 {
                    mon.push_str(&format!("^{e}"));
                }
            }
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mon.is_empty() {
                write!(f, "{}", fmt_rat(&mag))?;
            } else if mag == crate::rat::qi(1) {
                write!(f, "{mon}")?;
            } else {
                write!(f, "{}*{}", fmt_rat(&mag), mon)?;
            }
        }
        Ok(())
    }
}

/// Quotient of two parameter polynomials, normalized cheaply (content and
/// common monomials stripped, one exact-division attempt, no gcd).
#[derive(Clone, Debug)]
pub struct ParamRat {
    num: ParamPoly,
    den: ParamPoly,
}

impl ParamRat {
    pub fn new(num: ParamPoly, den: ParamPoly) -> Self {
        assert!(!Ring::is_zero(&den), "parameter rational with zero denominator");
        ParamRat { num, den }.normalized()
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        ParamRat { num: p, den: ParamPoly::one() }
    }

    pub fn var(name: &str) -> Self {
        ParamRat::from_poly(ParamPoly::var(name))
    }

    pub fn num(&self) -> &ParamPoly {
        &self.num
    }

    pub fn den(&self) -> &ParamPoly {
        &self.den
    }

    fn normalized(self) -> Self {
        if Ring::is_zero(&self.num) {
            return ParamRat { num: ParamPoly::zero_poly(), den: ParamPoly::one() };
        }
        if let Some(q) = ParamPoly::exact_div(&self.num, &self.den) {
            return ParamRat { num: q, den: ParamPoly::one() };
        }
        // strip shared monomial factors in one aligned pass
        let (vars, a, b) = self.num.aligned(&self.den);
        let shared: Vec<u32> = (0..vars.len())
            .map(|i| {
                let ma = a.keys().map(|e| e[i]).min().unwrap_or(0);
                let mb = b.keys().map(|e| e[i]).min().unwrap_or(0);
                ma.min(mb)
            })
            .collect();
        let strip = |m: &BTreeMap<Vec<u32>, QRat>| -> BTreeMap<Vec<u32>, QRat> {
            m.iter()
                .map(|(e, c)| {
                    let e: Vec<u32> = e.iter().zip(shared.iter()).map(|(x, s)| x - s).collect();
                    (e, c.clone())
                })
                .collect()
        };
        let num = ParamPoly { vars: vars.clone(), terms: strip(&a) }.compress();
        let den = ParamPoly { vars, terms: strip(&b) }.compress();
        // scale so the denominator is integral, coprime, positive-leading
        let mut c = den.content();
        if den.lead_coeff().is_negative() {
            c = -c;
        }
        let inv = c.recip();
        ParamRat { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn as_poly(&self) -> Option<ParamPoly> {
        let d = self.den.as_rat()?;
        Some(self.num.scale(&d.recip()))
    }

    pub fn eval(&self, assign: &BTreeMap<String, QRat>) -> Option<QRat> {
        let d = self.den.eval(assign);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(assign) / d)
    }

    /// d/d`name` by the quotient rule.
    pub fn deriv(&self, name: &str) -> Self {
        let n = Ring::sub(
            &Ring::mul(&self.num.deriv(name), &self.den),
            &Ring::mul(&self.num, &self.den.deriv(name)),
        );
        ParamRat::new(n, Ring::mul(&self.den, &self.den))
    }

    /// Simultaneous substitution applied to numerator and denominator.
    pub fn subst_simul(&self, map: &BTreeMap<String, ParamPoly>) -> Self {
        ParamRat::new(self.num.subst_simul(map), self.den.subst_simul(map))
    }
}

impl PartialEq for ParamRat {
    fn eq(&self, other: &Self) -> bool {
        Ring::mul(&self.num, &other.den) == Ring::mul(&other.num, &self.den)
    }
}

impl Ring for ParamRat {
    fn zero() -> Self {
        ParamRat::from_poly(ParamPoly::zero_poly())
    }
    fn one() -> Self {
        ParamRat::from_poly(ParamPoly::one())
    }
    fn is_zero(&self) -> bool {
        Ring::is_zero(&self.num)
    }
    fn neg(&self) -> Self {
        ParamRat { num: Ring::neg(&self.num), den: self.den.clone() }
    }
    fn add(&self, other: &Self) -> Self {
        let num = Ring::add(&Ring::mul(&self.num, &other.den), &Ring::mul(&other.num, &self.den));
        ParamRat::new(num, Ring::mul(&self.den, &other.den))
    }
    fn mul(&self, other: &Self) -> Self {
        ParamRat::new(Ring::mul(&self.num, &other.num), Ring::mul(&self.den, &other.den))
    }
    fn from_rat(q: &QRat) -> Self {
        ParamRat::from_poly(ParamPoly::constant(q.clone()))
    }
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(&self.num) {
            None
        } else {
            Some(ParamRat::new(self.den.clone(), self.num.clone()))
        }
    }
}

impl fmt::Display for ParamRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_rat().map(|d| d == crate::rat::qi(1)).unwrap_or(false) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qr;

    fn a() -> ParamPoly {
        ParamPoly::var("a")
    }

    #[test]
    fn family_coefficient_evaluates() {
        // 36*a*(a-1)*(9907*a - 20845) at a = 3 comes out to 1917216
        let am1 = Ring::sub(&a(), &ParamPoly::one());
        let inner = Ring::sub(&a().scale(&qi(9907)), &ParamPoly::constant(qi(20845)));
        let p = Ring::mul(&Ring::mul(&a().scale(&qi(36)), &am1), &inner);
        let v = p.eval(&BTreeMap::from([("a".to_string(), qi(3))]));
        assert_eq!(v, qi(1917216));
    }

    #[test]
    fn eval_commutes_with_mul() {
        let p = Ring::add(&Ring::mul(&a(), &ParamPoly::var("b")), &ParamPoly::constant(qr(1, 2)));
        let q = Ring::sub(&a().pow(2), &ParamPoly::var("b"));
        let at = BTreeMap::from([("a".to_string(), qr(2, 3)), ("b".to_string(), qi(-5))]);
        assert_eq!(Ring::mul(&p, &q).eval(&at), p.eval(&at) * q.eval(&at));
    }

    #[test]
    fn exact_division_roundtrips() {
        let am1 = Ring::sub(&a(), &ParamPoly::one());
        let b = ParamPoly::var("b");
        let f = Ring::mul(&Ring::mul(&am1, &b), &Ring::add(&a().pow(2), &b));
        let q = f.exact_div(&am1).unwrap();
        assert_eq!(Ring::mul(&q, &am1), f);
        // non-divisor: remainder forces None
        assert!(f.exact_div(&Ring::add(&a(), &b)).is_none());
    }

    #[test]
    fn subst_shift() {
        // (a^2 - 1) at a -> 1 + e gives 2e + e^2
        let p = Ring::sub(&a().pow(2), &ParamPoly::one());
        let shifted = p.subst("a", &Ring::add(&ParamPoly::one(), &ParamPoly::var("e")));
        let e = ParamPoly::var("e");
        assert_eq!(shifted, Ring::add(&e.scale(&qi(2)), &e.pow(2)));
    }

    #[test]
    fn coeff_extraction_and_derivative() {
        let b = ParamPoly::var("b");
        // p = 3*a^2*b + 5*a - 7
        let p = Ring::add(
            &Ring::add(&Ring::mul(&a().pow(2), &b).scale(&qi(3)), &a().scale(&qi(5))),
            &ParamPoly::constant(qi(-7)),
        );
        assert_eq!(p.coeff_of("a", 2), b.scale(&qi(3)));
        assert_eq!(p.coeff_of("a", 0), ParamPoly::constant(qi(-7)));
        assert_eq!(p.deriv("b"), a().pow(2).scale(&qi(3)));
        assert_eq!(p.degree_in("a"), 2);
    }

    #[test]
    fn rational_function_normalization_keeps_monomials_small() {
        // (a^2*b) / (a^3) cancels to b / a
        let n = Ring::mul(&a().pow(2), &ParamPoly::var("b"));
        let r = ParamRat::new(n, a().pow(3));
        assert_eq!(r.num(), &ParamPoly::var("b"));
        assert_eq!(r.den(), &ParamPoly::var("a"));
        // exact division fires: (a^2 - 1)/(a - 1) = a + 1
        let n2 = Ring::sub(&a().pow(2), &ParamPoly::one());
        let d2 = Ring::sub(&a(), &ParamPoly::one());
        let r2 = ParamRat::new(n2, d2);
        assert_eq!(r2.as_poly().unwrap(), Ring::add(&a(), &ParamPoly::one()));
    }

    #[test]
    fn rational_function_equality_by_cross_multiplication() {
        let am1 = Ring::sub(&a(), &ParamPoly::one());
        let r1 = ParamRat::new(Ring::mul(&am1, &ParamPoly::var("b")), Ring::mul(&am1, &a()));
        let r2 = ParamRat::new(ParamPoly::var("b"), a());
        assert_eq!(r1, r2);
        assert_eq!(Ring::mul(&r1, &Ring::inv(&r2).unwrap()), Ring::one());
    }

    #[test]
    fn display_reads_naturally() {
        let am1 = Ring::sub(&a(), &ParamPoly::one());
        let p = Ring::mul(&a().scale(&qi(-744)), &am1);
        assert_eq!(p.to_string(), "-744*a^2 + 744*a");
    }
}
