//! Truncated power and Laurent series with explicit precision tracking.
//!
//! A `Series<R>` stores the coefficients of x^lo .. x^(prec-1) over a
//! commutative Q-algebra R. Exponents below `lo` are exactly zero;
//! exponents at `prec` and beyond are unknown. Every operation computes
//! the precision of its result from the precisions of its inputs, so a
//! coefficient the library hands back is always one it actually knows.
//!
//! Invariants:
//! - `coeffs.len() == (prec - lo)` at all times; the zero series may be
//!   represented with an empty window (`lo == prec`).
//! - addition: lo = min(lo1, lo2), prec = min(prec1, prec2);
//! - multiplication: lo = lo1 + lo2, prec = min(p1 + lo2, p2 + lo1);
//! - composition f(g) with val(g) = w >= 1 and ordinary f:
//!   prec = min(w * p_f, p_g); Laurent factors of f go through explicit
//!   inverse powers of g and inherit precision from the multiply rule.
//!
//! Dual code paths (schoolbook vs Karatsuba multiplication, Horner vs
//! baby-step giant-step composition) must agree bit for bit; the switch
//! points are pure performance thresholds.

use crate::rat::QRat;
use crate::ring::Ring;
use crate::{Error, Result};
use std::fmt;

/// Coefficient-count threshold above which multiplication splits.
const KARATSUBA_AT: usize = 32;
/// Coefficient-count threshold above which composition uses blocks.
const BRENT_KUNG_AT: usize = 48;

#[derive(Clone, Debug)]
pub struct Series<R: Ring> {
    lo: i64,
    prec: i64,
    coeffs: Vec<R>,
}

impl<R: Ring> Series<R> {
    /// Series with the given coefficients for x^lo, x^(lo+1), ...;
    /// precision is lo + coeffs.len().
    pub fn new(lo: i64, coeffs: Vec<R>) -> Self {
        let prec = lo + coeffs.len() as i64;
        Series { lo, prec, coeffs }
    }

    /// The zero series, known up to x^prec.
    pub fn zero(prec: i64) -> Self {
        Series { lo: prec, prec, coeffs: Vec::new() }
    }

    pub fn constant(c: R, prec: i64) -> Self {
        Series::monomial(c, 0, prec)
    }

    /// c * x^k padded with zeros up to the requested precision.
    pub fn monomial(c: R, k: i64, prec: i64) -> Self {
        assert!(prec > k, "monomial needs prec > exponent");
        let mut coeffs = vec![R::zero(); (prec - k) as usize];
        coeffs[0] = c;
        Series { lo: k, prec, coeffs }
    }

    /// The identity series x.
    pub fn x(prec: i64) -> Self {
        Series::monomial(R::one(), 1, prec)
    }

    /// Polynomial coefficients for x^0, x^1, ... padded to `prec`.
    pub fn from_poly(coeffs: &[R], prec: i64) -> Self {
        let mut c = coeffs.to_vec();
        assert!(prec >= c.len() as i64, "from_poly cannot drop coefficients");
        c.resize(prec as usize, R::zero());
        Series { lo: 0, prec, coeffs: c }
    }

    /// Embed exact rational coefficients into R, starting at x^lo.
    pub fn from_rats(lo: i64, coeffs: &[QRat]) -> Self {
        Series::new(lo, coeffs.iter().map(R::from_rat).collect())
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Coefficient of x^k. Zero below the window; panics at or beyond the
    /// precision bound, because that coefficient is not known.
    pub fn coeff(&self, k: i64) -> R {
        assert!(k < self.prec, "coefficient x^{k} beyond precision {}", self.prec);
        if k < self.lo {
            R::zero()
        } else {
            self.coeffs[(k - self.lo) as usize].clone()
        }
    }

    /// Known coefficients as (exponent, value) pairs, low to high.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &R)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.lo + i as i64, c))
    }

    /// Exponent of the first nonzero known coefficient; None when the
    /// series is zero to its precision.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.lo + i as i64)
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero_to_prec(&self) -> bool {
        self.valuation().is_none()
    }

    /// Drop knowledge above x^(new_prec - 1). Extending is not possible.
    pub fn truncate(&self, new_prec: i64) -> Self {
        if new_prec >= self.prec {
            return self.clone();
        }
        let lo = self.lo.min(new_prec);
        let keep = (new_prec - lo) as usize;
        Series { lo, prec: new_prec, coeffs: self.coeffs[..keep].to_vec() }
    }

    /// Strip guaranteed-zero low coefficients so lo is the true valuation
    /// (or lo == prec for the zero series).
    fn trimmed(&self) -> Series<R> {
        match self.valuation() {
            None => Series::zero(self.prec),
            Some(v) => {
                let skip = (v - self.lo) as usize;
                Series { lo: v, prec: self.prec, coeffs: self.coeffs[skip..].to_vec() }
            }
        }
    }

    /// Apply a coefficient map that fixes zero (ring embed, reduction...).
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Series<S> {
        Series { lo: self.lo, prec: self.prec, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|v| v.mul(c))
    }

    pub fn scale_rat(&self, q: &QRat) -> Self {
        let c = R::from_rat(q);
        self.scale(&c)
    }

    /// Multiply by x^k (exact shift of the window).
    pub fn shift(&self, k: i64) -> Self {
        Series { lo: self.lo + k, prec: self.prec + k, coeffs: self.coeffs.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let lo = self.lo.min(other.lo);
        let prec = self.prec.min(other.prec);
        if prec <= lo {
            return Series::zero(prec);
        }
        let mut coeffs = vec![R::zero(); (prec - lo) as usize];
        for (e, c) in self.iter() {
            if e >= prec {
                break;
            }
            coeffs[(e - lo) as usize] = c.clone();
        }
        for (e, c) in other.iter() {
            if e >= prec {
                break;
            }
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.add(c);
        }
        Series { lo, prec, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        // the unknown tail of one factor first pollutes the product at
        // (its precision) + (true valuation of the other factor), so trim
        // guaranteed-zero low coefficients before applying the rule
        let a = self.trimmed();
        let b = other.trimmed();
        let lo = a.lo + b.lo;
        let prec = (a.prec + b.lo).min(b.prec + a.lo);
        if prec <= lo || a.coeffs.is_empty() || b.coeffs.is_empty() {
            return Series::zero(prec);
        }
        let cap = (prec - lo) as usize;
        let coeffs = vmul(&a.coeffs, &b.coeffs, cap);
        Series { lo, prec, coeffs }
    }

    /// Small integer power by repeated squaring; negative powers invert.
    pub fn pow_i(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow_i(-e);
        }
        // precision of a power follows the repeated-multiply rule, so
        // square-and-multiply and a plain loop agree; use the plain loop
        // for small exponents to keep the window arithmetic obvious
        let mut acc: Option<Series<R>> = None;
        for _ in 0..e {
            acc = Some(match acc {
                None => self.clone(),
                Some(a) => a.mul(self),
            });
        }
        Ok(match acc {
            None => {
                // x^0 = 1 known to "infinite" precision; cap at input prec
                // relative to its valuation so downstream rules stay sane
                Series::constant(R::one(), self.prec - self.lo.min(0))
            }
            Some(a) => a,
        })
    }

    /// Multiplicative inverse. The leading coefficient must be a unit.
    pub fn inv(&self) -> Result<Self> {
        let t = self.trimmed();
        if t.coeffs.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let n = t.coeffs.len();
        let inv_coeffs = vinv(&t.coeffs, n)?;
        // (x^v u)^-1 = x^-v u^-1; relative precision is preserved
        Ok(Series { lo: -t.lo, prec: -t.lo + n as i64, coeffs: inv_coeffs })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Termwise derivative; the window shifts down by one.
    pub fn deriv(&self) -> Self {
        let coeffs = self
            .iter()
            .map(|(e, c)| c.mul_i64(e))
            .collect();
        Series { lo: self.lo - 1, prec: self.prec - 1, coeffs }
    }

    /// Antiderivative with zero constant term. A nonzero coefficient on
    /// x^-1 has no series antiderivative.
    pub fn integrate(&self) -> Result<Self> {
        if self.lo <= -1 && -1 < self.prec && !self.coeff(-1).is_zero() {
            return Err(Error::IntegrationObstruction);
        }
        let lo = self.lo + 1;
        let prec = self.prec + 1;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (e, c) in self.iter() {
            if e == -1 {
                coeffs.push(R::zero());
            } else {
                coeffs.push(c.mul_rat(&QRat::new(1.into(), (e + 1).into())));
            }
        }
        Ok(Series { lo, prec, coeffs })
    }

    /// Substitute g into self; g must have valuation >= 1.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        let gt = g.trimmed();
        let w = match gt.valuation() {
            Some(v) if v >= 1 => v,
            _ => return Err(Error::NonpositiveValuation),
        };
        let f = self.trimmed();
        if f.coeffs.is_empty() {
            // zero up to x^prec composes to zero up to x^(w*prec)
            return Ok(Series::zero(w * f.prec));
        }
        let lo = f.lo;
        // ordinary part u with window [0, p_f - lo)
        let p_u = (f.prec - lo) as usize;
        let cap = ((w * p_u as i64).min(gt.prec)) as usize;
        let mut gv = vec![R::zero(); cap];
        for (e, c) in gt.iter() {
            if (e as usize) < cap {
                gv[e as usize] = c.clone();
            }
        }
        let body = vcompose(&f.coeffs, &gv, cap);
        let u_of_g = Series { lo: 0, prec: cap as i64, coeffs: body };
        if lo == 0 {
            return Ok(u_of_g);
        }
        // multiply in g^lo, inverting g first for Laurent parts
        let g_pow = if lo > 0 { gt.pow_i(lo)? } else { gt.inv()?.pow_i(-lo)? };
        Ok(u_of_g.mul(&g_pow))
    }

    /// Compositional inverse of a series with valuation exactly 1 and unit
    /// linear coefficient: returns g with self(g) = x + O(x^prec).
    pub fn revert(&self) -> Result<Self> {
        let f = self.trimmed();
        if f.valuation() != Some(1) {
            return Err(Error::BadValuation);
        }
        let target = f.prec.max(2) as usize;
        let c1 = f.coeff(1);
        let c1i = c1.inv().ok_or(Error::NonUnitDivisor)?;
        // coefficient vector of f on exponents 0..target
        let mut fv = vec![R::zero(); target];
        for (e, c) in f.iter() {
            if (e as usize) < target {
                fv[e as usize] = c.clone();
            }
        }
        // Newton iteration g <- g - (f(g) - x)/f'(g), doubling precision
        let mut g = vec![R::zero(), c1i];
        while g.len() < target {
            let np = (g.len() * 2).min(target);
            g.resize(np, R::zero());
            let ftr = &fv[..np.min(fv.len())];
            let fg = vcompose(ftr, &g, np);
            let mut num = fg;
            num[1] = num[1].sub(&R::one());
            let fder = vderiv(ftr);
            let fdg = vcompose(&fder, &g, np);
            let den = vinv(&fdg, np)?;
            let corr = vmul(&num, &den, np);
            for i in 0..np {
                g[i] = g[i].sub(&corr[i]);
            }
        }
        let out = Series { lo: 0, prec: target as i64, coeffs: g };
        // The self-check costs one more full composition, so it only
        // guards moderate precisions.
        debug_assert!(
            out.prec > 64 || {
                let back = f.compose(&out).expect("reversion check composes");
                back == Series::x(out.prec)
            },
            "reversion failed self-check"
        );
        Ok(out)
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        let prec = self.prec;
        if prec < 1 {
            return Ok(Series::constant(R::one(), 1));
        }
        if self.valuation().map_or(false, |v| v < 1) {
            return Err(Error::BadNormalization);
        }
        // g' = u' g, so n g_n = sum_{k=1..n} k u_k g_{n-k}
        let n = prec as usize;
        let mut u = vec![R::zero(); n];
        for (e, c) in self.iter() {
            if e >= 1 {
                u[e as usize] = c.clone();
            }
        }
        let mut g = vec![R::zero(); n];
        g[0] = R::one();
        for m in 1..n {
            let mut s = R::zero();
            for k in 1..=m {
                if u[k].is_zero() {
                    continue;
                }
                s = s.add(&u[k].mul_i64(k as i64).mul(&g[m - k]));
            }
            g[m] = s.mul_rat(&QRat::new(1.into(), (m as i64).into()));
        }
        Ok(Series { lo: 0, prec, coeffs: g })
    }

    /// log of a series with constant term exactly one.
    pub fn log(&self) -> Result<Self> {
        if self.lo > 0 || self.prec < 1 || self.coeff(0) != R::one() {
            return Err(Error::BadNormalization);
        }
        if self.valuation() != Some(0) {
            return Err(Error::BadNormalization);
        }
        let d = self.deriv();
        let q = d.div(self)?;
        q.integrate()
    }

    /// Rational power f^(p/q). Requires q >= 1, the valuation divisible
    /// after scaling (v*p = q*m for an integer m) and, for q > 1, leading
    /// coefficient exactly one.
    pub fn pow_rat(&self, p: i64, q: u32) -> Result<Self> {
        assert!(q >= 1);
        if q == 1 {
            return self.pow_i(p);
        }
        let t = self.trimmed();
        let v = t.valuation().ok_or(Error::DivisionByZero)?;
        if (v * p).rem_euclid(q as i64) != 0 {
            return Err(Error::ValuationNotDivisible);
        }
        let m = (v * p).div_euclid(q as i64);
        if t.coeff(v) != R::one() {
            return Err(Error::NonUnitLeading);
        }
        let u = t.shift(-v);
        let l = u.log()?;
        let scaled = l.scale_rat(&QRat::new(p.into(), (q as i64).into()));
        Ok(scaled.exp()?.shift(m))
    }

    /// N-th root of a series x^(vN) (1 + ...): splits off x^v and takes
    /// the principal root of the unit part.
    pub fn nth_root(&self, n: u32) -> Result<Self> {
        self.pow_rat(1, n)
    }

    /// Schwarzian derivative y'''/y' - (3/2)(y''/y')^2.
    pub fn schwarzian(&self) -> Result<Self> {
        let d1 = self.deriv();
        if d1.is_zero_to_prec() {
            return Err(Error::ZeroDerivative);
        }
        let d2 = d1.deriv();
        let d3 = d2.deriv();
        let r1 = d3.div(&d1)?;
        let r2 = d2.div(&d1)?;
        let r2sq = r2.mul(&r2);
        Ok(r1.sub(&r2sq.scale_rat(&QRat::new(3.into(), 2.into()))))
    }
}

impl<R: Ring> PartialEq for Series<R> {
    /// Equality on the commonly known window: both series must agree on
    /// every coefficient below the smaller precision bound.
    fn eq(&self, other: &Self) -> bool {
        let prec = self.prec.min(other.prec);
        let lo = self.lo.min(other.lo);
        for e in lo..prec {
            if self.coeff(e) != other.coeff(e) {
                return false;
            }
        }
        true
    }
}

impl<R: Ring> fmt::Display for Series<R>
where
    R: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.iter() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.prec)
    }
}

// ---- flat coefficient-vector kernels -----------------------------------
//
// These operate on plain exponent-indexed vectors (index = exponent) with
// an explicit truncation cap, and are shared by composition, reversion and
// the series wrappers above.

fn school_trunc<R: Ring>(a: &[R], b: &[R], cap: usize) -> Vec<R> {
    let n = cap.min(a.len() + b.len() - 1);
    let mut out = vec![R::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if i >= n {
            break;
        }
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= n {
                break;
            }
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out.resize(cap, R::zero());
    out
}

fn kara_full<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    if a.len().min(b.len()) < KARATSUBA_AT {
        return school_trunc(a, b, a.len() + b.len() - 1);
    }
    let m = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));
    let p0 = kara_full(a0, b0);
    let p2 = if a1.is_empty() || b1.is_empty() { Vec::new() } else { kara_full(a1, b1) };
    // (a0+a1)(b0+b1) - p0 - p2 gives the cross term
    let asum = vec_add_pad(a0, a1);
    let bsum = vec_add_pad(b0, b1);
    let mut p1 = kara_full(&asum, &bsum);
    for (i, c) in p0.iter().enumerate() {
        p1[i] = p1[i].sub(c);
    }
    for (i, c) in p2.iter().enumerate() {
        p1[i] = p1[i].sub(c);
    }
    let mut out = vec![R::zero(); a.len() + b.len() - 1];
    for (i, c) in p0.into_iter().enumerate() {
        out[i] = out[i].add(&c);
    }
    for (i, c) in p1.into_iter().enumerate() {
        if i + m < out.len() {
            out[i + m] = out[i + m].add(&c);
        }
    }
    for (i, c) in p2.into_iter().enumerate() {
        out[i + 2 * m] = out[i + 2 * m].add(&c);
    }
    out
}

fn vec_add_pad<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    let n = a.len().max(b.len()).max(1);
    let mut out = vec![R::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    out
}

/// Truncated product: first `cap` coefficients of a*b.
pub(crate) fn vmul<R: Ring>(a: &[R], b: &[R], cap: usize) -> Vec<R> {
    if cap == 0 || a.is_empty() || b.is_empty() {
        return vec![R::zero(); cap];
    }
    if a.len().min(b.len()) >= KARATSUBA_AT {
        let mut full = kara_full(a, b);
        full.resize(cap.max(full.len()), R::zero());
        full.truncate(cap);
        full
    } else {
        school_trunc(a, b, cap)
    }
}

/// First `n` coefficients of 1/a; a[0] must be a unit.
pub(crate) fn vinv<R: Ring>(a: &[R], n: usize) -> Result<Vec<R>> {
    let a0 = a.first().cloned().unwrap_or_else(R::zero);
    let a0i = a0.inv().ok_or(Error::NonUnitDivisor)?;
    let mut b = vec![R::zero(); n];
    if n == 0 {
        return Ok(b);
    }
    b[0] = a0i.clone();
    for m in 1..n {
        let mut s = R::zero();
        for k in 1..=m.min(a.len() - 1) {
            if a[k].is_zero() || b[m - k].is_zero() {
                continue;
            }
            s = s.add(&a[k].mul(&b[m - k]));
        }
        b[m] = s.mul(&a0i).neg();
    }
    Ok(b)
}

fn vderiv<R: Ring>(a: &[R]) -> Vec<R> {
    if a.len() <= 1 {
        return vec![R::zero()];
    }
    a[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| c.mul_i64(i as i64 + 1))
        .collect()
}

/// First `cap` coefficients of f(g) where g[0] = 0.
pub(crate) fn vcompose<R: Ring>(f: &[R], g: &[R], cap: usize) -> Vec<R> {
    debug_assert!(g.first().map_or(true, |c| c.is_zero()), "composition needs g(0) = 0");
    if cap == 0 {
        return Vec::new();
    }
    if f.len() >= BRENT_KUNG_AT {
        return vcompose_blocks(f, g, cap);
    }
    let mut r = vec![R::zero(); cap];
    for c in f.iter().rev() {
        r = vmul(&r, g, cap);
        r[0] = r[0].add(c);
    }
    r
}

/// Baby-step giant-step composition: precompute g^0..g^s, evaluate blocks
/// of f by scalar combinations, then Horner over g^s.
fn vcompose_blocks<R: Ring>(f: &[R], g: &[R], cap: usize) -> Vec<R> {
    let m = f.len();
    let s = (m as f64).sqrt().ceil() as usize;
    let mut powers: Vec<Vec<R>> = Vec::with_capacity(s + 1);
    let mut one = vec![R::zero(); cap];
    one[0] = R::one();
    powers.push(one);
    for j in 1..=s {
        let next = vmul(&powers[j - 1], g, cap);
        powers.push(next);
    }
    let big = powers[s].clone();
    let nblocks = m.div_ceil(s);
    let mut result = vec![R::zero(); cap];
    for bi in (0..nblocks).rev() {
        result = vmul(&result, &big, cap);
        // block value: sum_j f[bi*s + j] * g^j
        for j in 0..s {
            let idx = bi * s + j;
            if idx >= m || f[idx].is_zero() {
                continue;
            }
            let pw = &powers[j];
            for (t, pc) in pw.iter().enumerate() {
                if pc.is_zero() {
                    continue;
                }
                result[t] = result[t].add(&f[idx].mul(pc));
            }
        }
    }
    result
}

/// View a rational series through integer coefficients, or None when some
/// coefficient has a nontrivial denominator. The nome, mirror and branch
/// solution series are integral, and integer coefficients skip the
/// fraction normalization that dominates rational arithmetic at high
/// precision.
pub fn integer_series(s: &Series<QRat>) -> Option<Series<num_bigint::BigInt>> {
    use num_traits::One;
    for (_, c) in s.iter() {
        if !c.denom().is_one() {
            return None;
        }
    }
    Some(s.map(|c| c.numer().clone()))
}

/// Rational view of an integer series.
pub fn rat_series(s: &Series<num_bigint::BigInt>) -> Series<QRat> {
    s.map(|c| QRat::from(c.clone()))
}

/// Expand the rational function num/den (ascending polynomial coefficients)
/// as a series known up to x^prec. Laurent results are fine as long as the
/// denominator is not identically zero.
pub fn rational_series<R: Ring>(num: &[R], den: &[R], prec: i64) -> Result<Series<R>> {
    let vden = den.iter().position(|c| !c.is_zero()).ok_or(Error::DivisionByZero)? as i64;
    let pad = prec + 2 * vden + 1;
    let n = Series::from_poly(num, pad.max(num.len() as i64));
    let d = Series::from_poly(den, pad.max(den.len() as i64));
    let q = n.div(&d)?;
    Ok(q.truncate(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{qi, qr};

    type QS = Series<QRat>;

    fn qs(lo: i64, v: &[i64]) -> QS {
        Series::new(lo, v.iter().map(|&k| qi(k)).collect())
    }

    #[test]
    fn add_and_mul_precision_rules() {
        let a = qs(0, &[1, 2, 3, 4]); // prec 4
        let b = qs(1, &[5, 6]); // prec 3
        let s = a.add(&b);
        assert_eq!(s.prec(), 3);
        assert_eq!(s.coeff(1), qi(7));
        let p = a.mul(&b);
        // prec = min(4 + 1, 3 + 0) = 3
        assert_eq!(p.lo(), 1);
        assert_eq!(p.prec(), 3);
        assert_eq!(p.coeff(1), qi(5));
        assert_eq!(p.coeff(2), qi(16));
    }

    #[test]
    fn laurent_inverse() {
        // 1/(x^2 (1 - x)) = x^-2 + x^-1 + 1 + x + ...
        let f = Series::new(2, vec![qi(1), qi(-1), qi(0), qi(0), qi(0)]);
        let i = f.inv().unwrap();
        assert_eq!(i.lo(), -2);
        for e in -2..3 {
            assert_eq!(i.coeff(e), qi(1), "coefficient x^{e}");
        }
        assert_eq!(f.mul(&i).coeff(0), qi(1));
    }

    #[test]
    fn geometric_series_division() {
        let one = QS::from_poly(&[qi(1)], 10);
        let den = QS::from_poly(&[qi(1), qi(-1)], 10);
        let g = one.div(&den).unwrap();
        for e in 0..10 {
            assert_eq!(g.coeff(e), qi(1));
        }
    }

    #[test]
    fn derivative_and_antiderivative() {
        let f = qs(0, &[7, 1, 1, 1, 1]);
        let d = f.deriv();
        assert_eq!(d.coeff(0), qi(1));
        assert_eq!(d.coeff(2), qi(3));
        let back = d.integrate().unwrap();
        assert_eq!(back.coeff(1), qi(1));
        assert_eq!(back.coeff(3), qi(1));
        // x^-1 blocks integration
        let bad = Series::new(-1, vec![qi(3), qi(0)]);
        assert!(matches!(bad.integrate(), Err(Error::IntegrationObstruction)));
    }

    #[test]
    fn compose_against_direct_square() {
        let g = qs(1, &[2, 1, 5, 0, 0, 0]); // 2x + x^2 + 5x^3, prec 7
        let f = qs(0, &[0, 0, 1, 0, 0, 0, 0]); // x^2, prec 7
        let c = f.compose(&g).unwrap();
        let direct = g.mul(&g);
        assert_eq!(c, direct);
    }

    #[test]
    fn compose_precision_rule() {
        // f prec 5, g valuation 2 prec 7: result prec min(2*5, 7) = 7
        let f = qs(0, &[1, 1, 1, 1, 1]);
        let g = qs(2, &[1, 0, 0, 0, 1]);
        let c = f.compose(&g).unwrap();
        assert_eq!(c.prec(), 7);
        let shallow = qs(0, &[1, 1, 1]).compose(&g).unwrap();
        assert_eq!(shallow.prec(), 6); // min(2*3, 7)
    }

    #[test]
    fn laurent_compose() {
        // f = x^-1, g = 2x + x^2: f(g) = 1/(2x) * 1/(1 + x/2)
        let f = Series::new(-1, vec![qi(1), qi(0), qi(0), qi(0), qi(0), qi(0)]);
        let g = qs(1, &[2, 1, 0, 0, 0, 0]);
        let c = f.compose(&g).unwrap();
        assert_eq!(c.lo(), -1);
        assert_eq!(c.coeff(-1), qr(1, 2));
        assert_eq!(c.coeff(0), qr(-1, 4));
        assert_eq!(c.coeff(1), qr(1, 8));
    }

    #[test]
    fn reversion_catalan() {
        // revert(x - x^2) = sum catalan_n x^(n+1)
        let f = qs(0, &[0, 1, -1, 0, 0, 0, 0, 0]);
        let g = f.revert().unwrap();
        let expect = [1i64, 1, 2, 5, 14, 42, 132];
        for (i, &c) in expect.iter().enumerate() {
            assert_eq!(g.coeff(i as i64 + 1), qi(c), "catalan {i}");
        }
        let round = f.compose(&g).unwrap();
        assert_eq!(round, QS::x(8));
    }

    #[test]
    fn reversion_rejects_bad_valuation() {
        assert!(matches!(qs(0, &[0, 0, 1, 0]).revert(), Err(Error::BadValuation)));
        assert!(matches!(qs(0, &[1, 1, 0]).revert(), Err(Error::BadValuation)));
    }

    #[test]
    fn exp_log_roundtrip() {
        let u = qs(0, &[0, 3, -2, 5, 0, 1, 0, 0]);
        let e = u.exp().unwrap();
        assert_eq!(e.coeff(0), qi(1));
        let back = e.log().unwrap();
        assert_eq!(back, u);
        // log(1/(1-x)) = sum x^n / n
        let g = QS::from_poly(&[qi(1)], 8).div(&QS::from_poly(&[qi(1), qi(-1)], 8)).unwrap();
        let l = g.log().unwrap();
        for n in 1..8 {
            assert_eq!(l.coeff(n), qr(1, n), "x^{n}");
        }
    }

    #[test]
    fn rational_powers() {
        // (1 + x)^(1/2) squared returns 1 + x
        let f = QS::from_poly(&[qi(1), qi(1)], 12);
        let r = f.pow_rat(1, 2).unwrap();
        assert_eq!(r.mul(&r), f.truncate(12));
        // x^2 (1 + x)^2 has a square root x(1 + x)
        let g = qs(0, &[0, 0, 1, 2, 1, 0, 0, 0]);
        let s = g.nth_root(2).unwrap();
        assert_eq!(s, qs(0, &[0, 1, 1, 0, 0, 0]));
        // odd valuation cannot split under a square root
        let odd = qs(0, &[0, 1, 1, 0]);
        assert!(matches!(odd.nth_root(2), Err(Error::ValuationNotDivisible)));
    }

    #[test]
    fn schwarzian_of_moebius_vanishes() {
        // y = x/(1 - x) is a Moebius map, so its schwarzian is zero
        let y = rational_series(&[qi(0), qi(1)], &[qi(1), qi(-1)], 9).unwrap();
        let s = y.schwarzian().unwrap();
        assert!(s.is_zero_to_prec(), "got {:?}", s);
    }

    #[test]
    fn schwarzian_of_square() {
        // {x^2, x} = -(3/2) x^-2
        let y = qs(0, &[0, 0, 1, 0, 0, 0, 0]);
        let s = y.schwarzian().unwrap();
        assert_eq!(s.coeff(-2), qr(-3, 2));
        assert!(s.coeff(-1).is_zero());
        assert!(s.coeff(0).is_zero());
    }

    #[test]
    fn multiplication_paths_agree() {
        // straddle the karatsuba threshold with deterministic data
        for n in [8usize, 31, 32, 33, 70, 101] {
            let a: Vec<QRat> = (0..n).map(|i| qi((i as i64 * 7919 + 13) % 1000 - 500)).collect();
            let b: Vec<QRat> = (0..n + 3).map(|i| qi((i as i64 * 104729 + 7) % 997 - 498)).collect();
            let cap = n + 5;
            let fast = vmul(&a, &b, cap);
            let slow = school_trunc(&a, &b, cap);
            assert_eq!(fast, slow, "length {n}");
        }
    }

    #[test]
    fn composition_paths_agree() {
        let m = 60usize;
        let f: Vec<QRat> = (0..m).map(|i| qi((i as i64 * 31 + 1) % 19 - 9)).collect();
        let mut g: Vec<QRat> = (0..m).map(|i| qi((i as i64 * 17 + 3) % 23 - 11)).collect();
        g[0] = qi(0);
        let blocks = vcompose_blocks(&f, &g, m);
        // plain horner
        let mut r = vec![qi(0); m];
        for c in f.iter().rev() {
            r = vmul(&r, &g, m);
            r[0] = r[0].add(c);
        }
        assert_eq!(blocks, r);
    }

    #[test]
    fn rational_series_with_pole() {
        // (1 + x)/(x^2 (1 - x)) starts at x^-2
        let s = rational_series(&[qi(1), qi(1)], &[qi(0), qi(0), qi(1), qi(-1)], 4).unwrap();
        assert_eq!(s.coeff(-2), qi(1));
        assert_eq!(s.coeff(-1), qi(2));
        assert_eq!(s.coeff(0), qi(2));
        assert_eq!(s.coeff(3), qi(2));
    }
}
