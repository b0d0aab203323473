//! Closed-form series generators and the bridges between the three
//! equivalent presentations of a Schwarzian kernel.
//!
//! A kernel can be handed to the solver in any of three forms and this
//! module converts between them:
//!
//!  * `F`, a series with `F = x + O(x^2)` (the reciprocal of the
//!    logarithmic derivative of the nome),
//!  * `W`, the rational-looking potential with a double pole at the
//!    origin, recovered as `W = L' + L^2/2` for `L = G'/(2G)`, `G = F^2`,
//!  * `Q`, the nome itself, with `W = -{Q, x} - Q'^2 / (2 Q^2)`.
//!
//! Invariants maintained here:
//!
//!  * `nome_from_f` and `f_from_w` both demand normalized input
//!    (`F = x + O(x^2)` resp. a double pole with leading coefficient
//!    `-1/2`) and fail loudly otherwise.
//!  * every bridge is exact; precision bookkeeping follows the series
//!    engine and callers get at least the precision they asked for.
//!  * `w_from_f`, `w_from_square` and `w_from_nome` agree on a common
//!    kernel wherever all three are defined.

use crate::rat::{parse_rat, qi, qr, QRat};
use crate::ring::Ring;
use crate::series::{integer_series, rat_series, Series};
use crate::{Error, Result};

// ---------------------------------------------------------------------
// hypergeometric and Heun generators
// ---------------------------------------------------------------------

/// Gauss hypergeometric series 2F1(a, b; c; x) to the given precision.
pub fn gauss_2f1(a: &QRat, b: &QRat, c: &QRat, prec: i64) -> Result<Series<QRat>> {
    if prec <= 0 {
        return Ok(Series::zero(prec.max(0)));
    }
    let mut coeffs = Vec::with_capacity(prec as usize);
    let mut term = QRat::one();
    for n in 0..prec {
        coeffs.push(term.clone());
        let cn = c.add(&qi(n));
        if cn.is_zero() {
            return Err(Error::BadGamma);
        }
        let num = a.add(&qi(n)).mul(&b.add(&qi(n)));
        term = term.mul(&num).mul_rat(&(qi(1) / (cn * qi(n + 1))));
    }
    Ok(Series::new(0, coeffs))
}

/// General Heun series HeunG(t, q; alpha, beta, gamma, delta; x),
/// normalized to 1 at the origin, to the given precision.
///
/// The coefficients obey the three-term recurrence
/// `t (n+1) (n+gamma) c_{n+1} =
///  [n ((n-1+gamma)(1+t) + t delta + eps) + q] c_n
///  - (n-1+alpha)(n-1+beta) c_{n-1}`
/// with `eps = alpha + beta + 1 - gamma - delta`.
pub fn heun_series(
    t: &QRat,
    q: &QRat,
    alpha: &QRat,
    beta: &QRat,
    gamma: &QRat,
    delta: &QRat,
    prec: i64,
) -> Result<Series<QRat>> {
    if t.is_zero() {
        return Err(Error::BadGamma);
    }
    if prec <= 0 {
        return Ok(Series::zero(prec.max(0)));
    }
    let eps = alpha.add(beta).add(&qi(1)).sub(gamma).sub(delta);
    let mut coeffs: Vec<QRat> = Vec::with_capacity(prec as usize);
    coeffs.push(QRat::one());
    for n in 0..(prec - 1) {
        let lead = t.mul(&qi(n + 1)).mul(&gamma.add(&qi(n)));
        if lead.is_zero() {
            return Err(Error::BadGamma);
        }
        let mid_factor = gamma
            .add(&qi(n - 1))
            .mul(&t.add(&qi(1)))
            .add(&t.mul(delta))
            .add(&eps);
        let mut rhs = qi(n).mul(&mid_factor).add(q).mul(&coeffs[n as usize]);
        if n >= 1 {
            let down = alpha.add(&qi(n - 1)).mul(&beta.add(&qi(n - 1)));
            rhs = rhs.sub(&down.mul(&coeffs[(n - 1) as usize]));
        }
        coeffs.push(rhs / lead);
    }
    Ok(Series::new(0, coeffs))
}

// ---------------------------------------------------------------------
// kernel atlas
// ---------------------------------------------------------------------

/// A named Schwarzian kernel, identified by how its `F` series is built.
#[derive(Clone, Debug, PartialEq)]
pub enum FSpec {
    /// The weight-one modular kernel whose nome is the classical
    /// j-function nome: `F = x (1 - 1728 x)^{1/2} 2F1(1/12, 5/12; 1; 1728 x)^2`.
    Elliptic,
    /// The square-root Heun kernel on the singular set {0, 1, 81}.
    /// Its square is the power series `x (1 - x/81)(1 - x) H^4` with
    /// `H = HeunG(81, 1/2; 1/6, 1/3, 1/2, 1/2; x)`.
    Heun81,
    /// A polynomial kernel `F = x + c_2 x^2 + ...` given by its
    /// coefficients starting at `x` (the leading one must be 1).
    Poly(Vec<QRat>),
}

impl FSpec {
    /// Parse a kernel name: `elliptic`, `heun81`,
    /// `poly:1,-5,6` (coefficients from `x` up), or
    /// `poly-factored:(1,-373)(1,-371)` for `x` times linear factors
    /// `u + v x`.
    pub fn parse(s: &str) -> Result<FSpec> {
        let bad = |msg: &str| Error::ParseError {
            line: 0,
            msg: msg.to_string(),
        };
        if s == "elliptic" {
            return Ok(FSpec::Elliptic);
        }
        if s == "heun81" {
            return Ok(FSpec::Heun81);
        }
        if let Some(body) = s.strip_prefix("poly:") {
            let coeffs = body
                .split(',')
                .map(|p| parse_rat(p.trim()))
                .collect::<Result<Vec<_>>>()?;
            if coeffs.first() != Some(&QRat::one()) {
                return Err(bad("polynomial kernel must start with coefficient 1"));
            }
            return Ok(FSpec::Poly(coeffs));
        }
        if let Some(body) = s.strip_prefix("poly-factored:") {
            let mut coeffs = vec![QRat::one()];
            for factor in body.split(')').filter(|p| !p.trim().is_empty()) {
                let inner = factor
                    .trim()
                    .strip_prefix('(')
                    .ok_or_else(|| bad("factored kernel expects (u,v) groups"))?;
                let parts: Vec<&str> = inner.split(',').collect();
                if parts.len() != 2 {
                    return Err(bad("each kernel factor needs exactly two entries"));
                }
                let u = parse_rat(parts[0].trim())?;
                let v = parse_rat(parts[1].trim())?;
                let mut next = vec![QRat::zero(); coeffs.len() + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    next[i] = next[i].add(&c.mul(&u));
                    next[i + 1] = next[i + 1].add(&c.mul(&v));
                }
                coeffs = next;
            }
            if coeffs.first() != Some(&QRat::one()) {
                return Err(bad("factored kernel must have unit leading factor"));
            }
            return Ok(FSpec::Poly(coeffs));
        }
        Err(bad("unknown kernel name"))
    }

    /// True when `F` itself is a power series (no half-integer powers).
    pub fn is_integral(&self) -> bool {
        !matches!(self, FSpec::Heun81)
    }

    /// The series `F` to the given precision. Fails for kernels whose
    /// `F` lives in half-integer powers; use `square` for those.
    pub fn series(&self, prec: i64) -> Result<Series<QRat>> {
        match self {
            FSpec::Elliptic => {
                let h = gauss_2f1(&qr(1, 12), &qr(5, 12), &qi(1), prec)?;
                // rescale the argument by 1728 in place
                let mut pow = QRat::one();
                let scaled: Vec<QRat> = h
                    .iter()
                    .map(|(_, c)| {
                        let v = c.mul(&pow);
                        pow = pow.mul(&qi(1728));
                        v
                    })
                    .collect();
                let h1728 = Series::new(0, scaled);
                // (1 - 1728x)^(1/2) by its term recurrence
                let mut rc = vec![QRat::one()];
                for k in 0..prec.max(1) - 1 {
                    let step = qr(2 * k - 1, k + 1).mul(&qi(864));
                    rc.push(rc[k as usize].mul(&step));
                }
                let root = Series::new(0, rc);
                // every factor is integral, and the two full products are
                // far cheaper over integers than over rationals
                let prod = match (integer_series(&h1728), integer_series(&root)) {
                    (Some(hz), Some(rz)) => rat_series(&hz.mul(&hz).mul(&rz)),
                    _ => h1728.mul(&h1728).mul(&root),
                };
                Ok(prod.shift(1).truncate(prec))
            }
            FSpec::Heun81 => Err(Error::BadValuation),
            FSpec::Poly(coeffs) => {
                let mut padded = vec![QRat::zero()];
                padded.extend_from_slice(coeffs);
                Ok(Series::from_poly(&padded, prec))
            }
        }
    }

    /// The squared kernel `G = F^2`, always a power series.
    pub fn square(&self, prec: i64) -> Result<Series<QRat>> {
        match self {
            FSpec::Heun81 => {
                let h = heun_series(
                    &qi(81),
                    &qr(1, 2),
                    &qr(1, 6),
                    &qr(1, 3),
                    &qr(1, 2),
                    &qr(1, 2),
                    prec,
                )?;
                let h2 = h.mul(&h);
                let front = Series::from_poly(&[qi(0), qi(1), qr(-82, 81), qr(1, 81)], prec + 1);
                Ok(front.mul(&h2).mul(&h2).truncate(prec))
            }
            _ => {
                let f = self.series(prec)?;
                Ok(f.mul(&f).truncate(prec))
            }
        }
    }

    /// The potential `W` of this kernel, as a Laurent series with a
    /// double pole at the origin, to the given precision.
    pub fn w(&self, prec: i64) -> Result<Series<QRat>> {
        let g = self.square(prec + 5)?;
        Ok(w_from_square(&g)?.truncate(prec))
    }
}

impl std::fmt::Display for FSpec {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FSpec::Elliptic => write!(out, "elliptic"),
            FSpec::Heun81 => write!(out, "heun81"),
            FSpec::Poly(coeffs) => {
                write!(out, "poly:")?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(out, ",")?;
                    }
                    write!(out, "{}", crate::rat::fmt_rat(c))?;
                }
                Ok(())
            }
        }
    }
}

// ---------------------------------------------------------------------
// bridges between F, W and the nome
// ---------------------------------------------------------------------

/// Potential from the squared kernel: `W = L' + L^2/2` with `L = G'/(2G)`.
pub fn w_from_square<R: Ring>(g: &Series<R>) -> Result<Series<R>> {
    let l = g.deriv().div(g)?.scale_rat(&qr(1, 2));
    Ok(l.deriv().add(&l.mul(&l).scale_rat(&qr(1, 2))))
}

/// Potential from `F` with an optional rank-two deformation
/// `alpha^2 / (2 F^2)` added on top.
pub fn w_from_f<R: Ring>(f: &Series<R>, alpha2: &QRat) -> Result<Series<R>> {
    let g = f.mul(f);
    let base = w_from_square(&g)?;
    if alpha2.is_zero() {
        return Ok(base);
    }
    Ok(base.add(&g.inv()?.scale_rat(&alpha2.mul(&qr(1, 2)))))
}

/// Potential from the nome: `W = -{Q, x} - Q'^2 / (2 Q^2)`.
pub fn w_from_nome<R: Ring>(q: &Series<R>) -> Result<Series<R>> {
    let dq = q.deriv();
    let ratio = dq.mul(&dq).div(&q.mul(q))?.scale_rat(&qr(1, 2));
    Ok(q.schwarzian()?.add(&ratio).neg())
}

/// Recover `F = x + O(x^2)` from a potential whose double pole carries
/// the normalized coefficient `-1/2`.
///
/// Writes `F'/F = 1/x + sum l_k x^k` and solves the Riccati relation
/// `(k+1) l_k = w_{k-1} - (1/2) sum_{i+j=k-1} l_i l_j` order by order,
/// then exponentiates.
pub fn f_from_w(w: &Series<QRat>) -> Result<Series<QRat>> {
    if w.coeff(-2) != qr(-1, 2) || w.lo() < -2 {
        return Err(Error::WNotNormalized);
    }
    let n = (w.prec() + 1).max(0);
    let mut l: Vec<QRat> = Vec::with_capacity(n as usize);
    for k in 0..n {
        let mut s = w.coeff(k - 1);
        for i in 0..k {
            let j = k - 1 - i;
            if j < 0 {
                break;
            }
            s = s.sub(&l[i as usize].mul(&l[j as usize]).mul_rat(&qr(1, 2)));
        }
        l.push(s / qi(k + 1));
    }
    let tail = Series::new(0, l);
    Ok(tail.integrate()?.exp()?.shift(1))
}

/// Nome of a normalized kernel: the solution of `F Q' = Q` with
/// `Q = x + O(x^2)`.
pub fn nome_from_f<R: Ring>(f: &Series<R>) -> Result<Series<R>> {
    if f.valuation() != Some(1) || f.coeff(1) != R::one() {
        return Err(Error::BadNormalization);
    }
    let prec = f.prec();
    let mut q: Vec<R> = vec![R::zero(); prec.max(1) as usize];
    if prec >= 2 {
        q[1] = R::one();
    }
    for idx in 2..prec {
        // (n - 1) q_n = - sum_{m=2..n} f_m (n + 1 - m) q_{n+1-m}
        let mut s = R::zero();
        for m in 2..=idx {
            let t = f.coeff(m).mul(&q[(idx + 1 - m) as usize]).mul_i64(idx + 1 - m);
            s = s.sub(&t);
        }
        q[idx as usize] = s.mul_rat(&qr(1, idx - 1));
    }
    Ok(Series::new(0, q).truncate(prec))
}

/// Compositional inverse of the nome (the mirror map).
pub fn mirror_from_nome<R: Ring>(q: &Series<R>) -> Result<Series<R>> {
    q.revert()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ser(vals: &[i64]) -> Series<QRat> {
        Series::new(1, vals.iter().map(|&v| qi(v)).collect())
    }

    #[test]
    fn elliptic_f_closed_form() {
        let f = FSpec::Elliptic.series(6).unwrap();
        let want = ser(&[1, -744, -393768, -357444672, -394896727080]);
        assert_eq!(f, want);
    }

    #[test]
    fn heun_square_coefficients() {
        let g = FSpec::Heun81.square(7).unwrap();
        let scaled = g.scale_rat(&qi(81));
        let want = Series::from_rats(
            1,
            &[
                qi(81),
                qi(-78),
                qr(-137, 81),
                qr(-3892, 6561),
                qr(-44495, 177147),
                qr(-1900594, 14348907),
            ],
        );
        assert_eq!(scaled, want);
    }

    #[test]
    fn nome_and_mirror_elliptic() {
        let f = FSpec::Elliptic.series(5).unwrap();
        let q = nome_from_f(&f).unwrap();
        assert_eq!(q, ser(&[1, 744, 750420, 872769632]));
        let x = mirror_from_nome(&q).unwrap();
        assert_eq!(x, ser(&[1, -744, 356652, -140361152]));
    }

    #[test]
    fn f_from_w_round_trip() {
        let spec = FSpec::parse("poly:1,-5,6").unwrap();
        let f = spec.series(12).unwrap();
        let w = w_from_f(&f, &QRat::zero()).unwrap();
        let back = f_from_w(&w).unwrap().truncate(12);
        assert_eq!(back, f);
    }

    #[test]
    fn three_potential_routes_agree() {
        let f = FSpec::Elliptic.series(14).unwrap();
        let w1 = w_from_f(&f, &QRat::zero()).unwrap().truncate(8);
        let w2 = w_from_square(&FSpec::Elliptic.square(14).unwrap()).unwrap().truncate(8);
        let q = nome_from_f(&f).unwrap();
        let w3 = w_from_nome(&q).unwrap().truncate(8);
        assert_eq!(w1, w2);
        assert_eq!(w1, w3);
    }

    #[test]
    fn elliptic_w_matches_rational_form() {
        // -1/2 (1 - 1968 x + 2654208 x^2) / (x^2 (1 - 1728 x)^2)
        let num: Vec<QRat> = [qr(-1, 2), qr(1968, 2), qr(-2654208, 2)].to_vec();
        let den: Vec<QRat> = [qi(1), qi(-3456), qi(2985984)].to_vec();
        let w_rat = crate::series::rational_series(&num, &den, 8)
            .unwrap()
            .shift(-2);
        let w = FSpec::Elliptic.w(6).unwrap();
        assert_eq!(w, w_rat.truncate(6));
    }

    #[test]
    fn factored_kernel_parses() {
        let spec = FSpec::parse("poly-factored:(1,-373)(1,-371)").unwrap();
        assert_eq!(spec, FSpec::Poly(vec![qi(1), qi(-744), qi(138383)]));
        let f = spec.series(10).unwrap();
        assert_eq!(f.coeff(3), qi(138383));
    }

    #[test]
    fn heun_c1_is_one_over_81() {
        let h = heun_series(&qi(81), &qr(1, 2), &qr(1, 6), &qr(1, 3), &qr(1, 2), &qr(1, 2), 3)
            .unwrap();
        assert_eq!(h.coeff(1), qr(1, 81));
    }

    #[test]
    fn deformed_w_adds_half_alpha2_over_f2() {
        let spec = FSpec::parse("poly-factored:(1,-373)(1,-371)").unwrap();
        let f = spec.series(10).unwrap();
        let w0 = w_from_f(&f, &QRat::zero()).unwrap();
        let w1 = w_from_f(&f, &qi(1)).unwrap();
        let diff = w1.sub(&w0);
        // the alpha = 1 deformation cancels the double pole entirely
        assert_eq!(diff.coeff(-2), qr(1, 2));
        assert_eq!(w1.coeff(-2), QRat::zero());
        assert_eq!(w1.coeff(-1), QRat::zero());
        assert_eq!(w1.coeff(0), qi(415149));
    }
}
