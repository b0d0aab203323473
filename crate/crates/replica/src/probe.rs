//! Arithmetic probes on rational power series.
//!
//! Everything here inspects a series that was computed exactly and asks a
//! question about its arithmetic: what it looks like modulo a prime, whether
//! a first order operator built from it has vanishing p-curvature, where its
//! nearest singularity sits, and whether its coefficient denominators stay
//! tame. The probes are deliberately one directional. A positive mod-p or
//! denominator finding is a proof (the input coefficients are exact), while
//! the floating point radius estimators only report evidence.
//!
//! Invariants relied on throughout:
//! - reduction mod p is defined only when no denominator is divisible by p,
//!   and fails loudly with the offending index otherwise;
//! - the rank one p-curvature recursion N_{k+1} = N_k' Q - k N_k Q' + P N_k
//!   stays polynomial, so no rational function arithmetic is ever needed;
//! - ratio based radius estimates use exact coefficient ratios converted to
//!   f64 at the last moment, never f64 coefficients, so overflow of the
//!   coefficients themselves cannot skew the estimate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::primefield::{Fp, FpPoly, ModPSeries};
use crate::rat::{rat_to_f64, QRat};
use crate::series::Series;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// reduction mod p

/// Reduce an exact series with nonnegative valuation modulo a prime.
///
/// The result keeps absolute exponents: entry k of the output is the residue
/// of the coefficient of x^k, so the window below the valuation is padded
/// with zeros. Fails with `BadReduction` if any denominator is divisible by
/// p, and with `BadValuation` if the series has a pole.
pub fn reduce_series(s: &Series<QRat>, p: u64) -> Result<ModPSeries> {
    if s.lo() < 0 {
        return Err(Error::BadValuation);
    }
    let n = s.prec().max(0) as usize;
    let mut coeffs = vec![QRat::zero(); n];
    for (k, c) in s.iter() {
        coeffs[k as usize] = c.clone();
    }
    ModPSeries::reduce(p, &coeffs)
}

/// True if every coefficient in the window is an integer.
pub fn series_is_integral(s: &Series<QRat>) -> bool {
    s.iter().all(|(_, c)| c.is_integer())
}

// ---------------------------------------------------------------------------
// the sigma series and its mod 2 structure

/// Normalize the a = 3 solution into its sigma form.
///
/// Given S with S = 3x + O(x^2), returns 1 + (S - 3x)/(96x) + (99/2)x. The
/// interesting arithmetic lives in this normalization: the result has
/// integer coefficients and satisfies an Artin-Schreier equation mod 2.
pub fn sigma_from_cubic(s: &Series<QRat>) -> Result<Series<QRat>> {
    let prec = s.prec();
    let three_x = Series::monomial(QRat::from_integer(3.into()), 1, prec);
    let num = s.sub(&three_x);
    // dividing by 96x shifts the window down by one
    let shifted = num.shift(-1).scale(&crate::rat::qr(1, 96));
    let mut out = shifted.add(&Series::monomial(crate::rat::qr(99, 2), 1, prec - 1));
    out = out.add(&Series::constant(QRat::one(), prec - 1));
    Ok(out)
}

/// Check the two mod 2 identities satisfied by sigma.
///
/// Returns Ok(()) when, to the full precision of the input, sigma has
/// integer coefficients, sigma^2 - sigma + x vanishes mod 2, and the mod 2
/// reduction is supported exactly on exponent 0 and the powers of two.
/// The first violated identity is reported as `Inconsistent` with the
/// offending order.
pub fn sigma_check(sigma: &Series<QRat>) -> Result<()> {
    for (k, c) in sigma.iter() {
        if !c.is_integer() {
            return Err(Error::Inconsistent { order: k });
        }
    }
    let red = reduce_series(sigma, 2)?;
    // sigma^2 - sigma + x = 0 in F_2[[x]]
    let sq = red.mul(&red);
    let prec = sq.prec().min(red.prec());
    for k in 0..prec {
        let mut v = (sq.coeff(k) + 2 - red.coeff(k)) % 2;
        if k == 1 {
            v = (v + 1) % 2;
        }
        if v != 0 {
            return Err(Error::Inconsistent { order: k as i64 });
        }
    }
    // support must be {0} together with the powers of two
    for k in 0..red.prec() {
        let expected = k == 0 || (k as u64).is_power_of_two();
        if (red.coeff(k) != 0) != expected {
            return Err(Error::Inconsistent { order: k as i64 });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// p-curvature of first order operators

/// Outcome of a rank one p-curvature computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curvature {
    /// the p-curvature vanishes: the equation has a full basis of mod p
    /// algebraic solutions
    Zero,
    /// the p-curvature is a nonzero scalar
    Nonzero,
}

/// p-curvature of F d/dx - 1, with F given by its coefficient list.
///
/// The operator is D - 1/F in monic form. Writing the iterated right hand
/// sides as N_k / F^k, the recursion N_{k+1} = N_k' F - k N_k F' + N_k
/// stays in F_p[x], and the p-curvature vanishes exactly when N_p does.
/// Fails with `PoleCollision` when F reduces to the zero polynomial mod p,
/// since 1/F then has no meaning in characteristic p.
pub fn p_curvature_order_one(f: &[QRat], p: u64) -> Result<Curvature> {
    let fbar = FpPoly::reduce(p, f)?;
    if fbar.is_zero() {
        return Err(Error::PoleCollision { prime: p });
    }
    let fder = fbar.deriv();
    let mut n_k = FpPoly::new(p, vec![1]);
    for k in 1..p {
        // N_{k+1} = N_k' F - k N_k F' + N_k
        let a = n_k.deriv().mul(&fbar);
        let b = n_k.mul(&fder).scale(Fp::from_u64(p, k % p));
        n_k = a.sub(&b).add(&n_k);
    }
    if n_k.is_zero() {
        Ok(Curvature::Zero)
    } else {
        Ok(Curvature::Nonzero)
    }
}

// ---------------------------------------------------------------------------
// radius of convergence estimates

/// Exact ratio of the last two consecutive nonzero coefficients, as f64.
///
/// This is the raw d'Alembert statistic: for a series with a single
/// dominant singularity at rho the returned value approaches 1/rho, signed.
/// Returns None when no consecutive nonzero pair exists.
pub fn tail_ratio(s: &Series<QRat>) -> Option<f64> {
    let mut last: Option<(i64, QRat)> = None;
    let mut best: Option<QRat> = None;
    for (k, c) in s.iter() {
        if c.is_zero() {
            last = None;
            continue;
        }
        if let Some((pk, pc)) = &last {
            if *pk == k - 1 {
                best = Some(c / pc);
            }
        }
        last = Some((k, c.clone()));
    }
    best.map(|q| rat_to_f64(&q))
}

/// Ratio trace plus a headline estimate for the nearest singularity.
#[derive(Debug, Clone)]
pub struct RadiusReport {
    /// mean of the last `window` signed ratios c_n / c_{n+1}
    pub estimate: f64,
    /// the signed ratios (n, c_n / c_{n+1}) over the inspected tail
    pub trace: Vec<(i64, f64)>,
}

// signed consecutive-coefficient ratios c_n / c_{n+1} over the whole window
fn signed_ratios(s: &Series<QRat>) -> Vec<(i64, f64)> {
    let mut ratios: Vec<(i64, f64)> = Vec::new();
    let mut prev: Option<(i64, QRat)> = None;
    for (k, c) in s.iter() {
        if c.is_zero() {
            prev = None;
            continue;
        }
        if let Some((pk, pc)) = &prev {
            if *pk == k - 1 {
                ratios.push((*pk, rat_to_f64(&(pc / c))));
            }
        }
        prev = Some((k, c.clone()));
    }
    ratios
}

/// Locate the nearest singularity by consecutive-coefficient ratios.
///
/// The ratios c_n / c_{n+1} approach the signed position of the dominant
/// singularity; the report carries their tail and the mean of the last
/// `window` of them as the headline estimate, so the sign survives. Every
/// ratio is formed exactly and converted to f64 at the end. Fails with
/// `InsufficientTerms` when fewer than window + 2 consecutive nonzero
/// coefficients are available.
pub fn radius_report(s: &Series<QRat>, window: usize) -> Result<RadiusReport> {
    let window = window.max(1);
    let ratios = signed_ratios(s);
    if ratios.len() + 1 < window + 2 {
        return Err(Error::InsufficientTerms);
    }
    let tail = &ratios[ratios.len() - window..];
    let estimate = tail.iter().map(|(_, r)| r).sum::<f64>() / window as f64;
    Ok(RadiusReport {
        estimate,
        trace: ratios,
    })
}

/// Estimate the radius of convergence from the coefficient tail.
///
/// Uses the d'Alembert ratios e_n = |c_{n+1}/c_n| over the last `window`
/// usable indices and removes the leading 1/n drift by extrapolating
/// n e_n - (n-1) e_{n-1}. For a series with an algebraic singularity this
/// converges one order faster than the raw ratio, at the price of losing
/// the sign. Returns None when fewer than two consecutive ratios are
/// available or the extrapolated limit is not a positive finite number.
pub fn radius_estimate(s: &Series<QRat>, window: usize) -> Option<f64> {
    let mut ratios: Vec<(i64, f64)> = Vec::new();
    let mut prev: Option<(i64, QRat)> = None;
    for (k, c) in s.iter() {
        if c.is_zero() {
            prev = None;
            continue;
        }
        if let Some((pk, pc)) = &prev {
            if *pk == k - 1 {
                let e = (c / pc).abs();
                ratios.push((*pk, rat_to_f64(&e)));
            }
        }
        prev = Some((k, c.clone()));
    }
    if ratios.len() < 2 {
        return None;
    }
    let start = ratios.len().saturating_sub(window.max(2));
    let tail = &ratios[start..];
    let mut est = None;
    for w in tail.windows(2) {
        let (n0, e0) = w[0];
        let (n1, e1) = w[1];
        if n1 != n0 + 1 {
            continue;
        }
        // kills the 1/n term of e_n = L (1 + a/n + ...)
        est = Some((n1 + 1) as f64 * e1 - (n0 + 1) as f64 * e0);
    }
    match est {
        Some(l) if l.is_finite() && l > 0.0 => Some(1.0 / l),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// denominator growth

/// Largest prime tried by the denominator factorizer.
const TRIAL_BOUND: u64 = 1_000_000;

// factor out small primes; a surviving cofactor > 1 is reported under its
// own value when it fits in a u64 (for our data it is then a prime)
fn factor_denominator(d: &BigInt) -> Vec<(u64, u32)> {
    let mut n = d.abs();
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut p: u64 = 2;
    while p <= TRIAL_BOUND {
        let bp = BigInt::from(p);
        if (&n % &bp).is_zero() {
            let mut e = 0u32;
            while (&n % &bp).is_zero() {
                n /= &bp;
                e += 1;
            }
            out.push((p, e));
        }
        if &bp * &bp > n {
            break;
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if n > BigInt::one() {
        if let Ok(v) = u64::try_from(&n) {
            out.push((v, 1));
        }
    }
    out
}

/// First appearance of each prime among the coefficient denominators.
///
/// Returns (prime, index) pairs sorted by prime, where index is the lowest
/// exponent whose coefficient has a denominator divisible by the prime. A
/// globally bounded series yields a short list that stabilizes early; a
/// series that is not globally bounded keeps producing newcomers.
pub fn denominator_primes(s: &Series<QRat>) -> Vec<(u64, i64)> {
    let mut first: std::collections::BTreeMap<u64, i64> = std::collections::BTreeMap::new();
    for (k, c) in s.iter() {
        let den = c.denom();
        if den.is_one() {
            continue;
        }
        for (p, _) in factor_denominator(den) {
            first.entry(p).or_insert(k);
        }
    }
    first.into_iter().collect()
}

/// Scale factor lambda such that f(lambda x) has p-integral coefficients
/// for every prime seen in a denominator, over the available window.
///
/// For prime p the exponent is max over n >= 1 of ceil(v_p(den c_n) / n).
/// Returns None when the constant term itself has a denominator, since no
/// rescaling of x can repair that.
pub fn integrality_scale(s: &Series<QRat>) -> Option<BigInt> {
    if !s.coeff(0).is_integer() {
        return None;
    }
    let mut worst: std::collections::BTreeMap<u64, u32> = std::collections::BTreeMap::new();
    for (k, c) in s.iter() {
        if k < 1 || c.denom().is_one() {
            continue;
        }
        for (p, e) in factor_denominator(c.denom()) {
            let need = (e + k as u32 - 1) / k as u32;
            let slot = worst.entry(p).or_insert(0);
            if need > *slot {
                *slot = need;
            }
        }
    }
    let mut lambda = BigInt::one();
    for (p, e) in worst {
        lambda *= BigInt::from(p).pow(e);
    }
    Some(lambda)
}

/// Primes whose first denominator appearance is at `late_after` or beyond.
///
/// A globally bounded series admits one rescaling clearing all denominators,
/// so only finitely many primes can ever appear and in practice they appear
/// immediately. Late newcomers are the witnesses the probe reports.
pub fn late_denominator_primes(s: &Series<QRat>, late_after: i64) -> Vec<(u64, i64)> {
    denominator_primes(s)
        .into_iter()
        .filter(|(_, k)| *k >= late_after)
        .collect()
}

/// Verdict of the globally-bounded probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundedVerdict {
    /// f(scale * x) has integer coefficients over the inspected window;
    /// the scale is the minimal such positive integer
    RescaledIntegral { scale: BigInt },
    /// the denominators keep recruiting new primes: each (prime, index)
    /// pair is a prime first seen that deep in the tail
    UnboundedEvidence { newcomers: Vec<(u64, i64)> },
}

/// Decide, over the available window, whether one integer rescaling of x
/// clears every denominator.
///
/// Two or more primes first appearing five or more exponents past the
/// valuation are taken as unbounded-growth evidence, since a globally
/// bounded series shows its full denominator support immediately. Otherwise
/// the minimal clearing scale is reported. The verdict is evidence, not a
/// theorem: it sees only the truncation it was given.
pub fn globally_bounded_probe(s: &Series<QRat>) -> BoundedVerdict {
    let newcomers = late_denominator_primes(s, s.lo() + 5);
    if newcomers.len() >= 2 {
        return BoundedVerdict::UnboundedEvidence { newcomers };
    }
    match integrality_scale(s) {
        Some(scale) => BoundedVerdict::RescaledIntegral { scale },
        None => BoundedVerdict::UnboundedEvidence { newcomers },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{qi, qr};
    use crate::special::FSpec;

    fn elliptic_pair(prec: i64) -> (Series<QRat>, Series<QRat>) {
        let f = FSpec::Elliptic.series(prec + 2).unwrap();
        let q = crate::special::nome_from_f(&f).unwrap();
        let x = crate::special::mirror_from_nome(&q).unwrap();
        (q.truncate(prec), x.truncate(prec))
    }

    #[test]
    fn sigma_matches_catalogued_values_and_mod2_structure() {
        let (q, x) = elliptic_pair(35);
        let s = x.compose(&q.scale(&qi(3))).unwrap();
        assert_eq!(s.coeff(1), qi(3));
        assert_eq!(s.coeff(2), qi(-4464));
        assert_eq!(s.coeff(3), qi(1917216));
        assert_eq!(s.coeff(4), qi(-1013769984));
        assert_eq!(s.coeff(5), qi(-33437759328));
        let sigma = sigma_from_cubic(&s).unwrap();
        assert_eq!(sigma.coeff(0), qi(1));
        assert_eq!(sigma.coeff(1), qi(3));
        assert_eq!(sigma.coeff(2), qi(19971));
        assert_eq!(sigma.coeff(3), qi(-10560104));
        assert_eq!(sigma.coeff(4), qi(-348309993));
        sigma_check(&sigma).unwrap();
    }

    #[test]
    fn sigma_check_rejects_a_corrupted_series() {
        let (q, x) = elliptic_pair(20);
        let s = x.compose(&q.scale(&qi(3))).unwrap();
        let mut sigma = sigma_from_cubic(&s).unwrap();
        // flip one bit mod 2 away from the lacunary support
        sigma = sigma.add(&Series::monomial(qi(1), 5, sigma.prec()));
        assert!(sigma_check(&sigma).is_err());
    }

    #[test]
    fn p_curvature_detects_the_zero_primes() {
        // F = x - 744 x^2 - 393768 x^3
        let f = vec![qi(0), qi(1), qi(-744), qi(-393768)];
        assert_eq!(p_curvature_order_one(&f, 3).unwrap(), Curvature::Zero);
        assert_eq!(p_curvature_order_one(&f, 11).unwrap(), Curvature::Zero);
        assert_eq!(p_curvature_order_one(&f, 5).unwrap(), Curvature::Nonzero);
        assert_eq!(p_curvature_order_one(&f, 7).unwrap(), Curvature::Nonzero);
    }

    #[test]
    fn p_curvature_vanishes_for_logarithmic_derivative_kernels() {
        // F d/dx - 1 with F = x(1 - 2x): solution x/(1-2x) is rational, so
        // the curvature must vanish at every good prime
        let f = vec![qi(0), qi(1), qi(-2)];
        for p in [3u64, 5, 7, 11, 13] {
            assert_eq!(p_curvature_order_one(&f, p).unwrap(), Curvature::Zero);
        }
    }

    #[test]
    fn radius_estimate_recovers_a_known_radius() {
        // nome of the cubic family: singularities at 1/3 and 4/27 for the
        // mirror pair; the nome x(1-2x)^2/(1-3x)^3 expanded has radius 1/3
        let mut nc = vec![qi(0); 60];
        (nc[1], nc[2], nc[3]) = (qi(1), qi(-4), qi(4));
        let mut dc = vec![qi(0); 60];
        (dc[0], dc[1], dc[2], dc[3]) = (qi(1), qi(-9), qi(27), qi(-27));
        let num = Series::from_rats(0, &nc);
        let den = Series::from_rats(0, &dc);
        let q = num.div(&den).unwrap();
        let r = radius_estimate(&q, 8).unwrap();
        assert!((r - 1.0 / 3.0).abs() < 0.0034, "estimate {r}");
    }

    #[test]
    fn tail_ratio_is_signed() {
        // geometric series with ratio -5
        let mut coeffs = vec![qi(1)];
        for k in 1..20 {
            let prev = coeffs[k - 1].clone();
            coeffs.push(prev * qi(-5));
        }
        let s = Series::from_rats(0, &coeffs);
        let r = tail_ratio(&s).unwrap();
        assert!((r + 5.0).abs() < 1e-12);
    }

    #[test]
    fn denominator_probes_distinguish_bounded_from_unbounded() {
        // integral series: no denominator primes at all, scale 1
        let (q, _) = elliptic_pair(20);
        assert!(denominator_primes(&q).is_empty());
        assert_eq!(
            globally_bounded_probe(&q),
            BoundedVerdict::RescaledIntegral {
                scale: BigInt::one()
            }
        );

        // half-integer coefficients early on: bounded, rescalable by 2
        let s = Series::from_rats(0, &[qi(1), qr(1, 2), qr(1, 4), qr(1, 8)]);
        assert_eq!(
            globally_bounded_probe(&s),
            BoundedVerdict::RescaledIntegral {
                scale: BigInt::from(2)
            }
        );

        // newcomers 5 and 7 deep in the tail: fires
        let mut coeffs = vec![qi(1); 12];
        coeffs[8] = qr(1, 5);
        coeffs[10] = qr(1, 7);
        let t = Series::from_rats(0, &coeffs);
        let verdict = globally_bounded_probe(&t);
        assert_eq!(
            verdict,
            BoundedVerdict::UnboundedEvidence {
                newcomers: vec![(5, 8), (7, 10)]
            }
        );
    }

    #[test]
    fn radius_report_carries_sign_and_window_average() {
        // geometric series at ratio -4: every signed ratio is exactly -1/4
        let mut coeffs = vec![qi(1)];
        for k in 1..16 {
            let prev = coeffs[k - 1].clone();
            coeffs.push(prev * qi(-4));
        }
        let s = Series::from_rats(0, &coeffs);
        let report = radius_report(&s, 5).unwrap();
        assert!((report.estimate + 0.25).abs() < 1e-14);
        assert_eq!(report.trace.len(), 15);
        assert!(matches!(
            radius_report(&Series::from_rats(0, &[qi(1), qi(1)]), 5),
            Err(Error::InsufficientTerms)
        ));
    }
}
