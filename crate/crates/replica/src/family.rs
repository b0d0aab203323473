//! Order-by-order solver for the Schwarzian functional equation and the
//! transport identities its solutions obey.
//!
//! The equation relates a potential `W` with (at most) a double pole at
//! the origin to an unknown series `y`:
//!
//! `W(y(x)) y'(x)^2 - {y(x), x} - W(x) = 0`
//!
//! where `{y, x}` is the Schwarzian derivative. Given `W` and a target
//! valuation `N`, `solve_schwarz` grows a solution `y = c x^N + ...` one
//! coefficient at a time. Each unknown coefficient enters the residual
//! affinely, so two residual evaluations per order pin it down.
//!
//! Invariants the solver maintains:
//!
//!  * the pivot of the unknown at order `n` sits at residual index
//!    `n - N - 2`; every residual coefficient below the pivot must
//!    already vanish, otherwise the equation is inconsistent there.
//!  * a vanishing pivot with a vanishing constraint marks a resonant
//!    order where a fresh parameter may be injected (`forced` values);
//!    a vanishing pivot with a non-vanishing constraint is an error.
//!  * for `N >= 2` the double pole of `W` must carry coefficient `-1/2`,
//!    the indicial condition for a solution of valuation `N` to exist.
//!  * the returned series always passes a full residual re-check.
//!
//! On top of the solver sit the family utilities: the one- and
//! two-parameter deformations with polynomial-in-parameter coefficients,
//! the epsilon ladder around the identity, extraction of the nome and
//! mirror map from a solved family, and the first-order transport
//! residuals used to cross-check everything.

use std::collections::BTreeMap;

use crate::parampoly::{ParamPoly, ParamRat};
use crate::rat::{qi, qr, QRat};
use crate::ring::Ring;
use crate::series::Series;
use crate::{Error, Result};

/// Lift a rational-coefficient series into any coefficient ring.
pub fn lift_rat_series<R: Ring>(s: &Series<QRat>) -> Series<R> {
    s.map(|q| R::from_rat(q))
}

/// Residual of the Schwarzian equation: `W(y) y'^2 - {y, x} - W(x)`.
pub fn schwarz_residual<R: Ring>(w: &Series<R>, y: &Series<R>) -> Result<Series<R>> {
    let dy = y.deriv();
    let wy = w.compose(y)?;
    Ok(wy.mul(&dy.mul(&dy)).sub(&y.schwarzian()?).sub(w))
}

// ---------------------------------------------------------------------
// the order-by-order solver
// ---------------------------------------------------------------------

/// Solve the Schwarzian equation for `y = seed x^n0 + O(x^{n0+1})`.
///
/// `forced` supplies coefficient values at resonant orders (where the
/// equation does not constrain the coefficient); all other coefficients
/// are determined uniquely. The potential must be known at least to
/// precision `prec - n0` for the final orders to be visible; passing
/// `w` with precision `prec + 2` is always enough.
pub fn solve_schwarz<R: Ring>(
    w: &Series<R>,
    n0: i64,
    seed: &R,
    forced: &[(i64, R)],
    prec: i64,
) -> Result<Series<R>> {
    if n0 < 1 {
        return Err(Error::BadValuation);
    }
    if seed.is_zero() {
        return Err(Error::NonUnitLeading);
    }
    if n0 >= 2 && w.coeff(-2) != R::from_rat(&qr(-1, 2)) {
        return Err(Error::WNotNormalized);
    }
    let forced_map: BTreeMap<i64, R> = forced.iter().cloned().collect();
    let mut cs = vec![seed.clone()];
    for n in (n0 + 1)..prec {
        let mut v0 = cs.clone();
        v0.push(R::zero());
        let mut v1 = cs.clone();
        v1.push(R::one());
        let r0 = schwarz_residual(w, &Series::new(n0, v0))?;
        let r1 = schwarz_residual(w, &Series::new(n0, v1))?;
        let d = r1.sub(&r0);
        let m = n - n0 - 2;
        if m >= r0.prec() || m >= d.prec() {
            return Err(Error::PrecisionUnderflow);
        }
        for j in r0.lo()..m {
            if !r0.coeff(j).is_zero() {
                return Err(Error::Inconsistent { order: n });
            }
        }
        let pivot = d.coeff(m);
        let constraint = r0.coeff(m);
        let c_n = if pivot.is_zero() {
            if !constraint.is_zero() {
                return Err(Error::Inconsistent { order: n });
            }
            forced_map.get(&n).cloned().unwrap_or_else(R::zero)
        } else {
            if forced_map.contains_key(&n) {
                return Err(Error::BadParametrization { n: n as u32 });
            }
            constraint
                .neg()
                .exact_div(&pivot)
                .ok_or(Error::DivisionNotExact)?
        };
        cs.push(c_n);
    }
    let y = Series::new(n0, cs);
    let r = schwarz_residual(w, &y)?;
    if !r.is_zero_to_prec() {
        let bad = r
            .iter()
            .find(|(_, c)| !c.is_zero())
            .map(|(e, _)| e)
            .unwrap_or(0);
        return Err(Error::Inconsistent { order: bad });
    }
    Ok(y)
}

/// Solve for the one-parameter family `y(a, x) = a x + O(x^2)` whose
/// coefficients are polynomials in the parameter.
pub fn solve_one_param(w: &Series<QRat>, var: &str, prec: i64) -> Result<Series<ParamRat>> {
    let wp: Series<ParamRat> = lift_rat_series(w);
    solve_schwarz(&wp, 1, &ParamRat::var(var), &[], prec)
}

/// Solve for a two-parameter family under a rank-two deformation of the
/// potential that makes the second-order coefficient resonant. The
/// caller picks the gauge by supplying that coefficient.
pub fn solve_two_param(
    w: &Series<QRat>,
    c2: &ParamRat,
    avar: &str,
    prec: i64,
) -> Result<Series<ParamRat>> {
    let wp: Series<ParamRat> = lift_rat_series(w);
    solve_schwarz(&wp, 1, &ParamRat::var(avar), &[(2, c2.clone())], prec)
}

/// Solve for the valuation-`n` branch with a numeric seed.
pub fn solve_branch(w: &Series<QRat>, n: i64, seed: &QRat, prec: i64) -> Result<Series<QRat>> {
    solve_schwarz(w, n, seed, &[], prec)
}

// ---------------------------------------------------------------------
// families from the nome and back
// ---------------------------------------------------------------------

/// One-parameter family assembled directly from the nome and mirror map:
/// the mirror map evaluated on the rescaled nome. Coefficients stay
/// polynomial in the parameter, giving an independent route to the
/// family that never divides.
pub fn family_from_nome(
    q: &Series<QRat>,
    mirror: &Series<QRat>,
    var: &str,
) -> Result<Series<ParamPoly>> {
    let a = ParamPoly::var(var);
    let qa = q.map(|c| a.scale(c));
    let m: Series<ParamPoly> = lift_rat_series(mirror);
    m.compose(&qa)
}

/// Extract the coefficient of `var^k` from every series coefficient.
/// Fails when some coefficient is not polynomial in the parameters.
pub fn param_slice(y: &Series<ParamRat>, var: &str, k: u32) -> Result<Series<QRat>> {
    let mut out = Vec::new();
    for (_, c) in y.iter() {
        let p = c.as_poly().ok_or(Error::DivisionNotExact)?;
        let piece = p.coeff_of(var, k);
        out.push(piece.as_rat().ok_or(Error::DivisionNotExact)?);
    }
    Ok(Series::new(y.lo(), out))
}

/// The nome of the kernel, read off a solved family as the part of each
/// coefficient linear in the parameter.
pub fn nome_from_family(y: &Series<ParamRat>, var: &str) -> Result<Series<QRat>> {
    param_slice(y, var, 1)
}

/// The mirror map, read off a solved family as the top-degree parameter
/// part: the coefficient of `var^n` at order `x^n`.
pub fn mirror_from_family(y: &Series<ParamRat>, var: &str) -> Result<Series<QRat>> {
    let mut out = Vec::new();
    for (e, c) in y.iter() {
        let p = c.as_poly().ok_or(Error::DivisionNotExact)?;
        let piece = p.coeff_of(var, e.max(0) as u32);
        out.push(piece.as_rat().ok_or(Error::DivisionNotExact)?);
    }
    Ok(Series::new(y.lo(), out))
}

// ---------------------------------------------------------------------
// the epsilon ladder around the identity
// ---------------------------------------------------------------------

/// Successive corrections `B_1, B_2, ...` of the family near the
/// identity, from the ladder `(k+1) B_{k+1} + k B_k = F B_k'` seeded by
/// `B_1 = F`. Each rung loses one order of precision to the derivative.
pub fn epsilon_ladders(f: &Series<QRat>, count: usize) -> Vec<Series<QRat>> {
    let mut out = vec![f.clone()];
    for k in 1..count.max(1) {
        let prev = &out[k - 1];
        let next = f
            .mul(&prev.deriv())
            .sub(&prev.scale_rat(&qi(k as i64)))
            .scale_rat(&qr(1, k as i64 + 1));
        out.push(next);
    }
    out
}

/// Assemble the ladder into the deformation series
/// `y = x + B_1 eps + B_2 eps^2 + ...` with polynomial coefficients in
/// the deformation variable.
pub fn epsilon_assemble(ladders: &[Series<QRat>], var: &str, prec: i64) -> Series<ParamPoly> {
    let mut y: Series<ParamPoly> = Series::x(prec);
    for (k, b) in ladders.iter().enumerate() {
        let rung = b
            .truncate(prec.min(b.prec()))
            .map(|c| ParamPoly::monomial(var, k as u32 + 1, c.clone()));
        y = y.add(&rung);
    }
    y
}

// ---------------------------------------------------------------------
// transport residuals
// ---------------------------------------------------------------------

/// Residual of the multiplier identity `mu F(y) = F(x) y'`.
pub fn multiplier_residual<R: Ring>(f: &Series<R>, y: &Series<R>, mu: &R) -> Result<Series<R>> {
    Ok(f.compose(y)?.scale(mu).sub(&f.mul(&y.deriv())))
}

/// Residual of the squared multiplier identity `mu G(y) = G(x) y'^2`,
/// the form that survives when `F` itself lives in half-integer powers.
pub fn square_multiplier_residual<R: Ring>(
    g: &Series<R>,
    y: &Series<R>,
    mu: &R,
) -> Result<Series<R>> {
    let dy = y.deriv();
    Ok(g.compose(y)?.scale(mu).sub(&g.mul(&dy.mul(&dy))))
}

/// Residual of the Euler transport equation
/// `sum_v v dy/dv = F(y)` over the listed parameters. With a single
/// parameter this is the flow equation `a dy/da = F(y)`.
pub fn transport_residual(
    y: &Series<ParamRat>,
    f: &Series<QRat>,
    vars: &[&str],
) -> Result<Series<ParamRat>> {
    let mut euler = Series::zero(y.prec());
    for var in vars {
        let v = ParamRat::var(var);
        euler = euler.add(&y.map(|c| c.deriv(var).mul(&v)));
    }
    let fy = lift_rat_series::<ParamRat>(f).compose(y)?;
    Ok(euler.sub(&fy))
}

/// Residual of the nome transport identity `a Q(x) = Q(y(a, x))`.
pub fn nome_transport_residual(
    q: &Series<QRat>,
    y: &Series<ParamRat>,
    var: &str,
) -> Result<Series<ParamRat>> {
    let qp = lift_rat_series::<ParamRat>(q);
    let lhs = qp.scale(&ParamRat::var(var));
    Ok(qp.compose(y)?.sub(&lhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{nome_from_f, w_from_f, FSpec};

    fn a_poly() -> ParamPoly {
        ParamPoly::var("a")
    }

    /// a (a - 1) q, as a parameter rational.
    fn aa1(q: QRat) -> ParamRat {
        let a = a_poly();
        let p = Ring::mul(&a, &a.sub(&ParamPoly::one())).scale(&q);
        ParamRat::from_poly(p)
    }

    fn elliptic_w(prec: i64) -> Series<QRat> {
        FSpec::Elliptic.w(prec).unwrap()
    }

    #[test]
    fn one_param_family_leading_coefficients() {
        let w = elliptic_w(8);
        let y = solve_one_param(&w, "a", 5).unwrap();
        assert_eq!(y.coeff(1), ParamRat::var("a"));
        assert_eq!(y.coeff(2), aa1(qi(-744)));
        // 36 a (a-1) (9907 a - 20845)
        let a = a_poly();
        let c3 = Ring::mul(
            &Ring::mul(&a, &a.sub(&ParamPoly::one())),
            &a.scale(&qi(9907)).sub(&ParamPoly::constant(qi(20845))),
        )
        .scale(&qi(36));
        assert_eq!(y.coeff(3), ParamRat::from_poly(c3));
    }

    #[test]
    fn pivot_matches_closed_form() {
        // at valuation N the unknown at order N+1 has pivot -1/(a N)
        let w: Series<ParamRat> = lift_rat_series(&elliptic_w(8));
        let a = ParamRat::var("a");
        let y0 = Series::new(3, vec![a.clone(), ParamRat::zero()]);
        let y1 = Series::new(3, vec![a.clone(), ParamRat::one()]);
        let r0 = schwarz_residual(&w, &y0).unwrap();
        let r1 = schwarz_residual(&w, &y1).unwrap();
        let d = r1.sub(&r0);
        let minus_one = ParamPoly::constant(qi(-1));
        let three_a = a_poly().scale(&qi(3));
        assert_eq!(d.coeff(-1), ParamRat::new(minus_one, three_a));
        // and the resulting coefficient is 2232 a
        let c4 = r0.coeff(-1).neg().exact_div(&d.coeff(-1)).unwrap();
        assert_eq!(c4, ParamRat::from_poly(a_poly().scale(&qi(2232))));
    }

    #[test]
    fn branch_solution_matches_square_correspondence() {
        let w = elliptic_w(12);
        let y2 = solve_branch(&w, 2, &qi(1), 6).unwrap();
        let want = Series::from_rats(2, &[qi(1), qi(1488), qi(2053632), qi(2859950080)]);
        assert_eq!(y2, want);
    }

    #[test]
    fn branch_rejects_unnormalized_potential() {
        // shift the double pole away from -1/2 and ask for valuation 2
        let w = elliptic_w(8).add(&Series::monomial(qi(1), -2, 6));
        assert!(matches!(
            solve_branch(&w, 2, &qi(1), 5),
            Err(Error::WNotNormalized)
        ));
    }

    #[test]
    fn two_param_family_matches_resonant_gauge() {
        let f = FSpec::Elliptic.series(10).unwrap();
        let w = w_from_f(&f, &qi(1)).unwrap();
        // gauge: c2 = 1728 a b - 744 a (a - 1)
        let ab = Ring::mul(&a_poly(), &ParamPoly::var("b")).scale(&qi(1728));
        let c2 = ParamRat::from_poly(ab).add(&aa1(qi(-744)));
        let y = solve_two_param(&w, &c2, "a", 4).unwrap();
        assert_eq!(y.coeff(2), c2);
        // c3 = 2985984 a b^2 - 2571264 a (a-1) b + 36 a (a-1) (9907 a - 20845)
        let a = a_poly();
        let b = ParamPoly::var("b");
        let t1 = Ring::mul(&a, &b.pow(2)).scale(&qi(2985984));
        let t2 = Ring::mul(&Ring::mul(&a, &a.sub(&ParamPoly::one())), &b)
            .scale(&qi(-2571264));
        let t3 = Ring::mul(
            &Ring::mul(&a, &a.sub(&ParamPoly::one())),
            &a.scale(&qi(9907)).sub(&ParamPoly::constant(qi(20845))),
        )
        .scale(&qi(36));
        let c3 = ParamRat::from_poly(Ring::add(&Ring::add(&t1, &t2), &t3));
        assert_eq!(y.coeff(3), c3);
    }

    #[test]
    fn two_param_euler_transport() {
        let f = FSpec::Elliptic.series(10).unwrap();
        let w = w_from_f(&f, &qi(1)).unwrap();
        // y-gauge: c2 = 1728 b - 744 a (a-1); coefficients pick up
        // monomial powers of the leading parameter as denominators
        let c2 = ParamRat::from_poly(ParamPoly::var("b").scale(&qi(1728))).add(&aa1(qi(-744)));
        let y = solve_two_param(&w, &c2, "a", 5).unwrap();
        let tr = transport_residual(&y, &f, &["a", "b"]).unwrap();
        assert!(tr.is_zero_to_prec());
        // Y-gauge: c2 = 1728 a b - 744 a (a-1) flows along a alone
        let ab = Ring::mul(&a_poly(), &ParamPoly::var("b")).scale(&qi(1728));
        let c2y = ParamRat::from_poly(ab).add(&aa1(qi(-744)));
        let yy = solve_two_param(&w, &c2y, "a", 5).unwrap();
        let try_ = transport_residual(&yy, &f, &["a"]).unwrap();
        assert!(try_.is_zero_to_prec());
    }

    #[test]
    fn family_from_nome_agrees_with_solver() {
        let w = elliptic_w(10);
        let y = solve_one_param(&w, "a", 6).unwrap();
        let f = FSpec::Elliptic.series(8).unwrap();
        let q = nome_from_f(&f).unwrap();
        let m = q.revert().unwrap();
        let alt = family_from_nome(&q, &m, "a").unwrap();
        let alt_rat: Series<ParamRat> = alt.map(|p| ParamRat::from_poly(p.clone()));
        assert_eq!(y, alt_rat.truncate(6));
    }

    #[test]
    fn nome_and_mirror_read_off_family() {
        let w = elliptic_w(10);
        let y = solve_one_param(&w, "a", 6).unwrap();
        let q = nome_from_family(&y, "a").unwrap();
        assert_eq!(
            q,
            Series::from_rats(1, &[qi(1), qi(744), qi(750420), qi(872769632), qi(1102652742882)])
        );
        let m = mirror_from_family(&y, "a").unwrap();
        assert_eq!(
            m,
            Series::from_rats(
                1,
                &[qi(1), qi(-744), qi(356652), qi(-140361152), qi(49336682190)]
            )
        );
    }

    #[test]
    fn epsilon_ladder_identities() {
        let f = FSpec::Elliptic.series(10).unwrap();
        let b = epsilon_ladders(&f, 4);
        assert_eq!(b[0], f);
        // B_2 = F (B_1' - 1) / 2
        let one = Series::constant(qi(1), f.prec() - 1);
        let b2 = f.mul(&b[0].deriv().sub(&one)).scale_rat(&qr(1, 2));
        assert_eq!(b[1], b2.truncate(b[1].prec()));
        // ladder relation at k = 3
        let lhs = b[3].scale_rat(&qi(4)).add(&b[2].scale_rat(&qi(3)));
        let rhs = f.mul(&b[2].deriv());
        assert_eq!(lhs, rhs.truncate(lhs.prec()));
    }

    #[test]
    fn transport_residuals_vanish() {
        let w = elliptic_w(12);
        let y = solve_one_param(&w, "a", 7).unwrap();
        let f = FSpec::Elliptic.series(12).unwrap();
        let tr = transport_residual(&y, &f, &["a"]).unwrap();
        assert!(tr.is_zero_to_prec());
        let fr: Series<ParamRat> = lift_rat_series(&f);
        let mr = multiplier_residual(&fr, &y, &ParamRat::one()).unwrap();
        assert!(mr.is_zero_to_prec());
        let q = nome_from_f(&f).unwrap();
        let nr = nome_transport_residual(&q, &y, "a").unwrap();
        assert!(nr.is_zero_to_prec());
    }
}
