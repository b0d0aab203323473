//! Bivariate correspondence polynomials: evaluation on series, the
//! resultant calculus that composes two correspondences, algebraic
//! branch extraction, and rational parametrizations of the curves.
//!
//! A correspondence is a polynomial in two variables, conventionally
//! named `x` and `y`, represented as a two-variable `ParamPoly`. Its
//! solution series are power or Puiseux series `y(x)` annihilating it.
//!
//! Invariants:
//!
//!  * `eval_bivariate` is plain Horner evaluation and never divides, so
//!    it works over every coefficient ring, including cyclotomic ones
//!    used for Puiseux branches in a root variable `t = x^{1/n}`.
//!  * `resultant_compose` runs a fraction-free elimination, so every
//!    intermediate division is exact; the final division by `(x - y)^2`
//!    removing the diagonal is exact as well and is checked.
//!  * branches of the inverse of a valuation-`n` series come from one
//!    principal `n`-th root and the full set of roots of unity; their
//!    `n`-fold self-composition returns the identity.

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::cyclotomic::Cyclo;
use crate::parampoly::ParamPoly;
use crate::rat::{qi, QRat};
use crate::ring::Ring;
use crate::series::Series;
use crate::{Error, Result};

// ---------------------------------------------------------------------
// bivariate polynomials on series
// ---------------------------------------------------------------------

/// Build a two-variable polynomial from `(x-exponent, y-exponent,
/// coefficient)` triples.
pub fn bivariate(terms: &[(u32, u32, QRat)]) -> ParamPoly {
    let mut acc = ParamPoly::zero_poly();
    for (i, j, c) in terms {
        let t = Ring::mul(
            &ParamPoly::monomial("x", *i, c.clone()),
            &ParamPoly::monomial("y", *j, QRat::one()),
        );
        acc = Ring::add(&acc, &t);
    }
    acc
}

/// True when the polynomial is invariant under swapping `x` and `y`.
pub fn is_symmetric(p: &ParamPoly) -> bool {
    let swap: BTreeMap<String, ParamPoly> = BTreeMap::from([
        ("x".to_string(), ParamPoly::var("y")),
        ("y".to_string(), ParamPoly::var("x")),
    ]);
    p.subst_simul(&swap) == *p
}

/// Evaluate a two-variable polynomial at a pair of series by Horner's
/// scheme in both variables.
pub fn eval_bivariate<R: Ring>(
    p: &ParamPoly,
    xs: &Series<R>,
    ys: &Series<R>,
) -> Result<Series<R>> {
    let prec = xs.prec().min(ys.prec());
    let dy = p.degree_in("y");
    let mut acc = Series::zero(prec);
    for j in (0..=dy).rev() {
        let slice = p.coeff_of("y", j);
        let dx = slice.degree_in("x");
        let mut row = Series::zero(prec);
        for i in (0..=dx).rev() {
            let c = slice
                .coeff_of("x", i)
                .as_rat()
                .ok_or(Error::KindMismatch {
                    id: "bivariate coefficient".to_string(),
                })?;
            row = row.mul(xs).add(&Series::constant(R::from_rat(&c), prec));
        }
        acc = acc.mul(ys).add(&row);
    }
    Ok(acc)
}

/// Residual of a correspondence on a candidate solution pair.
pub fn correspondence_residual<R: Ring>(
    p: &ParamPoly,
    xs: &Series<R>,
    ys: &Series<R>,
) -> Result<Series<R>> {
    eval_bivariate(p, xs, ys)
}

// ---------------------------------------------------------------------
// resultants and correspondence composition
// ---------------------------------------------------------------------

/// Determinant by fraction-free elimination. Exact in any ring where
/// the intermediate divisions are exact, which they are for integral
/// domains.
pub fn bareiss_det(mut m: Vec<Vec<ParamPoly>>) -> Result<ParamPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(ParamPoly::one());
    }
    let mut sign = false;
    let mut prev = ParamPoly::one();
    for k in 0..n - 1 {
        if Ring::is_zero(&m[k][k]) {
            let swap = (k + 1..n).find(|&r| !Ring::is_zero(&m[r][k]));
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(ParamPoly::zero_poly()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = Ring::sub(
                    &Ring::mul(&m[k][k], &m[i][j]),
                    &Ring::mul(&m[i][k], &m[k][j]),
                );
                m[i][j] = num.exact_div(&prev).ok_or(Error::DivisionNotExact)?;
            }
            m[i][k] = ParamPoly::zero_poly();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

/// Resultant of two polynomials in the variable `var`, by the Sylvester
/// matrix and fraction-free elimination.
pub fn resultant(a: &ParamPoly, b: &ParamPoly, var: &str) -> Result<ParamPoly> {
    let da = a.degree_in(var) as usize;
    let db = b.degree_in(var) as usize;
    if da == 0 {
        return Ok(a.pow(db as u32));
    }
    if db == 0 {
        return Ok(b.pow(da as u32));
    }
    let n = da + db;
    let ac: Vec<ParamPoly> = (0..=da).map(|k| a.coeff_of(var, k as u32)).collect();
    let bc: Vec<ParamPoly> = (0..=db).map(|k| b.coeff_of(var, k as u32)).collect();
    let mut m = vec![vec![ParamPoly::zero_poly(); n]; n];
    for r in 0..db {
        for (k, c) in ac.iter().enumerate() {
            m[r][r + da - k] = c.clone();
        }
    }
    for r in 0..da {
        for (k, c) in bc.iter().enumerate() {
            m[db + r][r + db - k] = c.clone();
        }
    }
    bareiss_det(m)
}

/// Compose two correspondences through a shared middle variable: the
/// resultant in `z` of `p(x, z)` and `q(z, y)`, with the diagonal
/// factor `(x - y)^power` divided out exactly.
pub fn resultant_compose(p: &ParamPoly, q: &ParamPoly, diag_power: u32) -> Result<ParamPoly> {
    let to_z_left: BTreeMap<String, ParamPoly> =
        BTreeMap::from([("y".to_string(), ParamPoly::var("z"))]);
    let to_z_right: BTreeMap<String, ParamPoly> =
        BTreeMap::from([("x".to_string(), ParamPoly::var("z"))]);
    let a = p.subst_simul(&to_z_left);
    let b = q.subst_simul(&to_z_right);
    let mut r = resultant(&a, &b, "z")?;
    let diag = Ring::sub(&ParamPoly::var("x"), &ParamPoly::var("y"));
    for _ in 0..diag_power {
        r = r.exact_div(&diag).ok_or(Error::DivisionNotExact)?;
    }
    // normalize the content so the leading coefficient is canonical
    let c = r.content();
    if c.is_zero() {
        return Ok(r);
    }
    let mut s = r.scale(&c.recip());
    if s.lead_coeff().is_negative() {
        s = s.neg();
    }
    Ok(s)
}

/// Build the degree-four correspondence curve by composing the
/// degree-two curve with itself.
///
/// The resultant in the shared variable produces nine branches: the
/// degree-four solution, the involutive degree-one solution, four
/// ramified quarter-branches, and three copies of the diagonal (the
/// two sign branches of the half-composite plus the identity), so the
/// diagonal factor is removed with multiplicity three before the
/// content is normalized.
pub fn gamma4_by_resultant() -> Result<ParamPoly> {
    let g2 = crate::fixtures::load_bivariate("modular-curve-2")?.poly;
    resultant_compose(&g2, &g2, 3)
}

// ---------------------------------------------------------------------
// algebraic branches
// ---------------------------------------------------------------------

/// The primitive root of unity of the given order, as a cyclotomic
/// number, raised to the power `k`.
pub fn root_unity(order: u32, k: i64) -> Cyclo {
    Cyclo::omega_pow(order, k)
}

/// Principal inverse data of a valuation-`n` series with unit leading
/// coefficient: the `n`-th root `s` (valuation 1) and its compositional
/// inverse `g`, so the branches of the inverse of `y_n` are
/// `g(omega^k x^{1/n})`.
pub fn principal_root_pair(y_n: &Series<QRat>, n: u32) -> Result<(Series<QRat>, Series<QRat>)> {
    if y_n.valuation() != Some(n as i64) {
        return Err(Error::BadValuation);
    }
    let s = y_n.nth_root(n)?;
    let g = s.revert()?;
    Ok((s, g))
}

/// Branch `k` of the inverse correspondence solution in the root
/// variable `t = x^{1/n}`: the series `g(omega^k t)` over the
/// cyclotomic field of order `n`.
pub fn branch_in_root_var(y_n: &Series<QRat>, n: u32, k: i64) -> Result<Series<Cyclo>> {
    let (_, g) = principal_root_pair(y_n, n)?;
    let gc: Series<Cyclo> = g.map(|q| Cyclo::constant(n, q.clone()));
    let omega_t = Series::monomial(root_unity(n, k), 1, gc.prec());
    gc.compose(&omega_t)
}

/// The valuation-one algebraic series `y_{1/n}(omega^k; y_n(x))`: branch
/// `k` of the inverse composed with the direct solution. Over the
/// cyclotomic field these are the extra solutions of the correspondence
/// with unit valuation; their `n`-fold self-composition is the identity.
pub fn branch_composite(y_n: &Series<QRat>, n: u32, k: i64) -> Result<Series<Cyclo>> {
    let (s, g) = principal_root_pair(y_n, n)?;
    let gc: Series<Cyclo> = g.map(|q| Cyclo::constant(n, q.clone()));
    let sc: Series<Cyclo> = s.map(|q| Cyclo::constant(n, q.clone()));
    gc.compose(&sc.scale(&root_unity(n, k)))
}

/// Compose a series with itself `times` times.
pub fn self_compose<R: Ring>(y: &Series<R>, times: u32) -> Result<Series<R>> {
    let mut acc = y.clone();
    for _ in 1..times {
        acc = y.compose(&acc)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------
// rational parametrizations
// ---------------------------------------------------------------------

/// Expand a product of polynomial factors with multiplicities, each
/// factor given by ascending coefficients.
pub fn expand_factored(factors: &[(Vec<QRat>, u32)]) -> Vec<QRat> {
    let mut acc = vec![QRat::one()];
    for (poly, e) in factors {
        for _ in 0..*e {
            let mut next = vec![QRat::zero(); acc.len() + poly.len() - 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in poly.iter().enumerate() {
                    next[i + j] = next[i + j].add(&a.mul(b));
                }
            }
            acc = next;
        }
    }
    acc
}

/// A rational parametrization `t -> (x(t), y(t))` of a correspondence,
/// with numerators and denominators as ascending coefficient lists.
#[derive(Clone, Debug)]
pub struct CurveParam {
    pub x_num: Vec<QRat>,
    pub x_den: Vec<QRat>,
    pub y_num: Vec<QRat>,
    pub y_den: Vec<QRat>,
}

impl CurveParam {
    /// The solution series `y(x)` traced by the parametrization: invert
    /// `x(t)` as a series in `t` and substitute into `y(t)`.
    pub fn solution_series(&self, prec: i64) -> Result<Series<QRat>> {
        let xt = crate::series::rational_series(&self.x_num, &self.x_den, prec)?;
        if xt.valuation() != Some(1) {
            return Err(Error::BadValuation);
        }
        let yt = crate::series::rational_series(&self.y_num, &self.y_den, prec)?;
        let t_of_x = xt.revert()?;
        yt.compose(&t_of_x)
    }
}

// ---------------------------------------------------------------------
// classical Hauptmodul pairs
// ---------------------------------------------------------------------

/// The pair of Hauptmodul series in the modulus variable whose relation
/// is the degree-two correspondence in its Landen form:
/// `x(k) = (27/4) k^4 (1-k^2)^2 / (k^4-k^2+1)^3` and
/// `y(k) = 108 k^2 (1-k^2)^4 / (1+14k^2+k^4)^3`.
pub fn landen_hauptmoduls(prec: i64) -> Result<(Series<QRat>, Series<QRat>)> {
    let k2 = |c: &[i64]| -> Vec<QRat> {
        // coefficients in k^2 spread onto even powers of k
        let mut v = Vec::with_capacity(c.len() * 2 - 1);
        for (i, a) in c.iter().enumerate() {
            if i > 0 {
                v.push(QRat::zero());
            }
            v.push(qi(*a));
        }
        v
    };
    // x: numerator (27/4) k^4 (1 - k^2)^2, denominator (k^4 - k^2 + 1)^3
    let xn_factors = [(k2(&[0, 1]), 2u32), (k2(&[1, -1]), 2u32)];
    let mut x_num = expand_factored(&xn_factors);
    for c in x_num.iter_mut() {
        *c = c.mul(&crate::rat::qr(27, 4));
    }
    let x_den = expand_factored(&[(k2(&[1, -1, 1]), 3u32)]);
    // y: numerator 108 k^2 (1 - k^2)^4, denominator (1 + 14 k^2 + k^4)^3
    let yn_factors = [(k2(&[0, 1]), 1u32), (k2(&[1, -1]), 4u32)];
    let mut y_num = expand_factored(&yn_factors);
    for c in y_num.iter_mut() {
        *c = c.mul(&qi(108));
    }
    let y_den = expand_factored(&[(k2(&[1, 14, 1]), 3u32)]);
    let xs = crate::series::rational_series(&x_num, &x_den, prec)?;
    let ys = crate::series::rational_series(&y_num, &y_den, prec)?;
    Ok((xs, ys))
}

/// Rescale both arguments of a correspondence, `p(x/s, y/s)`, cleared of
/// denominators by the overall factor `s^(deg_x + deg_y)`.
pub fn rescale_arguments(p: &ParamPoly, s: &QRat) -> ParamPoly {
    let dtot = p.degree_in("x") + p.degree_in("y");
    let mut acc = ParamPoly::zero_poly();
    for i in 0..=p.degree_in("x") {
        for j in 0..=p.degree_in("y") {
            let c = p.coeff_of("x", i).coeff_of("y", j).as_rat().unwrap_or_default();
            if c.is_zero() {
                continue;
            }
            let pow = dtot - i - j;
            let mut sc = QRat::one();
            for _ in 0..pow {
                sc = sc.mul(s);
            }
            let t = Ring::mul(
                &ParamPoly::monomial("x", i, c.mul(&sc)),
                &ParamPoly::monomial("y", j, QRat::one()),
            );
            acc = Ring::add(&acc, &t);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma2() -> ParamPoly {
        let t = |i: u32, j: u32, c: i64| (i, j, qi(c));
        bivariate(&[
            t(1, 1, 1),
            t(3, 0, -1),
            t(2, 1, -1488),
            t(1, 2, -1488),
            t(0, 3, -1),
            t(3, 1, 162000),
            t(2, 2, -40773375),
            t(1, 3, 162000),
            t(3, 2, -8748000000),
            t(2, 3, -8748000000),
            t(3, 3, 157464000000000),
        ])
    }

    fn y2_series(prec: i64) -> Series<QRat> {
        let w = crate::special::FSpec::Elliptic.w(prec + 2).unwrap();
        crate::family::solve_branch(&w, 2, &qi(1), prec).unwrap()
    }

    #[test]
    fn gamma2_is_symmetric_and_annihilates_y2() {
        let g = gamma2();
        assert!(is_symmetric(&g));
        let y2 = y2_series(12);
        let x = Series::x(12);
        let r = correspondence_residual(&g, &x, &y2).unwrap();
        assert!(r.is_zero_to_prec());
        assert!(r.prec() >= 10);
    }

    #[test]
    fn resultant_of_univariate_pair() {
        // res_z(z^2 - x, z - 3) = 9 - x
        let z = ParamPoly::var("z");
        let a = Ring::sub(&z.pow(2), &ParamPoly::var("x"));
        let b = Ring::sub(&z, &ParamPoly::constant(qi(3)));
        let r = resultant(&a, &b, "z").unwrap();
        let want = Ring::sub(&ParamPoly::constant(qi(9)), &ParamPoly::var("x"));
        assert_eq!(r, want);
    }

    #[test]
    fn degree_two_self_composition_has_expected_degrees() {
        let g = gamma2();
        // odd total degree in the eliminated variable makes the raw
        // resultant antisymmetric, so the diagonal factor is cubic
        let g4 = resultant_compose(&g, &g, 3).unwrap();
        assert!(is_symmetric(&g4));
        assert_eq!(g4.degree_in("x"), 6);
        assert_eq!(g4.degree_in("y"), 6);
        // it annihilates the composite solution y2(y2(x))
        let y2 = y2_series(14);
        let y4 = self_compose(&y2, 2).unwrap();
        let x = Series::x(y4.prec());
        let r = correspondence_residual(&g4, &x, &y4).unwrap();
        assert!(r.is_zero_to_prec());
    }

    #[test]
    fn branches_compose_to_identity() {
        let y2 = y2_series(12);
        let b = branch_composite(&y2, 2, 1).unwrap();
        // valuation one, and the self-composition is the identity
        assert_eq!(b.valuation(), Some(1));
        let twice = self_compose(&b, 2).unwrap();
        let x: Series<Cyclo> = Series::monomial(Cyclo::constant(2, qi(1)), 1, twice.prec());
        assert_eq!(twice.truncate(8), x.truncate(8));
    }

    #[test]
    fn branch_in_root_var_solves_correspondence() {
        // y_{1/2} in t = x^{1/2} satisfies gamma2(t^2, branch) = 0
        let y2 = y2_series(12);
        let b = branch_in_root_var(&y2, 2, 1).unwrap();
        let t2: Series<Cyclo> = Series::monomial(Cyclo::constant(2, qi(1)), 2, b.prec());
        let r = correspondence_residual(&gamma2(), &t2, &b).unwrap();
        assert!(r.is_zero_to_prec());
    }

    #[test]
    fn curve_parametrization_traces_y2() {
        // x = t/(t+16)^3, y = t^2/(t+256)^3
        let p = CurveParam {
            x_num: vec![QRat::zero(), QRat::one()],
            x_den: expand_factored(&[(vec![qi(16), qi(1)], 3)]),
            y_num: vec![QRat::zero(), QRat::zero(), QRat::one()],
            y_den: expand_factored(&[(vec![qi(256), qi(1)], 3)]),
        };
        let traced = p.solution_series(10).unwrap();
        assert_eq!(traced, y2_series(10));
    }

    #[test]
    fn landen_pair_satisfies_rescaled_relation() {
        let (xs, ys) = landen_hauptmoduls(20).unwrap();
        assert_eq!(xs.valuation(), Some(4));
        assert_eq!(ys.valuation(), Some(2));
        // rescaling the arguments by 1728 and clearing 2^12 3^9 turns the
        // degree-two correspondence into its modulus form; spot the
        // diagonal product term
        let scaled = rescale_arguments(&gamma2(), &qi(1728)).scale(&crate::rat::qr(1, 80621568));
        let c11 = scaled.coeff_of("x", 1).coeff_of("y", 1).as_rat().unwrap();
        assert_eq!(c11, qi(110592));
        let c33 = scaled.coeff_of("x", 3).coeff_of("y", 3).as_rat().unwrap();
        assert_eq!(c33, qi(1953125));
        let r = correspondence_residual(&scaled, &xs, &ys).unwrap();
        assert!(r.is_zero_to_prec());
        assert!(r.prec() >= 18);
    }
}
