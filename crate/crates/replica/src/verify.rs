//! Sixteen self-contained verification criteria over the fixture corpus.
//!
//! Each criterion recomputes the objects it certifies from first principles
//! and compares them against stored fixtures.  The rules every criterion
//! follows:
//!
//! - a fixture comparison must reach every displayed coefficient; a computed
//!   window shorter than the fixture counts as a failure, not a skip
//! - arithmetic is exact (rational, cyclotomic, or parametric); floating
//!   point enters only in the radius and tail-ratio estimates, which carry
//!   explicit tolerances
//! - every fixture id a criterion reads is recorded, so a coverage sweep can
//!   prove the corpus holds no dead records
//! - a failure report names the first offending order and shows both values
//!
//! [`run_all`] executes the whole battery; [`run_criterion`] runs one entry
//! by number.  Panics inside a criterion are caught and reported as ordinary
//! failures so one bad computation cannot take down the battery.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;

use crate::cyclotomic::Cyclo;
use crate::family::{
    epsilon_assemble, epsilon_ladders, lift_rat_series, mirror_from_family, nome_from_family,
    nome_transport_residual, solve_branch, solve_one_param, solve_schwarz, solve_two_param,
    square_multiplier_residual, transport_residual,
};
use crate::fixtures::{
    self, diff_cyclo, diff_param, diff_series, CycloFixture, DiffOutcome, ParamFixture,
    PowerProductFixture, SeriesFixture,
};
use crate::modular::{
    branch_composite, branch_in_root_var, correspondence_residual, eval_bivariate,
    gamma4_by_resultant, is_symmetric, landen_hauptmoduls, principal_root_pair,
    rescale_arguments, self_compose,
};
use crate::parampoly::{ParamPoly, ParamRat};
use crate::probe::{
    globally_bounded_probe, p_curvature_order_one, radius_estimate, radius_report, sigma_check,
    sigma_from_cubic, BoundedVerdict, Curvature,
};
use crate::rat::{qi, qr, QRat};
use crate::ring::Ring;
use crate::series::{integer_series, rat_series, rational_series, Series};
use crate::special::{nome_from_f, w_from_f, FSpec};

/// Outcome of one criterion run.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    /// position in the battery, starting at 1
    pub number: usize,
    /// stable kebab-case name
    pub name: &'static str,
    pub passed: bool,
    /// one-line summary on success, first failure otherwise
    pub detail: String,
    /// fixture ids consumed, sorted and deduplicated
    pub consumed: Vec<String>,
    /// wall-clock duration of the run
    pub millis: u128,
}

/// Stable names of the sixteen criteria, in battery order.
pub const CRITERIA: [&str; 16] = [
    "nome-and-mirror",
    "one-parameter-family",
    "branch-series",
    "curve-residuals",
    "quartic-curve",
    "unit-root-composites",
    "epsilon-ladder",
    "two-parameter-family",
    "cubic-kernel",
    "log-derivative-kernel",
    "truncated-kernel-probes",
    "heun-kernel",
    "mod-two-sigma",
    "mirror-tail-ratio",
    "landen-transform",
    "algebra-properties",
];

/// Run one criterion by its 1-based number.
pub fn run_criterion(number: usize) -> CriterionReport {
    let start = Instant::now();
    let mut ctx = Ctx::default();
    let name = CRITERIA.get(number.wrapping_sub(1)).copied().unwrap_or("unknown");
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| match number {
        1 => nome_and_mirror(&mut ctx),
        2 => one_parameter_family(&mut ctx),
        3 => branch_series(&mut ctx),
        4 => curve_residuals(&mut ctx),
        5 => quartic_curve(&mut ctx),
        6 => unit_root_composites(&mut ctx),
        7 => epsilon_ladder(&mut ctx),
        8 => two_parameter_family(&mut ctx),
        9 => cubic_kernel(&mut ctx),
        10 => log_derivative_kernel(&mut ctx),
        11 => truncated_kernel_probes(&mut ctx),
        12 => heun_kernel(&mut ctx),
        13 => mod_two_sigma(&mut ctx),
        14 => mirror_tail_ratio(&mut ctx),
        15 => landen_transform(&mut ctx),
        16 => algebra_properties(&mut ctx),
        _ => Err(Fail(format!("no criterion numbered {}", number))),
    }));
    let outcome = match result {
        Ok(inner) => inner,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic with non-string payload".into());
            Err(Fail(format!("panicked: {}", msg)))
        }
    };
    let mut consumed = ctx.consumed;
    consumed.sort();
    consumed.dedup();
    let millis = start.elapsed().as_millis();
    match outcome {
        Ok(detail) => CriterionReport { number, name, passed: true, detail, consumed, millis },
        Err(Fail(detail)) => {
            CriterionReport { number, name, passed: false, detail, consumed, millis }
        }
    }
}

/// Run the full battery in order.
pub fn run_all() -> Vec<CriterionReport> {
    (1..=CRITERIA.len()).map(run_criterion).collect()
}

// internal plumbing

/// First failure inside a criterion, with a human-readable message.
struct Fail(String);

type Check<T> = std::result::Result<T, Fail>;

impl From<crate::Error> for Fail {
    fn from(e: crate::Error) -> Self {
        Fail(format!("{:?}", e))
    }
}

fn bail(msg: impl Into<String>) -> Fail {
    Fail(msg.into())
}

fn ensure(cond: bool, msg: String) -> Check<()> {
    if cond {
        Ok(())
    } else {
        Err(Fail(msg))
    }
}

/// Fails with the first nonzero order when a residual does not vanish.
fn ensure_zero<R: Ring + std::fmt::Display>(s: &Series<R>, what: &str) -> Check<()> {
    match s.valuation() {
        None => Ok(()),
        Some(v) => Err(Fail(format!(
            "{}: nonzero term {} at order {}",
            what,
            clip(&s.coeff(v).to_string()),
            v
        ))),
    }
}

fn clip(s: &str) -> String {
    if s.len() <= 48 {
        s.to_string()
    } else {
        format!("{}...", &s[..48])
    }
}

/// Tracks which fixture ids a criterion consumed and wraps the comparisons.
#[derive(Default)]
struct Ctx {
    consumed: Vec<String>,
}

impl Ctx {
    fn mark(&mut self, id: &str) {
        self.consumed.push(id.to_string());
    }

    fn series(&mut self, id: &str) -> Check<SeriesFixture> {
        self.mark(id);
        Ok(fixtures::load_series(id)?)
    }

    fn cyclo(&mut self, id: &str) -> Check<CycloFixture> {
        self.mark(id);
        Ok(fixtures::load_cyclo(id)?)
    }

    fn param(&mut self, id: &str) -> Check<ParamFixture> {
        self.mark(id);
        Ok(fixtures::load_param(id)?)
    }

    fn bivariate(&mut self, id: &str) -> Check<ParamPoly> {
        self.mark(id);
        Ok(fixtures::load_bivariate(id)?.poly)
    }

    fn power(&mut self, id: &str) -> Check<PowerProductFixture> {
        self.mark(id);
        Ok(fixtures::load_power_product(id)?)
    }

    fn scalar(&mut self, id: &str) -> Check<fixtures::ScalarFixture> {
        self.mark(id);
        Ok(fixtures::load_scalar(id)?)
    }

    fn primes(&mut self, id: &str) -> Check<fixtures::PrimeListFixture> {
        self.mark(id);
        Ok(fixtures::load_primes(id)?)
    }

    fn curve(&mut self, id: &str) -> Check<fixtures::CurveFixture> {
        self.mark(id);
        Ok(fixtures::load_curve(id)?)
    }

    /// Diffs a rational series against a fixture, requiring every displayed
    /// coefficient to fall inside the computed window.
    fn check_series(&mut self, id: &str, computed: &Series<QRat>) -> Check<usize> {
        let fix = self.series(id)?;
        settle(id, fix.coeffs.len(), diff_series(computed, &fix))
    }

    fn check_cyclo(&mut self, id: &str, computed: &Series<Cyclo>) -> Check<usize> {
        let fix = self.cyclo(id)?;
        settle(id, fix.coeffs.len(), diff_cyclo(computed, &fix))
    }

    fn check_param(&mut self, id: &str, computed: &Series<ParamRat>) -> Check<usize> {
        let fix = self.param(id)?;
        settle(id, fix.coeffs.len(), diff_param(computed, &fix))
    }

    /// Compares a computed series against a closed-form power product and
    /// its displayed leading coefficients.
    fn check_power(&mut self, id: &str, computed: &Series<QRat>) -> Check<usize> {
        let fix = self.power(id)?;
        let closed = fix.series(computed.prec())?;
        ensure_zero(&computed.sub(&closed), &format!("{}: computed minus closed form", id))?;
        for (k, want) in &fix.head {
            ensure(
                *k < computed.prec(),
                format!("{}: displayed order {} exceeds the computed window", id, k),
            )?;
            let got = computed.coeff(*k);
            ensure(
                got == *want,
                format!("{}: order {} expected {} got {}", id, k, want, clip(&got.to_string())),
            )?;
        }
        Ok(fix.head.len())
    }
}

fn settle(id: &str, want: usize, outcome: DiffOutcome) -> Check<usize> {
    match outcome {
        DiffOutcome::Match { compared } if compared == want => Ok(compared),
        DiffOutcome::Match { compared } => Err(bail(format!(
            "{}: only {} of {} displayed coefficients fall inside the computed window",
            id, compared, want
        ))),
        DiffOutcome::Mismatch { order, expected, got } => Err(bail(format!(
            "{}: order {} expected {} got {}",
            id,
            order,
            clip(&expected),
            clip(&got)
        ))),
    }
}

/// Largest order a cyclo fixture displays.
fn cyclo_max(fix: &CycloFixture) -> i64 {
    fix.coeffs.iter().map(|(k, _)| *k).max().unwrap_or(0)
}

/// Largest order a param fixture displays.
fn param_max(fix: &ParamFixture) -> i64 {
    fix.coeffs.iter().map(|(k, _)| *k).max().unwrap_or(0)
}

/// Substitutes x by x^n.
fn spread(s: &Series<QRat>, n: i64) -> Series<QRat> {
    let prec = s.prec() * n;
    let mut out = Series::zero(prec);
    for (k, c) in s.iter() {
        out = out.add(&Series::monomial(c.clone(), k * n, prec));
    }
    out
}

/// Extracts the arithmetic progression r, r+n, r+2n, ... of coefficients
/// as a series in the compressed variable.
fn slice(s: &Series<QRat>, n: i64, r: i64) -> Series<QRat> {
    let prec = ((s.prec() - r + n - 1).div_euclid(n)).max(1);
    let mut coeffs = Vec::new();
    for j in 0..prec {
        coeffs.push(s.coeff(n * j + r));
    }
    Series::new(0, coeffs)
}

/// Lifts rational coefficients into a cyclotomic ring of the given order.
fn to_cyclo(s: &Series<QRat>, order: u32) -> Series<Cyclo> {
    s.map(|c| Cyclo::constant(order, c.clone()))
}

/// Projects a cyclotomic series back to rationals; fails on any coefficient
/// with a nonzero root component.
fn cyclo_rat(s: &Series<Cyclo>) -> Check<Series<QRat>> {
    let mut out = Series::zero(s.prec());
    for (k, c) in s.iter() {
        let q = c
            .as_rat()
            .ok_or_else(|| bail(format!("coefficient at order {} is not rational", k)))?;
        out = out.add(&Series::monomial(q, k, s.prec()));
    }
    Ok(out)
}

/// Evaluates every coefficient of a parametric series at a rational point.
fn at_params(y: &Series<ParamRat>, vals: &[(&str, QRat)]) -> Check<Series<QRat>> {
    let mut assign = BTreeMap::new();
    for (name, v) in vals {
        assign.insert(name.to_string(), v.clone());
    }
    let mut out = Series::zero(y.prec());
    for (k, c) in y.iter() {
        let q = c
            .eval(&assign)
            .ok_or_else(|| bail(format!("parameter point hits a pole at order {}", k)))?;
        out = out.add(&Series::monomial(q, k, y.prec()));
    }
    Ok(out)
}

/// Coefficient list of a bivariate polynomial read as univariate in `var`.
fn univar(p: &ParamPoly, var: &str) -> Check<Vec<QRat>> {
    let d = p.degree_in(var);
    let mut out = Vec::with_capacity(d as usize + 1);
    for k in 0..=d {
        let c = p
            .coeff_of(var, k)
            .as_rat()
            .ok_or_else(|| bail(format!("coefficient of {}^{} is not constant", var, k)))?;
        out.push(c);
    }
    Ok(out)
}

/// Drops every term of degree above `d` in one variable.
fn truncate_deg(p: &ParamPoly, var: &str, d: u32) -> ParamPoly {
    let mut out = ParamPoly::zero_poly();
    let top = p.degree_in(var).min(d);
    for k in 0..=top {
        let term = p.coeff_of(var, k).mul(&ParamPoly::var(var).pow(k));
        out = out.add(&term);
    }
    out
}

/// Conjugates a solution by the scale 1728: maps y(x) to 1728 y(x/1728).
fn landen_rescale(s: &Series<QRat>) -> Series<QRat> {
    let unit = qr(1, 1728);
    let mut out = Series::zero(s.prec());
    for (k, c) in s.iter() {
        let f = c.mul(&unit.pow((k - 1) as i32));
        out = out.add(&Series::monomial(f, k, s.prec()));
    }
    out
}

/// True when two floats agree after rounding to `digits` significant digits.
fn sig_digits_agree(a: f64, target: f64, digits: u32) -> bool {
    if target == 0.0 {
        return a == 0.0;
    }
    let mag = target.abs().log10().floor() as i32;
    let scale = 10f64.powi(digits as i32 - 1 - mag);
    (a * scale).round() == (target * scale).round()
}

/// Odd primes up to and including the bound.
fn odd_primes_to(bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    'outer: for n in (3..=bound).step_by(2) {
        let mut d = 3;
        while d * d <= n {
            if n % d == 0 {
                continue 'outer;
            }
            d += 2;
        }
        out.push(n);
    }
    out
}

/// Deterministic pseudo-random source for the property suite.
struct Lcg(u64);

impl Lcg {
    fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0
    }

    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + ((self.next_u64() >> 16) % ((hi - lo + 1) as u64)) as i64
    }

    fn rat(&mut self) -> QRat {
        qr(self.int(-9, 9), self.int(1, 3))
    }

    fn unit(&mut self) -> QRat {
        loop {
            let v = self.rat();
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// Random series of valuation one with an invertible linear coefficient.
    fn series1(&mut self, prec: i64) -> Series<QRat> {
        let mut coeffs = vec![self.unit()];
        for _ in 2..prec {
            coeffs.push(self.rat());
        }
        Series::new(1, coeffs)
    }
}

/// Nome and mirror of the degree-twelve kernel over the integers.
fn integral_pipeline(prec: i64) -> Check<(Series<BigInt>, Series<BigInt>)> {
    let f = FSpec::Elliptic.series(prec)?;
    let fz = integer_series(&f)
        .ok_or_else(|| bail("kernel coefficients unexpectedly fail to be integral"))?;
    let qz = nome_from_f(&fz)?;
    let mz = qz.revert()?;
    Ok((qz, mz))
}

// criterion 1: nome and mirror of the principal kernel

fn nome_and_mirror(ctx: &mut Ctx) -> Check<String> {
    let f = FSpec::Elliptic.series(65)?;
    ctx.check_series("elliptic-f", &f)?;
    let w = FSpec::Elliptic.w(26)?;
    let wfix = ctx.power("elliptic-w-closed")?;
    ensure_zero(&w.sub(&wfix.series(26)?), "kernel minus its closed form")?;
    let (qz, mz) = integral_pipeline(65)?;
    let nq = ctx.check_series("elliptic-nome", &rat_series(&qz))?;
    let nm = ctx.check_series("elliptic-mirror", &rat_series(&mz))?;
    ensure(mz.revert()? == qz, "reverting the mirror must return the nome".into())?;
    Ok(format!(
        "{} nome and {} mirror coefficients match at order 64 and the reversion closes",
        nq, nm
    ))
}

// criterion 2: one-parameter deformation with polynomial coefficients

fn one_parameter_family(ctx: &mut Ctx) -> Check<String> {
    let w = FSpec::Elliptic.w(16)?;
    let fam = solve_one_param(&w, "a", 12)?;
    let n = ctx.check_param("elliptic-family", &fam)?;
    ensure(
        at_params(&fam, &[("a", qi(1))])? == Series::x(12),
        "unit parameter must give the identity".into(),
    )?;
    let f = FSpec::Elliptic.series(16)?;
    let q = nome_from_f(&f)?;
    let m = q.revert()?;
    let alt = crate::family::family_from_nome(&q, &m, "a")?;
    let lifted: Series<ParamRat> = alt.map(|p| ParamRat::from_poly(p.clone()));
    ensure_zero(&fam.sub(&lifted.truncate(12)), "solver family minus the nome route")?;
    Ok(format!("{} coefficient polynomials match and the nome route agrees to order 11", n))
}

// criterion 3: branch solutions for each displayed degree

fn branch_series(ctx: &mut Ctx) -> Check<String> {
    let w = FSpec::Elliptic.w(34)?;
    let orders: [i64; 15] = [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 16, 18, 25];
    let mut branches: BTreeMap<i64, Series<QRat>> = BTreeMap::new();
    let mut compared = 0;
    for n in orders {
        let id = format!("elliptic-y{}", n);
        let fix = ctx.series(&id)?;
        let prec = fix.max_order() + 1;
        let y = solve_branch(&w, n, &qi(1), prec)?;
        compared += settle(&id, fix.coeffs.len(), diff_series(&y, &fix))?;
        branches.insert(n, y);
    }
    // rational parametrizations of the same curves reproduce each series
    for n in [2i64, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25] {
        let id = format!("curve-{}", n);
        let cf = ctx.curve(&id)?;
        let y = &branches[&n];
        let sol = cf.params().solution_series(y.prec())?;
        ensure(&sol == y, format!("{}: parametrization disagrees with the solved branch", id))?;
    }
    // seeded families specialize back to the unit branch
    for (n, id) in [(2i64, "one-param-y2"), (3, "one-param-y3"), (5, "one-param-y5")] {
        let fix = ctx.param(id)?;
        let prec = param_max(&fix) + 1;
        let wl: Series<ParamRat> = lift_rat_series(&w.truncate(prec + 2));
        let yfam = solve_schwarz(&wl, n, &ParamRat::var("a"), &[], prec)?;
        ctx.check_param(id, &yfam)?;
        ensure(
            at_params(&yfam, &[("a", qi(1))])? == branches[&n].truncate(prec),
            format!("{}: unit seed must recover the plain branch", id),
        )?;
    }
    // the mirror route closes the loop for three branch degrees
    let (qz, mz) = integral_pipeline(31)?;
    for n in [2i64, 3, 5] {
        let ym = rat_series(&mz.compose(&qz.pow_i(n)?)?);
        ensure(
            ym == branches[&n],
            format!("mirror of the {}th nome power disagrees with the branch", n),
        )?;
    }
    Ok(format!(
        "{} displayed coefficients over fifteen branch degrees; parametrizations, seeded \
         families, and the mirror route all agree",
        compared
    ))
}

// criterion 4: correspondence residuals on series and ramified branches

fn curve_residuals(ctx: &mut Ctx) -> Check<String> {
    let g2 = ctx.bivariate("modular-curve-2")?;
    let g3 = ctx.bivariate("modular-curve-3")?;
    ensure(is_symmetric(&g2), "degree-two curve must be symmetric".into())?;
    ensure(is_symmetric(&g3), "degree-three curve must be symmetric".into())?;
    let w = FSpec::Elliptic.w(34)?;
    let y2 = solve_branch(&w, 2, &qi(1), 31)?;
    let y3 = solve_branch(&w, 3, &qi(1), 31)?;
    ensure_zero(
        &correspondence_residual(&g2, &Series::x(31), &y2)?,
        "degree-two residual on the series solution",
    )?;
    ensure_zero(
        &correspondence_residual(&g3, &Series::x(31), &y3)?,
        "degree-three residual on the series solution",
    )?;
    // each ramified branch satisfies the curve in the root variable
    for (n, g, y) in [(2i64, &g2, &y2), (3, &g3, &y3)] {
        for k in 0..n {
            let b = branch_in_root_var(y, n as u32, k)?;
            let tn = Series::monomial(Cyclo::constant(n as u32, qi(1)), n, b.prec());
            ensure_zero(
                &eval_bivariate(g, &tn, &b)?,
                &format!("degree-{} residual on ramified branch {}", n, k),
            )?;
        }
    }
    // displayed branch expansions
    ctx.check_cyclo("branch-y-half", &branch_in_root_var(&y2, 2, 1)?)?;
    ctx.check_cyclo("branch-y-third", &branch_in_root_var(&y3, 3, 1)?)?;
    let y4 = solve_branch(&w, 4, &qi(1), 14)?;
    ctx.check_cyclo("branch-y-quarter", &branch_in_root_var(&y4, 4, 1)?)?;
    // rank-one trace combinations with closed-form products
    let t2 = slice(&principal_root_pair(&y2, 2)?.1, 2, 0).scale(&qi(2));
    let s2 = t2.add(&y2.truncate(t2.prec())).scale(&qr(-1, 1488));
    ctx.check_power("rank-one-n2", &s2)?;
    let t3 = slice(&principal_root_pair(&y3, 3)?.1, 3, 0).scale(&qi(3));
    let s3 = t3.add(&y3.truncate(t3.prec())).scale(&qr(1, 1069956));
    ctx.check_power("rank-one-n3", &s3)?;
    // order-five block: the branch inverse comes from composing the mirror
    // with a fifth root of the substituted nome, which is far cheaper than
    // reverting a root of the solved branch
    let (qz, mz) = integral_pipeline(56)?;
    let q = rat_series(&qz);
    let m = rat_series(&mz);
    let u = spread(&q.truncate(12), 5).nth_root(5)?;
    let binv = m.compose(&u)?;
    let y5 = rat_series(&mz.compose(&qz.pow_i(5)?)?);
    let g5 = principal_root_pair(&y5.truncate(16), 5)?.1;
    ensure(
        binv.truncate(g5.prec()) == g5,
        "composed branch inverse disagrees with the reverted root".into(),
    )?;
    ctx.check_cyclo("branch-y-fifth", &branch_in_root_var(&y5.truncate(16), 5, 1)?)?;
    // the four ramified slices are scalar multiples of displayed series
    for i in 1..=4i64 {
        let id = format!("quintic-s{}", i);
        let fix = ctx.series(&id)?;
        let mi = m.coeff(i);
        let inv = mi.inv().ok_or_else(|| bail("mirror coefficient must be invertible"))?;
        let si = slice(&binv, 5, i).scale(&inv);
        settle(&id, fix.coeffs.len(), diff_series(&si, &fix))?;
    }
    // trace formula for the unramified slice
    let raw: BTreeMap<String, String> = fixtures::raw("quintic-rank-one-head")?
        .into_iter()
        .collect();
    let field = |key: &str| -> Check<QRat> {
        let text = raw.get(key).ok_or_else(|| bail(format!("missing key {}", key)))?;
        Ok(crate::rat::parse_rat(text)?)
    };
    let c = field("scale")?;
    let d = field("companion")?;
    let den1 = field("den1")?;
    let den2 = field("den2")?;
    ensure(
        binv.coeff(5) == c.add(&d),
        "order-five coefficient must split into the two displayed scales".into(),
    )?;
    let t5 = slice(&binv, 5, 0);
    let sum = c.add(&d);
    let sinv = sum.inv().ok_or_else(|| bail("scale sum must be invertible"))?;
    let dc = d.mul(&c.inv().ok_or_else(|| bail("scale must be invertible"))?);
    let r = t5.add(&y5.truncate(t5.prec()).scale(&dc)).scale(&sinv);
    let fix = ctx.series("quintic-rank-one-head")?;
    settle("quintic-rank-one-head", fix.coeffs.len(), diff_series(&r, &fix))?;
    // the combination times its displayed denominator clears to integers
    let dpoly = Series::from_poly(&[qi(1), den1, den2], r.prec());
    let p5 = r.scale(&c).mul(&dpoly).shift(-1);
    for (k, coeff) in p5.iter() {
        ensure(
            coeff.denom().is_one(),
            format!("rational-numerator coefficient at order {} is not integral", k),
        )?;
    }
    Ok(format!(
        "residuals vanish to order 30 on series and ramified branches; rank-one traces and \
         the order-five slice identities close, numerator integral through order {}",
        p5.prec() - 1
    ))
}

// criterion 5: composite curve of degree four by resultants

fn quartic_curve(ctx: &mut Ctx) -> Check<String> {
    let g4 = gamma4_by_resultant()?;
    ctx.mark("modular-curve-2");
    ensure(is_symmetric(&g4), "composite curve must be symmetric".into())?;
    ensure(
        g4.degree_in("x") == 6 && g4.degree_in("y") == 6,
        format!("expected bidegree (6, 6), got ({}, {})", g4.degree_in("x"), g4.degree_in("y")),
    )?;
    // size the shared pipeline from the fixtures it must reach
    let y1max = ctx.series("elliptic-y1")?.max_order();
    let tmax = ctx.series("quartic-branch-sum")?.max_order();
    let pp = ctx.power("rank-one-n4")?;
    let ppmax = pp.head.iter().map(|(k, _)| *k).max().unwrap_or(6);
    let prec = (4 * tmax.max(ppmax) + 6).max(y1max + 1).max(28);
    let (qz, mz) = integral_pipeline(prec)?;
    let q = rat_series(&qz);
    let m = rat_series(&mz);
    // both unramified solutions satisfy the composite curve
    let w = FSpec::Elliptic.w(30)?;
    let y4 = solve_branch(&w, 4, &qi(1), 26)?;
    ensure_zero(
        &correspondence_residual(&g4, &Series::x(26), &y4)?,
        "degree-four residual on the principal solution",
    )?;
    let y1 = rat_series(&mz.compose(&qz.neg())?);
    ctx.check_series("elliptic-y1", &y1)?;
    ensure_zero(
        &correspondence_residual(&g4, &Series::x(26), &y1.truncate(26))?,
        "degree-four residual on the involutive solution",
    )?;
    // six-root product against the displayed closed form
    let a0 = univar(&g4.coeff_of("y", 0), "x")?;
    let a6 = univar(&g4.coeff_of("y", 6), "x")?;
    let prod = Series::from_poly(&a0, 14).div(&Series::from_poly(&a6, 14))?;
    ctx.check_power("quartic-product", &prod)?;
    // the same product assembled branch by branch over the fourth roots
    let branches: Vec<Series<Cyclo>> = (0..4)
        .map(|k| branch_in_root_var(&y4.truncate(25), 4, k))
        .collect::<crate::Result<_>>()?;
    for (k, b) in branches.iter().enumerate() {
        let tn = Series::monomial(Cyclo::constant(4, qi(1)), 4, b.prec());
        ensure_zero(
            &eval_bivariate(&g4, &tn, b)?,
            &format!("degree-four residual on ramified branch {}", k),
        )?;
    }
    let mut bprod = Series::constant(Cyclo::constant(4, qi(1)), branches[0].prec());
    for b in &branches {
        bprod = bprod.mul(b);
    }
    let p4 = prod.div(&y1.truncate(14))?.div(&y4.truncate(14))?;
    let p4t = to_cyclo(&spread(&p4.truncate(6), 4), 4).truncate(bprod.prec());
    ensure_zero(
        &bprod.truncate(p4t.prec()).sub(&p4t),
        "ramified branch product minus the quotient of the closed form",
    )?;
    // trace of the branch inverse and its rank-one combination
    let g4i = m.compose(&spread(&q.truncate(prec / 4 + 1), 4).nth_root(4)?)?;
    let pair = principal_root_pair(&y4, 4)?.1;
    ensure(
        g4i.truncate(pair.prec()) == pair,
        "composed branch inverse disagrees with the reverted root".into(),
    )?;
    let t4 = slice(&g4i, 4, 0).scale(&qi(4));
    ctx.check_series("quartic-branch-sum", &t4)?;
    let s4 = t4
        .add(&y1.truncate(t4.prec()))
        .add(&rat_series(&mz.compose(&qz.pow_i(4)?)?).truncate(t4.prec()))
        .scale(&qr(-1, 561444609));
    ctx.check_power("rank-one-n4", &s4)?;
    Ok(format!(
        "symmetric bidegree (6, 6) curve annihilates both solutions to order 25 and all four \
         ramified branches; six-root product and rank-one trace match to order {}",
        t4.prec() - 1
    ))
}

// criterion 6: composites seeded at roots of unity

fn unit_root_composites(ctx: &mut Ctx) -> Check<String> {
    let w = FSpec::Elliptic.w(26)?;
    let y3 = solve_branch(&w, 3, &qi(1), 22)?;
    let b3 = branch_composite(&y3, 3, 1)?;
    let thrice = self_compose(&b3, 3)?;
    let ident3 = Series::monomial(Cyclo::constant(3, qi(1)), 1, thrice.prec());
    ensure_zero(&thrice.sub(&ident3).truncate(21), "threefold composite minus the identity")?;
    let y2 = solve_branch(&w, 2, &qi(1), 22)?;
    let b2 = branch_composite(&y2, 2, 1)?;
    let twice = self_compose(&b2, 2)?;
    let ident2 = Series::monomial(Cyclo::constant(2, qi(1)), 1, twice.prec());
    ensure_zero(&twice.sub(&ident2).truncate(21), "twofold composite minus the identity")?;
    // the sign-twisted composite is the displayed involutive solution
    let b2r = cyclo_rat(&b2)?;
    ctx.check_series("elliptic-y1", &b2r)?;
    // composites of the involution with higher branches
    let (qz, mz) = integral_pipeline(16)?;
    let y1 = rat_series(&mz.compose(&qz.neg())?);
    let c12 = y1.compose(&y2)?;
    ctx.check_series("composite-y1-y2", &c12)?;
    // the sign twist squares away on the other side, and a second twist
    // cancels the first
    ensure(
        y2.compose(&y1)? == y2,
        "composing the other way must absorb the sign twist".into(),
    )?;
    ensure(
        y1.compose(&c12)? == y2,
        "a second involution must cancel the first".into(),
    )?;
    let y4 = solve_branch(&w, 4, &qi(1), 14)?;
    ctx.check_series("composite-y1-y4", &y1.compose(&y4)?)?;
    // families seeded directly at a root of unity
    for (order, id) in [(3u32, "omega3-family"), (5, "omega5-family")] {
        let fix = ctx.cyclo(id)?;
        let prec = cyclo_max(&fix) + 1;
        let wc = to_cyclo(&w.truncate(prec + 2), order);
        let yfam = solve_schwarz(&wc, 1, &Cyclo::omega(order), &[], prec)?;
        ctx.check_cyclo(id, &yfam)?;
    }
    // half-integral branch of the quartic pair in the order-four field
    let qfix = ctx.cyclo("quartic-half-branch")?;
    let tprec = cyclo_max(&qfix) + 1;
    let q = rat_series(&qz);
    let m = rat_series(&mz);
    let root = spread(&q.shift(-1), 2).nth_root(2)?.shift(1);
    let half = to_cyclo(&root, 4).scale(&Cyclo::omega(4));
    let comp = to_cyclo(&m, 4).compose(&half.truncate(tprec + 4))?;
    ctx.check_cyclo("quartic-half-branch", &comp)?;
    Ok("composites at second, third, and fourth roots of unity close; unit-root families \
        match their displayed expansions"
        .into())
}

// criterion 7: ladder expansion around the unit parameter

fn epsilon_ladder(_ctx: &mut Ctx) -> Check<String> {
    let f = FSpec::Elliptic.series(18)?;
    let ladders = epsilon_ladders(&f, 5);
    let assembled = epsilon_assemble(&ladders, "e", 13);
    // independent route: shift the one-parameter family to the unit
    let w = FSpec::Elliptic.w(15)?;
    let fam = solve_one_param(&w, "a", 13)?;
    let mut shift = BTreeMap::new();
    shift.insert("a".to_string(), ParamPoly::constant(qi(1)).add(&ParamPoly::var("e")));
    let shifted = fam.map(|c| c.subst_simul(&shift));
    for k in 1..13i64 {
        let lhs = shifted
            .coeff(k)
            .as_poly()
            .ok_or_else(|| bail(format!("shifted coefficient at order {} is not polynomial", k)))?;
        ensure(
            truncate_deg(&lhs, "e", 5) == assembled.coeff(k),
            format!("ladder expansion differs from the shifted family at order {}", k),
        )?;
    }
    Ok("five ladder series assemble to the unit-shifted family through order 12".into())
}

// criterion 8: two-parameter family, gauge transport, composition law

fn two_parameter_family(ctx: &mut Ctx) -> Check<String> {
    let f = FSpec::Elliptic.series(20)?;
    let w2 = w_from_f(&f, &qi(1))?;
    let pa = ParamPoly::var("a");
    let pb = ParamPoly::var("b");
    let drag = pa.mul(&pa.sub(&ParamPoly::constant(qi(1)))).scale(&qi(-744));
    // capital gauge: the twist multiplies the leading parameter
    let c2cap = ParamRat::from_poly(pa.mul(&pb).scale(&qi(1728)).add(&drag));
    let cap = solve_two_param(&w2, &c2cap, "a", 11)?;
    ctx.check_param("two-param-family", &cap)?;
    ensure_zero(&transport_residual(&cap, &f, &["a"])?, "capital-gauge transport")?;
    // lower gauge: the twist enters alone and both directions transport
    let c2low = ParamRat::from_poly(pb.scale(&qi(1728)).add(&drag));
    let low = solve_two_param(&w2, &c2low, "a", 8)?;
    ensure_zero(&transport_residual(&low, &f, &["a", "b"])?, "two-direction transport")?;
    // twisted nome and the unit-parameter slice in closed form
    let q = nome_from_f(&f)?;
    let m = q.revert()?;
    let lq: Series<ParamRat> = lift_rat_series(&q.truncate(12));
    let one = Series::constant(ParamRat::from_poly(ParamPoly::constant(qi(1))), 12);
    let twist = ParamRat::from_poly(pb.scale(&qi(1728)));
    let qb = lq.div(&one.sub(&lq.scale(&twist)))?;
    ctx.check_param("two-param-nome", &qb)?;
    let lm: Series<ParamRat> = lift_rat_series(&m.truncate(12));
    let xb = lm.compose(&qb)?;
    ctx.check_param("two-param-unit-a", &xb)?;
    // the full family is the mirror of the scaled twisted nome
    let ysym = lm.truncate(11).compose(&qb.truncate(11).scale(&ParamRat::var("a")))?;
    ensure(ysym == cap, "closed form disagrees with the solved family".into())?;
    // composition law, one side symbolic and one side sampled
    for (a0, b0) in [(qr(3, 2), qr(-2, 3)), (qr(-1, 2), qr(5, 4))] {
        let ynum = at_params(&ysym, &[("a", a0.clone()), ("b", b0.clone())])?;
        let louter = lift_rat_series::<ParamRat>(&ynum).compose(&ysym)?;
        let mut mo = BTreeMap::new();
        mo.insert("a".to_string(), ParamPoly::var("a").scale(&a0));
        mo.insert("b".to_string(), ParamPoly::var("a").scale(&b0).add(&ParamPoly::var("b")));
        let router = ysym.map(|c| c.subst_simul(&mo));
        ensure(
            louter == router,
            format!("composition law fails with outer point ({}, {})", a0, b0),
        )?;
        let linner = ysym.compose(&lift_rat_series::<ParamRat>(&ynum))?;
        let mut mi = BTreeMap::new();
        mi.insert("a".to_string(), ParamPoly::var("a").scale(&a0));
        mi.insert(
            "b".to_string(),
            ParamPoly::var("b").scale(&a0).add(&ParamPoly::constant(b0.clone())),
        );
        let rinner = ysym.map(|c| c.subst_simul(&mi));
        ensure(
            linner == rinner,
            format!("composition law fails with inner point ({}, {})", a0, b0),
        )?;
    }
    // twisted nome composed with the plain mirror collapses to a fraction
    for b in [qr(2, 3), qr(-3, 5)] {
        let q17 = q.truncate(17);
        let den = Series::constant(qi(1), 17).sub(&q17.scale(&qi(1728).mul(&b)));
        let qbn = q17.div(&den)?;
        let lhs = qbn.compose(&m.truncate(17))?;
        let rhs = rational_series(&[qi(0), qi(1)], &[qi(1), qi(-1728).mul(&b)], 17)?;
        ensure(lhs == rhs, format!("twisted nome of the mirror differs at twist {}", b))?;
    }
    Ok("both gauges transport, the composition law closes at two sample points, and the \
        twisted nome collapses on the mirror to order 16"
        .into())
}

// criterion 9: cubic kernel with two finite poles

fn cubic_kernel(ctx: &mut Ctx) -> Check<String> {
    let fs = FSpec::parse("poly:1,-5,6")?;
    let f = fs.series(34)?;
    ctx.check_series("cubic-f", &f)?;
    let w = fs.w(26)?;
    ensure_zero(&w.sub(&ctx.power("cubic-w-closed")?.series(26)?), "kernel minus closed form")?;
    let q = nome_from_f(&f)?;
    ctx.check_series("cubic-nome", &q)?;
    ctx.check_power("cubic-nome-closed", &q)?;
    let m = q.revert()?;
    ctx.check_series("cubic-mirror", &m)?;
    let curve = ctx.bivariate("cubic-mirror-curve")?;
    ensure_zero(
        &eval_bivariate(&curve, &Series::x(31), &m.truncate(31))?,
        "mirror curve residual",
    )?;
    let fam = solve_one_param(&w, "a", 13)?;
    ctx.check_param("cubic-family", &fam)?;
    ensure_zero(
        &nome_transport_residual(&q.truncate(13), &fam, "a")?,
        "nome transport on the family",
    )?;
    let y2fix = ctx.series("cubic-y2")?;
    let y2 = solve_branch(&w, 2, &qi(1), y2fix.max_order() + 1)?;
    settle("cubic-y2", y2fix.coeffs.len(), diff_series(&y2, &y2fix))?;
    let y3fix = ctx.series("cubic-y3")?;
    let y3 = solve_branch(&w, 3, &qi(1), y3fix.max_order() + 1)?;
    settle("cubic-y3", y3fix.coeffs.len(), diff_series(&y3, &y3fix))?;
    // convergence radii within one percent of the displayed values
    let tn = ctx.scalar("cubic-radius-nome")?.as_f64()?;
    let en = radius_estimate(&q, 8).ok_or_else(|| bail("nome radius estimate unavailable"))?;
    ensure(
        (en - tn).abs() <= 0.01 * tn.abs(),
        format!("nome radius {:.6} strays from {:.6}", en, tn),
    )?;
    let tm = ctx.scalar("cubic-radius-mirror")?.as_f64()?;
    let em = radius_estimate(&m, 8).ok_or_else(|| bail("mirror radius estimate unavailable"))?;
    ensure(
        (em - tm).abs() <= 0.01 * tm.abs(),
        format!("mirror radius {:.6} strays from {:.6}", em, tm),
    )?;
    Ok(format!(
        "nome, mirror, curve, family, and branches match; radii {:.6} and {:.6} land within \
         one percent",
        en, em
    ))
}

// criterion 10: kernel whose nome is a ratio of binomial powers

fn log_derivative_kernel(ctx: &mut Ctx) -> Check<String> {
    let fs = FSpec::parse("poly:1,-744,138383")?;
    let f = fs.series(16)?;
    ctx.check_series("log-deriv-f", &f)?;
    let w = w_from_f(&f, &qi(1))?;
    ensure_zero(
        &w.sub(&ctx.power("log-deriv-w-closed")?.series(w.prec())?),
        "kernel minus closed form",
    )?;
    let q = nome_from_f(&f)?;
    ctx.check_series("log-deriv-nome", &q)?;
    ctx.check_power("log-deriv-nome-closed", &q)?;
    let m = q.revert()?;
    ctx.check_series("log-deriv-mirror", &m)?;
    let curve = ctx.bivariate("log-deriv-mirror-curve")?;
    ensure_zero(&eval_bivariate(&curve, &Series::x(16), &m)?, "mirror curve residual")?;
    let pa = ParamPoly::var("a");
    let drag = pa.mul(&pa.sub(&ParamPoly::constant(qi(1)))).scale(&qi(-744));
    let fam = solve_two_param(&w, &ParamRat::from_poly(drag), "a", 7)?;
    ctx.check_param("log-deriv-family", &fam)?;
    ensure_zero(&transport_residual(&fam, &f, &["a"])?, "family transport")?;
    Ok("closed-form nome, mirror curve, and transported family all match".into())
}

// criterion 11: truncated kernel, curvature split, and growth evidence

fn truncated_kernel_probes(ctx: &mut Ctx) -> Check<String> {
    let fs = FSpec::parse("poly:1,-744,-393768")?;
    let f = fs.series(132)?;
    ctx.check_series("trunc3-f", &f)?;
    let w = fs.w(20)?;
    ensure_zero(
        &w.sub(&ctx.power("trunc3-w-closed")?.series(20)?),
        "kernel minus closed form",
    )?;
    let q = nome_from_f(&f)?;
    ctx.check_series("trunc3-nome", &q)?;
    let m = q.truncate(52).revert()?;
    ctx.check_series("trunc3-mirror", &m)?;
    let fam = solve_one_param(&w, "a", 9)?;
    ctx.check_param("trunc3-family", &fam)?;
    let y2fix = ctx.series("trunc3-y2")?;
    let y2 = solve_branch(&w, 2, &qi(1), y2fix.max_order() + 1)?;
    settle("trunc3-y2", y2fix.coeffs.len(), diff_series(&y2, &y2fix))?;
    let y2ffix = ctx.param("trunc3-y2-family")?;
    let prec2 = param_max(&y2ffix) + 1;
    let wl: Series<ParamRat> = lift_rat_series(&w.truncate(prec2 + 2));
    let y2fam = solve_schwarz(&wl, 2, &ParamRat::var("a"), &[], prec2)?;
    settle("trunc3-y2-family", y2ffix.coeffs.len(), diff_param(&y2fam, &y2ffix))?;
    // the sign-twisted slice is involutive
    let y1 = m.compose(&q.truncate(52).neg())?;
    ctx.check_series("trunc3-involution", &y1)?;
    let round = y1.truncate(26).compose(&y1.truncate(26))?;
    ensure_zero(&round.sub(&Series::x(round.prec())), "involution composed with itself")?;
    // order-one curvature verdict for every odd prime up to the bound
    let pl = ctx.primes("trunc3-curvature")?;
    let coeffs = [qi(0), qi(1), qi(-744), qi(-393768)];
    let mut zero = Vec::new();
    let mut nonzero = Vec::new();
    for p in odd_primes_to(pl.bound) {
        match p_curvature_order_one(&coeffs, p)? {
            Curvature::Zero => zero.push(p),
            Curvature::Nonzero => nonzero.push(p),
        }
    }
    ensure(
        zero == pl.zero,
        format!("vanishing-curvature primes {:?} differ from the displayed list", zero),
    )?;
    for p in &pl.nonzero {
        ensure(
            nonzero.contains(p),
            format!("prime {} should have nonzero curvature", p),
        )?;
    }
    // radius of the nome-like series within one percent
    let target = ctx.scalar("trunc3-radius")?.as_f64()?;
    let est = radius_estimate(&q, 8).ok_or_else(|| bail("radius estimate unavailable"))?;
    ensure(
        (est - target).abs() <= 0.01 * target.abs(),
        format!("radius {:.10} strays from {:.10}", est, target),
    )?;
    // denominators of the involutive slice keep recruiting primes
    let verdict = globally_bounded_probe(&y1.truncate(51));
    let newcomers = match verdict {
        BoundedVerdict::UnboundedEvidence { newcomers } => newcomers,
        BoundedVerdict::RescaledIntegral { .. } => {
            return Err(bail("involutive series unexpectedly rescales to integral"))
        }
    };
    Ok(format!(
        "curvature split reproduced for all odd primes up to {}; radius {:.8}; {} late \
         denominator primes witness unbounded growth",
        pl.bound,
        est,
        newcomers.len()
    ))
}

// criterion 12: square-root kernel from the sixth-order accessory form

fn heun_kernel(ctx: &mut Ctx) -> Check<String> {
    let fs = FSpec::Heun81;
    let gsq = fs.square(8)?.scale(&qi(81));
    ctx.check_series("heun-gsq", &gsq)?;
    let w = fs.w(20)?;
    ensure_zero(
        &w.sub(&ctx.power("heun-w-closed")?.series(18)?),
        "kernel minus closed form",
    )?;
    let famfix = ctx.param("heun-family")?;
    let nfix = ctx.series("heun-nome")?;
    let mfix = ctx.series("heun-mirror")?;
    let prec = (param_max(&famfix) + 1)
        .max(nfix.max_order() + 1)
        .max(mfix.max_order() + 1);
    let fam = solve_one_param(&w, "a", prec)?;
    settle("heun-family", famfix.coeffs.len(), diff_param(&fam, &famfix))?;
    let qn = nome_from_family(&fam, "a")?;
    settle("heun-nome", nfix.coeffs.len(), diff_series(&qn, &nfix))?;
    let mm = mirror_from_family(&fam, "a")?;
    settle("heun-mirror", mfix.coeffs.len(), diff_series(&mm, &mfix))?;
    ensure(qn.revert()? == mm, "reverting the nome must give the mirror".into())?;
    // multiplier identity in square form at the sample point four
    let y4 = at_params(&fam, &[("a", qi(4))])?;
    let g = fs.square(prec)?;
    ensure_zero(
        &square_multiplier_residual(&g, &y4, &qi(4))?,
        "square multiplier residual at four",
    )?;
    Ok("scaled square, kernel, family, nome, and mirror match; the multiplier identity \
        holds at the sample point"
        .into())
}

// criterion 13: mod-two reduction of the cubic-nome solution

fn mod_two_sigma(ctx: &mut Ctx) -> Check<String> {
    let (qz, mz) = integral_pipeline(302)?;
    let s3 = rat_series(&mz.compose(&qz.scale(&BigInt::from(3)))?);
    ctx.check_series("cube-solution", &s3)?;
    let sigma = sigma_from_cubic(&s3)?;
    ctx.check_series("cube-sigma", &sigma)?;
    ensure(
        sigma.prec() >= 301,
        format!("need the reduction through order 300, have {}", sigma.prec() - 1),
    )?;
    sigma_check(&sigma)?;
    Ok(format!(
        "tripled-nome solution reduces to the divisor-counting series through order {}",
        sigma.prec() - 1
    ))
}

// criterion 14: signed tail ratio of the mirror coefficients

fn mirror_tail_ratio(ctx: &mut Ctx) -> Check<String> {
    let (_, mz) = integral_pipeline(522)?;
    let m = rat_series(&mz);
    let quoted = ctx.scalar("mirror-tail-ratio")?;
    let target = quoted.as_f64()?;
    let digits = quoted.digits.unwrap_or(6);
    let full = radius_report(&m, 1)?;
    ensure(
        sig_digits_agree(full.estimate, target, digits),
        format!(
            "tail ratio {:.12e} disagrees with the quoted {:.12e} at {} digits",
            full.estimate, target, digits
        ),
    )?;
    let mag = ctx.scalar("mirror-tail-target")?.as_f64()?;
    let off_full = (full.estimate.abs() - mag).abs() / mag;
    ensure(
        off_full <= 0.005,
        format!("magnitude of {:.12e} strays {:.3}% from the closed form", full.estimate, 100.0 * off_full),
    )?;
    // the smaller window quoted alongside the estimate stays in the band
    let short = radius_report(&m.truncate(422), 1)?;
    let off_short = (short.estimate.abs() - mag).abs() / mag;
    ensure(
        off_short <= 0.005,
        format!("421-coefficient ratio {:.12e} strays {:.3}% from the closed form", short.estimate, 100.0 * off_short),
    )?;
    Ok(format!(
        "tail ratio {:.12} matches {} quoted digits at 521 coefficients ({:.3}% from the \
         closed-form magnitude); 421 coefficients give {:.12} ({:.3}% off)",
        full.estimate,
        digits,
        100.0 * off_full,
        short.estimate,
        100.0 * off_short
    ))
}

// criterion 15: modulus-coordinate form of the degree-two curve

fn landen_transform(ctx: &mut Ctx) -> Check<String> {
    let g2 = ctx.bivariate("modular-curve-2")?;
    let lc = ctx.bivariate("landen-curve")?;
    let rescaled = rescale_arguments(&g2, &qi(1728)).scale(&qr(1, 80621568));
    ensure(rescaled == lc, "rescaled degree-two curve differs from the modulus form".into())?;
    let (xs, ys) = landen_hauptmoduls(41)?;
    ensure_zero(
        &xs.sub(&ctx.power("landen-x")?.series(41)?),
        "first hauptmodul minus its closed form",
    )?;
    ensure_zero(
        &ys.sub(&ctx.power("landen-y")?.series(41)?),
        "second hauptmodul minus its closed form",
    )?;
    ensure_zero(&eval_bivariate(&lc, &xs, &ys)?, "modulus-coordinate curve residual")?;
    // rescaled branch solutions solve the same curve
    let w = FSpec::Elliptic.w(16)?;
    let y2 = solve_branch(&w, 2, &qi(1), 14)?;
    let y3 = solve_branch(&w, 3, &qi(1), 14)?;
    let d2 = landen_rescale(&y2);
    ctx.check_series("landen-degree2", &d2)?;
    let d3 = landen_rescale(&y3);
    ctx.check_series("landen-degree3", &d3)?;
    ensure_zero(
        &eval_bivariate(&lc, &Series::x(14), &d2)?,
        "modulus curve residual on the rescaled degree-two map",
    )?;
    ensure(
        d2.compose(&d3)? == d3.compose(&d2)?,
        "rescaled maps must commute".into(),
    )?;
    Ok("modulus form, hauptmodul pair, and rescaled maps all check to order 40".into())
}

// criterion 16: randomized algebra properties

fn algebra_properties(ctx: &mut Ctx) -> Check<String> {
    let mut rng = Lcg::new(0x00C0_FFEE);
    let seeds = 56;
    for seed in 0..seeds {
        let tag = |what: &str| format!("seed {}: {}", seed, what);
        // reversion round-trips
        let f = rng.series1(10);
        let g = f.revert()?;
        ensure(f.compose(&g)? == Series::x(10), tag("forward reversion round-trip"))?;
        ensure(g.compose(&f)? == Series::x(10), tag("backward reversion round-trip"))?;
        // fractional linear maps leave the schwarzian fixed
        let y = rng.series1(9);
        let (a, b, d) = (rng.unit(), rng.rat(), rng.unit());
        let mut c = rng.rat();
        while a.mul(&d) == b.mul(&c) {
            c = rng.rat();
        }
        let num = y.scale(&a).add(&Series::constant(b.clone(), y.prec()));
        let den = y.scale(&c).add(&Series::constant(d.clone(), y.prec()));
        let moebius = num.div(&den)?;
        ensure(moebius.schwarzian()? == y.schwarzian()?, tag("schwarzian invariance"))?;
        // chain rule
        let h = rng.series1(9);
        let fh = f.truncate(9).compose(&h)?;
        let chain = f
            .truncate(9)
            .schwarzian()?
            .compose(&h)?
            .mul(&h.deriv().pow_i(2)?)
            .add(&h.schwarzian()?);
        ensure(fh.schwarzian()? == chain, tag("schwarzian chain rule"))?;
        // fractional powers compose additively
        let u = Series::constant(qi(1), 8).add(&rng.series1(8));
        let prod = u.pow_rat(1, 2)?.mul(&u.pow_rat(1, 3)?);
        ensure(prod == u.pow_rat(5, 6)?, tag("fractional power additivity"))?;
        // composition distributes over products
        let f2 = rng.series1(8);
        let g2 = rng.series1(8);
        let h8 = h.truncate(8);
        ensure(
            f2.mul(&g2).compose(&h8)? == f2.compose(&h8)?.mul(&g2.compose(&h8)?),
            tag("composition distributes over products"),
        )?;
        // exponential and logarithm invert each other
        let v = rng.series1(8);
        ensure(v.exp()?.log()? == v, tag("exp and log round-trip"))?;
        // transport residuals on a random kernel with no pole deformation
        let fk = Series::from_poly(&[qi(0), qi(1), rng.rat(), rng.rat()], 9);
        let wk = w_from_f(&fk, &qi(0))?;
        let famk = solve_one_param(&wk, "a", 5)?;
        ensure_zero(&transport_residual(&famk, &fk, &["a"])?, &tag("kernel transport"))?;
        ensure_zero(
            &nome_transport_residual(&nome_from_f(&fk)?, &famk, "a")?,
            &tag("nome transport"),
        )?;
    }
    // branch composites commute into the sixth solution
    let w = FSpec::Elliptic.w(26)?;
    let y6fix = ctx.series("elliptic-y6")?;
    let prec6 = y6fix.max_order() + 1;
    let y2 = solve_branch(&w, 2, &qi(1), prec6.div_euclid(3) + 2)?;
    let y3 = solve_branch(&w, 3, &qi(1), prec6)?;
    let c23 = y2.compose(&y3)?;
    ensure(c23 == y3.compose(&y2)?, "branch composites must commute".into())?;
    settle("elliptic-y6", y6fix.coeffs.len(), diff_series(&c23, &y6fix))?;
    // cyclotomic sums and inverses close
    let o3 = Cyclo::omega(3);
    let sum3 = o3.add(&o3.mul(&o3)).add(&Cyclo::constant(3, qi(1)));
    ensure(sum3.is_zero(), "third roots of unity must sum to zero".into())?;
    ensure(
        Cyclo::omega_pow(5, 5) == Cyclo::constant(5, qi(1)),
        "fifth root of unity must have order five".into(),
    )?;
    for k in 1..5i64 {
        let z = Cyclo::omega_pow(5, k).add(&Cyclo::constant(5, qi(2)));
        let zi = z.inv().ok_or_else(|| bail("shifted root must be invertible"))?;
        ensure(z.mul(&zi) == Cyclo::constant(5, qi(1)), "cyclotomic inverse closes".into())?;
    }
    Ok(format!(
        "{} randomized seeds: reversion, schwarzian invariance and chain rule, fractional \
         powers, distributivity, exp-log, and transport residuals; branch composites \
         commute into the sixth solution",
        seeds
    ))
}
