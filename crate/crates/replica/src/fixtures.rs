//! Exact ground-truth data store backing the verification suite.
//!
//! Every displayed coefficient table, polynomial, curve parametrization,
//! prime list, and numeric target that the crate checks itself against is
//! transcribed into plain-text records shipped with the crate. Keeping the
//! data in text keeps transcription auditable: a wrong digit is a one-line
//! diff, never a buried magic number inside test code.
//!
//! Record syntax, shared by all files:
//!
//! ```text
//! # comment
//! [<kind> <id>]
//! key = value
//! ```
//!
//! Kinds and their keys:
//! - `series`: rational coefficients, either dense (`lo`, `coeffs`) or
//!   sparse (`c<k> = value` per exponent); values are rational expressions.
//! - `cyclo-series`: coefficients in Q[w]/Phi_order(w); `order`, optional
//!   `root` r meaning the series variable is t with t^r = x, and the same
//!   dense/sparse coefficient keys with `w` available in expressions.
//! - `param-series`: coefficients are rational functions of the parameters
//!   listed in `vars`; sparse `c<k>` keys only.
//! - `bivariate`: one `poly` expression in the fixed variables x and y.
//! - `power-product`: a scalar times a product of polynomial powers,
//!   `scale` and repeated `factor = <exponent> | <polynomial>` lines with
//!   rational exponents; optional displayed expansion head (`head-lo`,
//!   `head`) for cross-checking.
//! - `curve`: rational parametrization x(t) = xnum/xden, y(t) = ynum/yden
//!   given as polynomial expressions in t, plus the order `n`.
//! - `prime-list`: `bound`, `zero`, `nonzero` comma-separated primes.
//! - `scalar`: a `value` (exact rational or decimal literal) and optional
//!   `digits` stating how many significant digits the source displayed.
//!
//! Invariants:
//! - ids are unique across all shipped files; [`load`] fails with
//!   `UnknownFixture` for anything else;
//! - every record parses into its exact typed payload at load time, so a
//!   transcription typo that breaks syntax cannot hide until a test runs;
//! - the environment variable `REPLICA_FIXTURES` may point to a directory
//!   of replacement `.txt` files, used instead of the embedded corpus.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::cyclotomic::Cyclo;
use crate::parampoly::{ParamPoly, ParamRat};
use crate::rat::{rat_to_f64, QRat};
use crate::ring::Ring;
use crate::series::Series;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// embedded corpus

const SOURCES: &[(&str, &str)] = &[
    ("kernel.txt", include_str!("../fixtures/kernel.txt")),
    ("family.txt", include_str!("../fixtures/family.txt")),
    ("curves.txt", include_str!("../fixtures/curves.txt")),
    ("polykernels.txt", include_str!("../fixtures/polykernels.txt")),
    ("landen.txt", include_str!("../fixtures/landen.txt")),
    ("heun.txt", include_str!("../fixtures/heun.txt")),
];

// ---------------------------------------------------------------------------
// raw records

/// One parsed record: kind, id, and its key/value lines in file order.
#[derive(Debug, Clone)]
pub struct Record {
    pub kind: String,
    pub id: String,
    pub fields: Vec<(String, String)>,
    line: usize,
}

impl Record {
    fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::ParseError {
            line: self.line,
            msg: format!("record '{}' is missing key '{}'", self.id, key),
        })
    }

    fn all(&self, key: &str) -> Vec<&str> {
        self.fields
            .iter()
            .filter(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .collect()
    }
}

fn parse_records(name: &str, text: &str, into: &mut BTreeMap<String, Record>) -> Result<()> {
    let mut current: Option<Record> = None;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(body) = line.strip_prefix('[') {
            let body = body.strip_suffix(']').ok_or(Error::ParseError {
                line: line_no,
                msg: format!("{name}: unterminated record header"),
            })?;
            let mut words = body.split_whitespace();
            let (kind, id) = match (words.next(), words.next(), words.next()) {
                (Some(k), Some(i), None) => (k.to_string(), i.to_string()),
                _ => {
                    return Err(Error::ParseError {
                        line: line_no,
                        msg: format!("{name}: header must be [<kind> <id>]"),
                    })
                }
            };
            if let Some(done) = current.take() {
                if into.insert(done.id.clone(), done).is_some() {
                    return Err(Error::ParseError {
                        line: line_no,
                        msg: format!("{name}: duplicate fixture id"),
                    });
                }
            }
            current = Some(Record {
                kind,
                id,
                fields: Vec::new(),
                line: line_no,
            });
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(Error::ParseError {
            line: line_no,
            msg: format!("{name}: expected 'key = value'"),
        })?;
        match current.as_mut() {
            Some(rec) => rec
                .fields
                .push((key.trim().to_string(), value.trim().to_string())),
            None => {
                return Err(Error::ParseError {
                    line: line_no,
                    msg: format!("{name}: key/value before any record header"),
                })
            }
        }
    }
    if let Some(done) = current.take() {
        let id = done.id.clone();
        if into.insert(id, done).is_some() {
            return Err(Error::ParseError {
                line: 0,
                msg: format!("{name}: duplicate fixture id"),
            });
        }
    }
    Ok(())
}

fn build_registry() -> Result<BTreeMap<String, Record>> {
    let mut map = BTreeMap::new();
    if let Ok(dir) = std::env::var("REPLICA_FIXTURES") {
        let mut paths: Vec<_> = std::fs::read_dir(&dir)
            .map_err(|e| Error::ParseError {
                line: 0,
                msg: format!("cannot read fixture dir {dir}: {e}"),
            })?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "txt"))
            .collect();
        paths.sort();
        for path in paths {
            let text = std::fs::read_to_string(&path).map_err(|e| Error::ParseError {
                line: 0,
                msg: format!("cannot read {}: {e}", path.display()),
            })?;
            parse_records(&path.display().to_string(), &text, &mut map)?;
        }
    } else {
        for (name, text) in SOURCES {
            parse_records(name, text, &mut map)?;
        }
    }
    Ok(map)
}

fn registry() -> Result<&'static BTreeMap<String, Record>> {
    static REG: OnceLock<Result<BTreeMap<String, Record>>> = OnceLock::new();
    match REG.get_or_init(build_registry) {
        Ok(map) => Ok(map),
        Err(e) => Err(e.clone()),
    }
}

/// All fixture ids in the active corpus, sorted.
pub fn all_ids() -> Result<Vec<String>> {
    Ok(registry()?.keys().cloned().collect())
}

/// Kind string of one fixture.
pub fn kind_of(id: &str) -> Result<String> {
    Ok(record(id)?.kind.clone())
}

/// Raw key/value pairs of one record, for checks that need side data.
pub fn raw(id: &str) -> Result<Vec<(String, String)>> {
    Ok(record(id)?.fields.clone())
}

fn record(id: &str) -> Result<&'static Record> {
    registry()?.get(id).ok_or_else(|| Error::UnknownFixture {
        id: id.to_string(),
    })
}

// ---------------------------------------------------------------------------
// expression parsing

// Recursive-descent parser for the value language: integers, the supplied
// variables, + - * / ^, and parentheses. Exponents are integers; everything
// else stays inside the coefficient ring.
struct ExprParser<'a, R: Ring> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
    resolve: &'a dyn Fn(&str) -> Option<R>,
}

impl<'a, R: Ring> ExprParser<'a, R> {
    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::ParseError {
            line: self.line,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<R> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<R> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    match d.inv() {
                        Some(inv) => acc = acc.mul(&inv),
                        None => return self.fail("division by a non-invertible value"),
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<R> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.fail("expected integer exponent after '^'");
        }
        let e: i64 = std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::ParseError {
                line: self.line,
                msg: "exponent out of range".into(),
            })?;
        let base = if neg {
            match base.inv() {
                Some(inv) => inv,
                None => return self.fail("negative power of a non-invertible value"),
            }
        } else {
            base
        };
        // binary powering
        let mut acc = R::one();
        let mut sq = base;
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<R> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.fail("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n = BigInt::parse_bytes(&self.bytes[start..self.pos], 10).unwrap();
                Ok(R::from_rat(&QRat::from_integer(n)))
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_alphanumeric())
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                match (self.resolve)(name) {
                    Some(v) => Ok(v),
                    None => self.fail(format!("unknown variable '{name}'")),
                }
            }
            _ => self.fail("expected a number, variable, or '('"),
        }
    }
}

fn parse_expr<R: Ring>(src: &str, line: usize, resolve: &dyn Fn(&str) -> Option<R>) -> Result<R> {
    let mut p = ExprParser {
        bytes: src.as_bytes(),
        pos: 0,
        line,
        resolve,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(Error::ParseError {
            line,
            msg: format!("trailing input after expression: '{}'", &src[p.pos..]),
        });
    }
    Ok(v)
}

fn parse_rat(src: &str, line: usize) -> Result<QRat> {
    parse_expr::<QRat>(src, line, &|_| None)
}

fn parse_rat_list(src: &str, line: usize) -> Result<Vec<QRat>> {
    src.split(',').map(|s| parse_rat(s.trim(), line)).collect()
}

fn parse_u64_list(src: &str, line: usize) -> Result<Vec<u64>> {
    src.split(',')
        .map(|s| {
            s.trim().parse::<u64>().map_err(|_| Error::ParseError {
                line,
                msg: format!("bad integer '{}'", s.trim()),
            })
        })
        .collect()
}

fn parse_int_field(rec: &Record, key: &str) -> Result<i64> {
    rec.require(key)?
        .parse::<i64>()
        .map_err(|_| Error::ParseError {
            line: rec.line,
            msg: format!("record '{}': key '{}' must be an integer", rec.id, key),
        })
}

// collect sparse c<k> keys together with an optional dense lo/coeffs block
fn collect_coeffs<T, F>(rec: &Record, mut parse: F) -> Result<Vec<(i64, T)>>
where
    F: FnMut(&str) -> Result<T>,
{
    let mut out: Vec<(i64, T)> = Vec::new();
    if rec.get("coeffs").is_some() {
        let lo = match rec.get("lo") {
            Some(_) => parse_int_field(rec, "lo")?,
            None => 0,
        };
        for (i, part) in rec.require("coeffs")?.split(',').enumerate() {
            out.push((lo + i as i64, parse(part.trim())?));
        }
    }
    for (key, value) in &rec.fields {
        if let Some(order) = key.strip_prefix('c') {
            if let Ok(k) = order.parse::<i64>() {
                out.push((k, parse(value)?));
            }
        }
    }
    out.sort_by_key(|(k, _)| *k);
    for pair in out.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(Error::ParseError {
                line: rec.line,
                msg: format!("record '{}': duplicate coefficient order", rec.id),
            });
        }
    }
    if out.is_empty() {
        return Err(Error::ParseError {
            line: rec.line,
            msg: format!("record '{}' has no coefficients", rec.id),
        });
    }
    Ok(out)
}

fn poly_to_coeffs(p: &ParamPoly, var: &str, line: usize) -> Result<Vec<QRat>> {
    let d = p.degree_in(var);
    (0..=d)
        .map(|k| {
            p.coeff_of(var, k).as_rat().ok_or(Error::ParseError {
                line,
                msg: format!("polynomial must be univariate in '{var}'"),
            })
        })
        .collect()
}

fn parse_poly(src: &str, line: usize, var: &str) -> Result<Vec<QRat>> {
    let owned = var.to_string();
    let rat: ParamRat = parse_expr(src, line, &|name: &str| {
        (name == owned).then(|| ParamRat::var(name))
    })?;
    let poly = rat.as_poly().ok_or(Error::ParseError {
        line,
        msg: "expected a polynomial, found a genuine rational function".into(),
    })?;
    poly_to_coeffs(&poly, var, line)
}

// ---------------------------------------------------------------------------
// typed fixtures

/// Sparse exact series data: ascending (exponent, coefficient) pairs.
#[derive(Debug, Clone)]
pub struct SeriesFixture {
    pub coeffs: Vec<(i64, QRat)>,
}

impl SeriesFixture {
    /// Largest exponent carried by the fixture.
    pub fn max_order(&self) -> i64 {
        self.coeffs.last().map(|(k, _)| *k).unwrap_or(0)
    }

    /// Dense series over the fixture's window, coefficients not listed
    /// are taken as zero (correct for every dense fixture; sparse records
    /// should not be used through this accessor).
    pub fn series(&self) -> Series<QRat> {
        let lo = self.coeffs.first().map(|(k, _)| *k).unwrap_or(0);
        let hi = self.max_order();
        let mut dense = vec![QRat::zero(); (hi - lo + 1) as usize];
        for (k, c) in &self.coeffs {
            dense[(k - lo) as usize] = c.clone();
        }
        Series::from_rats(lo, &dense)
    }
}

/// Series data over a cyclotomic ring, possibly in a root variable.
#[derive(Debug, Clone)]
pub struct CycloFixture {
    /// cyclotomic order of w
    pub order: u32,
    /// the series variable t satisfies t^root = x
    pub root: u32,
    pub coeffs: Vec<(i64, Cyclo)>,
}

/// Series whose coefficients are rational functions of named parameters.
#[derive(Debug, Clone)]
pub struct ParamFixture {
    pub vars: Vec<String>,
    pub coeffs: Vec<(i64, ParamRat)>,
}

/// An exact polynomial in the two fixed variables x and y.
#[derive(Debug, Clone)]
pub struct BivariateFixture {
    pub poly: ParamPoly,
}

/// scale * prod_i base_i(x)^{e_i} with rational exponents.
#[derive(Debug, Clone)]
pub struct PowerProductFixture {
    pub scale: QRat,
    /// (exponent, dense base coefficients from degree 0)
    pub factors: Vec<(QRat, Vec<QRat>)>,
    /// displayed leading expansion coefficients, if the source printed any
    pub head: Vec<(i64, QRat)>,
}

impl PowerProductFixture {
    /// Expand the product as an exact (possibly Laurent) series.
    pub fn series(&self, prec: i64) -> Result<Series<QRat>> {
        // generous working precision: integer-exponent factors shift the
        // window by val*e, which mul bookkeeping then subtracts back off
        let mut shift_budget: i64 = 0;
        for (e, coeffs) in &self.factors {
            let v = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0) as i64;
            if e.is_integer() {
                let ei: i64 = e.to_integer().try_into().map_err(|_| Error::ParseError {
                    line: 0,
                    msg: "power-product exponent out of range".into(),
                })?;
                shift_budget += (v * ei).abs();
            }
        }
        let wprec = prec + shift_budget + 4;
        let mut acc = Series::constant(self.scale.clone(), wprec);
        for (e, coeffs) in &self.factors {
            let v = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
            let mut dense = coeffs[v..].to_vec();
            dense.resize((wprec as usize).max(dense.len()), QRat::zero());
            let base = Series::from_rats(v as i64, &dense);
            let powered = if e.is_integer() {
                let ei: i64 = e.to_integer().try_into().map_err(|_| Error::ParseError {
                    line: 0,
                    msg: "power-product exponent out of range".into(),
                })?;
                base.pow_i(ei)?
            } else {
                // fractional powers only of 1 + O(x): every shipped record
                // obeys this, and pow_rat enforces it
                let p: i64 = e.numer().try_into().map_err(|_| Error::ParseError {
                    line: 0,
                    msg: "power-product exponent numerator out of range".into(),
                })?;
                let q: u32 = e.denom().try_into().map_err(|_| Error::ParseError {
                    line: 0,
                    msg: "power-product exponent denominator out of range".into(),
                })?;
                base.pow_rat(p, q)?
            };
            acc = acc.mul(&powered);
        }
        if acc.prec() > prec {
            acc = acc.truncate(prec);
        }
        Ok(acc)
    }
}

/// Rational parametrization of one modular curve.
#[derive(Debug, Clone)]
pub struct CurveFixture {
    pub n: u32,
    pub x_num: Vec<QRat>,
    pub x_den: Vec<QRat>,
    pub y_num: Vec<QRat>,
    pub y_den: Vec<QRat>,
}

impl CurveFixture {
    /// Bridge into the curve-expansion machinery.
    pub fn params(&self) -> crate::modular::CurveParam {
        crate::modular::CurveParam {
            x_num: self.x_num.clone(),
            x_den: self.x_den.clone(),
            y_num: self.y_num.clone(),
            y_den: self.y_den.clone(),
        }
    }
}

/// Primes sorted by a binary verdict, with the bound they were checked to.
#[derive(Debug, Clone)]
pub struct PrimeListFixture {
    pub bound: u64,
    pub zero: Vec<u64>,
    pub nonzero: Vec<u64>,
}

/// A single displayed number, exact or decimal.
#[derive(Debug, Clone)]
pub struct ScalarFixture {
    pub text: String,
    /// significant digits the source printed, when stated
    pub digits: Option<u32>,
}

impl ScalarFixture {
    /// Exact rational value, when the text is not a decimal literal.
    pub fn as_rat(&self) -> Option<QRat> {
        if self.text.contains('.') {
            return None;
        }
        parse_rat(&self.text, 0).ok()
    }

    /// Floating value: decimal literals parse directly, exact rationals
    /// convert through the big-rational path.
    pub fn as_f64(&self) -> Result<f64> {
        if let Some(q) = self.as_rat() {
            return Ok(rat_to_f64(&q));
        }
        self.text.parse::<f64>().map_err(|_| Error::ParseError {
            line: 0,
            msg: format!("scalar '{}' is not numeric", self.text),
        })
    }
}

/// Any fixture, tagged by kind.
#[derive(Debug, Clone)]
pub enum Fixture {
    Series(SeriesFixture),
    CycloSeries(CycloFixture),
    ParamSeries(ParamFixture),
    Bivariate(BivariateFixture),
    PowerProduct(PowerProductFixture),
    Curve(CurveFixture),
    PrimeList(PrimeListFixture),
    Scalar(ScalarFixture),
}

fn build_fixture(rec: &Record) -> Result<Fixture> {
    let line = rec.line;
    match rec.kind.as_str() {
        "series" => Ok(Fixture::Series(SeriesFixture {
            coeffs: collect_coeffs(rec, |s| parse_rat(s, line))?,
        })),
        "cyclo-series" => {
            let order = parse_int_field(rec, "order")? as u32;
            let root = match rec.get("root") {
                Some(_) => parse_int_field(rec, "root")? as u32,
                None => 1,
            };
            let coeffs = collect_coeffs(rec, |s| {
                parse_expr::<Cyclo>(s, line, &|name| {
                    (name == "w").then(|| Cyclo::omega(order))
                })
            })?;
            Ok(Fixture::CycloSeries(CycloFixture {
                order,
                root,
                coeffs,
            }))
        }
        "param-series" => {
            let vars: Vec<String> = rec
                .require("vars")?
                .split(',')
                .map(|s| s.trim().to_string())
                .collect();
            let vars_for_resolve = vars.clone();
            let coeffs = collect_coeffs(rec, |s| {
                parse_expr::<ParamRat>(s, line, &|name| {
                    vars_for_resolve
                        .iter()
                        .any(|v| v == name)
                        .then(|| ParamRat::var(name))
                })
            })?;
            Ok(Fixture::ParamSeries(ParamFixture { vars, coeffs }))
        }
        "bivariate" => {
            let rat: ParamRat = parse_expr(rec.require("poly")?, line, &|name| {
                (name == "x" || name == "y").then(|| ParamRat::var(name))
            })?;
            let poly = rat.as_poly().ok_or(Error::ParseError {
                line,
                msg: "bivariate poly must have constant denominator".into(),
            })?;
            Ok(Fixture::Bivariate(BivariateFixture { poly }))
        }
        "power-product" => {
            let var = rec.get("var").unwrap_or("x").to_string();
            let scale = match rec.get("scale") {
                Some(s) => parse_rat(s, line)?,
                None => QRat::one(),
            };
            let mut factors = Vec::new();
            for f in rec.all("factor") {
                let (exp, poly) = f.split_once('|').ok_or(Error::ParseError {
                    line,
                    msg: "factor must be '<exponent> | <polynomial>'".into(),
                })?;
                factors.push((
                    parse_rat(exp.trim(), line)?,
                    parse_poly(poly.trim(), line, &var)?,
                ));
            }
            if factors.is_empty() {
                return Err(Error::ParseError {
                    line,
                    msg: format!("power-product '{}' has no factors", rec.id),
                });
            }
            let head = match rec.get("head") {
                Some(h) => {
                    let lo = match rec.get("head-lo") {
                        Some(_) => parse_int_field(rec, "head-lo")?,
                        None => 1,
                    };
                    parse_rat_list(h, line)?
                        .into_iter()
                        .enumerate()
                        .map(|(i, c)| (lo + i as i64, c))
                        .collect()
                }
                None => Vec::new(),
            };
            Ok(Fixture::PowerProduct(PowerProductFixture {
                scale,
                factors,
                head,
            }))
        }
        "curve" => Ok(Fixture::Curve(CurveFixture {
            n: parse_int_field(rec, "n")? as u32,
            x_num: parse_poly(rec.require("xnum")?, line, "t")?,
            x_den: parse_poly(rec.require("xden")?, line, "t")?,
            y_num: parse_poly(rec.require("ynum")?, line, "t")?,
            y_den: parse_poly(rec.require("yden")?, line, "t")?,
        })),
        "prime-list" => Ok(Fixture::PrimeList(PrimeListFixture {
            bound: parse_int_field(rec, "bound")? as u64,
            zero: parse_u64_list(rec.require("zero")?, line)?,
            nonzero: parse_u64_list(rec.require("nonzero")?, line)?,
        })),
        "scalar" => Ok(Fixture::Scalar(ScalarFixture {
            text: rec.require("value")?.to_string(),
            digits: match rec.get("digits") {
                Some(_) => Some(parse_int_field(rec, "digits")? as u32),
                None => None,
            },
        })),
        other => Err(Error::ParseError {
            line,
            msg: format!("unknown fixture kind '{other}'"),
        }),
    }
}

/// Load one fixture by id.
pub fn load(id: &str) -> Result<Fixture> {
    build_fixture(record(id)?)
}

macro_rules! typed_loader {
    ($name:ident, $variant:ident, $ty:ty) => {
        /// Load one fixture, requiring its kind.
        pub fn $name(id: &str) -> Result<$ty> {
            match load(id)? {
                Fixture::$variant(f) => Ok(f),
                _ => Err(Error::KindMismatch { id: id.to_string() }),
            }
        }
    };
}

typed_loader!(load_series, Series, SeriesFixture);
typed_loader!(load_cyclo, CycloSeries, CycloFixture);
typed_loader!(load_param, ParamSeries, ParamFixture);
typed_loader!(load_bivariate, Bivariate, BivariateFixture);
typed_loader!(load_power_product, PowerProduct, PowerProductFixture);
typed_loader!(load_curve, Curve, CurveFixture);
typed_loader!(load_primes, PrimeList, PrimeListFixture);
typed_loader!(load_scalar, Scalar, ScalarFixture);

// ---------------------------------------------------------------------------
// diffing

/// Result of comparing a computed series against fixture data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiffOutcome {
    /// every fixture coefficient inside the computed window matched
    Match {
        /// how many coefficients were actually compared
        compared: usize,
    },
    /// first disagreement, with both values rendered for the report
    Mismatch {
        order: i64,
        expected: String,
        got: String,
    },
}

impl DiffOutcome {
    /// True when the comparison found no disagreement.
    pub fn is_match(&self) -> bool {
        matches!(self, DiffOutcome::Match { .. })
    }
}

fn diff_pairs<R, S, EQ>(computed: &Series<R>, want: &[(i64, S)], eq: EQ) -> DiffOutcome
where
    R: Ring + std::fmt::Display,
    S: std::fmt::Display,
    EQ: Fn(&R, &S) -> bool,
{
    let mut compared = 0;
    for (k, expect) in want {
        if *k >= computed.prec() {
            continue;
        }
        let got = computed.coeff(*k);
        if !eq(&got, expect) {
            return DiffOutcome::Mismatch {
                order: *k,
                expected: expect.to_string(),
                got: got.to_string(),
            };
        }
        compared += 1;
    }
    DiffOutcome::Match { compared }
}

/// Compare a rational series against a series fixture on their overlap.
pub fn diff_series(computed: &Series<QRat>, fix: &SeriesFixture) -> DiffOutcome {
    diff_pairs(computed, &fix.coeffs, |a, b| a == b)
}

/// Compare a cyclotomic series against a cyclo-series fixture.
pub fn diff_cyclo(computed: &Series<Cyclo>, fix: &CycloFixture) -> DiffOutcome {
    diff_pairs(computed, &fix.coeffs, |a, b| a == b)
}

/// Compare a parametric series against a param-series fixture.
pub fn diff_param(computed: &Series<ParamRat>, fix: &ParamFixture) -> DiffOutcome {
    diff_pairs(computed, &fix.coeffs, |a, b| a == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{qi, qr};

    #[test]
    fn expression_parser_handles_the_value_language() {
        let q = parse_rat("-32*(4386286-20490191+27274051)", 1).unwrap();
        assert_eq!(q, qi(-32 * 11170146));
        assert_eq!(parse_rat("99/2", 1).unwrap(), qr(99, 2));
        assert_eq!(parse_rat("2^10", 1).unwrap(), qi(1024));
        assert_eq!(parse_rat("(1-3)^-2", 1).unwrap(), qr(1, 4));
        assert!(parse_rat("1 +", 1).is_err());
        assert!(parse_rat("nope", 1).is_err());
    }

    #[test]
    fn param_expression_evaluates_to_exact_polynomials() {
        let p = parse_poly("(1-2*t)*(1-3*t)", 7, "t").unwrap();
        assert_eq!(p, vec![qi(1), qi(-5), qi(6)]);
        assert!(parse_poly("1/(1-t)", 7, "t").is_err());
    }

    #[test]
    fn record_parser_reports_duplicates_and_syntax() {
        let mut map = BTreeMap::new();
        let text = "# c\n[series a]\nlo = 1\ncoeffs = 1, 2\n[series b]\nc3 = 5/2\n";
        parse_records("inline", text, &mut map).unwrap();
        assert_eq!(map.len(), 2);
        let rec = &map["b"];
        assert_eq!(rec.kind, "series");
        let fix = build_fixture(rec).unwrap();
        match fix {
            Fixture::Series(s) => assert_eq!(s.coeffs, vec![(3, qr(5, 2))]),
            _ => panic!("wrong kind"),
        }

        let mut dup = BTreeMap::new();
        assert!(parse_records("inline", "[series a]\nc1 = 1\n[series a]\nc1 = 1\n", &mut dup)
            .is_err());
    }

    #[test]
    fn power_product_expands_with_shifts_and_fractional_powers() {
        // x^-2 * (1-4x)^(1/2): Laurent window with a binomial tail
        let rec = Record {
            kind: "power-product".into(),
            id: "t".into(),
            fields: vec![
                ("factor".into(), "-2 | x".into()),
                ("factor".into(), "1/2 | 1-4*x".into()),
                ("scale".into(), "3".into()),
            ],
            line: 1,
        };
        let fix = match build_fixture(&rec).unwrap() {
            Fixture::PowerProduct(f) => f,
            _ => panic!(),
        };
        let s = fix.series(3).unwrap();
        assert_eq!(s.lo(), -2);
        assert_eq!(s.coeff(-2), qi(3));
        assert_eq!(s.coeff(-1), qi(-6));
        assert_eq!(s.coeff(0), qi(-6));
        assert_eq!(s.coeff(1), qi(-12));
    }

    #[test]
    fn corpus_loads_and_every_record_builds() {
        let ids = all_ids().unwrap();
        assert!(ids.len() > 60, "corpus has {} records", ids.len());
        for id in &ids {
            let fix = load(id);
            assert!(fix.is_ok(), "fixture '{id}' failed: {:?}", fix.err());
        }
        assert!(matches!(
            load("no-such-fixture"),
            Err(Error::UnknownFixture { .. })
        ));
        assert!(matches!(
            load_curve("elliptic-mirror"),
            Err(Error::KindMismatch { .. })
        ));
    }

    #[test]
    fn diff_reports_first_mismatch_and_overlap_truncation() {
        let fix = SeriesFixture {
            coeffs: vec![(1, qi(1)), (2, qi(744)), (9, qi(5))],
        };
        let good = Series::from_rats(1, &[qi(1), qi(744), qi(0)]);
        // order 9 lies beyond the computed window: compared on overlap only
        assert_eq!(diff_series(&good, &fix), DiffOutcome::Match { compared: 2 });
        let bad = Series::from_rats(1, &[qi(1), qi(743)]);
        match diff_series(&bad, &fix) {
            DiffOutcome::Mismatch { order, .. } => assert_eq!(order, 2),
            _ => panic!("expected mismatch"),
        }
    }
}
