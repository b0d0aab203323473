//! Exact-arithmetic lab for truncated power series that arise from
//! Schwarzian-type functional equations.
//!
//! The crate is organized bottom-up:
//!
//! * [`rat`] - big-rational helpers (parsing, formatting, exact float conversion).
//! * [`ring`] - the coefficient-ring trait shared by all series engines.
//! * [`parampoly`] - polynomials and rational functions in named parameters
//!   (`a`, `b`, ...) over the rationals.
//! * [`cyclotomic`] - the field Q[w]/Phi_N(w) for exact roots of unity.
//! * [`primefield`] - machine-word prime fields, dense polynomials over them,
//!   and truncated mod-p series.
//! * [`series`] - dense truncated (Laurent-capable) power series over any
//!   coefficient ring: arithmetic, composition, reversion, calculus,
//!   Schwarzian derivatives, n-th root splitting, Puiseux branches.
//! * [`special`] - hypergeometric and Heun series and the kernels F they
//!   build, with W-potentials, nome and mirror maps.
//! * [`family`] - order-by-order solvers for the Schwarzian condition
//!   (one-parameter, two-parameter and correspondence families), epsilon
//!   expansions, transport identities and multiplier checks.
//! * [`modular`] - bivariate modular curves, rational parametrizations,
//!   Puiseux branches of correspondences, the resultant construction of the
//!   degree-four curve, and the Landen check.
//! * [`probe`] - characteristic-p probes: series reduction, the mod-2 sigma
//!   identity, p-curvature of order-one operators, ratio-based radius
//!   estimates and global-boundedness scans.
//! * [`fixtures`] - the plain-text fixture format, loader and series diff.
//! * [`verify`] - the end-to-end verification suite used by the test-bed and
//!   the `verify-all` subcommand.
//! * [`report`] - deterministic JSON / CSV / pretty rendering of results.

pub mod rat;
pub mod ring;
pub mod parampoly;
pub mod cyclotomic;
pub mod primefield;
pub mod series;
pub mod special;
pub mod family;
pub mod modular;
pub mod probe;
pub mod fixtures;
pub mod verify;
pub mod report;

use std::fmt;

/// Crate-wide error type. Variants carry the operation-specific context
/// needed to report *where* an exact computation refused to proceed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division by an exact zero.
    DivisionByZero,
    /// Division by a ring element that is not a unit.
    NonUnitDivisor,
    /// Two operands live in different rings (e.g. prime fields with
    /// different moduli).
    MixedRings,
    /// A rational could not be reduced mod p (p divides the denominator);
    /// `index` is the series coefficient where reduction failed.
    BadReduction { prime: u64, index: usize },
    /// Series division would produce a pole (denominator valuation exceeds
    /// numerator valuation) in a context restricted to power series.
    DivisionValuation,
    /// An operation needs more known coefficients than the operand carries.
    PrecisionUnderflow,
    /// Composition f(g) requires val(g) >= 1.
    NonpositiveValuation,
    /// Reversion requires valuation exactly 1 with a unit linear coefficient.
    BadValuation,
    /// log/exp/pow need constant term exactly 1 (resp. 0 for exp).
    NonUnitConstantTerm,
    /// Integration hit an x^{-1} term.
    IntegrationObstruction,
    /// Schwarzian derivative of a series with identically zero derivative.
    ZeroDerivative,
    /// Rational-function expansion with den(0) = 0.
    PoleAtOrigin,
    /// n-th root split of a series whose valuation is not divisible by n.
    ValuationNotDivisible,
    /// n-th root split needs leading coefficient exactly 1.
    NonUnitLeading,
    /// Heun recurrence with gamma a nonpositive integer.
    BadGamma,
    /// Nome construction requires F = x + O(x^2).
    BadNormalization,
    /// The order-by-order solve hit an unsolvable linear condition at the
    /// given residual order.
    Inconsistent { order: i64 },
    /// Correspondence solves require the potential to carry -1/(2x^2).
    WNotNormalized,
    /// The two sides of the multiplier identity are not proportional by a
    /// constant.
    NoConstantMultiplier,
    /// A curve parametrization did not expand with the advertised valuations.
    BadParametrization { n: u32 },
    /// A division that must be exact (resultant pivots, curve extraction)
    /// left a remainder.
    DivisionNotExact,
    /// Reduction of an operator mod p degenerated (denominator vanished).
    PoleCollision { prime: u64 },
    /// Ratio-based radius estimate with too few usable terms.
    InsufficientTerms,
    /// Fixture id not present in the fixture set.
    UnknownFixture { id: String },
    /// Fixture kind does not match what the caller asked to diff.
    KindMismatch { id: String },
    /// Fixture file syntax error.
    ParseError { line: usize, msg: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NonUnitDivisor => write!(f, "division by a non-unit"),
            Error::MixedRings => write!(f, "operands belong to different rings"),
            Error::BadReduction { prime, index } => {
                write!(f, "coefficient {index} has denominator divisible by {prime}")
            }
            Error::DivisionValuation => {
                write!(f, "series division would produce negative exponents")
            }
            Error::PrecisionUnderflow => write!(f, "not enough known coefficients"),
            Error::NonpositiveValuation => {
                write!(f, "composition requires inner valuation >= 1")
            }
            Error::BadValuation => {
                write!(f, "reversion requires valuation 1 with unit leading coefficient")
            }
            Error::NonUnitConstantTerm => write!(f, "constant term must be 1 (0 for exp)"),
            Error::IntegrationObstruction => write!(f, "integration hit an x^-1 term"),
            Error::ZeroDerivative => write!(f, "derivative vanishes identically"),
            Error::PoleAtOrigin => write!(f, "denominator vanishes at the origin"),
            Error::ValuationNotDivisible => write!(f, "valuation not divisible by root order"),
            Error::NonUnitLeading => write!(f, "leading coefficient must be 1"),
            Error::BadGamma => write!(f, "gamma parameter is a nonpositive integer"),
            Error::BadNormalization => write!(f, "kernel must expand as x + O(x^2)"),
            Error::Inconsistent { order } => {
                write!(f, "no solution: residual order {order} is overdetermined")
            }
            Error::WNotNormalized => {
                write!(f, "potential lacks the -1/(2x^2) principal part")
            }
            Error::NoConstantMultiplier => {
                write!(f, "sides differ by a non-constant factor")
            }
            Error::BadParametrization { n } => {
                write!(f, "parametrization for level {n} has wrong valuations")
            }
            Error::DivisionNotExact => write!(f, "exact division left a remainder"),
            Error::PoleCollision { prime } => {
                write!(f, "operator denominator vanishes mod {prime}")
            }
            Error::InsufficientTerms => write!(f, "too few terms for a ratio estimate"),
            Error::UnknownFixture { id } => write!(f, "unknown fixture id `{id}`"),
            Error::KindMismatch { id } => write!(f, "fixture `{id}` has a different kind"),
            Error::ParseError { line, msg } => write!(f, "fixture parse error, line {line}: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
