use thiserror::Error;

use crate::nonspecial::CriterionReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // finite fields
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field of order {order} exceeds the cap {cap}")]
    FieldTooLarge { order: u64, cap: u64 },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("encoding {enc} is not an element of a field of order {q}")]
    ElementOutOfRange { enc: u64, q: u32 },
    #[error("operands live in different fields")]
    FieldMismatch,

    // curves and divisors
    #[error("branch point {0} listed twice")]
    DuplicateBranch(u32),
    #[error("gcd(m, lambda_1, ..., lambda_r) = {0}, expected 1")]
    GcdViolation(u32),
    #[error("characteristic {p} divides m = {m}")]
    CharDividesM { p: u32, m: u32 },
    #[error("lambda = {lambda} outside [1, {m})")]
    LambdaOutOfRange { lambda: u32, m: u32 },
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("place {0} does not exist on this curve")]
    InvalidPlace(String),
    #[error("root {0} of the x-part is neither a branch point nor completely split")]
    UnsupportedRoot(String),
    #[error("invariant tuple has a negative coefficient; pass allow_negative to use the raw sum")]
    NegativeCoefficient,
    #[error("tuple has {got} branch coefficients, curve has {expected} branches")]
    TupleLength { expected: usize, got: usize },
    #[error("operation needs a concrete field, curve is abstract")]
    AbstractField,
    #[error("m = {m} does not divide q - 1 = {q_minus_1}")]
    RootsOfUnityMissing { m: u32, q_minus_1: u32 },
    #[error("the distinguished place at infinity is not rational")]
    InfinityNotRational,

    // non-special divisors
    #[error("j = {j} outside [1, {m})")]
    JOutOfRange { j: u32, m: u32 },
    #[error("search space of {size} tuples exceeds the cap {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("parameters outside the regime: {0}")]
    RegimeViolation(String),
    #[error("N_{k} = {value} is not positive")]
    NkNotPositive { k: u32, value: i64 },
    #[error("closed form {family} fails the criterion")]
    FormulaMismatch {
        family: String,
        report: Box<CriterionReport>,
    },

    // codes
    #[error("divisor is not of the shape invariant - delta*Q_inf: {0}")]
    UnsupportedShape(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no Bezout pair for the valuation at infinity")]
    BezoutFailure,
    #[error("basis function has a pole at evaluation place {0}")]
    PoleAtEvaluationPlace(String),
    #[error("support of G meets the evaluation divisor")]
    SupportOverlap,
    #[error("deg(G) = {deg} outside ({lo}, {hi})")]
    DegreeOutOfRange { deg: i64, lo: i64, hi: i64 },
    #[error("no integer s in the open interval ({lo_num}/{den}, {hi_num}/{den})")]
    SRangeEmpty { lo_num: i64, hi_num: i64, den: i64 },
    #[error("recipe precondition violated: {0}")]
    RampPreconditionViolated(String),
    #[error("base divisor is not non-special of degree g: {0}")]
    NotNonSpecial(String),
    #[error("code lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("q^k = {0} codewords exceeds the enumeration cap")]
    TooLargeToEnumerate(u128),

    // instances
    #[error("congruence violated: {0}")]
    CongruenceViolated(String),
    #[error("expected {expected} distinct admissible roots, found {found}")]
    RootCountMismatch { expected: usize, found: usize },
    #[error("unknown catalog id {0:?}")]
    UnknownId(String),
}
