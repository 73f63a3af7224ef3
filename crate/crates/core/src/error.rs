use thiserror::Error;

/// Errors produced by field construction and the spectrum computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {order} exceeds the size cap {cap}")]
    FieldTooLarge { order: u64, cap: u64 },
    #[error("no primitive polynomial of degree {n} found over F_{p}")]
    ConstructionFailure { p: u32, n: u32 },
    #[error("operation needs about {needed} element operations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("zero has no discrete logarithm")]
    ZeroElement,
    #[error("{e} does not divide the group order {group_order}")]
    BadOrder { e: u64, group_order: u64 },
    #[error("exponent {d} outside [1, {limit}]")]
    BadExponent { d: u64, limit: u64 },
    #[error("{numerator} is not divisible by {denominator}")]
    NonIntegralRatio { numerator: i128, denominator: i128 },
    #[error("operation requires characteristic 2, field has characteristic {0}")]
    OddCharacteristic(u32),
    #[error("family is only defined in characteristic 2, got {0}")]
    WrongCharacteristic(u32),
    #[error("field (p={field_p}, m={field_m}) does not match exponent (p={exp_p}, m={exp_m})")]
    FieldMismatch {
        field_p: u32,
        field_m: u32,
        exp_p: u32,
        exp_m: u32,
    },
    #[error("index ({i}, {j}) outside [0, {max}]")]
    IndexRange { i: u64, j: u64, max: u64 },
    #[error("lcm({n1}, {n2}) divides no p^l + 1 with l | m")]
    HypothesisViolated { n1: u64, n2: u64 },
    #[error("element representation {0} is outside the field")]
    BadElement(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
