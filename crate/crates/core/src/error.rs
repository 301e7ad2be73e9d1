use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// q must be a prime power p^k with p not in {2,3}, k <= 2 and q <= 49.
    #[error("unsupported field size q = {0}: need q = p^k, gcd(q, 6) = 1, k <= 2, q <= 49")]
    InvalidFieldSize(u32),
    #[error("zero input where a nonzero element is required")]
    ZeroInput,
    #[error("input polynomial must be monic")]
    NonMonic,
    #[error("operation requires s >= 2 (zeta_R has a pole at s = 1)")]
    ZetaPole,
    #[error("form has zero discriminant")]
    SingularForm,
    #[error("form is reducible over K")]
    ReducibleForm,
    #[error("matrix determinant is not invertible in the coefficient domain")]
    BadDeterminant,
    #[error("group action result leaves the coefficient domain")]
    NonIntegralAction,
    #[error("Laurent precision exhausted (need more than {0} known digits)")]
    PrecisionExhausted(i32),
    #[error("Hensel lifting requires a simple root modulo pi")]
    DoubleRoot,
    #[error("local integration did not resolve within depth cap {0}")]
    IntegrationDepth(u32),
    #[error("enumeration budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("splitting data up to degree {needed} required, only {available} available")]
    InsufficientSplittingData { needed: u32, available: u32 },
    #[error("L-polynomial coefficient e_{0} is not an integer; splitting data is inconsistent")]
    NonIntegralCoefficient(usize),
    #[error("family is empty")]
    EmptyFamily,
    #[error("condition primes must be distinct irreducible polynomials")]
    InvalidConditions,
    #[error("odd shift {0} is not admitted by the secondary-term algebra")]
    OddShift(i64),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
