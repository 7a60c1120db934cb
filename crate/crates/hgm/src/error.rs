use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every precondition failure in the crate. Each variant carries a stable,
/// machine-readable reason code (see [`Error::code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed parameter entry `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("rank mismatch: {0} alpha entries vs {1} beta entries")]
    RankMismatch(usize, usize),
    #[error("parameters are not generic (some alpha is congruent to some beta mod Z)")]
    NonGeneric,
    #[error("operation needs rank 2 data, got rank {0}")]
    Rank(usize),
    #[error("{0} is not coprime to {1}")]
    NotCoprime(i64, i64),
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("conductor {0} exceeds the cap of 120")]
    ConductorCap(u64),
    #[error("p = {p} is not congruent to 1 mod {n}")]
    NotSplit { p: u64, n: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {0} exceeds the cap 2^20")]
    FieldCap(u64),
    #[error("character order {order} does not divide q - 1 = {qm1}")]
    CharOrder { order: u64, qm1: u64 },
    #[error("characters live on different fields")]
    FieldMismatch,
    #[error("degenerate specialisation: {0}")]
    Degenerate(String),
    #[error("p = {0} divides the common denominator (wild prime)")]
    WildPrime(u64),
    #[error("bad prime: {0}")]
    BadPrime(String),
    #[error("precision cap exceeded: p^k = {p}^{k} > 1e8")]
    PrecisionCap { p: u64, k: u32 },
    #[error("p = 2 is not supported by the p-adic Gamma function")]
    PrimeTwo,
    #[error("{0} is not a {1}-adic integer")]
    NotIntegral(String, u64),
    #[error("non-integral exponent {0} in the q-adic sum")]
    NonIntegralExponent(String),
    #[error("Jacobi condition violated: sum n_i theta_i = {0} is not integral")]
    JacobiCondition(String),
    #[error("value has a pi-exponent {0} not divisible by p - 1")]
    PiExponent(i64),
    #[error("rational reconstruction failed: {0}")]
    Recognition(String),
    #[error("formula inapplicable: {0}")]
    Inapplicable(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("embedding unavailable: {0}")]
    Embedding(String),
}

impl Error {
    /// Stable reason code used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Malformed(_) => "malformed_fraction",
            Error::ZeroDenominator(_) => "zero_denominator",
            Error::RankMismatch(..) => "rank_mismatch",
            Error::NonGeneric => "non_generic",
            Error::Rank(_) => "rank_unsupported",
            Error::NotCoprime(..) => "not_coprime",
            Error::ConductorMismatch(..) => "conductor_mismatch",
            Error::ConductorCap(_) => "conductor_cap",
            Error::NotSplit { .. } => "not_split",
            Error::NotPrime(_) => "not_prime",
            Error::FieldCap(_) => "field_cap",
            Error::CharOrder { .. } => "character_order",
            Error::FieldMismatch => "field_mismatch",
            Error::Degenerate(_) => "degenerate_xi",
            Error::WildPrime(_) => "wild_prime",
            Error::BadPrime(_) => "bad_prime",
            Error::PrecisionCap { .. } => "precision_cap",
            Error::PrimeTwo => "prime_two",
            Error::NotIntegral(..) => "not_integral",
            Error::NonIntegralExponent(_) => "non_integral_exponent",
            Error::JacobiCondition(_) => "jacobi_condition",
            Error::PiExponent(_) => "pi_exponent",
            Error::Recognition(_) => "recognition_failed",
            Error::Inapplicable(_) => "formula_inapplicable",
            Error::Precondition(_) => "precondition",
            Error::Embedding(_) => "embedding_unavailable",
        }
    }
}
