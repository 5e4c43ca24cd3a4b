use thiserror::Error;

/// Errors raised by the exact, p-adic and numeric kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series division by a series with zero constant term")]
    ZeroConstantTerm,
    #[error("q-number requested at Q = 1; use the limit value instead")]
    QIsOne,
    #[error("modulus {0} is even; only odd moduli are supported")]
    EvenModulus(u64),
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("evaluation point x = 1 is a pole of the generating function")]
    PoleAtOne,
    #[error("q = -1 is a pole")]
    PoleAtMinusOne,
    #[error("q = {q} is a pole: {reason}")]
    PoleQ { q: String, reason: &'static str },
    #[error("series in q^-m does not converge for q = {q} (need q > 1)")]
    ConvergenceDomain { q: String },
    #[error("sample q = {q} is excluded: {reason}")]
    DegenerateSample { q: String, reason: &'static str },
    #[error("normalizer [L]_Q is not a p-adic unit")]
    NonUnitNormalizer,
    #[error("q = {q} is not congruent to 1 mod {p}")]
    BadCongruence { q: String, p: u64 },
    #[error("shift n = {n} has the wrong parity for equation ({eq})")]
    ParityMismatch { eq: u8, n: u64 },
    #[error("character values of order {order} cannot be embedded in Z_{p} (need order | p-1)")]
    CharacterOrderUnsupported { order: u64, p: u64 },
    #[error("{value} is not a {p}-adic integer")]
    NonIntegral { value: String, p: u64 },
    #[error("{0} is not invertible")]
    NotAUnit(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("p^k = {p}^{k} exceeds the supported residue range")]
    PrecisionTooLarge { p: u64, k: u32 },
    #[error("not converged: {0}")]
    NotConverged(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Failures of numerical convergence, as opposed to bad input.
    pub fn is_convergence_failure(&self) -> bool {
        matches!(self, Error::NotConverged(_))
    }
}
