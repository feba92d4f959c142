use std::fmt;

/// Errors produced by the algebra, code and testing routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("ring parameters differ: {left} vs {right}")]
    ParameterMismatch { left: String, right: String },
    #[error("the zero polynomial has no leading monomial")]
    ZeroPolynomial,
    #[error("table has length {actual}, expected {expected}")]
    Shape { expected: usize, actual: usize },
    #[error("linear form is identically zero")]
    DegenerateForm,
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("instance needs {required} enumeration steps, budget is {budget}")]
    Infeasible {
        required: EnumerationSize,
        budget: u64,
    },
    #[error("ring of size {q}^{n} exceeds the cap of {cap} points")]
    TooLarge { q: u32, n: usize, cap: u64 },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("structure error: {0}")]
    Structure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Size of an enumeration, written as `base^exponent` so that sizes far
/// beyond `u64` can still be reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationSize {
    pub base: u64,
    pub exponent: u64,
}

impl EnumerationSize {
    pub fn new(base: u64, exponent: u64) -> Self {
        EnumerationSize { base, exponent }
    }

    /// The size as a `u64`, or `None` on overflow.
    pub fn checked(&self) -> Option<u64> {
        let exp = u32::try_from(self.exponent).ok()?;
        self.base.checked_pow(exp)
    }

    pub fn fits(&self, budget: u64) -> bool {
        matches!(self.checked(), Some(v) if v <= budget)
    }
}

impl fmt::Display for EnumerationSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.checked() {
            Some(v) => write!(f, "{}^{} = {}", self.base, self.exponent, v),
            None => write!(f, "{}^{}", self.base, self.exponent),
        }
    }
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}

/// Fails with [`Error::Infeasible`] unless `size` fits within `budget`.
pub fn check_budget(size: EnumerationSize, budget: u64) -> Result<u64> {
    match size.checked() {
        Some(v) if v <= budget => Ok(v),
        _ => Err(Error::Infeasible {
            required: size,
            budget,
        }),
    }
}
