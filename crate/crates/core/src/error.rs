use thiserror::Error;

/// Errors reported by field construction, the permutation testers and the
/// verification harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} is outside 1..=32")]
    DegreeOutOfRange(u32),

    #[error("modulus {modulus:#x} is not a monic polynomial of degree {degree}")]
    NotMonic { modulus: u64, degree: u32 },

    #[error("modulus {0:#x} is reducible over F_2")]
    Reducible(u64),

    #[error("{0}")]
    Domain(&'static str),

    #[error("{m} does not divide {n}")]
    NotDivisor { m: u64, n: u64 },

    #[error("value {value:#x} is not an element of the field of size 2^{degree}")]
    OutOfField { value: u64, degree: u32 },

    #[error("element {0} lies in the base subfield (c = 0)")]
    Degenerate(String),

    #[error("polynomials are defined over different fields")]
    FieldMismatch,

    #[error("{what}: {actual} exceeds the limit {limit}")]
    ResourceGuard {
        what: &'static str,
        limit: u64,
        actual: u64,
    },

    #[error("parts sum to {sum}, expected {k}")]
    SumMismatch { k: u64, sum: u64 },

    #[error("{0} is not a prime in 2..=64")]
    NotPrime(u64),

    #[error("(s, t) = ({s}, {t}) is outside the regime 3 <= s < t")]
    OutOfRegime { s: u32, t: u32 },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &'static str, actual: u64, limit: u64) -> Result<()> {
    if actual > limit {
        Err(Error::ResourceGuard {
            what,
            limit,
            actual,
        })
    } else {
        Ok(())
    }
}
