//! Error type shared by all modules of the crate.

use core::fmt;

/// Everything that can go wrong in this crate.
///
/// Variants are split by who is at fault: `Domain`, `NonFundamental`,
/// `UnsupportedWeight`, `TableUnderflow`, `Window` and `CacheExponent` flag a
/// caller handing in arguments outside a documented precondition; `Internal`
/// flags a broken invariant of the computation itself and is never the
/// caller's fault.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A Bernoulli value beyond the precomputed range was requested.
    TableUnderflow { needed: u32, max: u32 },
    /// The integer is not a fundamental discriminant of a real quadratic field.
    NonFundamental(u64),
    /// The requested Eisenstein weight has no precomputed series.
    UnsupportedWeight(u32),
    /// A coefficient table beyond the pipeline's truncation window was requested.
    Window { needed_r: u32, r_max: u32 },
    /// A divisor-sum cache built for one exponent was offered for another.
    CacheExponent { cache: u32, requested: u32 },
    /// An argument violates a documented precondition.
    Domain(&'static str),
    /// An internal invariant failed; indicates a bug, not caller misuse.
    Internal(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TableUnderflow { needed, max } => {
                write!(f, "Bernoulli index {needed} exceeds table bound {max}")
            }
            Error::NonFundamental(d) => {
                write!(f, "{d} is not a fundamental discriminant (> 1)")
            }
            Error::UnsupportedWeight(k) => {
                write!(f, "no Eisenstein series of weight {k} is available")
            }
            Error::Window { needed_r, r_max } => {
                write!(
                    f,
                    "truncation window too small: power {needed_r} requested, window covers {r_max}"
                )
            }
            Error::CacheExponent { cache, requested } => {
                write!(
                    f,
                    "divisor-sum cache holds exponent {cache}, exponent {requested} requested"
                )
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
