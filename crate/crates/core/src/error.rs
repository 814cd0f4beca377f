use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `exp` or composition was asked to consume a series with a nonzero constant term.
    NonzeroConstantTerm,
    /// `shift_divide(j)` on a series whose first `j` coefficients are not all zero.
    NotDivisible { shift: usize },
    /// Reciprocal of a series with zero constant term.
    NotInvertible,
    /// Requested coefficient index lies above the truncation order.
    TruncationTooSmall { index: usize, order: usize },
    /// Stirling table lookup outside `0 <= l <= n <= max_n`.
    StirlingOutOfRange { n: usize, l: usize, max_n: usize },
    /// Parts of a multinomial coefficient do not add up to `n`.
    MultinomialMismatch { n: usize, sum: usize },
    /// Daehee orders are positive integers.
    ZeroOrder,
    NotPrime(u64),
    /// A literal partial sum would need more terms than the configured budget.
    BudgetExceeded { terms: u128, budget: u128 },
    UnknownIdentity,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonzeroConstantTerm => {
                f.write_str("series has a nonzero constant term; formal exp/composition undefined")
            }
            Error::NotDivisible { shift } => {
                write!(f, "series is not divisible by t^{shift}")
            }
            Error::NotInvertible => f.write_str("series has zero constant term and is not invertible"),
            Error::TruncationTooSmall { index, order } => {
                write!(f, "coefficient {index} requested from a series truncated at order {order}")
            }
            Error::StirlingOutOfRange { n, l, max_n } => {
                write!(f, "Stirling index ({n}, {l}) outside table 0 <= l <= n <= {max_n}")
            }
            Error::MultinomialMismatch { n, sum } => {
                write!(f, "multinomial parts sum to {sum}, expected {n}")
            }
            Error::ZeroOrder => f.write_str("order k must be at least 1"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::BudgetExceeded { terms, budget } => {
                write!(f, "partial sum needs {terms} terms, budget is {budget}")
            }
            Error::UnknownIdentity => f.write_str("unknown identity id"),
        }
    }
}

impl core::error::Error for Error {}
