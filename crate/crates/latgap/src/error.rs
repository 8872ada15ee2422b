use std::fmt;

use crate::Integer;

/// Everything that can go wrong across the crate.
///
/// Variants split into two families: *invalid input* (the instance itself is
/// malformed or outside the supported domain) and *resource limits* (the
/// instance is fine but would exceed a configured budget). The CLI maps the
/// families to different exit codes; [`Error::is_resource_limit`] tells them
/// apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A matrix that must have full row rank does not.
    RankDeficient,
    /// A lattice basis matrix is singular (or not square).
    SingularBasis,
    /// Two objects that must agree in dimension do not.
    DimensionMismatch { expected: usize, got: usize },
    /// Frobenius input must be positive integers with overall gcd 1.
    NotPrimitive,
    /// Cost vectors must be strictly positive in every coordinate.
    NonPositiveCost,
    /// The quotient group has more cosets than the configured budget.
    CosetLimitExceeded { cosets: Integer, limit: u64 },
    /// The sharp lower-bound constant is only known in dimensions 1 and 2.
    UnknownRhoK { k: usize },
    /// The requested bound needs dimension at least 2.
    DimensionTooSmall { k: usize },
    /// A grid check would enumerate more points than the configured budget.
    ResolutionTooFine,
    /// The linear relaxation has no feasible point.
    LpInfeasible,
    /// The linear relaxation is unbounded below.
    LpUnbounded,
    /// The recession cone contains a nonzero nonnegative vector.
    NotPointed,
    /// A reduced cost of the optimal LP basis is zero, so the group
    /// relaxation's cost vector would not be strictly positive.
    NonGenericReducedCosts,
    /// `A x = b` has no integer solution, so the group relaxation is empty.
    NoIntegerSolution,
}

impl Error {
    /// True for errors meaning "well-formed instance, but over budget".
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::CosetLimitExceeded { .. } | Error::ResolutionTooFine
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RankDeficient => write!(f, "matrix does not have full row rank"),
            Error::SingularBasis => write!(f, "basis matrix is singular"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotPrimitive => {
                write!(f, "input must be positive integers with gcd 1")
            }
            Error::NonPositiveCost => write!(f, "cost vector must be strictly positive"),
            Error::CosetLimitExceeded { cosets, limit } => {
                write!(f, "group has {cosets} cosets, exceeding the limit {limit}")
            }
            Error::UnknownRhoK { k } => {
                write!(f, "sharp lower-bound constant unknown in dimension {k}")
            }
            Error::DimensionTooSmall { k } => {
                write!(f, "dimension {k} is too small for this operation")
            }
            Error::ResolutionTooFine => {
                write!(f, "grid check exceeds the configured work budget")
            }
            Error::LpInfeasible => write!(f, "linear relaxation is infeasible"),
            Error::LpUnbounded => write!(f, "linear relaxation is unbounded"),
            Error::NotPointed => {
                write!(f, "recession cone is not pointed (Ax = 0 has a nonzero x >= 0)")
            }
            Error::NonGenericReducedCosts => {
                write!(f, "optimal basis has a zero reduced cost; instance is not generic")
            }
            Error::NoIntegerSolution => {
                write!(f, "Ax = b has no integer solution")
            }
        }
    }
}

impl std::error::Error for Error {}
