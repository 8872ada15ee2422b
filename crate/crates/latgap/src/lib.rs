//! Exact computation of lattice programming gaps and their applications.
//!
//! Everything here is integer or rational arithmetic: no floating point enters
//! a computation that decides a value (floats appear only as directed-rounded
//! *renderings* of certified rational endpoints, see [`bounds`]).
//!
//! The central object is a full-rank sublattice `Λ ⊆ Z^k` together with a
//! positive cost vector `l`. For every residue `r ∈ Z^k/Λ` the group problem
//! asks for the cheapest nonnegative integer vector in the coset `r + Λ`, and
//! the *gap* is the worst case over all residues. [`groupsolve`] computes all
//! of these exactly as single-source shortest paths on the quotient group,
//! [`frobenius`] derives Frobenius numbers from a two-line reduction to the
//! gap, [`bounds`] evaluates certified lower/upper estimates for the gap, and
//! [`gomory`] builds group relaxations of integer programs whose optimal
//! values are exact lower bounds for the IP.

pub mod bounds;
mod error;
pub mod frobenius;
pub mod gomory;
pub mod groupsolve;
pub mod intlat;
mod limits;

pub use error::Error;
pub use limits::ResourceLimits;

/// Arbitrary-precision signed integer used throughout the crate.
pub type Integer = num_bigint::BigInt;

/// Arbitrary-precision unsigned integer (solver spill path, root extraction).
pub type Natural = num_bigint::BigUint;

/// Arbitrary-precision rational; all exact non-integer values use this type.
pub type Rational = num_rational::BigRational;

/// Convenience: an `Integer` from anything `num_bigint::BigInt` converts from.
pub fn int<T: Into<Integer>>(value: T) -> Integer {
    value.into()
}

/// Convenience: the rational `p/q`. Panics if `q == 0`.
pub fn ratio<T: Into<Integer>, U: Into<Integer>>(p: T, q: U) -> Rational {
    Rational::new(p.into(), q.into())
}
