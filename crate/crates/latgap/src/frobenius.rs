//! Frobenius numbers by reduction to a lattice gap.
//!
//! For positive coprime `a_1, ..., a_{k+1}`, the largest integer that is not
//! a nonnegative integer combination of the `a_i` equals
//! `gap(Λ, l) - modulus`, where the modulus is one chosen entry, `l` is the
//! vector of the remaining entries, and `Λ = {x ∈ Z^k : l·x ≡ 0 (mod
//! modulus)}`. The reduction is symmetric in the entries, so
//! [`frobenius_number`] moves the *smallest* entry into the modulus slot —
//! the quotient group then has as few cosets as possible — while
//! [`frobenius_reduction`] keeps the caller's order (modulus = last entry)
//! and exposes the full certificate.
//!
//! [`oracle_frobenius`] is an independent dynamic-programming check that
//! never touches lattices.

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::groupsolve::{CostVector, GapCertificate, GroupInstance};
use crate::intlat::{kernel_lattice, IntMatrix, LatticeBasis};
use crate::{Error, Integer, Rational, ResourceLimits};

/// `k + 1 >= 2` positive integers with gcd 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusInput {
    entries: Vec<Integer>,
}

impl FrobeniusInput {
    pub fn new(entries: Vec<Integer>) -> Result<Self, Error> {
        if entries.len() < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: entries.len(),
            });
        }
        if entries.iter().any(|a| !a.is_positive()) {
            return Err(Error::NotPrimitive);
        }
        let gcd = entries
            .iter()
            .fold(Integer::zero(), |acc, a| acc.gcd(a));
        if !gcd.is_one() {
            return Err(Error::NotPrimitive);
        }
        Ok(FrobeniusInput { entries })
    }

    pub fn from_i64s(entries: &[i64]) -> Result<Self, Error> {
        FrobeniusInput::new(entries.iter().map(|&v| Integer::from(v)).collect())
    }

    pub fn entries(&self) -> &[Integer] {
        &self.entries
    }

    /// `k`: one less than the number of entries.
    pub fn dim(&self) -> usize {
        self.entries.len() - 1
    }
}

/// The lattice `{x ∈ Z^k : a_1 x_1 + ... + a_k x_k ≡ 0 (mod a_{k+1})}` of an
/// input with `k + 1` entries; its determinant is the modulus `a_{k+1}`.
///
/// Built as the injective projection of the integer kernel of the row
/// `(a_1, ..., a_k, a_{k+1})` onto the first `k` coordinates.
pub fn lambda_a(a: &FrobeniusInput) -> LatticeBasis {
    let k = a.dim();
    let row: Vec<Integer> = a.entries.to_vec();
    let kernel = kernel_lattice(&IntMatrix::from_rows(vec![row]).expect("nonempty"))
        .expect("a nonzero row has full row rank");
    debug_assert_eq!(kernel.rows(), k);
    let rows: Vec<Vec<Integer>> = kernel
        .row_iter()
        .map(|r| r[..k].to_vec())
        .collect();
    let basis = LatticeBasis::new(IntMatrix::from_rows(rows).expect("k >= 1"))
        .expect("projection of the kernel has full rank");
    debug_assert_eq!(basis.det_abs(), &a.entries[k]);
    basis
}

/// The gap reduction in the caller's entry order: modulus = last entry.
#[derive(Clone, Debug)]
pub struct FrobeniusReduction {
    /// The Frobenius number `gap - modulus`.
    pub frobenius: Integer,
    /// `gap(Λ, l)` of the reduction; an integer-valued rational.
    pub gap: Rational,
    /// The entry used as modulus; equals `det Λ`.
    pub modulus: Integer,
    /// Gap certificate of the underlying group instance.
    pub certificate: GapCertificate,
}

/// Computes the reduction with the last entry as modulus and returns the
/// full certificate. Cost grows with the modulus; see [`frobenius_number`]
/// for the order-insensitive fast path.
pub fn frobenius_reduction(
    a: &FrobeniusInput,
    limits: &ResourceLimits,
) -> Result<FrobeniusReduction, Error> {
    let k = a.dim();
    let basis = lambda_a(a);
    let cost = CostVector::new(
        a.entries[..k]
            .iter()
            .map(|v| Rational::from_integer(v.clone()))
            .collect(),
    )?;
    let inst = GroupInstance::new(basis, cost)?;
    let certificate = inst.gap(limits)?;
    debug_assert!(certificate.gap.is_integer());
    let gap_int = certificate.gap.to_integer();
    Ok(FrobeniusReduction {
        frobenius: gap_int - &a.entries[k],
        gap: certificate.gap.clone(),
        modulus: a.entries[k].clone(),
        certificate,
    })
}

/// The Frobenius number of the input.
///
/// Internally permutes the smallest entry into the modulus slot (the value
/// is symmetric in the entries, and the solver's state is proportional to
/// the modulus), so entry order never affects cost or result.
pub fn frobenius_number(a: &FrobeniusInput, limits: &ResourceLimits) -> Result<Integer, Error> {
    let mut min_pos = 0;
    for (i, v) in a.entries.iter().enumerate().skip(1) {
        if v < &a.entries[min_pos] {
            min_pos = i;
        }
    }
    let mut reordered: Vec<Integer> = Vec::with_capacity(a.entries.len());
    for (i, v) in a.entries.iter().enumerate() {
        if i != min_pos {
            reordered.push(v.clone());
        }
    }
    reordered.push(a.entries[min_pos].clone());
    let permuted = FrobeniusInput::new(reordered).expect("permutation preserves validity");
    Ok(frobenius_reduction(&permuted, limits)?.frobenius)
}

/// Independent dynamic-programming oracle: marks every representable value
/// in increasing order and stops once `min(a)` consecutive values are
/// representable (everything beyond is then reachable by adding `min(a)`).
///
/// Never exceeds `min(a) * max(a)` table entries; errs with a resource-limit
/// error if that bound is over budget.
pub fn oracle_frobenius(a: &FrobeniusInput, limits: &ResourceLimits) -> Result<Integer, Error> {
    let entries: Option<Vec<u64>> = a.entries.iter().map(|v| v.to_u64()).collect();
    let (Some(entries), Some(bound)) = (
        entries,
        a.entries
            .iter()
            .min()
            .zip(a.entries.iter().max())
            .and_then(|(lo, hi)| (lo * hi).to_u64()),
    ) else {
        return Err(Error::CosetLimitExceeded {
            cosets: a.entries.iter().min().unwrap() * a.entries.iter().max().unwrap(),
            limit: limits.max_oracle_points,
        });
    };
    if bound > limits.max_oracle_points {
        return Err(Error::CosetLimitExceeded {
            cosets: Integer::from(bound),
            limit: limits.max_oracle_points,
        });
    }
    let amin = *entries.iter().min().expect("nonempty") as usize;
    let mut representable = vec![false; (bound + 1) as usize];
    representable[0] = true;
    let mut last_gap: i64 = -1;
    let mut run = 1usize; // value 0 is representable
    for t in 1..representable.len() {
        let hit = entries
            .iter()
            .any(|&ai| (ai as usize) <= t && representable[t - ai as usize]);
        representable[t] = hit;
        if hit {
            run += 1;
            if run >= amin {
                return Ok(Integer::from(last_gap));
            }
        } else {
            run = 0;
            last_gap = t as i64;
        }
    }
    // The scan bound exceeds the largest non-representable value, so the
    // run must have closed out above.
    unreachable!("representability run must terminate within min*max")
}
