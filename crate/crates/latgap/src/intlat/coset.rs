//! Labeling cosets of `Z^k / Λ` through the Smith normal form.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::SnfDecomposition;
use crate::{Error, Integer};

/// A canonical name for a coset of `Z^k / Λ`: mixed-radix digits
/// `0 <= digits[i] < d_i` against the invariant factors, together with the
/// little-endian linear index `sum_i digits[i] * d_1 * ... * d_{i-1}`.
///
/// Labels from the same [`SnfDecomposition`] compare equal exactly when the
/// underlying vectors are congruent modulo the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetLabel {
    digits: Vec<Integer>,
    index: Integer,
}

impl CosetLabel {
    /// The mixed-radix digit vector, one digit per invariant factor.
    pub fn digits(&self) -> &[Integer] {
        &self.digits
    }

    /// The linear index in `[0, group order)`.
    pub fn index(&self) -> &Integer {
        &self.index
    }
}

impl SnfDecomposition {
    /// Labels the coset of `x`.
    ///
    /// With rows-as-basis and `U B V = D`, a vector `x` lies in the lattice
    /// exactly when `x V ≡ 0` componentwise modulo the invariant factors
    /// (since `Λ V = Z^k D`), so the digit vector of `x V mod d` is a
    /// complete coset invariant.
    pub fn label(&self, x: &[Integer]) -> Result<CosetLabel, Error> {
        let k = self.dim();
        if x.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: x.len(),
            });
        }
        let image = self.right_transform().vec_mul(x);
        let digits: Vec<Integer> = image
            .iter()
            .zip(self.invariant_factors())
            .map(|(c, d)| c.mod_floor(d))
            .collect();
        let index = self.index_of_digits(&digits);
        Ok(CosetLabel { digits, index })
    }

    /// A representative vector of the labeled coset: `digits * V^{-1}`.
    ///
    /// `label(lift(c)) == c` for every valid label; the representative is not
    /// necessarily nonnegative.
    pub fn lift(&self, label: &CosetLabel) -> Vec<Integer> {
        self.right_transform_inv().vec_mul(label.digits())
    }

    /// Rebuilds a label from its linear index in `[0, group order)`.
    pub fn label_from_index(&self, index: &Integer) -> CosetLabel {
        assert!(
            !index.is_negative() && index < self.group_order(),
            "coset index out of range"
        );
        let mut rest = index.clone();
        let digits: Vec<Integer> = self
            .invariant_factors()
            .iter()
            .map(|d| {
                let (q, r) = rest.div_rem(d);
                rest = q;
                r
            })
            .collect();
        CosetLabel {
            digits,
            index: index.clone(),
        }
    }

    fn index_of_digits(&self, digits: &[Integer]) -> Integer {
        let mut index = Integer::zero();
        let mut stride = Integer::one();
        for (digit, d) in digits.iter().zip(self.invariant_factors()) {
            index += digit * &stride;
            stride *= d;
        }
        index
    }
}
