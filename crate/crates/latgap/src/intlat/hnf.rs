//! Row-style Hermite normal form by integer row reduction.

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Result of a full row reduction: `h` is the echelon form (zero rows last),
/// `rank` the number of nonzero rows.
pub(crate) struct RowEchelon {
    pub h: IntMatrix,
    pub rank: usize,
}

/// Reduces `m` to Hermite normal form with row operations only.
///
/// Pivots are positive, entries above each pivot are reduced into
/// `[0, pivot)`, and zero rows sink to the bottom. Works for any shape and
/// rank; the result is the canonical basis of the row lattice.
pub(crate) fn row_echelon(m: &IntMatrix) -> RowEchelon {
    let mut h = m.clone();
    let (rows, cols) = (h.rows(), h.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclidean elimination below row r in column c: repeatedly move the
        // smallest nonzero entry up to row r and reduce the others modulo it.
        // The minimum absolute value strictly decreases, so this terminates
        // with at most one nonzero entry, sitting in row r.
        loop {
            let mut pivot_row: Option<usize> = None;
            for i in r..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                match pivot_row {
                    Some(p) if h[(p, c)].abs() <= h[(i, c)].abs() => {}
                    _ => pivot_row = Some(i),
                }
            }
            let Some(p) = pivot_row else { break };
            h.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &-q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        // Normalize entries above the pivot into [0, pivot).
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    debug_assert!((r..rows).all(|i| (0..cols).all(|j| h[(i, j)].is_zero())));
    RowEchelon { h, rank: r }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Integer;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    /// First nonzero column of each of the leading `rank` rows.
    fn pivots(e: &RowEchelon) -> Vec<usize> {
        (0..e.rank)
            .map(|r| (0..e.h.cols()).find(|&j| !e.h[(r, j)].is_zero()).unwrap())
            .collect()
    }

    #[test]
    fn echelon_shape_and_pivots() {
        let e = row_echelon(&m(&[&[0, 0, 5], &[2, 4, 1], &[3, 4, 6]]));
        assert_eq!(e.rank, 3);
        let pc = pivots(&e);
        assert_eq!(pc, vec![0, 1, 2]);
        for (r, &c) in pc.iter().enumerate() {
            assert!(e.h[(r, c)].is_positive());
            for i in 0..r {
                assert!(e.h[(i, c)] >= Integer::from(0));
                assert!(e.h[(i, c)] < e.h[(r, c)]);
            }
            for i in r + 1..3 {
                for j in 0..=c {
                    assert!(e.h[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn rank_deficient_input_has_zero_rows_last() {
        let e = row_echelon(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]));
        assert_eq!(e.rank, 2);
        assert!((0..3).all(|j| e.h[(2, j)].is_zero()));
    }

    proptest! {
        #[test]
        fn echelon_preserves_row_lattice_membership(
            entries in proptest::collection::vec(-8i64..=8, 9),
            coeffs in proptest::collection::vec(-3i64..=3, 3),
        ) {
            let rows: Vec<Vec<Integer>> = entries
                .chunks(3)
                .map(|ch| ch.iter().map(|&v| Integer::from(v)).collect())
                .collect();
            let a = IntMatrix::from_rows(rows).unwrap();
            let e = row_echelon(&a);
            // Any integer combination of original rows must reduce to zero
            // against the echelon basis.
            let x: Vec<Integer> = (0..3)
                .map(|j| {
                    (0..3)
                        .map(|i| Integer::from(coeffs[i]) * &a[(i, j)])
                        .sum()
                })
                .collect();
            prop_assert!(reduces_to_zero(&e, &x));
        }

        #[test]
        fn echelon_is_idempotent(entries in proptest::collection::vec(-9i64..=9, 9)) {
            let rows: Vec<Vec<Integer>> = entries
                .chunks(3)
                .map(|ch| ch.iter().map(|&v| Integer::from(v)).collect())
                .collect();
            let a = IntMatrix::from_rows(rows).unwrap();
            let once = row_echelon(&a).h;
            let twice = row_echelon(&once).h;
            prop_assert_eq!(once, twice);
        }
    }

    fn reduces_to_zero(e: &RowEchelon, x: &[Integer]) -> bool {
        let mut residual = x.to_vec();
        for (r, &c) in pivots(e).iter().enumerate() {
            let (q, rem) = residual[c].div_rem(&e.h[(r, c)]);
            if !rem.is_zero() {
                return false;
            }
            for (j, rj) in residual.iter_mut().enumerate() {
                *rj -= &q * &e.h[(r, j)];
            }
        }
        residual.iter().all(|v| v.is_zero())
    }
}
