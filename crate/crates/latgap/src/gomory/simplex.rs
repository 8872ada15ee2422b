//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Built for correctness on desk-scale instances, not speed: every tableau
//! entry is a `BigRational`, pivoting is textbook Gaussian elimination, and
//! Bland's smallest-index rule makes cycling impossible. Artificial columns
//! never re-enter the basis once they leave (entering candidates are always
//! original columns), which still certifies infeasibility exactly: if the
//! phase-1 value stays positive, the multipliers `y` of the final basis
//! price every original column nonnegatively while `y·b > 0`, contradicting
//! any feasible point.

use num_traits::{Signed, Zero};

use crate::{Error, Rational};

/// A primal-optimal basic solution of `min c·x : Ax = b, x >= 0`.
pub(crate) struct LpSolution {
    /// Basic variable of each tableau row (unsorted).
    pub basis: Vec<usize>,
    /// The full primal solution, length n.
    pub x: Vec<Rational>,
    /// Optimal objective value.
    pub value: Rational,
    /// Reduced costs of all n columns under the final basis (zero at basic
    /// columns, nonnegative everywhere at optimality).
    pub reduced: Vec<Rational>,
}

/// Solves `min c·x : Ax = b, x >= 0` exactly.
pub(crate) fn simplex_min(
    a: &[Vec<Rational>],
    b: &[Rational],
    c: &[Rational],
) -> Result<LpSolution, Error> {
    let m = a.len();
    let n = c.len();
    assert!(a.iter().all(|row| row.len() == n));
    assert_eq!(b.len(), m);
    if m == 0 {
        // No constraints: minimum is 0 at x = 0 unless some cost is
        // negative, in which case the problem is unbounded.
        if c.iter().any(|cj| cj.is_negative()) {
            return Err(Error::LpUnbounded);
        }
        return Ok(LpSolution {
            basis: Vec::new(),
            x: vec![Rational::zero(); n],
            value: Rational::zero(),
            reduced: c.to_vec(),
        });
    }

    // Tableau: m rows of [original columns | artificial columns | rhs],
    // then the objective row. Rows are sign-flipped so rhs >= 0.
    let cols = n + m + 1;
    let rhs = cols - 1;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = Vec::with_capacity(cols);
        row.extend(
            a[i].iter()
                .map(|v| if flip { -v.clone() } else { v.clone() }),
        );
        for t in 0..m {
            row.push(if t == i { Rational::from_integer(1.into()) } else { Rational::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        tab.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: minimize the sum of artificials. Objective row holds reduced
    // costs; its rhs entry holds minus the current objective value.
    let mut obj = vec![Rational::zero(); cols];
    for j in 0..n {
        obj[j] = -(0..m).map(|i| tab[i][j].clone()).sum::<Rational>();
    }
    obj[rhs] = -(0..m).map(|i| tab[i][rhs].clone()).sum::<Rational>();
    tab.push(obj);

    bland_loop(&mut tab, &mut basis, n).map_err(|e| match e {
        // The phase-1 objective is bounded below by zero, so a ratio test
        // can only fail if an invariant broke.
        Error::LpUnbounded => Error::RankDeficient,
        other => other,
    })?;
    if !tab[m][rhs].is_zero() {
        return Err(Error::LpInfeasible);
    }

    // Drive leftover artificials out of the basis with degenerate pivots;
    // a row with no original column to pivot on is a redundant constraint.
    for i in 0..m {
        if basis[i] < n {
            continue;
        }
        let Some(j) = (0..n).find(|&j| !tab[i][j].is_zero()) else {
            return Err(Error::RankDeficient);
        };
        pivot(&mut tab, &mut basis, i, j);
    }

    // Phase 2: rebuild the objective row for the real costs.
    for j in 0..n {
        tab[m][j] = &c[j]
            - (0..m)
                .map(|i| &c[basis[i]] * &tab[i][j])
                .sum::<Rational>();
    }
    for v in &mut tab[m][n..rhs] {
        *v = Rational::zero(); // artificial columns are dead now
    }
    tab[m][rhs] = -(0..m)
        .map(|i| &c[basis[i]] * &tab[i][rhs])
        .sum::<Rational>();

    bland_loop(&mut tab, &mut basis, n)?;

    let mut x = vec![Rational::zero(); n];
    for i in 0..m {
        debug_assert!(basis[i] < n);
        debug_assert!(!tab[i][rhs].is_negative());
        x[basis[i]] = tab[i][rhs].clone();
    }
    let value = -tab[m][rhs].clone();
    let reduced = tab[m][..n].to_vec();
    debug_assert!(reduced.iter().all(|r| !r.is_negative()));
    Ok(LpSolution {
        basis,
        x,
        value,
        reduced,
    })
}

/// Runs Bland-rule pivots to optimality. Entering candidates are original
/// columns only (`0..n`). `Err(LpUnbounded)` when an entering column has no
/// positive entry.
fn bland_loop(
    tab: &mut [Vec<Rational>],
    basis: &mut [usize],
    n: usize,
) -> Result<(), Error> {
    let m = basis.len();
    let rhs = tab[0].len() - 1;
    loop {
        let Some(entering) = (0..n).find(|&j| tab[m][j].is_negative()) else {
            return Ok(());
        };
        let mut leaving: Option<usize> = None;
        for i in 0..m {
            if !tab[i][entering].is_positive() {
                continue;
            }
            let better = match leaving {
                None => true,
                Some(l) => {
                    let cur = &tab[l][rhs] / &tab[l][entering];
                    let cand = &tab[i][rhs] / &tab[i][entering];
                    // Smallest ratio; ties to the smallest basic index
                    // (Bland's anti-cycling rule).
                    cand < cur || (cand == cur && basis[i] < basis[l])
                }
            };
            if better {
                leaving = Some(i);
            }
        }
        let Some(leave_row) = leaving else {
            return Err(Error::LpUnbounded);
        };
        pivot(tab, basis, leave_row, entering);
    }
}

/// Gauss-Jordan pivot at (`row`, `col`), updating the objective row too.
fn pivot(tab: &mut [Vec<Rational>], basis: &mut [usize], row: usize, col: usize) {
    let p = tab[row][col].clone();
    debug_assert!(!p.is_zero());
    for v in tab[row].iter_mut() {
        *v /= &p;
    }
    for i in 0..tab.len() {
        if i == row || tab[i][col].is_zero() {
            continue;
        }
        let f = tab[i][col].clone();
        for j in 0..tab[i].len() {
            let sub = &f * &tab[row][j];
            tab[i][j] -= sub;
        }
    }
    basis[row] = col;
}
