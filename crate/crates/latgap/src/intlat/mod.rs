//! Integer matrices and full-rank sublattices of `Z^k`.
//!
//! Lattices are spanned by the *rows* of a basis matrix. Canonical forms are
//! the row-style Hermite normal form ([`hnf`]) and the Smith normal form with
//! accumulated unimodular transforms ([`SnfDecomposition`]); the latter turns
//! the quotient group `Z^k / Λ` into a product of cyclic groups and is what
//! every solver in this crate indexes cosets with.

mod coset;
mod hnf;
mod snf;

pub use coset::CosetLabel;
pub use snf::{solve_integer, SnfDecomposition};

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::{Error, Integer};

/// A dense matrix over the integers. Rows may be empty (a basis of the
/// trivial lattice); columns may not.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Integer>,
}

impl IntMatrix {
    /// The zero matrix of the given shape. `cols` must be positive.
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(cols > 0, "matrices must have at least one column");
        IntMatrix {
            rows,
            cols,
            entries: vec![Integer::zero(); rows * cols],
        }
    }

    /// The `n`-by-`n` identity.
    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Integer::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal, positive length.
    pub fn from_rows(rows: Vec<Vec<Integer>>) -> Result<Self, Error> {
        let cols = match rows.first() {
            Some(r) => r.len(),
            None => return Err(Error::DimensionMismatch { expected: 1, got: 0 }),
        };
        if cols == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(IntMatrix {
            rows: nrows,
            cols,
            entries,
        })
    }

    /// Builds a matrix of machine integers; test and example convenience.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, Error> {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Integer::from(v)).collect())
                .collect(),
        )
    }

    /// An empty (0-row) matrix with the given number of columns.
    pub fn empty(cols: usize) -> Self {
        IntMatrix::zero(0, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[Integer] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Iterator over the rows.
    pub fn row_iter(&self) -> impl Iterator<Item = &[Integer]> {
        self.entries.chunks_exact(self.cols.max(1))
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = &self[(i, t)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * &rhs[(t, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    /// Matrix-vector product `self * x` with `x` a column vector.
    pub fn mul_vec(&self, x: &[Integer]) -> Vec<Integer> {
        assert_eq!(self.cols, x.len(), "inner dimensions must agree");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Vector-matrix product `x * self` with `x` a row vector.
    pub fn vec_mul(&self, x: &[Integer]) -> Vec<Integer> {
        assert_eq!(self.rows, x.len(), "inner dimensions must agree");
        let mut out = vec![Integer::zero(); self.cols];
        for (xi, row) in x.iter().zip(self.row_iter()) {
            if xi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                *o += xi * a;
            }
        }
        out
    }

    /// The transpose. Requires at least one row (a 0-row transpose would
    /// need zero columns, which `IntMatrix` does not represent).
    pub fn transpose(&self) -> IntMatrix {
        assert!(self.rows > 0, "cannot transpose an empty matrix");
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// The submatrix keeping the given columns, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> IntMatrix {
        assert!(!keep.is_empty(), "must keep at least one column");
        let mut out = IntMatrix::zero(self.rows, keep.len());
        for i in 0..self.rows {
            for (jj, &j) in keep.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row[a] += q * row[b]
    fn add_row_multiple(&mut self, a: usize, b: usize, q: &Integer) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = q * &self[(b, j)];
            self[(a, j)] += add;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// col[a] += q * col[b]
    fn add_col_multiple(&mut self, a: usize, b: usize, q: &Integer) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = q * &self[(i, b)];
            self[(i, a)] += add;
        }
    }

}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Integer;
    fn index(&self, (i, j): (usize, usize)) -> &Integer {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Integer {
        &mut self.entries[i * self.cols + j]
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Hermite normal form of `m`, which must have full row rank.
///
/// The result spans the same row lattice, is in row echelon shape with
/// positive pivots, and every entry above a pivot is reduced into
/// `[0, pivot)`. This is a canonical representative: two matrices have equal
/// HNF exactly when their rows generate the same lattice.
pub fn hnf(m: &IntMatrix) -> Result<IntMatrix, Error> {
    let ech = hnf::row_echelon(m);
    if ech.rank < m.rows() {
        return Err(Error::RankDeficient);
    }
    Ok(ech.h)
}

/// A basis of a full-rank sublattice `Λ ⊆ Z^k`: a nonsingular square integer
/// matrix whose rows span `Λ`.
///
/// The Hermite normal form and `|det|` are computed once at construction;
/// membership tests run by back-substitution against the cached HNF.
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    mat: IntMatrix,
    hnf: IntMatrix,
    det_abs: Integer,
}

impl LatticeBasis {
    /// Wraps a basis matrix. Fails with [`Error::SingularBasis`] unless the
    /// matrix is square, of positive dimension, and nonsingular.
    pub fn new(mat: IntMatrix) -> Result<Self, Error> {
        if mat.rows() == 0 || mat.rows() != mat.cols() {
            return Err(Error::SingularBasis);
        }
        let ech = hnf::row_echelon(&mat);
        if ech.rank < mat.rows() {
            return Err(Error::SingularBasis);
        }
        // Full-rank square echelon form is upper triangular with positive
        // diagonal, so |det| is the product of the diagonal.
        let det_abs = (0..mat.rows()).map(|i| ech.h[(i, i)].clone()).product();
        Ok(LatticeBasis {
            mat,
            hnf: ech.h,
            det_abs,
        })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, Error> {
        LatticeBasis::new(IntMatrix::from_i64_rows(rows)?)
    }

    /// The ambient (and lattice) dimension `k`.
    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// The basis matrix as given.
    pub fn matrix(&self) -> &IntMatrix {
        &self.mat
    }

    /// The canonical Hermite normal form basis of the same lattice.
    pub fn hnf_basis(&self) -> &IntMatrix {
        &self.hnf
    }

    /// `|det|` of the basis; equals the number of cosets of `Λ` in `Z^k`.
    pub fn det_abs(&self) -> &Integer {
        &self.det_abs
    }

    /// Does `x` lie in the lattice? Back-substitution against the HNF.
    pub fn is_member(&self, x: &[Integer]) -> Result<bool, Error> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let mut residual = x.to_vec();
        for i in 0..self.dim() {
            let pivot = &self.hnf[(i, i)];
            let (q, r) = residual[i].div_rem(pivot);
            if !r.is_zero() {
                return Ok(false);
            }
            if q.is_zero() {
                continue;
            }
            for (j, rj) in residual.iter_mut().enumerate().skip(i) {
                *rj -= &q * &self.hnf[(i, j)];
            }
        }
        Ok(true)
    }

    /// The Smith normal form of this basis with accumulated transforms.
    pub fn snf(&self) -> SnfDecomposition {
        SnfDecomposition::compute(self)
    }
}

/// A canonical basis (possibly with zero rows) of the *saturated* integer
/// kernel `{x ∈ Z^n : A x = 0}` of a full-row-rank matrix `A`.
///
/// Saturated means every integer kernel vector is an integer combination of
/// the returned rows, not merely a rational one. Rows are returned in Hermite
/// normal form, rank `n - d` for a `d`-by-`n` input.
pub fn kernel_lattice(a: &IntMatrix) -> Result<IntMatrix, Error> {
    let n = a.cols();
    if a.rows() == 0 {
        // No constraints: the kernel is all of Z^n.
        return Ok(IntMatrix::identity(n));
    }
    let snf = snf::smith_rect(a);
    if snf.rank < a.rows() {
        return Err(Error::RankDeficient);
    }
    let kdim = n - snf.rank;
    if kdim == 0 {
        return Ok(IntMatrix::empty(n));
    }
    // With U A V = D, the last n - rank columns of V span the kernel over Z,
    // and the span is saturated because V is unimodular.
    let mut rows = Vec::with_capacity(kdim);
    for t in 0..kdim {
        let col = snf.rank + t;
        rows.push((0..n).map(|j| snf.v[(j, col)].clone()).collect());
    }
    let basis = IntMatrix::from_rows(rows)?;
    let ech = hnf::row_echelon(&basis);
    debug_assert_eq!(ech.rank, kdim);
    debug_assert!(basis
        .row_iter()
        .all(|r| a.mul_vec(r).iter().all(|v| v.is_zero())));
    Ok(ech.h)
}
