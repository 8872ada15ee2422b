//! Group relaxations of pure integer programs.
//!
//! For `min c·x : A x = b, x ∈ Z^n, x ≥ 0` with an optimal LP basis `τ`, the
//! group relaxation drops nonnegativity of the basic variables. What remains
//! is a lattice program over the nonbasic variables: minimize the reduced
//! costs subject to `x ≡ u_τ̄ (mod Λ(A))`, `x ≥ 0`, where `Λ(A)` is the
//! integer kernel of `A` with the basic coordinates forgotten and `u` is any
//! integer solution of `A u = b`. Its value plus `c_τ·A_τ⁻¹·b` is an exact
//! lower bound for the integer program, tight whenever the group minimizer
//! lifts back with nonnegative basic variables.
//!
//! The pipeline is exact end to end: rational simplex for the basis, Smith
//! form for `u`, kernel projection for the lattice, and the quotient-graph
//! solver for the group problem. A small brute-force scanner serves as the
//! independent check.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::groupsolve::{CostVector, GapCertificate, GroupInstance};
use crate::intlat::{kernel_lattice, solve_integer, CosetLabel, IntMatrix, LatticeBasis};
use crate::{Error, Integer, Rational, ResourceLimits};

mod simplex;

use simplex::simplex_min;

/// An integer program `min c·x : A x = b, x ∈ Z^n_{≥0}` in standard form.
///
/// Construction verifies that `A` has full row rank and that its kernel
/// meets the nonnegative orthant only at the origin (which also makes the
/// cone generated by the columns pointed, and rules out an unbounded LP).
#[derive(Clone, Debug)]
pub struct IpInstance {
    a: IntMatrix,
    b: Vec<Integer>,
    c: Vec<Rational>,
    kernel: IntMatrix,
}

impl IpInstance {
    pub fn new(a: IntMatrix, b: Vec<Integer>, c: Vec<Rational>) -> Result<Self, Error> {
        if b.len() != a.rows() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                got: b.len(),
            });
        }
        if c.len() != a.cols() {
            return Err(Error::DimensionMismatch {
                expected: a.cols(),
                got: c.len(),
            });
        }
        // Errors with RankDeficient unless rank(A) = d; the saturated kernel
        // is kept for the lattice projection later.
        let kernel = kernel_lattice(&a)?;
        if !check_pointed(&a)? {
            return Err(Error::NotPointed);
        }
        Ok(IpInstance { a, b, c, kernel })
    }

    pub fn constraints(&self) -> &IntMatrix {
        &self.a
    }

    pub fn rhs(&self) -> &[Integer] {
        &self.b
    }

    pub fn cost(&self) -> &[Rational] {
        &self.c
    }

    /// Solves the linear relaxation `min c·x : A x = b, x ≥ 0` exactly.
    pub fn lp_solve(&self) -> Result<LpBasisResult, Error> {
        let n = self.a.cols();
        let a_rat: Vec<Vec<Rational>> = self
            .a
            .row_iter()
            .map(|row| row.iter().map(|v| Rational::from_integer(v.clone())).collect())
            .collect();
        let b_rat: Vec<Rational> = self
            .b
            .iter()
            .map(|v| Rational::from_integer(v.clone()))
            .collect();
        let sol = simplex_min(&a_rat, &b_rat, &self.c)?;
        let mut basic = sol.basis.clone();
        basic.sort_unstable();
        let nonbasic: Vec<usize> = (0..n).filter(|j| basic.binary_search(j).is_err()).collect();
        let reduced: Vec<Rational> = nonbasic.iter().map(|&j| sol.reduced[j].clone()).collect();
        let unique = reduced.iter().all(|r| r.is_positive());
        Ok(LpBasisResult {
            basic,
            nonbasic,
            value: sol.value,
            x: sol.x,
            reduced,
            unique,
        })
    }

    /// Builds the group relaxation at the optimal LP basis: lattice
    /// `Λ(A) = π_τ̄(ker A)`, cost = nonbasic reduced costs, residue `u_τ̄`.
    pub fn build_relaxation(&self) -> Result<GroupRelaxation, Error> {
        let (lp, u) = self.prepare()?;
        let proj = self.kernel.select_columns(&lp.nonbasic);
        let basis = LatticeBasis::new(proj)?;
        self.assemble(lp, u, basis)
    }

    /// Builds the coarser relaxation generated by a single tableau row: with
    /// `D = |det A_τ|` and `â = A_τ⁻¹·A_τ̄`, the congruence
    /// `Σ_j (D·â_{row,j})·x_j ≡ D·b̂_row (mod D)` replaces membership in
    /// `Λ(A)`. Rows are indexed by the sorted basic variables.
    pub fn single_row_relaxation(&self, row: usize) -> Result<GroupRelaxation, Error> {
        let d = self.a.rows();
        if row >= d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: row,
            });
        }
        let (lp, u) = self.prepare()?;
        let a_basic = self.a.select_columns(&lp.basic);
        let det = LatticeBasis::new(a_basic.clone())?.det_abs().clone();
        // Row `row` of A_τ⁻¹, via the transposed system A_τᵀ·z = e_row.
        let mut unit = vec![Rational::zero(); d];
        unit[row] = Rational::one();
        let z = solve_square_rational(&a_basic.transpose(), &unit)?;
        let det_rat = Rational::from_integer(det.clone());
        let k = lp.nonbasic.len();
        let mut congruence: Vec<Integer> = Vec::with_capacity(k + 1);
        for &j in &lp.nonbasic {
            let mut entry = Rational::zero();
            for (i, zi) in z.iter().enumerate() {
                entry += zi * Rational::from_integer(self.a[(i, j)].clone());
            }
            let scaled = entry * &det_rat;
            debug_assert!(scaled.is_integer());
            congruence.push(scaled.to_integer());
        }
        congruence.push(det);
        // Solutions of the congruence = integer kernel of the single row
        // [D·â | D], with the auxiliary multiplier coordinate forgotten.
        let kern = kernel_lattice(&IntMatrix::from_rows(vec![congruence])?)?;
        let keep: Vec<usize> = (0..k).collect();
        let basis = LatticeBasis::new(kern.select_columns(&keep))?;
        self.assemble(lp, u, basis)
    }

    /// Exhaustive minimum of `c·x` over `{x ∈ [0, box]^n ∩ Z^n : Ax = b}`,
    /// by depth-first scan with row-wise sign pruning. Independent of the
    /// simplex and lattice machinery.
    pub fn ip_bruteforce(
        &self,
        box_limit: u64,
        limits: &ResourceLimits,
    ) -> Result<IpOptimum, Error> {
        let n = self.a.cols();
        let d = self.a.rows();
        // Per-suffix sign summary of each row: can columns >= j still move a
        // residual up (positive entry) or down (negative entry)?
        let mut has_pos = vec![vec![false; d]; n + 1];
        let mut has_neg = vec![vec![false; d]; n + 1];
        for j in (0..n).rev() {
            for i in 0..d {
                has_pos[j][i] = has_pos[j + 1][i] || self.a[(i, j)].is_positive();
                has_neg[j][i] = has_neg[j + 1][i] || self.a[(i, j)].is_negative();
            }
        }
        // Cheapest conceivable completion from column j on: negative costs
        // at full box, zero otherwise.
        let box_int = Integer::from(box_limit);
        let mut cheapest = vec![Rational::zero(); n + 1];
        for j in (0..n).rev() {
            cheapest[j] = &cheapest[j + 1]
                + if self.c[j].is_negative() {
                    &self.c[j] * Rational::from_integer(box_int.clone())
                } else {
                    Rational::zero()
                };
        }
        let mut scan = Scan {
            a: &self.a,
            c: &self.c,
            box_int,
            has_pos,
            has_neg,
            cheapest,
            max_nodes: limits.max_oracle_points,
            visited: 0,
            x: vec![Integer::zero(); n],
            residual: self.b.clone(),
            cost: Rational::zero(),
            best: None,
        };
        scan.dfs(0)?;
        Ok(match scan.best {
            Some((value, minimizer)) => IpOptimum::Optimal { value, minimizer },
            None => IpOptimum::Infeasible,
        })
    }

    /// Shared front half of the relaxation builders: optimal basis,
    /// genericity, and an integer solution of `A u = b`.
    fn prepare(&self) -> Result<(LpBasisResult, Vec<Integer>), Error> {
        let lp = self.lp_solve()?;
        if lp.nonbasic.is_empty() {
            // Square A: every variable is basic and there is nothing to
            // relax.
            return Err(Error::DimensionTooSmall { k: 0 });
        }
        if !lp.unique {
            return Err(Error::NonGenericReducedCosts);
        }
        let u = solve_integer(&self.a, &self.b)?.ok_or(Error::NoIntegerSolution)?;
        Ok((lp, u))
    }

    fn assemble(
        &self,
        lp: LpBasisResult,
        u: Vec<Integer>,
        basis: LatticeBasis,
    ) -> Result<GroupRelaxation, Error> {
        let cost = CostVector::new(lp.reduced.clone())?;
        let instance = GroupInstance::new(basis, cost)?;
        let residue: Vec<Integer> = lp.nonbasic.iter().map(|&j| u[j].clone()).collect();
        let a_basic = self.a.select_columns(&lp.basic);
        let a_nonbasic = self.a.select_columns(&lp.nonbasic);
        let c_basic: Vec<Rational> = lp.basic.iter().map(|&j| self.c[j].clone()).collect();
        let constant = basic_value(&a_basic, &c_basic, &self.b)?;
        // At the optimum the nonbasic variables are zero, so the constant
        // term c_τ·A_τ⁻¹·b is exactly the LP value.
        debug_assert_eq!(constant, lp.value);
        Ok(GroupRelaxation {
            instance,
            lp,
            residue,
            constant,
            a_basic,
            a_nonbasic,
            c_basic,
        })
    }
}

/// True iff `{x ≥ 0 : A x = 0} = {0}`, decided by one auxiliary linear
/// program: maximize `Σ x_i` subject to `A x = 0`, `0 ≤ x ≤ 1`. The optimum
/// is zero exactly when the kernel meets the orthant only at the origin,
/// and that in turn forces the cone of the columns of `A` to be pointed
/// (a line `±v` in the cone would yield a nonzero nonnegative kernel
/// vector by adding preimages).
pub fn check_pointed(a: &IntMatrix) -> Result<bool, Error> {
    let d = a.rows();
    let n = a.cols();
    // Equality form with slacks: A x = 0 and x + s = 1 over (x, s) ≥ 0.
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(d + n);
    let mut rhs: Vec<Rational> = Vec::with_capacity(d + n);
    for i in 0..d {
        let mut row = vec![Rational::zero(); 2 * n];
        for j in 0..n {
            row[j] = Rational::from_integer(a[(i, j)].clone());
        }
        rows.push(row);
        rhs.push(Rational::zero());
    }
    for j in 0..n {
        let mut row = vec![Rational::zero(); 2 * n];
        row[j] = Rational::one();
        row[n + j] = Rational::one();
        rows.push(row);
        rhs.push(Rational::one());
    }
    let mut cost = vec![-Rational::one(); n];
    cost.resize(2 * n, Rational::zero());
    let sol = simplex_min(&rows, &rhs, &cost)?;
    Ok(sol.value.is_zero())
}

/// The optimal basis of the linear relaxation, reported exactly.
#[derive(Clone, Debug)]
pub struct LpBasisResult {
    /// Basic variable indices `τ`, sorted ascending.
    pub basic: Vec<usize>,
    /// The complement `τ̄`, sorted ascending.
    pub nonbasic: Vec<usize>,
    /// Optimal LP value.
    pub value: Rational,
    /// A primal-optimal point (basic components `A_τ⁻¹·b`, rest zero).
    pub x: Vec<Rational>,
    /// Reduced costs of the nonbasic columns, parallel to `nonbasic`.
    pub reduced: Vec<Rational>,
    /// True when every nonbasic reduced cost is strictly positive, i.e. the
    /// LP optimum is unique and the instance is generic.
    pub unique: bool,
}

/// A group relaxation ready to solve: lattice program plus the affine
/// constant that turns its value into an IP bound.
#[derive(Clone, Debug)]
pub struct GroupRelaxation {
    instance: GroupInstance,
    lp: LpBasisResult,
    residue: Vec<Integer>,
    constant: Rational,
    a_basic: IntMatrix,
    a_nonbasic: IntMatrix,
    c_basic: Vec<Rational>,
}

impl GroupRelaxation {
    /// The underlying lattice program (lattice, cost, quotient data).
    pub fn instance(&self) -> &GroupInstance {
        &self.instance
    }

    pub fn lp(&self) -> &LpBasisResult {
        &self.lp
    }

    /// The residue vector `u_τ̄` of some integer solution of `A u = b`.
    pub fn residue(&self) -> &[Integer] {
        &self.residue
    }

    /// The affine constant `c_τ·A_τ⁻¹·b`.
    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    /// Solves the lattice program; `bound = constant + m` is the exact
    /// group-relaxation lower bound for the integer program.
    pub fn solve(&self, limits: &ResourceLimits) -> Result<RelaxationBound, Error> {
        let sol = self.instance.solve_m(&self.residue, limits)?;
        Ok(RelaxationBound {
            bound: &self.constant + &sol.value,
            group_value: sol.value,
            minimizer: sol.minimizer,
            label: sol.residue,
        })
    }

    /// Right-hand sides on which the relaxation is tight at its worst case:
    /// for the gap witness `x*`, the vector `b′ = A_τ̄·x*` (that is, `A·u`
    /// with `u_τ̄ = x*`, `u_τ = 0`) has integer optimum exactly
    /// `gap + c_τ·A_τ⁻¹·b′` — the witness lifts with basic part zero, so the
    /// bound is attained.
    pub fn witness_rhs(&self, cert: &GapCertificate) -> Result<RhsWitness, Error> {
        let k = self.instance.dim();
        if cert.witness_x.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: cert.witness_x.len(),
            });
        }
        let rhs = self.a_nonbasic.mul_vec(&cert.witness_x);
        let constant = basic_value(&self.a_basic, &self.c_basic, &rhs)?;
        Ok(RhsWitness {
            predicted: &cert.gap + &constant,
            rhs,
        })
    }
}

/// Outcome of solving a group relaxation.
#[derive(Clone, Debug)]
pub struct RelaxationBound {
    /// `constant + group_value`: exact lower bound for the IP optimum.
    pub bound: Rational,
    /// The lattice-program value `m(Λ, l, r)`.
    pub group_value: Rational,
    /// Cheapest nonnegative representative of the residue class.
    pub minimizer: Vec<Integer>,
    /// Canonical label of the residue class.
    pub label: CosetLabel,
}

/// A right-hand side certifying worst-case tightness, with the exact IP
/// optimum it predicts.
#[derive(Clone, Debug)]
pub struct RhsWitness {
    pub rhs: Vec<Integer>,
    pub predicted: Rational,
}

/// Exact optimum of a boxed integer program scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IpOptimum {
    Optimal {
        value: Rational,
        /// Lexicographically smallest minimizer within the box.
        minimizer: Vec<Integer>,
    },
    Infeasible,
}

impl IpOptimum {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            IpOptimum::Optimal { value, .. } => Some(value),
            IpOptimum::Infeasible => None,
        }
    }
}

/// Depth-first scanner state for [`IpInstance::ip_bruteforce`].
struct Scan<'a> {
    a: &'a IntMatrix,
    c: &'a [Rational],
    box_int: Integer,
    has_pos: Vec<Vec<bool>>,
    has_neg: Vec<Vec<bool>>,
    cheapest: Vec<Rational>,
    max_nodes: u64,
    visited: u64,
    x: Vec<Integer>,
    residual: Vec<Integer>,
    cost: Rational,
    best: Option<(Rational, Vec<Integer>)>,
}

impl Scan<'_> {
    fn dfs(&mut self, j: usize) -> Result<(), Error> {
        if self.visited >= self.max_nodes {
            return Err(Error::CosetLimitExceeded {
                cosets: Integer::from(self.visited) + 1,
                limit: self.max_nodes,
            });
        }
        self.visited += 1;
        let n = self.a.cols();
        let d = self.a.rows();
        if j == n {
            if self.residual.iter().all(|v| v.is_zero()) {
                // Strict improvement only: the first minimizer found is the
                // lexicographically smallest and must be kept on ties.
                let better = match &self.best {
                    None => true,
                    Some((value, _)) => &self.cost < value,
                };
                if better {
                    self.best = Some((self.cost.clone(), self.x.clone()));
                }
            }
            return Ok(());
        }
        for i in 0..d {
            let r = &self.residual[i];
            if (r.is_positive() && !self.has_pos[j][i])
                || (r.is_negative() && !self.has_neg[j][i])
            {
                return Ok(());
            }
        }
        if let Some((value, _)) = &self.best {
            if &self.cost + &self.cheapest[j] >= *value {
                return Ok(());
            }
        }
        // Tighten the range of x_j using rows whose later columns cannot
        // compensate: if row i has a_ij > 0 and nothing negative afterwards,
        // then a_ij·x_j ≤ residual_i, and symmetrically for a_ij < 0.
        let mut vmax = self.box_int.clone();
        let column: Vec<Integer> = (0..d).map(|i| self.a[(i, j)].clone()).collect();
        for (i, aij) in column.iter().enumerate() {
            let r = &self.residual[i];
            if aij.is_positive() && !self.has_neg[j + 1][i] {
                if r.is_negative() {
                    return Ok(());
                }
                vmax = vmax.min(r.div_floor(aij));
            } else if aij.is_negative() && !self.has_pos[j + 1][i] {
                if r.is_positive() {
                    return Ok(());
                }
                vmax = vmax.min(r.div_floor(aij));
            }
        }
        let mut v = Integer::zero();
        while v <= vmax {
            self.x[j] = v.clone();
            self.dfs(j + 1)?;
            for (r, ci) in self.residual.iter_mut().zip(&column) {
                *r -= ci;
            }
            self.cost += &self.c[j];
            v += 1;
        }
        // Undo the overshoot (the loop exits having charged v = vmax + 1
        // units) and reset the coordinate.
        for (r, ci) in self.residual.iter_mut().zip(&column) {
            *r += ci * &v;
        }
        self.cost -= &self.c[j] * Rational::from_integer(v);
        self.x[j] = Integer::zero();
        Ok(())
    }
}

/// `c_basic · A_basic⁻¹ · rhs`, the cost of the basic lift of a right-hand
/// side.
fn basic_value(
    a_basic: &IntMatrix,
    c_basic: &[Rational],
    rhs: &[Integer],
) -> Result<Rational, Error> {
    let rhs_rat: Vec<Rational> = rhs
        .iter()
        .map(|v| Rational::from_integer(v.clone()))
        .collect();
    let y = solve_square_rational(a_basic, &rhs_rat)?;
    Ok(c_basic.iter().zip(&y).map(|(c, yi)| c * yi).sum())
}

/// Solves the square system `M·y = rhs` over the rationals by Gaussian
/// elimination. `SingularBasis` when `M` is singular.
#[allow(clippy::needless_range_loop)] // elimination reads one row while mutating another
fn solve_square_rational(m: &IntMatrix, rhs: &[Rational]) -> Result<Vec<Rational>, Error> {
    let d = m.rows();
    assert_eq!(m.cols(), d);
    assert_eq!(rhs.len(), d);
    let mut aug: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut row: Vec<Rational> = m
                .row(i)
                .iter()
                .map(|v| Rational::from_integer(v.clone()))
                .collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for col in 0..d {
        let Some(p) = (col..d).find(|&i| !aug[i][col].is_zero()) else {
            return Err(Error::SingularBasis);
        };
        aug.swap(col, p);
        let pivot = aug[col][col].clone();
        for v in aug[col][col..].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..d {
            if i == col || aug[i][col].is_zero() {
                continue;
            }
            let f = aug[i][col].clone();
            for t in col..=d {
                let sub = &f * &aug[col][t];
                aug[i][t] -= sub;
            }
        }
    }
    Ok(aug.into_iter().map(|row| row[d].clone()).collect())
}
