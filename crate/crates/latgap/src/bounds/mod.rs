//! Certified lower and upper estimates for the gap, the simplex inradius,
//! the covering radius, and a grid-based coverage cross-check.
//!
//! Every bound is evaluated in exact rational interval arithmetic
//! ([`enclose`]) and reported as a *directed* value: lower bounds round
//! toward −∞, upper bounds toward +∞, so a comparison against the exact gap
//! can never fail through rounding. The lower bounds use the sharp
//! two-dimensional constant `√3` (dimension 1 is trivial, higher sharp
//! constants are unknown and refused) and the factorial estimate
//! `(k!·det·l_1···l_k)^{1/k} − Σl_i`; the upper bound multiplies the
//! quotient-lattice determinant by a Hermite-constant power, with exact
//! table values up to dimension 8 and a ball-volume estimate beyond.

pub mod enclose;

use num_traits::{One, Signed, ToPrimitive};

use crate::groupsolve::{CostVector, GroupInstance};
use crate::intlat::LatticeBasis;
use crate::{Error, Integer, Rational, ResourceLimits};

use enclose::{nth_root, sqrt, RatInterval, ROOT_PRECISION_BITS};

/// Exact values of the `k`-th power of the Hermite constant, `k = 1..=8`.
pub fn hermite_power(k: usize) -> Option<Rational> {
    let (num, den): (i64, i64) = match k {
        1 => (1, 1),
        2 => (4, 3),
        3 => (2, 1),
        4 => (4, 1),
        5 => (8, 1),
        6 => (64, 3),
        7 => (64, 1),
        8 => (256, 1),
        _ => return None,
    };
    Some(Rational::new(num.into(), den.into()))
}

/// Which way a reported float was rounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

/// A one-sided certified bound: `endpoint` is an exact rational that is
/// `<=` (Down) or `>=` (Up) the true bound value, and `value` is a float
/// rendering of the endpoint rounded further in the same direction.
#[derive(Clone, Debug)]
pub struct DirectedBound {
    pub value: f64,
    pub endpoint: Rational,
    pub direction: Rounding,
    /// True when the endpoint equals the bound value exactly (all roots in
    /// the formula came out rational).
    pub exact: bool,
}

impl DirectedBound {
    fn down(interval: &RatInterval) -> DirectedBound {
        DirectedBound {
            value: interval.f64_lo(),
            endpoint: interval.lo().clone(),
            direction: Rounding::Down,
            exact: interval.is_exact(),
        }
    }

    fn up(interval: &RatInterval) -> DirectedBound {
        DirectedBound {
            value: interval.f64_hi(),
            endpoint: interval.hi().clone(),
            direction: Rounding::Up,
            exact: interval.is_exact(),
        }
    }
}

fn det_rational(det: &Integer) -> Rational {
    Rational::from_integer(det.clone())
}

fn product_of_entries(l: &CostVector) -> Rational {
    l.entries().iter().product()
}

/// Sharp-constant lower bound for the gap, rounded down:
/// `ρ_k (det · l_1···l_k)^{1/k} − Σl_i` with `ρ_1 = 1`, `ρ_2 = √3`.
///
/// Only dimensions 1 and 2 are supported — the sharp constant is unknown
/// beyond, and guessing would fabricate a "bound".
pub fn lower_bound_rho(det: &Integer, l: &CostVector) -> Result<DirectedBound, Error> {
    let k = l.dim();
    let product = det_rational(det) * product_of_entries(l);
    let interval = match k {
        1 => RatInterval::exact(product),
        // Fold √3 into the square root so 3·det·l₁·l₂ being a perfect
        // square yields an exact endpoint.
        2 => sqrt(&(product * Rational::from_integer(3.into()))),
        _ => return Err(Error::UnknownRhoK { k }),
    };
    let shifted = interval.sub(&RatInterval::exact(l.sum()));
    Ok(DirectedBound::down(&shifted))
}

/// Factorial lower bound for the gap, rounded down:
/// `(k!·det·l_1···l_k)^{1/k} − Σl_i`. The true bound is strictly below the
/// gap; requires `k >= 2`.
pub fn lower_bound_factorial(det: &Integer, l: &CostVector) -> Result<DirectedBound, Error> {
    let k = l.dim();
    if k < 2 {
        return Err(Error::DimensionTooSmall { k });
    }
    let factorial: Integer = (1..=k as u64).map(Integer::from).product();
    let radicand = Rational::from_integer(factorial) * det_rational(det) * product_of_entries(l);
    let root = nth_root(&radicand, k as u32, ROOT_PRECISION_BITS);
    let shifted = root.sub(&RatInterval::exact(l.sum()));
    Ok(DirectedBound::down(&shifted))
}

/// Upper bound for the gap, rounded up:
/// `k · γ_k^{k/2} · det · (Σl_i + |l|) / 2 − Σl_i`, with the Hermite power
/// from the exact table for `k <= 8` and a ball-volume estimate beyond.
/// Requires `k >= 2`.
pub fn upper_bound(det: &Integer, l: &CostVector) -> Result<DirectedBound, Error> {
    let k = l.dim();
    if k < 2 {
        return Err(Error::DimensionTooSmall { k });
    }
    let hermite = hermite_power_half(k);
    let norm = sqrt(&l.entries().iter().map(|v| v * v).sum::<Rational>());
    let lsum = RatInterval::exact(l.sum());
    let value = hermite
        .scale(&Rational::from_integer(Integer::from(k as u64)))
        .scale(&det_rational(det))
        .mul(&lsum.add(&norm))
        .scale(&Rational::new(1.into(), 2.into()))
        .sub(&lsum);
    Ok(DirectedBound::up(&value))
}

/// An enclosure of an upper estimate of `γ_k^{k/2}`: the square root of the
/// exact table value for `k <= 8`; for larger `k` the ball-volume estimate
/// `2^{k/2}·(k+2)/σ_k`, where `σ_k` is the volume of the unit `k`-ball.
fn hermite_power_half(k: usize) -> RatInterval {
    if let Some(pow) = hermite_power(k) {
        return sqrt(&pow);
    }
    // σ_k = π^m · s_k with m = ⌊k/2⌋ and s_k rational:
    //   k = 2m:     s_k = 1/m!
    //   k = 2m + 1: s_k = 4^{m+1}·(m+1)! / (2m+2)!
    let m = k / 2;
    let factorial = |n: u64| -> Integer { (1..=n).map(Integer::from).product() };
    let s_k = if k.is_multiple_of(2) {
        Rational::new(Integer::one(), factorial(m as u64))
    } else {
        Rational::new(
            Integer::from(4).pow(m as u32 + 1) * factorial(m as u64 + 1),
            factorial(2 * m as u64 + 2),
        )
    };
    let sigma = enclose::pi().pow(m as u32).scale(&s_k);
    // 2^{k/2}: exact for even k, √2·2^m for odd k.
    let two_pow = if k.is_multiple_of(2) {
        RatInterval::exact(Rational::from_integer(Integer::from(2).pow(m as u32)))
    } else {
        sqrt(&Rational::from_integer(2.into()))
            .scale(&Rational::from_integer(Integer::from(2).pow(m as u32)))
    };
    two_pow
        .scale(&Rational::from_integer(Integer::from(k as u64 + 2)))
        .div(&sigma)
}

/// The inradius `1/(Σl_i + |l|)` of the simplex `{x >= 0 : l·x <= 1}`:
/// exact when `|l|` is rational, a certified enclosure otherwise.
#[derive(Clone, Debug)]
pub enum Inradius {
    Exact(Rational),
    Enclosure(RatInterval),
}

pub fn inradius(l: &CostVector) -> Inradius {
    let norm = sqrt(&l.entries().iter().map(|v| v * v).sum::<Rational>());
    let denom = norm.add(&RatInterval::exact(l.sum()));
    let value = RatInterval::exact(Rational::one()).div(&denom);
    if value.is_exact() {
        Inradius::Exact(value.lo().clone())
    } else {
        Inradius::Enclosure(value)
    }
}

/// The covering radius of the scaled simplex `{x >= 0 : l·x <= 1}` with
/// respect to `Λ`: exactly `gap + Σl_i`.
pub fn covering_radius(inst: &GroupInstance, limits: &ResourceLimits) -> Result<Rational, Error> {
    Ok(inst.gap(limits)?.gap + inst.cost().sum())
}

/// Everything [`lower_bound_rho`], [`lower_bound_factorial`] and
/// [`upper_bound`] can say about one instance, plus the exact gap when the
/// caller computed it. Bounds that don't apply in the dimension are absent.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub k: usize,
    pub det: Integer,
    pub lower_rho: Option<DirectedBound>,
    pub lower_factorial: Option<DirectedBound>,
    pub upper: Option<DirectedBound>,
    pub gap: Option<Rational>,
}

pub fn bounds_report(det: &Integer, l: &CostVector, gap: Option<Rational>) -> BoundsReport {
    BoundsReport {
        k: l.dim(),
        det: det.clone(),
        lower_rho: lower_bound_rho(det, l).ok(),
        lower_factorial: lower_bound_factorial(det, l).ok(),
        upper: upper_bound(det, l).ok(),
        gap,
    }
}

/// Result of sampling one fundamental box on a grid of pitch `h` and asking,
/// for each grid point `p`, whether some `λ ∈ Λ` has `p − λ >= 0` and
/// `l·(p−λ) <= rho`.
///
/// An empty `uncovered` list is one-sided evidence only — a finite grid
/// cannot prove coverage — but any listed point is a certified witness that
/// `rho` scaled copies of the simplex centered on `Λ` miss it.
#[derive(Clone, Debug)]
pub struct CoverReport {
    pub grid_points: u64,
    pub uncovered: Vec<Vec<Rational>>,
    /// True when more uncovered points existed than were recorded.
    pub truncated: bool,
}

const MAX_RECORDED_UNCOVERED: usize = 1000;

/// Checks coverage of one fundamental box at grid pitch `h > 0`.
pub fn grid_cover_check(
    inst: &GroupInstance,
    rho: &Rational,
    h: &Rational,
    limits: &ResourceLimits,
) -> Result<CoverReport, Error> {
    if !h.is_positive() || rho.is_negative() {
        return Err(Error::ResolutionTooFine);
    }
    let k = inst.dim();
    let basis = inst.basis();
    let l = inst.cost();

    // Side lengths of the fundamental box: the HNF diagonal.
    let diag: Vec<Integer> = (0..k).map(|i| basis.hnf_basis()[(i, i)].clone()).collect();
    let axis_counts: Vec<u64> = diag
        .iter()
        .map(|d| {
            let q = Rational::from_integer(d.clone()) / h;
            q.ceil().to_integer().to_u64().ok_or(Error::ResolutionTooFine)
        })
        .collect::<Result<_, _>>()?;
    let grid_total = axis_counts
        .iter()
        .try_fold(1u64, |acc, &c| acc.checked_mul(c))
        .ok_or(Error::ResolutionTooFine)?;

    // Candidate lattice points per grid point: λ_i ∈ [p_i − rho/l_i, p_i],
    // an integer range of at most floor(rho/l_i) + 2 values.
    let candidates_per_point = l
        .entries()
        .iter()
        .try_fold(1u64, |acc, li| {
            let span = (rho / li).floor().to_integer().to_u64()?.checked_add(2)?;
            acc.checked_mul(span)
        })
        .ok_or(Error::ResolutionTooFine)?;
    if grid_total
        .checked_mul(candidates_per_point)
        .is_none_or(|work| work > limits.max_grid_work)
    {
        return Err(Error::ResolutionTooFine);
    }

    let mut uncovered = Vec::new();
    let mut truncated = false;
    let mut counters = vec![0u64; k];
    'grid: loop {
        let p: Vec<Rational> = counters
            .iter()
            .map(|&m| Rational::from_integer(Integer::from(m)) * h)
            .collect();
        if !point_covered(basis, l, rho, &p)? {
            if uncovered.len() < MAX_RECORDED_UNCOVERED {
                uncovered.push(p);
            } else {
                truncated = true;
            }
        }
        // Advance the grid odometer.
        let mut axis = 0;
        loop {
            if axis == k {
                break 'grid;
            }
            counters[axis] += 1;
            if counters[axis] < axis_counts[axis] {
                break;
            }
            counters[axis] = 0;
            axis += 1;
        }
    }
    Ok(CoverReport {
        grid_points: grid_total,
        uncovered,
        truncated,
    })
}

/// Is there a lattice point `λ <= p` (componentwise) with `l·(p−λ) <= rho`?
fn point_covered(
    basis: &LatticeBasis,
    l: &CostVector,
    rho: &Rational,
    p: &[Rational],
) -> Result<bool, Error> {
    let k = p.len();
    let mut lo = Vec::with_capacity(k);
    let mut hi = Vec::with_capacity(k);
    for (pi, li) in p.iter().zip(l.entries()) {
        lo.push((pi - rho / li).ceil().to_integer());
        hi.push(pi.floor().to_integer());
    }
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return Ok(false);
    }
    let mut lambda: Vec<Integer> = lo.clone();
    loop {
        if basis.is_member(&lambda)? {
            let cost: Rational = l
                .entries()
                .iter()
                .zip(p.iter().zip(&lambda))
                .map(|(li, (pi, qi))| li * (pi - Rational::from_integer(qi.clone())))
                .sum();
            if cost <= *rho {
                return Ok(true);
            }
        }
        let mut axis = 0;
        loop {
            if axis == k {
                return Ok(false);
            }
            lambda[axis] += Integer::one();
            if lambda[axis] <= hi[axis] {
                break;
            }
            lambda[axis] = lo[axis].clone();
            axis += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, ratio};

    fn cost(vals: &[i64]) -> CostVector {
        CostVector::from_i64s(vals).unwrap()
    }

    #[test]
    fn hermite_power_table_values() {
        let expected = [
            (1, ratio(1, 1)),
            (2, ratio(4, 3)),
            (3, ratio(2, 1)),
            (4, ratio(4, 1)),
            (5, ratio(8, 1)),
            (6, ratio(64, 3)),
            (7, ratio(64, 1)),
            (8, ratio(256, 1)),
        ];
        for (k, v) in expected {
            assert_eq!(hermite_power(k), Some(v), "k = {k}");
        }
        assert_eq!(hermite_power(9), None);
    }

    #[test]
    fn rho_lower_bound_is_exact_on_perfect_square() {
        // det 3, l = (1,1): √(3·3) − 2 = 1 exactly.
        let b = lower_bound_rho(&int(3), &cost(&[1, 1])).unwrap();
        assert!(b.exact);
        assert_eq!(b.endpoint, ratio(1, 1));
        assert_eq!(b.value, 1.0);
        assert_eq!(b.direction, Rounding::Down);
    }

    #[test]
    fn rho_lower_bound_may_be_negative() {
        // det 1, l = (1,1): √3 − 2 < 0, reported as-is.
        let b = lower_bound_rho(&int(1), &cost(&[1, 1])).unwrap();
        assert!(b.endpoint < ratio(0, 1));
        assert!(b.value < 0.0);
        assert!(b.value > -0.27 && b.value < -0.26); // √3 − 2 ≈ −0.2679
    }

    #[test]
    fn rho_lower_bound_dimension_one_is_linear() {
        // k = 1: det·l − l exactly.
        let b = lower_bound_rho(&int(5), &cost(&[2])).unwrap();
        assert!(b.exact);
        assert_eq!(b.endpoint, ratio(8, 1));
    }

    #[test]
    fn rho_lower_bound_refuses_higher_dimensions() {
        assert!(matches!(
            lower_bound_rho(&int(3), &cost(&[1, 1, 1])),
            Err(Error::UnknownRhoK { k: 3 })
        ));
    }

    #[test]
    fn factorial_lower_bound_values() {
        // k=3, det=10, l=1: 60^{1/3} − 3 ≈ 0.9149.
        let b = lower_bound_factorial(&int(10), &cost(&[1, 1, 1])).unwrap();
        assert!(b.value > 0.914 && b.value < 0.916);
        // k=2, det=3: √6 − 2 ≈ 0.449.
        let b = lower_bound_factorial(&int(3), &cost(&[1, 1])).unwrap();
        assert!(b.value > 0.448 && b.value < 0.450);
        assert!(matches!(
            lower_bound_factorial(&int(3), &cost(&[2])),
            Err(Error::DimensionTooSmall { k: 1 })
        ));
    }

    #[test]
    fn upper_bound_values() {
        // k=2, det=3, l=(1,1): (2/√3)·2·3·(2+√2)/2 − 2 ≈ 9.828.
        let b = upper_bound(&int(3), &cost(&[1, 1])).unwrap();
        assert_eq!(b.direction, Rounding::Up);
        assert!(b.value > 9.82 && b.value < 9.83, "got {}", b.value);
        // det=1: ≈ 1.94.
        let b = upper_bound(&int(1), &cost(&[1, 1])).unwrap();
        assert!(b.value > 1.94 && b.value < 1.95, "got {}", b.value);
    }

    #[test]
    fn upper_bound_beyond_table_uses_ball_volume_estimate() {
        let l = cost(&[1, 1, 1, 1, 1, 1, 1, 1, 1]); // k = 9
        let b = upper_bound(&int(2), &l).unwrap();
        assert!(b.value.is_finite());
        // Must dominate the factorial lower bound.
        let lo = lower_bound_factorial(&int(2), &l).unwrap();
        assert!(b.endpoint > lo.endpoint);
        // And the estimate itself must dominate the k=8 table neighborhood:
        // γ_9^{9/2} ≥ γ_8^{4} = … just sanity-check positivity and size.
        assert!(b.value > 0.0);
    }

    #[test]
    fn inradius_pythagorean_is_exact() {
        match inradius(&cost(&[3, 4])) {
            Inradius::Exact(q) => assert_eq!(q, ratio(1, 12)),
            other => panic!("expected exact inradius, got {other:?}"),
        }
    }

    #[test]
    fn inradius_irrational_is_enclosed() {
        match inradius(&cost(&[1, 1])) {
            Inradius::Enclosure(iv) => {
                // 1/(2+√2) ≈ 0.2928932...
                assert!(*iv.lo() > ratio(29289, 100000));
                assert!(*iv.hi() < ratio(29290, 100000));
            }
            other => panic!("expected enclosure, got {other:?}"),
        }
    }

    #[test]
    fn inradius_dimension_one() {
        match inradius(&cost(&[1])) {
            Inradius::Exact(q) => assert_eq!(q, ratio(1, 2)),
            other => panic!("expected exact, got {other:?}"),
        }
    }

    #[test]
    fn covering_radius_of_z_cross_3z() {
        let basis = LatticeBasis::from_i64_rows(&[&[1, 0], &[0, 3]]).unwrap();
        let inst = GroupInstance::new(basis, cost(&[1, 1])).unwrap();
        let rho = covering_radius(&inst, &ResourceLimits::default()).unwrap();
        assert_eq!(rho, ratio(4, 1));
    }

    #[test]
    fn grid_check_confirms_covering_radius_and_rejects_smaller() {
        let basis = LatticeBasis::from_i64_rows(&[&[1, 0], &[0, 3]]).unwrap();
        let inst = GroupInstance::new(basis, cost(&[1, 1])).unwrap();
        let limits = ResourceLimits::default();
        let h = ratio(1, 8);
        let at_rho = grid_cover_check(&inst, &ratio(4, 1), &h, &limits).unwrap();
        assert!(at_rho.uncovered.is_empty(), "{:?}", at_rho.uncovered);
        assert_eq!(at_rho.grid_points, 8 * 24);
        let below = grid_cover_check(&inst, &ratio(7, 2), &h, &limits).unwrap();
        assert!(!below.uncovered.is_empty());
    }

    #[test]
    fn grid_check_at_rho_zero_flags_off_lattice_points() {
        let basis = LatticeBasis::from_i64_rows(&[&[1, 0], &[0, 2]]).unwrap();
        let inst = GroupInstance::new(basis, cost(&[1, 1])).unwrap();
        let report =
            grid_cover_check(&inst, &ratio(0, 1), &ratio(1, 1), &ResourceLimits::default())
                .unwrap();
        // Grid: (0,0) covered (lattice point), (0,1) uncovered.
        assert_eq!(report.grid_points, 2);
        assert_eq!(report.uncovered.len(), 1);
    }

    #[test]
    fn grid_check_work_budget() {
        let basis = LatticeBasis::from_i64_rows(&[&[1, 0], &[0, 3]]).unwrap();
        let inst = GroupInstance::new(basis, cost(&[1, 1])).unwrap();
        let limits = ResourceLimits {
            max_grid_work: 10,
            ..Default::default()
        };
        assert!(matches!(
            grid_cover_check(&inst, &ratio(4, 1), &ratio(1, 16), &limits),
            Err(Error::ResolutionTooFine)
        ));
    }

    #[test]
    fn report_assembles_applicable_bounds() {
        let r = bounds_report(&int(3), &cost(&[1, 1]), Some(ratio(2, 1)));
        assert!(r.lower_rho.is_some());
        assert!(r.lower_factorial.is_some());
        assert!(r.upper.is_some());
        // Sandwich on the example: lower ≤ gap ≤ upper.
        let gap = r.gap.clone().unwrap();
        assert!(r.lower_rho.unwrap().endpoint <= gap);
        assert!(r.lower_factorial.unwrap().endpoint <= gap);
        assert!(r.upper.unwrap().endpoint >= gap);
        // k=3: rho bound absent.
        let r = bounds_report(&int(6), &cost(&[1, 2, 3]), None);
        assert!(r.lower_rho.is_none());
        assert!(r.lower_factorial.is_some());
        // k=1: only the rho bound applies.
        let r = bounds_report(&int(5), &cost(&[2]), None);
        assert!(r.lower_rho.is_some());
        assert!(r.lower_factorial.is_none());
        assert!(r.upper.is_none());
    }
}
