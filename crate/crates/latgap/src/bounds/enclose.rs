//! Certified rational enclosures: interval arithmetic over exact rationals.
//!
//! Rationals are closed under field operations, so the only approximation
//! anywhere is root extraction (and the constant π). Roots are enclosed by
//! integer `n`-th roots of scaled numerators/denominators, with perfect
//! powers detected so that expressions like `sqrt(9)` stay exact. Directed
//! `f64` renderings move the float until it provably sits on the safe side
//! of the rational endpoint.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Integer, Natural, Rational};

/// Fractional bits carried by root enclosures; far beyond f64 needs.
pub const ROOT_PRECISION_BITS: u32 = 128;

/// A closed interval `[lo, hi]` with exact rational endpoints, certified to
/// contain the (possibly irrational) value it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    lo: Rational,
    hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "inverted interval");
        RatInterval { lo, hi }
    }

    /// The degenerate interval `[q, q]`.
    pub fn exact(q: Rational) -> Self {
        RatInterval { lo: q.clone(), hi: q }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    /// Width zero: the enclosed value is known exactly.
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(&self, rhs: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }

    pub fn sub(&self, rhs: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }

    pub fn mul(&self, rhs: &RatInterval) -> RatInterval {
        let candidates = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    /// Division; `rhs` must not contain zero.
    pub fn div(&self, rhs: &RatInterval) -> RatInterval {
        assert!(
            rhs.lo.is_positive() || rhs.hi.is_negative(),
            "division by an interval containing zero"
        );
        self.mul(&RatInterval {
            lo: rhs.hi.recip(),
            hi: rhs.lo.recip(),
        })
    }

    /// `self^n` for nonnegative intervals (all uses here are nonnegative).
    pub fn pow(&self, n: u32) -> RatInterval {
        assert!(!self.lo.is_negative(), "pow only for nonnegative intervals");
        let powi = |q: &Rational| -> Rational {
            let mut acc = Rational::one();
            for _ in 0..n {
                acc *= q;
            }
            acc
        };
        RatInterval {
            lo: powi(&self.lo),
            hi: powi(&self.hi),
        }
    }

    pub fn scale(&self, q: &Rational) -> RatInterval {
        self.mul(&RatInterval::exact(q.clone()))
    }

    /// Float rendering of the lower endpoint, rounded toward −∞.
    pub fn f64_lo(&self) -> f64 {
        f64_down(&self.lo)
    }

    /// Float rendering of the upper endpoint, rounded toward +∞.
    pub fn f64_hi(&self) -> f64 {
        f64_up(&self.hi)
    }
}

/// Certified enclosure of `q^{1/n}` for `q >= 0`, exact on perfect powers.
pub fn nth_root(q: &Rational, n: u32, frac_bits: u32) -> RatInterval {
    assert!(n >= 1);
    assert!(!q.is_negative(), "nth_root requires a nonnegative argument");
    if q.is_zero() || n == 1 {
        return RatInterval::exact(q.clone());
    }
    // Perfect rational power: root of numerator and denominator separately.
    let nu = q.numer().to_biguint().expect("nonnegative");
    let de = q.denom().to_biguint().expect("positive");
    let rn = nu.nth_root(n);
    let rd = de.nth_root(n);
    if rn.pow(n) == nu && rd.pow(n) == de {
        return RatInterval::exact(Rational::new(rn.into(), rd.into()));
    }
    // Scale by 2^(n * frac_bits); integer n-th roots of the floor/ceil of
    // the scaled value bracket the true root at frac_bits fractional bits.
    let shift = Natural::from(1u8) << (n as usize * frac_bits as usize);
    let scaled = &nu * &shift;
    let scaled_lo = &scaled / &de; // floor
    let scaled_hi = if &scaled_lo * &de == scaled {
        scaled_lo.clone()
    } else {
        &scaled_lo + Natural::one()
    };
    let root_lo = scaled_lo.nth_root(n);
    let mut root_hi = scaled_hi.nth_root(n);
    if root_hi.pow(n) < scaled_hi {
        root_hi += Natural::one();
    }
    let denom: Integer = (Natural::from(1u8) << frac_bits as usize).into();
    RatInterval::new(
        Rational::new(root_lo.into(), denom.clone()),
        Rational::new(root_hi.into(), denom),
    )
}

/// Certified enclosure of `sqrt(q)`.
pub fn sqrt(q: &Rational) -> RatInterval {
    nth_root(q, 2, ROOT_PRECISION_BITS)
}

/// A 39-decimal-digit enclosure of π — far tighter than any f64 rendering.
pub fn pi() -> RatInterval {
    let digits: Integer = "3141592653589793238462643383279502884197"
        .parse()
        .expect("literal");
    let denom = Integer::from(10u8).pow(39);
    RatInterval::new(
        Rational::new(digits.clone(), denom.clone()),
        Rational::new(digits + 1, denom),
    )
}

/// The largest f64 that is `<= q`, within a few ulps of the best one.
pub fn f64_down(q: &Rational) -> f64 {
    let mut c = match q.to_f64() {
        Some(v) if v.is_finite() => v,
        Some(v) if v > 0.0 => f64::MAX,
        Some(_) => f64::MIN,
        None => 0.0,
    };
    let mut guard = 0;
    while !f64_le_rational(c, q) {
        if guard >= 128 {
            // Conversion landed absurdly far off; −∞ is always a valid
            // downward rendering. Unreachable at sane magnitudes.
            return f64::NEG_INFINITY;
        }
        c = c.next_down();
        guard += 1;
    }
    c
}

/// The smallest f64 that is `>= q`, within a few ulps of the best one.
pub fn f64_up(q: &Rational) -> f64 {
    -f64_down(&-q.clone())
}

/// Exact comparison `f <= q` (false only when provably greater).
fn f64_le_rational(f: f64, q: &Rational) -> bool {
    if f == f64::NEG_INFINITY {
        return true;
    }
    match Rational::from_float(f) {
        Some(r) => r <= *q,
        None => false,
    }
}
