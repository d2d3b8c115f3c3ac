//! Naive and canonical heights.
//!
//! Canonical heights use the normalization `ĥ(nP) = n²·ĥ(P)` with
//! `ĥ(P) = lim h(x(2^k P)) / 4^k`, in nats.
//!
//! On `y² = x³ − T²x` (T squarefree) every rational point Q satisfies
//!
//! ```text
//! −log T − 0.347  <  ĥ(Q) − h(x(Q))  <  ½·log(T² + 1) + 0.116
//! ```
//!
//! so one naive height at `2^k P` pins `ĥ(P)` to an interval of width
//! `O(4^-k)`. Other curves only get the plain doubling estimate.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::curve::{FamilyKind, RationalPoint, WeierstrassCurve};
use crate::eds::{approx_digits, DEFAULT_DIGIT_BUDGET};
use crate::error::{Error, Result};
use crate::number_theory::{is_squarefree, log_big};

/// Additive constant paired with `log T` in the upper sandwich bound.
pub const UPPER_SLACK: f64 = 0.347;
/// Additive constant paired with `½·log(T² + 1)` in the lower sandwich bound.
pub const LOWER_SLACK: f64 = 0.116;
pub const DEFAULT_DOUBLINGS: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeightInterval {
    pub lo: f64,
    pub hi: f64,
}

impl HeightInterval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// `log max(|a|, b)` for `x = a/b` in lowest terms.
pub fn naive_height(x: &BigRational) -> f64 {
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    let larger = if num > den { num } else { den };
    log_big(larger).expect("denominator is positive")
}

/// `log T + 0.347`: how far `h(x(Q))` may exceed `ĥ(Q)`.
pub fn upper_gap(t: u64) -> f64 {
    (t as f64).ln() + UPPER_SLACK
}

/// `½·log(T² + 1) + 0.116`: how far `h(x(Q))` may fall below `ĥ(Q)`.
pub fn lower_gap(t: u64) -> f64 {
    0.5 * ((t as f64).powi(2) + 1.0).ln() + LOWER_SLACK
}

fn check_congruent_parameter(t: u64) -> Result<()> {
    if t < 5 {
        return Err(Error::OutOfRange(format!(
            "congruent family needs T >= 5, got {t}"
        )));
    }
    if !is_squarefree(t) {
        return Err(Error::NotSquarefree(t));
    }
    Ok(())
}

/// Repeated doubling with a digit check after every step.
fn double_k_times(
    curve: &WeierstrassCurve,
    p: &RationalPoint,
    k: u32,
    digit_budget: u64,
) -> Result<Vec<BigRational>> {
    if !curve.contains(p) {
        return Err(Error::NotOnCurve);
    }
    if let Some(order) = curve.torsion_order(p) {
        return Err(Error::Torsion(order));
    }
    let mut xs = Vec::with_capacity(k as usize + 1);
    let mut q = p.clone();
    xs.push(q.x().expect("non-torsion point is affine").clone());
    for i in 1..=k {
        q = curve.double(&q);
        let x = q.x().ok_or(Error::Torsion(1 << i))?.clone();
        let digits = approx_digits(x.numer(), x.denom().magnitude());
        if digits > digit_budget {
            return Err(Error::DigitBudget {
                index: 1 << i,
                digits,
                budget: digit_budget,
            });
        }
        xs.push(x);
    }
    Ok(xs)
}

/// Certified enclosure of `ĥ(P)` on `y² = x³ − T²x` from `h(x(2^k P))`.
pub fn canonical_height_congruent(t: u64, p: &RationalPoint, k: u32) -> Result<HeightInterval> {
    canonical_height_congruent_with_budget(t, p, k, DEFAULT_DIGIT_BUDGET)
}

pub fn canonical_height_congruent_with_budget(
    t: u64,
    p: &RationalPoint,
    k: u32,
    digit_budget: u64,
) -> Result<HeightInterval> {
    check_congruent_parameter(t)?;
    if k == 0 || k > 30 {
        return Err(Error::OutOfRange(format!(
            "doubling count {k} outside 1..=30"
        )));
    }
    let curve = FamilyKind::Congruent.curve(t)?;
    let xs = double_k_times(&curve, p, k, digit_budget)?;
    let h = naive_height(xs.last().unwrap());
    let n2 = 4f64.powi(k as i32);
    Ok(HeightInterval {
        lo: (h - upper_gap(t)) / n2,
        hi: (h + lower_gap(t)) / n2,
    })
}

/// Largest possible width of [`canonical_height_congruent`] at `k` doublings.
pub fn congruent_interval_width(t: u64, k: u32) -> f64 {
    (upper_gap(t) + lower_gap(t)) / 4f64.powi(k as i32)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeightEstimate {
    pub estimate: f64,
    /// Difference from the estimate one doubling earlier; not a certified bound.
    pub empirical_error: f64,
}

/// `h(x(2^k P)) / 4^k` on any curve, with the change from step `k − 1`.
pub fn canonical_height_doubling(
    curve: &WeierstrassCurve,
    p: &RationalPoint,
    k: u32,
) -> Result<HeightEstimate> {
    canonical_height_doubling_with_budget(curve, p, k, DEFAULT_DIGIT_BUDGET)
}

pub fn canonical_height_doubling_with_budget(
    curve: &WeierstrassCurve,
    p: &RationalPoint,
    k: u32,
    digit_budget: u64,
) -> Result<HeightEstimate> {
    if !(2..=30).contains(&k) {
        return Err(Error::OutOfRange(format!(
            "doubling count {k} outside 2..=30"
        )));
    }
    let xs = double_k_times(curve, p, k, digit_budget)?;
    let est = |i: usize| naive_height(&xs[i]) / 4f64.powi(i as i32);
    let estimate = est(k as usize);
    Ok(HeightEstimate {
        estimate,
        empirical_error: (estimate - est(k as usize - 1)).abs(),
    })
}

/// `¼·log T`, a lower bound for `ĥ(P)` at every non-torsion point of the congruent curve.
pub fn family_height_floor(t: u64) -> Result<f64> {
    check_congruent_parameter(t)?;
    Ok(0.25 * (t as f64).ln())
}

/// Range allowed for `h(x(nP))` given an enclosure of `ĥ(P)`.
pub fn sandwich(t: u64, n: u64, hhat: &HeightInterval) -> (f64, f64) {
    let n2 = (n as f64).powi(2);
    (n2 * hhat.lo - lower_gap(t), n2 * hhat.hi + upper_gap(t))
}
