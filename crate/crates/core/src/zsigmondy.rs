//! Explicit Zsigmondy bounds.
//!
//! If `B_n` has no primitive divisor then `B_n | ∏_{p|n} p²·B_{n/p}`. Feeding
//! height estimates into the logarithm of that divisibility gives an
//! inequality in `n` that fails for all large `n`. The scans below evaluate
//! each inequality exactly up to a horizon and close off the tail with a
//! closed-form envelope (`ρ(n) ≤ 0.453`, `ρ(n) ≤ 0.203` for odd `n`,
//! `ω(n) ≤ 1.443·ln n`, `η(n) ≤ 2·ln n`). The surviving indices are then
//! checked term by term, which certifies `Z_e`, `Z_o` and `Z`.
//!
//! Every comparison keeps an index whenever `LHS ≤ RHS + 1e-9`, so rounding
//! can only enlarge the range that gets checked.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::curve::{FamilyInstance, FamilyKind, RationalPoint};
use crate::eds::{EdsSequence, DEFAULT_DIGIT_BUDGET};
use crate::error::{Error, Result};
use crate::heights::{
    canonical_height_congruent_with_budget, canonical_height_doubling_with_budget,
    family_height_floor, HeightEstimate, HeightInterval, DEFAULT_DOUBLINGS, LOWER_SLACK,
    UPPER_SLACK,
};
use crate::number_theory::{is_perfect_square, ArithProfile, ProfileSieve};
use crate::primitive::{verdicts, ObservedZsigmondy};

/// Comparison slack in favour of keeping candidates.
pub const SLACK: f64 = 1e-9;
/// Indices up to this value are always evaluated exactly.
pub const SCAN_HORIZON: u64 = 10_000;

pub const RHO_MAX: f64 = 0.453;
pub const RHO_MAX_ODD: f64 = 0.203;
pub const OMEGA_PER_LOG: f64 = 1.443;

/// Bounds for `y² = x³ − T²x`: `Z_e ≤ 10`; `Z_o ≤ 3` if `x(P) < 0`; `Z_o ≤ 21` if `x(P)` is a square.
pub const THEOREM_EVEN_BOUND: u64 = 10;
pub const THEOREM_ODD_NEGATIVE_BOUND: u64 = 3;
pub const THEOREM_ODD_SQUARE_BOUND: u64 = 21;

const CROSSOVER_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointClass {
    NegativeX,
    SquareX,
    Generic,
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointClass::NegativeX => "negative-x",
            PointClass::SquareX => "square-x",
            PointClass::Generic => "generic",
        })
    }
}

/// Negative x first, then non-zero rational squares, otherwise generic.
pub fn classify_point(p: &RationalPoint) -> Result<PointClass> {
    let x = p
        .x()
        .ok_or_else(|| Error::Precondition("cannot classify the point at infinity".into()))?;
    if x.is_negative() {
        return Ok(PointClass::NegativeX);
    }
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    if !num.is_zero() && is_perfect_square(num) && is_perfect_square(den) {
        Ok(PointClass::SquareX)
    } else {
        Ok(PointClass::Generic)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn admits(self, n: u64) -> bool {
        match self {
            Parity::Even => n % 2 == 0,
            Parity::Odd => n % 2 == 1,
        }
    }
}

/// Lower envelope `a·n²` against upper envelope `b·ln n + c` for one inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub quadratic: f64,
    pub log_coefficient: f64,
    pub constant: f64,
}

impl Envelope {
    fn gap(&self, n: f64) -> f64 {
        self.quadratic * n * n - self.log_coefficient * n.ln() - self.constant - SLACK
    }

    /// First `n` from which the envelope rules out every index.
    ///
    /// `gap` is convex on `n ≥ 1`, so once it is positive and increasing it stays positive.
    pub fn crossover(&self) -> Result<u64> {
        if self.quadratic <= 0.0 {
            return Err(Error::OutOfRange("envelope has no quadratic growth".into()));
        }
        let mut n = 1u64;
        loop {
            let nf = n as f64;
            let slope = 2.0 * self.quadratic * nf - self.log_coefficient / nf;
            if self.gap(nf) > 0.0 && slope > 0.0 {
                return Ok(n);
            }
            n += 1;
            if n > CROSSOVER_LIMIT {
                return Err(Error::OutOfRange(
                    "envelope crossover beyond 10^8; height too small".into(),
                ));
            }
        }
    }
}

/// Indices of one parity that survive an inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateScan {
    pub parity: Parity,
    pub candidates: Vec<u64>,
    pub max: Option<u64>,
    /// Exact evaluation covered `1..=horizon`.
    pub horizon: u64,
    /// The envelope excludes every index `≥ envelope_crossover`.
    pub envelope_crossover: u64,
    pub envelope: Envelope,
}

fn run_scan(
    parity: Parity,
    envelope: Envelope,
    keep: impl Fn(&ArithProfile) -> bool,
) -> Result<CandidateScan> {
    let crossover = envelope.crossover()?;
    let horizon = SCAN_HORIZON.max(crossover);
    let sieve = ProfileSieve::new(horizon);
    let candidates: Vec<u64> = (1..=horizon)
        .filter(|&n| parity.admits(n))
        .filter(|&n| keep(&sieve.profile(n)))
        .collect();
    Ok(CandidateScan {
        parity,
        max: candidates.last().copied(),
        candidates,
        horizon,
        envelope_crossover: crossover,
        envelope,
    })
}

fn ln(v: f64) -> f64 {
    v.ln()
}

fn log_t(t: u64) -> f64 {
    ln(t as f64)
}

fn log_t2_plus_1(t: u64) -> f64 {
    ln((t as f64).powi(2) + 1.0)
}

fn n2(p: &ArithProfile) -> f64 {
    (p.n as f64).powi(2)
}

fn check_inputs(t: u64, hhat_lo: f64) -> Result<()> {
    if t < 5 {
        return Err(Error::OutOfRange(format!(
            "inequalities need T >= 5, got {t}"
        )));
    }
    if !hhat_lo.is_finite() || hhat_lo <= 0.0 {
        return Err(Error::OutOfRange(format!(
            "canonical height lower bound must be positive, got {hhat_lo}"
        )));
    }
    Ok(())
}

/// Right-hand side of the even-index inequality (everything but `n²ĥ(¾ − ρ)`).
fn even_rhs(t: u64, p: &ArithProfile) -> f64 {
    p.eta
        + p.omega as f64 * (log_t(t) + UPPER_SLACK)
        + 5.0 * log_t(t)
        + 1.5 * log_t2_plus_1(t)
        + 1.041
}

fn odd_negative_rhs(t: u64, p: &ArithProfile) -> f64 {
    p.eta
        + p.omega as f64 * log_t(t)
        + UPPER_SLACK * p.omega as f64
        + 0.5 * log_t2_plus_1(t)
        + log_t(t)
        + LOWER_SLACK
}

/// `n²ĥ(¾ − ρ(n)) ≤ η(n) + ω(n)(log T + 0.347) + 5 log T + (3/2) log(T² + 1) + 1.041`.
pub fn even_inequality_holds(t: u64, hhat: f64, p: &ArithProfile) -> bool {
    n2(p) * hhat * (0.75 - p.rho) <= even_rhs(t, p) + SLACK
}

/// `n²ĥ(1 − ρ(n)) ≤ η(n) + ω(n) log T + 0.347 ω(n) + ½ log(T² + 1) + log T + 0.116`.
pub fn odd_negative_inequality_holds(t: u64, hhat: f64, p: &ArithProfile) -> bool {
    n2(p) * hhat * (1.0 - p.rho) <= odd_negative_rhs(t, p) + SLACK
}

/// `¼(n + 1)² − (n² + 1)ρ(n) ≤ 4(0.621 η(n) + 10.596 + 1.216 ω(n))`.
pub fn odd_square_inequality_holds(p: &ArithProfile) -> bool {
    let n = p.n as f64;
    0.25 * (n + 1.0).powi(2) - (n * n + 1.0) * p.rho
        <= 4.0 * (0.621 * p.eta + 10.596 + 1.216 * p.omega as f64) + SLACK
}

/// T-free even inequality: `n²(¾ − ρ(n)) ≤ 4(0.621 η(n) + 1.216 ω(n) + 9.0776)`.
pub fn generic_even_inequality_holds(p: &ArithProfile) -> bool {
    n2(p) * (0.75 - p.rho) <= 4.0 * (0.621 * p.eta + 1.216 * p.omega as f64 + 9.0776) + SLACK
}

/// T-free odd inequality for `x(P) < 0`: `n²(1 − ρ(n)) ≤ 4(0.621 η(n) + 1.216 ω(n) + 2.085)`.
pub fn generic_odd_negative_inequality_holds(p: &ArithProfile) -> bool {
    n2(p) * (1.0 - p.rho) <= 4.0 * (0.621 * p.eta + 1.216 * p.omega as f64 + 2.085) + SLACK
}

/// `2 ln n` from η and `1.443·ln n·(log T + 0.347)` from ω.
fn log_growth(omega_weight: f64, eta_weight: f64) -> f64 {
    2.0 * eta_weight + OMEGA_PER_LOG * omega_weight
}

pub fn even_candidates(t: u64, hhat_lo: f64) -> Result<CandidateScan> {
    check_inputs(t, hhat_lo)?;
    let lt = log_t(t);
    let envelope = Envelope {
        quadratic: hhat_lo * (0.75 - RHO_MAX),
        log_coefficient: log_growth(lt + UPPER_SLACK, 1.0),
        constant: 5.0 * lt + 1.5 * log_t2_plus_1(t) + 1.041,
    };
    run_scan(Parity::Even, envelope, |p| {
        even_inequality_holds(t, hhat_lo, p)
    })
}

pub fn odd_neg_candidates(t: u64, hhat_lo: f64) -> Result<CandidateScan> {
    check_inputs(t, hhat_lo)?;
    let lt = log_t(t);
    let envelope = Envelope {
        quadratic: hhat_lo * (1.0 - RHO_MAX_ODD),
        log_coefficient: log_growth(lt + UPPER_SLACK, 1.0),
        constant: 0.5 * log_t2_plus_1(t) + lt + LOWER_SLACK,
    };
    run_scan(Parity::Odd, envelope, |p| {
        odd_negative_inequality_holds(t, hhat_lo, p)
    })
}

/// Odd indices allowed by the square-x inequality; the largest is 21.
pub fn odd_square_candidates() -> Result<CandidateScan> {
    // ¼(n+1)² − 0.203(n² + 1) ≥ 0.047 n² for all n ≥ 0
    let envelope = Envelope {
        quadratic: 0.25 - RHO_MAX_ODD,
        log_coefficient: 4.0 * log_growth(1.216, 0.621),
        constant: 4.0 * 10.596,
    };
    run_scan(Parity::Odd, envelope, odd_square_inequality_holds)
}

/// Even indices allowed by the T-free inequality; the largest is 10.
pub fn generic_even_candidates() -> Result<CandidateScan> {
    let envelope = Envelope {
        quadratic: 0.75 - RHO_MAX,
        log_coefficient: 4.0 * log_growth(1.216, 0.621),
        constant: 4.0 * 9.0776,
    };
    run_scan(Parity::Even, envelope, generic_even_inequality_holds)
}

/// Odd indices allowed by the T-free negative-x inequality; the largest is 3.
pub fn generic_odd_negative_candidates() -> Result<CandidateScan> {
    let envelope = Envelope {
        quadratic: 1.0 - RHO_MAX_ODD,
        log_coefficient: 4.0 * log_growth(1.216, 0.621),
        constant: 4.0 * 2.085,
    };
    run_scan(Parity::Odd, envelope, generic_odd_negative_inequality_holds)
}

/// `(Z_e bound, Z_o bound)` for a point class on the congruent family.
pub fn theorem_bound_for_class(class: PointClass) -> (u64, Option<u64>) {
    match class {
        PointClass::NegativeX => (THEOREM_EVEN_BOUND, Some(THEOREM_ODD_NEGATIVE_BOUND)),
        PointClass::SquareX => (THEOREM_EVEN_BOUND, Some(THEOREM_ODD_SQUARE_BOUND)),
        PointClass::Generic => (THEOREM_EVEN_BOUND, None),
    }
}

pub fn theorem_bound(instance: &FamilyInstance) -> Result<(u64, Option<u64>)> {
    if instance.kind != FamilyKind::Congruent {
        return Err(Error::Precondition(format!(
            "explicit bounds are only known for the congruent family, not {}",
            instance.kind
        )));
    }
    Ok(theorem_bound_for_class(classify_point(&instance.p)?))
}

/// `λ(T) = 1 + (2 log s + log(3√3/2)) / (2 log s − log(3√3/2))`, `s = √T³ + √(T³ + 1)`.
///
/// Decreasing in `T` towards 2; drops below 2.188 from `T = 26` on.
pub fn cube_lambda(t: u64) -> Result<f64> {
    if t < 2 {
        return Err(Error::OutOfRange(format!("lambda needs T >= 2, got {t}")));
    }
    let t3 = (t as f64).powi(3);
    let s = t3.sqrt() + (t3 + 1.0).sqrt();
    let c = (1.5 * 3f64.sqrt()).ln();
    let two_log_s = 2.0 * s.ln();
    Ok(1.0 + (two_log_s + c) / (two_log_s - c))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZsigmondyOptions {
    pub doublings: u32,
    pub digit_budget: u64,
    /// Largest sequence length the pipeline may generate.
    pub max_terms: u64,
    /// Terms generated for instances without explicit bounds.
    pub observe_terms: u64,
}

impl Default for ZsigmondyOptions {
    fn default() -> Self {
        ZsigmondyOptions {
            doublings: DEFAULT_DOUBLINGS,
            digit_budget: DEFAULT_DIGIT_BUDGET,
            max_terms: 500,
            observe_terms: 40,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZsigmondyReport {
    pub instance: String,
    pub family: FamilyKind,
    pub t: Option<u64>,
    pub point: String,
    pub point_class: PointClass,
    /// Certified enclosure of `ĥ(P)` (congruent family only).
    pub hhat: Option<HeightInterval>,
    /// Uncertified doubling estimate (other families).
    pub hhat_estimate: Option<HeightEstimate>,
    pub height_floor: Option<f64>,
    pub even_scan: Option<CandidateScan>,
    pub odd_scan: Option<CandidateScan>,
    pub candidate_even_max: Option<u64>,
    pub candidate_odd_max: Option<u64>,
    pub theorem_even_bound: Option<u64>,
    pub theorem_odd_bound: Option<u64>,
    /// Every index `1..=checked_up_to` was tested for a primitive divisor.
    pub checked_up_to: u64,
    pub failing_indices: Vec<u64>,
    #[serde(rename = "verified_Z")]
    pub verified_z: u64,
    #[serde(rename = "verified_Ze")]
    pub verified_ze: u64,
    #[serde(rename = "verified_Zo")]
    pub verified_zo: u64,
    pub certified_even: bool,
    pub certified_odd: bool,
    pub certified: bool,
}

/// Runs the full pipeline on one instance.
///
/// Congruent-family instances get a certified height interval, candidate
/// scans for each parity the point class supports, and an exhaustive check
/// of every index up to the largest candidate. Other instances get the
/// observed values over `observe_terms` terms, flagged uncertified.
pub fn zsigmondy_bound(
    instance: &FamilyInstance,
    opts: &ZsigmondyOptions,
) -> Result<ZsigmondyReport> {
    let class = classify_point(&instance.p)?;
    let mut report = ZsigmondyReport {
        instance: instance.id(),
        family: instance.kind,
        t: instance.t,
        point: instance.p.to_string(),
        point_class: class,
        hhat: None,
        hhat_estimate: None,
        height_floor: None,
        even_scan: None,
        odd_scan: None,
        candidate_even_max: None,
        candidate_odd_max: None,
        theorem_even_bound: None,
        theorem_odd_bound: None,
        checked_up_to: 0,
        failing_indices: Vec::new(),
        verified_z: 0,
        verified_ze: 0,
        verified_zo: 0,
        certified_even: false,
        certified_odd: false,
        certified: false,
    };

    let len = if instance.kind == FamilyKind::Congruent {
        let t = instance.t.expect("congruent instances carry T");
        let hhat = canonical_height_congruent_with_budget(
            t,
            &instance.p,
            opts.doublings,
            opts.digit_budget,
        )?;
        let even = even_candidates(t, hhat.lo)?;
        let odd = match class {
            PointClass::NegativeX => Some(odd_neg_candidates(t, hhat.lo)?),
            PointClass::SquareX => Some(odd_square_candidates()?),
            PointClass::Generic => None,
        };
        let (te, to) = theorem_bound_for_class(class);
        report.hhat = Some(hhat);
        report.height_floor = Some(family_height_floor(t)?);
        report.candidate_even_max = Some(even.max.unwrap_or(0));
        report.candidate_odd_max = odd.as_ref().map(|s| s.max.unwrap_or(0));
        report.theorem_even_bound = Some(te);
        report.theorem_odd_bound = to;
        report.certified_even = true;
        report.certified_odd = odd.is_some();
        report.even_scan = Some(even);
        report.odd_scan = odd;
        report
            .candidate_even_max
            .unwrap_or(0)
            .max(report.candidate_odd_max.unwrap_or(0))
            .max(1)
    } else {
        let k = opts.doublings.max(2);
        report.hhat_estimate = Some(canonical_height_doubling_with_budget(
            &instance.curve,
            &instance.p,
            k,
            opts.digit_budget,
        )?);
        opts.observe_terms.max(1)
    };

    if len > opts.max_terms {
        return Err(Error::SequenceBudget {
            needed: len,
            budget: opts.max_terms,
        });
    }
    let seq =
        EdsSequence::generate_with_budget(&instance.curve, &instance.p, len, opts.digit_budget)?;
    let failing: Vec<u64> = verdicts(&seq)
        .into_iter()
        .filter(|v| !v.has_primitive)
        .map(|v| v.n)
        .collect();
    let observed = ObservedZsigmondy::from_failing(failing);
    report.checked_up_to = len;
    report.verified_z = observed.z;
    report.verified_ze = observed.z_even;
    report.verified_zo = observed.z_odd;
    report.failing_indices = observed.failing;
    report.certified = report.certified_even && report.certified_odd;
    Ok(report)
}
