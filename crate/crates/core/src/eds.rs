//! Elliptic divisibility sequences: `x(nP) = A_n / B_n` in lowest terms.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::curve::{FamilyKind, RationalPoint, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::number_theory::{is_prime, valuation};

/// Default cap on the size of a single term, in decimal digits.
pub const DEFAULT_DIGIT_BUDGET: u64 = 50_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdsTerm {
    pub n: u64,
    /// Numerator of `x(nP)`.
    pub a: BigInt,
    /// Denominator of `x(nP)`, always at least 1.
    pub b: BigUint,
}

impl EdsTerm {
    pub fn x(&self) -> BigRational {
        BigRational::new(self.a.clone(), BigInt::from(self.b.clone()))
    }
}

/// Decimal digits of the larger of `|A|` and `B`, rounded up.
pub(crate) fn approx_digits(a: &BigInt, b: &BigUint) -> u64 {
    let bits = a.bits().max(b.bits());
    (bits as f64 * std::f64::consts::LOG10_2).ceil() as u64 + 1
}

/// Terms `1..=N` of the sequence attached to `(E, P)`.
#[derive(Debug, Clone)]
pub struct EdsSequence {
    pub curve: WeierstrassCurve,
    pub point: RationalPoint,
    terms: Vec<EdsTerm>,
}

impl EdsSequence {
    pub fn generate(curve: &WeierstrassCurve, p: &RationalPoint, len: u64) -> Result<Self> {
        Self::generate_with_budget(curve, p, len, DEFAULT_DIGIT_BUDGET)
    }

    /// Computes `nP = (n − 1)P + P` for `n = 1..=len`.
    pub fn generate_with_budget(
        curve: &WeierstrassCurve,
        p: &RationalPoint,
        len: u64,
        digit_budget: u64,
    ) -> Result<Self> {
        if len == 0 {
            return Err(Error::Precondition(
                "sequence length must be at least 1".into(),
            ));
        }
        if !curve.contains(p) {
            return Err(Error::NotOnCurve);
        }
        if let Some(k) = curve.torsion_order(p) {
            return Err(Error::Torsion(k));
        }
        let mut terms = Vec::with_capacity(len as usize);
        let mut current = RationalPoint::Infinity;
        for n in 1..=len {
            current = curve.add(&current, p);
            let x = current.x().ok_or(Error::Torsion(n))?;
            let a = x.numer().clone();
            let b = x.denom().magnitude().clone();
            let digits = approx_digits(&a, &b);
            if digits > digit_budget {
                return Err(Error::DigitBudget {
                    index: n,
                    digits,
                    budget: digit_budget,
                });
            }
            terms.push(EdsTerm { n, a, b });
        }
        Ok(EdsSequence {
            curve: curve.clone(),
            point: p.clone(),
            terms,
        })
    }

    pub fn len(&self) -> u64 {
        self.terms.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[EdsTerm] {
        &self.terms
    }

    /// Term `n` (1-based). Panics when out of range.
    pub fn term(&self, n: u64) -> &EdsTerm {
        &self.terms[(n - 1) as usize]
    }

    pub fn b(&self, n: u64) -> &BigUint {
        &self.term(n).b
    }

    pub fn a(&self, n: u64) -> &BigInt {
        &self.term(n).a
    }

    fn require_index(&self, n: u64, what: &str) -> Result<()> {
        if n == 0 || n > self.len() {
            return Err(Error::Precondition(format!(
                "{what} index {n} outside 1..={}",
                self.len()
            )));
        }
        Ok(())
    }

    /// `gcd(B_m, B_n) == B_gcd(m, n)`.
    pub fn check_gcd_lemma(&self, m: u64, n: u64) -> Result<bool> {
        self.require_index(m, "gcd lemma")?;
        self.require_index(n, "gcd lemma")?;
        let d = m.gcd(&n);
        Ok(self.b(m).gcd(self.b(n)) == *self.b(d))
    }

    /// `ord_p(B_nk) − ord_p(B_n) − 2·ord_p(k)` for any prime `p` dividing `B_n`.
    ///
    /// Zero whenever the valuation lemma holds; used to record behaviour at `p = 2`.
    pub fn ord_lemma_gap(&self, p: u64, n: u64, k: u64) -> Result<i64> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        self.require_index(n, "ord lemma")?;
        let nk = n
            .checked_mul(k)
            .filter(|&v| v >= 1 && v <= self.len())
            .ok_or_else(|| Error::Precondition(format!("n·k = {n}·{k} outside the sequence")))?;
        if !(self.b(n) % p).is_zero() {
            return Err(Error::Precondition(format!("{p} does not divide B_{n}")));
        }
        let ord_nk = valuation(self.b(nk), p) as i64;
        let ord_n = valuation(self.b(n), p) as i64;
        let ord_k = valuation(&BigUint::from(k), p) as i64;
        Ok(ord_nk - ord_n - 2 * ord_k)
    }

    /// `ord_p(B_nk) = ord_p(B_n) + 2·ord_p(k)` for an odd prime `p | B_n`.
    pub fn check_ord_lemma(&self, p: u64, n: u64, k: u64) -> Result<bool> {
        if p == 2 {
            return Err(Error::Precondition(
                "the valuation check is restricted to odd primes".into(),
            ));
        }
        Ok(self.ord_lemma_gap(p, n, k)? == 0)
    }

    fn require_congruent(&self, t: u64) -> Result<()> {
        if self.curve != FamilyKind::Congruent.curve(t)? {
            return Err(Error::Precondition(format!(
                "duplication identity applies to y^2 = x^3 - T^2 x with T = {t} only"
            )));
        }
        Ok(())
    }

    /// Numerator `(A² + T²B²)²` and denominator `4AB(A² − T²B²)` of `x(2mP)`
    /// before reduction, for the congruent curve with parameter `t`.
    pub fn doubling_parts(&self, t: u64, m: u64) -> Result<(BigInt, BigInt)> {
        self.require_congruent(t)?;
        self.require_index(m, "duplication")?;
        let a = self.a(m);
        let b = BigInt::from(self.b(m).clone());
        let t2 = BigInt::from(t) * t;
        let a2 = a * a;
        let tb2 = &t2 * &b * &b;
        let s = &a2 + &tb2;
        let num = &s * &s;
        let den = 4 * a * &b * (&a2 - &tb2);
        Ok((num, den))
    }

    /// The cancellation `gcd((A² + T²B²)², 4AB(A² − T²B²))` in the doubling formula.
    pub fn doubling_gcd(&self, t: u64, m: u64) -> Result<BigUint> {
        let (num, den) = self.doubling_parts(t, m)?;
        Ok(num.magnitude().gcd(den.magnitude()))
    }

    /// Checks that the closed-form doubling reproduces term `2m` and that the
    /// cancellation is at most `4T⁴`.
    pub fn check_duplication_identity(&self, t: u64, m: u64) -> Result<bool> {
        if 2 * m > self.len() {
            return Err(Error::Precondition(format!(
                "term 2m = {} not generated",
                2 * m
            )));
        }
        let (num, den) = self.doubling_parts(t, m)?;
        if den.is_zero() {
            return Ok(false);
        }
        let matches_term = BigRational::new(num.clone(), den.clone()) == self.term(2 * m).x();
        let g = num.magnitude().gcd(den.magnitude());
        let cap = BigUint::from(4u32) * BigUint::from(t).pow(4);
        Ok(matches_term && g <= cap)
    }

    /// Whether `m | n ⇒ B_m | B_n` holds across the whole sequence.
    pub fn is_divisibility_sequence(&self) -> bool {
        (1..=self.len()).all(|m| {
            (2 * m..=self.len())
                .step_by(m as usize)
                .all(|n| (self.b(n) % self.b(m)).is_zero())
        })
    }

    /// `B_1 = 1`, the common case for integral points.
    pub fn starts_integral(&self) -> bool {
        self.b(1).is_one()
    }
}
