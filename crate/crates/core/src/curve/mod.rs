//! Exact rational arithmetic on generalized Weierstrass curves
//!
//! `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`
//!
//! Short models are special cases, so one group law covers every family.

mod family;

pub use family::{find_congruent_point, FamilyInstance, FamilyKind};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mazur: the order of a rational torsion point is at most 12.
pub const MAZUR_BOUND: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeierstrassCurve {
    pub a1: BigInt,
    pub a2: BigInt,
    pub a3: BigInt,
    pub a4: BigInt,
    pub a6: BigInt,
}

/// The b-quantities of a Weierstrass model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BQuantities {
    pub b2: BigInt,
    pub b4: BigInt,
    pub b6: BigInt,
    pub b8: BigInt,
}

impl WeierstrassCurve {
    /// Builds a curve, rejecting singular models.
    pub fn new(
        a1: impl Into<BigInt>,
        a2: impl Into<BigInt>,
        a3: impl Into<BigInt>,
        a4: impl Into<BigInt>,
        a6: impl Into<BigInt>,
    ) -> Result<Self> {
        let curve = WeierstrassCurve {
            a1: a1.into(),
            a2: a2.into(),
            a3: a3.into(),
            a4: a4.into(),
            a6: a6.into(),
        };
        if curve.discriminant().is_zero() {
            return Err(Error::Singular);
        }
        Ok(curve)
    }

    /// `y² = x³ + a4·x + a6`.
    pub fn short(a4: impl Into<BigInt>, a6: impl Into<BigInt>) -> Result<Self> {
        Self::new(0, 0, 0, a4, a6)
    }

    pub fn b_quantities(&self) -> BQuantities {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        BQuantities { b2, b4, b6, b8 }
    }

    pub fn discriminant(&self) -> BigInt {
        let BQuantities { b2, b4, b6, b8 } = self.b_quantities();
        -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    fn coeff(c: &BigInt) -> BigRational {
        BigRational::from_integer(c.clone())
    }

    pub fn contains(&self, point: &RationalPoint) -> bool {
        match point {
            RationalPoint::Infinity => true,
            RationalPoint::Affine { x, y } => {
                let lhs = y * y + Self::coeff(&self.a1) * x * y + Self::coeff(&self.a3) * y;
                let rhs = x * x * x
                    + Self::coeff(&self.a2) * x * x
                    + Self::coeff(&self.a4) * x
                    + Self::coeff(&self.a6);
                lhs == rhs
            }
        }
    }

    pub fn negate(&self, p: &RationalPoint) -> RationalPoint {
        match p {
            RationalPoint::Infinity => RationalPoint::Infinity,
            RationalPoint::Affine { x, y } => RationalPoint::Affine {
                x: x.clone(),
                y: -y - Self::coeff(&self.a1) * x - Self::coeff(&self.a3),
            },
        }
    }

    pub fn add(&self, p: &RationalPoint, q: &RationalPoint) -> RationalPoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (RationalPoint::Infinity, _) => return q.clone(),
            (_, RationalPoint::Infinity) => return p.clone(),
            (RationalPoint::Affine { x: x1, y: y1 }, RationalPoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let a1 = Self::coeff(&self.a1);
        let a3 = Self::coeff(&self.a3);
        let (lambda, nu) = if x1 == x2 {
            let denom = y1 + y2 + &a1 * x2 + &a3;
            if denom.is_zero() {
                return RationalPoint::Infinity;
            }
            // tangent at p (here y1 == y2 since denom != 0)
            let a2 = Self::coeff(&self.a2);
            let a4 = Self::coeff(&self.a4);
            let a6 = Self::coeff(&self.a6);
            let three = BigRational::from_integer(3.into());
            let two = BigRational::from_integer(2.into());
            let tangent_denom = &two * y1 + &a1 * x1 + &a3;
            let lambda = (&three * x1 * x1 + &two * &a2 * x1 + &a4 - &a1 * y1) / &tangent_denom;
            let nu = (-(x1 * x1 * x1) + &a4 * x1 + &two * &a6 - &a3 * y1) / &tangent_denom;
            (lambda, nu)
        } else {
            let dx = x2 - x1;
            ((y2 - y1) / &dx, (y1 * x2 - y2 * x1) / &dx)
        };
        let x3 = &lambda * &lambda + &a1 * &lambda - Self::coeff(&self.a2) - x1 - x2;
        let y3 = -(&lambda + &a1) * &x3 - nu - a3;
        RationalPoint::Affine { x: x3, y: y3 }
    }

    pub fn double(&self, p: &RationalPoint) -> RationalPoint {
        self.add(p, p)
    }

    /// `n·P` by double-and-add; negative `n` multiplies the negated point.
    pub fn mul(&self, n: i64, p: &RationalPoint) -> RationalPoint {
        let base = if n < 0 { self.negate(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = RationalPoint::Infinity;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &pow);
            }
            k >>= 1;
            if k > 0 {
                pow = self.double(&pow);
            }
        }
        acc
    }

    /// Least `k ≤ 12` with `k·P = O`, or `None` if there is none (non-torsion).
    pub fn torsion_order(&self, p: &RationalPoint) -> Option<u64> {
        let mut q = p.clone();
        for k in 1..=MAZUR_BOUND {
            if q.is_infinity() {
                return Some(k);
            }
            q = self.add(&q, p);
        }
        None
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}, {}, {}]",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

/// A rational point, affine coordinates held in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RationalPoint {
    Infinity,
    Affine { x: BigRational, y: BigRational },
}

impl RationalPoint {
    pub fn affine(x: BigRational, y: BigRational) -> Self {
        RationalPoint::Affine { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RationalPoint::Affine {
            x: BigRational::from_integer(x.into()),
            y: BigRational::from_integer(y.into()),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, RationalPoint::Infinity)
    }

    pub fn x(&self) -> Option<&BigRational> {
        match self {
            RationalPoint::Infinity => None,
            RationalPoint::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&BigRational> {
        match self {
            RationalPoint::Infinity => None,
            RationalPoint::Affine { y, .. } => Some(y),
        }
    }

    pub fn is_integral(&self) -> bool {
        match self {
            RationalPoint::Infinity => false,
            RationalPoint::Affine { x, y } => x.is_integer() && y.is_integer(),
        }
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalPoint::Infinity => write!(f, "O"),
            RationalPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// Parses `"x,y"` with rational coordinates such as `"-4,6"` or `"1681/144,-62279/1728"`.
impl std::str::FromStr for RationalPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("o") || s.eq_ignore_ascii_case("infinity") {
            return Ok(RationalPoint::Infinity);
        }
        let s = s.trim_start_matches('(').trim_end_matches(')');
        let (xs, ys) = s
            .split_once(',')
            .ok_or_else(|| Error::Precondition(format!("point {s:?} is not of the form x,y")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<BigRational>()
                .map_err(|_| Error::Precondition(format!("cannot parse coordinate {t:?}")))
        };
        Ok(RationalPoint::affine(parse(xs)?, parse(ys)?))
    }
}

/// Checks `max(|log|r1||, |log|r2||) ≤ (3/2)·log|Δ|` for `y² = x(x − r1)(x − r2)`,
/// `Δ = (r1·r2·(r1 − r2))²`.
pub fn two_torsion_root_bound_check(r1: i64, r2: i64) -> Result<bool> {
    if r1 == 0 || r2 == 0 || r1 == r2 {
        return Err(Error::Singular);
    }
    let r1b = BigInt::from(r1);
    let r2b = BigInt::from(r2);
    let root = &r1b * &r2b * (&r1b - &r2b);
    let disc = (&root * &root).abs();
    let log_disc = crate::number_theory::log_big(disc.magnitude())?;
    let lhs = (r1.unsigned_abs() as f64)
        .ln()
        .abs()
        .max((r2.unsigned_abs() as f64).ln().abs());
    Ok(lhs <= 1.5 * log_disc + 1e-12)
}

/// Lowest-terms numerator and (positive) denominator of a rational.
pub fn num_den(x: &BigRational) -> (BigInt, BigInt) {
    (x.numer().clone(), x.denom().clone())
}

#[cfg(test)]
pub(crate) fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn congruent(t: i64) -> WeierstrassCurve {
        WeierstrassCurve::short(-t * t, 0).unwrap()
    }

    fn somos_curve() -> WeierstrassCurve {
        WeierstrassCurve::new(0, 0, 1, -1, 0).unwrap()
    }

    #[test]
    fn discriminants() {
        // y² = x³ − 25x: Δ = 16·4·25³ = 64·15625
        assert_eq!(congruent(5).discriminant(), BigInt::from(1_000_000));
        // conductor-37 curve
        assert_eq!(somos_curve().discriminant(), BigInt::from(37));
        let b = somos_curve().b_quantities();
        assert_eq!(4 * &b.b8, &b.b2 * &b.b6 - &b.b4 * &b.b4);
        assert_eq!(WeierstrassCurve::short(0, 0), Err(Error::Singular));
    }

    #[test]
    fn membership() {
        assert!(congruent(5).contains(&RationalPoint::from_ints(-4, 6)));
        assert!(somos_curve().contains(&RationalPoint::from_ints(0, 0)));
        assert!(!congruent(5).contains(&RationalPoint::from_ints(1, 1)));
        assert!(congruent(5).contains(&RationalPoint::Infinity));
    }

    #[test]
    fn doubling_on_the_25_curve() {
        let e = congruent(5);
        let p = RationalPoint::from_ints(-4, 6);
        let two_p = e.double(&p);
        assert_eq!(
            two_p,
            RationalPoint::affine(rational(1681, 144), rational(-62279, 1728))
        );
        assert_eq!(e.mul(2, &p).x(), Some(&rational(1681, 144)));
        assert!(e.contains(&two_p));
    }

    #[test]
    fn identities_and_two_torsion() {
        let e = congruent(5);
        let p = RationalPoint::from_ints(-4, 6);
        assert_eq!(e.add(&p, &RationalPoint::Infinity), p);
        assert_eq!(e.add(&RationalPoint::Infinity, &p), p);
        let t = RationalPoint::from_ints(0, 0);
        assert_eq!(e.add(&t, &t), RationalPoint::Infinity);
        assert_eq!(e.add(&p, &e.negate(&p)), RationalPoint::Infinity);
        assert_eq!(e.mul(0, &p), RationalPoint::Infinity);
        assert_eq!(e.mul(1, &p), p);
        assert_eq!(e.mul(-3, &p), e.negate(&e.mul(3, &p)));
    }

    #[test]
    fn somos_multiples_integral() {
        let e = somos_curve();
        let p = RationalPoint::from_ints(0, 0);
        for n in [1, 2, 3, 4, 6] {
            assert!(e.mul(n, &p).is_integral(), "{n}P should be integral");
        }
        assert!(!e.mul(5, &p).is_integral());
        // long-form negation: -(0,0) = (0, -1)
        assert_eq!(e.negate(&p), RationalPoint::from_ints(0, -1));
    }

    #[test]
    fn torsion() {
        let e = congruent(5);
        assert_eq!(e.torsion_order(&RationalPoint::from_ints(0, 0)), Some(2));
        assert_eq!(e.torsion_order(&RationalPoint::from_ints(-4, 6)), None);
        assert_eq!(e.torsion_order(&RationalPoint::Infinity), Some(1));
        // y² = x³ + 1 has (2, 3) of order 6
        let f = WeierstrassCurve::short(0, 1).unwrap();
        assert_eq!(f.torsion_order(&RationalPoint::from_ints(2, 3)), Some(6));
    }

    #[test]
    fn root_bound() {
        assert!(two_torsion_root_bound_check(1, -1).unwrap());
        assert!(two_torsion_root_bound_check(7, 28).unwrap());
        assert!(two_torsion_root_bound_check(2, 3).unwrap());
        assert!(two_torsion_root_bound_check(2, 2).is_err());
        assert!(two_torsion_root_bound_check(0, 2).is_err());
    }

    #[test]
    fn parse_points() {
        let p: RationalPoint = "-4,6".parse().unwrap();
        assert_eq!(p, RationalPoint::from_ints(-4, 6));
        let q: RationalPoint = "(1681/144, -62279/1728)".parse().unwrap();
        assert_eq!(q.x(), Some(&rational(1681, 144)));
        assert!("nonsense".parse::<RationalPoint>().is_err());
    }
}
