//! The parametrized curve families and their marked points.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{RationalPoint, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::number_theory::{is_squarefree, squarefree_part};

/// Search bounds used by [`FamilyInstance::instantiate`] for congruent curves.
pub const DEFAULT_SMALL_SEARCH: u64 = 16;
pub const DEFAULT_TRIANGLE_SEARCH: u64 = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// `y² = x³ − T²x`, T squarefree.
    Congruent,
    /// `y² = x³ − T²(T² − 1)x` with `P = (1 − T², 1 − T²)`, `Q = (0, 0)`.
    Twist,
    /// `y² = (x + 1)(x − T)(x − 4T)` with `P = (0, 2T)`, `Q = (−1, 0)`.
    Product,
    /// `y² = x³ + T³ + 1` with `P = (−T, 1)`.
    Cube,
    /// `y² + y = x³ − x` with `P = (0, 0)`.
    Somos4Curve,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::Congruent,
        FamilyKind::Twist,
        FamilyKind::Product,
        FamilyKind::Cube,
        FamilyKind::Somos4Curve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Congruent => "congruent",
            FamilyKind::Twist => "twist",
            FamilyKind::Product => "product",
            FamilyKind::Cube => "cube",
            FamilyKind::Somos4Curve => "somos4-curve",
        }
    }

    pub fn takes_parameter(self) -> bool {
        self != FamilyKind::Somos4Curve
    }

    /// Smallest admissible parameter.
    pub fn min_t(self) -> u64 {
        match self {
            FamilyKind::Congruent => 5,
            FamilyKind::Twist | FamilyKind::Cube => 2,
            FamilyKind::Product => 1,
            FamilyKind::Somos4Curve => 0,
        }
    }

    pub fn curve(self, t: u64) -> Result<WeierstrassCurve> {
        let tt = BigInt::from(t);
        let t2 = &tt * &tt;
        match self {
            FamilyKind::Congruent => WeierstrassCurve::short(-&t2, 0),
            FamilyKind::Twist => WeierstrassCurve::short(-(&t2 * (&t2 - BigInt::from(1))), 0),
            FamilyKind::Product => {
                WeierstrassCurve::new(0, 1 - 5 * &tt, 0, 4 * &t2 - 5 * &tt, 4 * &t2)
            }
            FamilyKind::Cube => WeierstrassCurve::short(0, &t2 * &tt + 1),
            FamilyKind::Somos4Curve => WeierstrassCurve::new(0, 0, 1, -1, 0),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == key || (key == "somos" && *k == FamilyKind::Somos4Curve))
            .ok_or_else(|| Error::Precondition(format!("unknown family {s:?}")))
    }
}

/// A curve from one of the families together with its marked point.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyInstance {
    pub kind: FamilyKind,
    pub t: Option<u64>,
    pub curve: WeierstrassCurve,
    pub p: RationalPoint,
    /// A rational 2-torsion point, where the family names one.
    pub q: Option<RationalPoint>,
}

impl FamilyInstance {
    /// Builds the family member with its standard marked point.
    ///
    /// Congruent curves have no closed-form point, so one is searched for
    /// (see [`find_congruent_point`]); `T = 5` yields `(−4, 6)`.
    pub fn instantiate(kind: FamilyKind, t: Option<u64>) -> Result<Self> {
        let t = check_parameter(kind, t)?;
        let p = match kind {
            FamilyKind::Congruent => {
                find_congruent_point(t, DEFAULT_SMALL_SEARCH, DEFAULT_TRIANGLE_SEARCH)?
            }
            FamilyKind::Twist => {
                let v = 1 - (t as i128) * (t as i128);
                let v = BigRational::from_integer(v.into());
                RationalPoint::affine(v.clone(), v)
            }
            FamilyKind::Product => RationalPoint::affine(
                BigRational::from_integer(0.into()),
                BigRational::from_integer(BigInt::from(2u64) * t),
            ),
            FamilyKind::Cube => RationalPoint::affine(
                BigRational::from_integer(-BigInt::from(t)),
                BigRational::from_integer(1.into()),
            ),
            FamilyKind::Somos4Curve => RationalPoint::from_ints(0, 0),
        };
        Self::build(kind, t, p)
    }

    /// Same family member with a caller-chosen marked point.
    pub fn with_point(kind: FamilyKind, t: Option<u64>, p: RationalPoint) -> Result<Self> {
        let t = check_parameter(kind, t)?;
        Self::build(kind, t, p)
    }

    /// The twist-family point `(T², T²)`, whose x-coordinate is a square.
    pub fn twist_square_point(t: u64) -> Result<Self> {
        let v = BigRational::from_integer(BigInt::from(t) * t);
        Self::with_point(
            FamilyKind::Twist,
            Some(t),
            RationalPoint::affine(v.clone(), v),
        )
    }

    fn build(kind: FamilyKind, t: u64, p: RationalPoint) -> Result<Self> {
        let curve = kind.curve(t)?;
        if !curve.contains(&p) {
            return Err(Error::NotOnCurve);
        }
        if let Some(k) = curve.torsion_order(&p) {
            return Err(Error::Torsion(k));
        }
        let q = match kind {
            FamilyKind::Congruent | FamilyKind::Twist => Some(RationalPoint::from_ints(0, 0)),
            FamilyKind::Product => Some(RationalPoint::from_ints(-1, 0)),
            FamilyKind::Cube | FamilyKind::Somos4Curve => None,
        };
        if let Some(q) = &q {
            debug_assert!(curve.contains(q) && curve.double(q).is_infinity());
        }
        Ok(FamilyInstance {
            kind,
            t: kind.takes_parameter().then_some(t),
            curve,
            p,
            q,
        })
    }

    /// Short label such as `congruent:T=5`.
    pub fn id(&self) -> String {
        match self.t {
            Some(t) => format!("{}:T={t}", self.kind),
            None => self.kind.to_string(),
        }
    }
}

fn check_parameter(kind: FamilyKind, t: Option<u64>) -> Result<u64> {
    if !kind.takes_parameter() {
        return Ok(0);
    }
    let t = t.ok_or_else(|| Error::Precondition(format!("family {kind} needs a parameter T")))?;
    if t < kind.min_t() {
        return Err(Error::OutOfRange(format!(
            "family {kind} needs T >= {}, got {t}",
            kind.min_t()
        )));
    }
    if kind == FamilyKind::Congruent && !is_squarefree(t) {
        return Err(Error::NotSquarefree(t));
    }
    Ok(t)
}

/// Finds a non-torsion point on `y² = x³ − T²x` with negative x-coordinate.
///
/// First scans `x = a/b²` in `[−T, 0)` for `b ≤ small_bound` and keeps the
/// point of least naive height. Failing that, it walks primitive
/// Pythagorean triangles `(m² − n², 2mn, m² + n²)` with `m ≤ triangle_bound`
/// looking for one whose area has squarefree part `T`; such a triangle gives
/// a point with square x-coordinate, and adding `(0, 0)` moves it onto the
/// bounded real component.
pub fn find_congruent_point(
    t: u64,
    small_bound: u64,
    triangle_bound: u64,
) -> Result<RationalPoint> {
    let curve = FamilyKind::Congruent.curve(t)?;
    if let Some(p) = small_negative_point(t, small_bound) {
        debug_assert!(curve.contains(&p));
        return Ok(p);
    }
    if let Some(q) = triangle_point(t, triangle_bound) {
        debug_assert!(curve.contains(&q));
        return Ok(curve.add(&q, &RationalPoint::from_ints(0, 0)));
    }
    Err(Error::NoPointFound {
        t,
        bound: triangle_bound,
    })
}

fn small_negative_point(t: u64, bound: u64) -> Option<RationalPoint> {
    let t2 = BigInt::from(t) * t;
    let mut best: Option<(BigInt, RationalPoint)> = None;
    for b in 1..=bound {
        let b2 = BigInt::from(b) * b;
        let b4 = &b2 * &b2;
        let lo = -(BigInt::from(t) * &b2);
        let mut a = lo.clone();
        while a < BigInt::from(0) {
            if a.gcd(&BigInt::from(b)) == BigInt::from(1) {
                let height = a.abs().max(b2.clone());
                let better = best.as_ref().map_or(true, |(h, _)| height < *h);
                // a·(a² − T²b⁴) = (y·b³)²
                let val = &a * (&a * &a - &t2 * &b4);
                if better && val.is_positive() {
                    let mag = val.magnitude();
                    let root = mag.sqrt();
                    if &root * &root == *mag {
                        let x = BigRational::new(a.clone(), b2.clone());
                        let y = BigRational::new(BigInt::from(root), &b2 * BigInt::from(b));
                        best = Some((height, RationalPoint::affine(x, y)));
                    }
                }
            }
            a += 1;
        }
    }
    best.map(|(_, p)| p)
}

fn triangle_point(t: u64, bound: u64) -> Option<RationalPoint> {
    for m in 2..=bound {
        for n in 1..m {
            if (m - n) % 2 == 0 || m.gcd(&n) != 1 {
                continue;
            }
            // the four factors are pairwise coprime
            let parts = [m, n, m - n, m + n];
            let core: u64 = parts.iter().map(|&v| squarefree_part(v)).product();
            if core != t {
                continue;
            }
            let area = parts.iter().map(|&v| BigUint::from(v)).product::<BigUint>();
            let k2 = area / t;
            let k = k2.sqrt();
            debug_assert_eq!(&k * &k, k2);
            // hypotenuse (m² + n²)/k, x = (hyp/2)²
            let hyp = BigRational::new(BigInt::from(m * m + n * n), BigInt::from(k));
            let half = hyp / BigRational::from_integer(2.into());
            let x = &half * &half;
            let y2 = &x * &x * &x - BigRational::from_integer(BigInt::from(t) * t) * &x;
            let y = rational_sqrt(&y2)?;
            return Some(RationalPoint::affine(x, y));
        }
    }
    None
}

fn rational_sqrt(v: &BigRational) -> Option<BigRational> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer().magnitude();
    let d = v.denom().magnitude();
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d)
        .then(|| BigRational::new(BigInt::from(rn), BigInt::from(rd)))
}
