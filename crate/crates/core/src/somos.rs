//! Somos-4: `u_n·u_{n−4} = u_{n−1}·u_{n−3} + u_{n−2}²`.
//!
//! With seeds 1, 1, 1, 1 the sequence is the square root of the odd-index
//! denominators of `x(nP)` for `P = (0, 0)` on `y² + y = x³ − x`:
//!
//! ```text
//! u_k² = B_{|2k − 5|}
//! ```
//!
//! (`u_1`, `u_2` pair with `B_3`, `B_1` through `B_{−n} = B_n`.) The
//! alignment was fixed by comparing both generators directly.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::curve::{FamilyKind, RationalPoint};
use crate::eds::EdsSequence;
use crate::error::{Error, Result};
use crate::primitive::primitive_part_against_all;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SomosSequence {
    pub seeds: [BigUint; 4],
    pub terms: Vec<BigUint>,
}

impl SomosSequence {
    /// `u_k`, 1-based.
    pub fn u(&self, k: usize) -> &BigUint {
        &self.terms[k - 1]
    }
}

pub fn somos4(len: usize, seeds: [u64; 4]) -> Result<SomosSequence> {
    if len < 4 {
        return Err(Error::Precondition(format!(
            "need at least 4 terms, got {len}"
        )));
    }
    if seeds.contains(&0) {
        return Err(Error::Precondition("seeds must be non-zero".into()));
    }
    let seeds = seeds.map(BigUint::from);
    let mut terms: Vec<BigUint> = seeds.to_vec();
    for n in 4..len {
        let num = &terms[n - 1] * &terms[n - 3] + &terms[n - 2] * &terms[n - 2];
        let (q, r) = num.div_rem(&terms[n - 4]);
        if !r.is_zero() {
            return Err(Error::InexactDivision { index: n + 1 });
        }
        terms.push(q);
    }
    Ok(SomosSequence { seeds, terms })
}

/// Index of the odd sequence term matching `u_k`.
pub fn eds_index_for_somos(k: u64) -> u64 {
    (2 * k as i64 - 5).unsigned_abs()
}

/// Checks `u_k² = B_{|2k−5|}` for `k = 1..=len`.
pub fn somos4_eds_correspondence(len: usize) -> Result<bool> {
    if len == 0 {
        return Err(Error::Precondition("need at least one term".into()));
    }
    let u = somos4(len.max(4), [1, 1, 1, 1])?;
    let max_index = (1..=len as u64).map(eds_index_for_somos).max().unwrap();
    let curve = FamilyKind::Somos4Curve.curve(0)?;
    let seq = EdsSequence::generate(&curve, &RationalPoint::from_ints(0, 0), max_index)?;
    Ok((1..=len).all(|k| {
        let uk = u.u(k);
        uk * uk == *seq.b(eds_index_for_somos(k as u64))
    }))
}

/// Indices `k ≤ len` whose `u_k` has no prime absent from `u_1..u_{k−1}`.
pub fn somos4_primitive_check(len: usize) -> Result<Vec<u64>> {
    if len < 5 {
        return Err(Error::Precondition(format!(
            "need at least 5 terms, got {len}"
        )));
    }
    let u = somos4(len, [1, 1, 1, 1])?;
    Ok((0..len)
        .filter(|&i| primitive_part_against_all(&u.terms, i).is_one())
        .map(|i| i as u64 + 1)
        .collect())
}
