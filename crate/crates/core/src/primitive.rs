//! Primitive divisors without factoring the terms.
//!
//! A prime `p | B_n` is new exactly when it divides none of `B_{n/q}` for the
//! primes `q | n`: any earlier `B_m` containing `p` would force `p | B_gcd(m,n)`,
//! and `gcd(m, n)` is a proper divisor of `n`. So stripping from `B_n` every
//! prime it shares with those few terms leaves the primitive part.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eds::EdsSequence;
use crate::error::{Error, Result};
use crate::number_theory::{prime_factors, remove_shared_factors};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveVerdict {
    pub n: u64,
    pub has_primitive: bool,
    pub primitive_part: BigUint,
    pub fundprop_holds: bool,
}

fn check_index(seq: &EdsSequence, n: u64) -> Result<()> {
    if n == 0 || n > seq.len() {
        return Err(Error::Precondition(format!(
            "index {n} outside 1..={}",
            seq.len()
        )));
    }
    Ok(())
}

/// Product of `B_{n/q}` over the primes `q | n`.
fn lattice_product(seq: &EdsSequence, n: u64) -> BigUint {
    prime_factors(n)
        .into_iter()
        .map(|(q, _)| seq.b(n / q))
        .fold(BigUint::one(), |acc, b| acc * b)
}

/// The largest divisor of `B_n` coprime to every earlier term.
///
/// For `n = 1` this is `B_1` itself: all of its primes count as primitive.
pub fn primitive_part(seq: &EdsSequence, n: u64) -> Result<BigUint> {
    check_index(seq, n)?;
    if n == 1 {
        return Ok(seq.b(1).clone());
    }
    Ok(remove_shared_factors(seq.b(n), &lattice_product(seq, n)))
}

pub fn has_primitive_divisor(seq: &EdsSequence, n: u64) -> Result<bool> {
    Ok(!primitive_part(seq, n)?.is_one())
}

fn fundprop_product_divides(seq: &EdsSequence, n: u64) -> bool {
    let bound = prime_factors(n)
        .into_iter()
        .map(|(p, _)| BigUint::from(p * p) * seq.b(n / p))
        .fold(BigUint::one(), |acc, v| acc * v);
    (&bound % seq.b(n)).is_zero()
}

/// `B_n | ∏_{p | n} p²·B_{n/p}`. Every term without a primitive divisor passes.
pub fn fundprop_divides(seq: &EdsSequence, n: u64) -> Result<bool> {
    check_index(seq, n)?;
    if n == 1 {
        return Err(Error::Precondition(
            "the divisibility test needs n >= 2".into(),
        ));
    }
    Ok(fundprop_product_divides(seq, n))
}

pub fn verdict(seq: &EdsSequence, n: u64) -> Result<PrimitiveVerdict> {
    let part = primitive_part(seq, n)?;
    // empty product for n = 1: the test reads B_1 | 1
    let fundprop_holds = if n == 1 {
        seq.b(1).is_one()
    } else {
        fundprop_product_divides(seq, n)
    };
    Ok(PrimitiveVerdict {
        n,
        has_primitive: !part.is_one(),
        primitive_part: part,
        fundprop_holds,
    })
}

/// Verdicts for `n = 1..=N`, computed in parallel.
pub fn verdicts(seq: &EdsSequence) -> Vec<PrimitiveVerdict> {
    (1..=seq.len())
        .into_par_iter()
        .map(|n| verdict(seq, n).expect("index in range"))
        .collect()
}

/// Zsigmondy values observed over the generated range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservedZsigmondy {
    pub z: u64,
    pub z_even: u64,
    pub z_odd: u64,
    pub failing: Vec<u64>,
}

impl ObservedZsigmondy {
    pub fn from_failing(failing: Vec<u64>) -> Self {
        let max_where =
            |pred: fn(&u64) -> bool| failing.iter().copied().filter(pred).max().unwrap_or(0);
        ObservedZsigmondy {
            z: failing.iter().copied().max().unwrap_or(0),
            z_even: max_where(|n| n % 2 == 0),
            z_odd: max_where(|n| n % 2 == 1),
            failing,
        }
    }
}

/// Indices `n ≤ N` without a primitive divisor and their (even/odd) maxima.
///
/// These are lower bounds only; whether they are the true Zsigmondy values
/// depends on having generated far enough.
pub fn observed_zsigmondy(seq: &EdsSequence) -> ObservedZsigmondy {
    let failing = verdicts(seq)
        .into_iter()
        .filter(|v| !v.has_primitive)
        .map(|v| v.n)
        .collect();
    ObservedZsigmondy::from_failing(failing)
}

/// Primitive part of `u_k` against every earlier term of an arbitrary sequence.
///
/// Without a divisibility structure there is no shortcut through `k/q`.
pub fn primitive_part_against_all(terms: &[BigUint], k: usize) -> BigUint {
    let mut rest = terms[k].clone();
    for earlier in &terms[..k] {
        if rest.is_one() {
            break;
        }
        if !earlier.is_one() {
            rest = remove_shared_factors(&rest, earlier);
        }
    }
    rest
}

/// `gcd(part, B_m) = 1` for every `m < n`.
pub fn coprime_to_earlier(seq: &EdsSequence, n: u64, part: &BigUint) -> bool {
    (1..n).all(|m| part.gcd(seq.b(m)).is_one())
}
