//! Fixtures shared by the benchmarks.

use edskit_core::{EdsSequence, FamilyInstance, FamilyKind};
use num_bigint::BigUint;

pub fn congruent_five() -> FamilyInstance {
    FamilyInstance::instantiate(FamilyKind::Congruent, Some(5)).expect("T = 5 has a point")
}

pub fn somos_curve() -> FamilyInstance {
    FamilyInstance::instantiate(FamilyKind::Somos4Curve, None).expect("fixed instance")
}

pub fn sequence(inst: &FamilyInstance, len: u64) -> EdsSequence {
    EdsSequence::generate(&inst.curve, &inst.p, len).expect("non-torsion point")
}

/// A pair sharing a few small primes, with big cofactors on both sides.
pub fn gcd_pair(bits: u64) -> (BigUint, BigUint) {
    let shared = BigUint::from(2u32).pow(40) * BigUint::from(3u32).pow(25) * 7u32;
    let a = (BigUint::from(1u32) << bits) + 297u32;
    let b = (BigUint::from(1u32) << (bits / 2)) + 1u32;
    (&a * &shared, &b * &shared * 11u32)
}
