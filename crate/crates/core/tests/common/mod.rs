#![allow(dead_code)]

use edskit_core::{EdsSequence, FamilyInstance, FamilyKind};

pub const CONGRUENT_T: [u64; 5] = [5, 6, 7, 13, 15];

pub fn congruent(t: u64) -> FamilyInstance {
    FamilyInstance::instantiate(FamilyKind::Congruent, Some(t)).unwrap()
}

/// One instance from every family.
pub fn instances() -> Vec<FamilyInstance> {
    vec![
        congruent(5),
        congruent(6),
        FamilyInstance::instantiate(FamilyKind::Twist, Some(3)).unwrap(),
        FamilyInstance::instantiate(FamilyKind::Product, Some(2)).unwrap(),
        FamilyInstance::instantiate(FamilyKind::Cube, Some(2)).unwrap(),
        FamilyInstance::instantiate(FamilyKind::Somos4Curve, None).unwrap(),
    ]
}

pub fn sequence(inst: &FamilyInstance, len: u64) -> EdsSequence {
    EdsSequence::generate(&inst.curve, &inst.p, len).unwrap()
}
