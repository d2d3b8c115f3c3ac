//! Elliptic divisibility sequences and explicit Zsigmondy bounds.
//!
//! For a non-torsion rational point `P` on an elliptic curve, write
//! `x(nP) = A_n / B_n` in lowest terms. The denominators `B_n` form a
//! divisibility sequence, and all but finitely many of them have a
//! primitive divisor (a prime dividing no earlier term). This crate
//! generates the sequences exactly, detects primitive divisors without
//! factoring the terms, and evaluates the explicit inequalities that bound
//! where primitive divisors can be missing for `y² = x³ − T²x`.
//!
//! ```
//! use edskit_core::{FamilyInstance, FamilyKind, ZsigmondyOptions, zsigmondy_bound};
//!
//! let inst = FamilyInstance::instantiate(FamilyKind::Congruent, Some(5)).unwrap();
//! let report = zsigmondy_bound(&inst, &ZsigmondyOptions::default()).unwrap();
//! assert!(report.certified);
//! assert_eq!(report.verified_z, 1);
//! ```

pub mod curve;
pub mod eds;
pub mod error;
pub mod heights;
pub mod number_theory;
pub mod primitive;
pub mod somos;
pub mod zsigmondy;

pub use curve::{FamilyInstance, FamilyKind, RationalPoint, WeierstrassCurve};
pub use eds::{EdsSequence, EdsTerm, DEFAULT_DIGIT_BUDGET};
pub use error::{Error, ErrorKind, Result};
pub use heights::{HeightEstimate, HeightInterval};
pub use number_theory::ArithProfile;
pub use primitive::{ObservedZsigmondy, PrimitiveVerdict};
pub use somos::SomosSequence;
pub use zsigmondy::{
    zsigmondy_bound, CandidateScan, PointClass, ZsigmondyOptions, ZsigmondyReport,
};
