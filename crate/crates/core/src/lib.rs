//! Non-negative integer solutions of `x_1 + 2 x_2 + ... + (n-1) x_{n-1} = 0 (mod n)`.
//!
//! The solutions form a monoid under componentwise addition. This crate
//! computes its indecomposable generators, the action of the unit group of
//! `Z/nZ` on them, a direct construction of the high-degree level-1
//! generators from integer partitions, the reduction of an arbitrary linear
//! congruence to the canonical one, and a harness that checks the known
//! structural results at small `n`.

pub mod arith;
pub mod error;
pub mod gen;
pub mod monoid;
pub mod orbit;
pub mod reduce;
pub mod solution;
pub mod verify;

pub use error::{Error, Result};
pub use gen::{level1_layer, GeneratorMode, GeneratorRequest, Layer};
pub use monoid::{
    brute_force_im, enumerate_degree, indecomposables, IndecomposableSet, SweepConfig,
};
pub use orbit::{act, level, orbit_decomposition, orbit_of, Orbit, UnitGroup};
pub use reduce::{lift, reduce, GeneralCongruence, ReductionMap};
pub use solution::{PartitionForm, Solution};
pub use verify::{Check, Harness, Status, Tier, VerificationReport, VerifyLimits};
