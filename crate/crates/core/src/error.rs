use thiserror::Error;

use crate::solution::Solution;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u32),
    #[error("expected {expected} counts for this modulus, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("count at weight {weight} is negative ({value})")]
    NegativeEntry { weight: usize, value: i64 },
    #[error("count {value} at weight {weight} does not fit in 32 bits")]
    EntryTooLarge { weight: usize, value: i64 },
    #[error("weighted sum is {residue} mod {n}, not 0")]
    NotInMonoid { n: u32, residue: u64 },
    #[error("part {part} is outside 1..={max}")]
    PartOutOfRange { part: u32, max: u32 },
    #[error("parts sum to {sum}, which is not a multiple of {n}")]
    PartSumNotMultipleOfModulus { n: u32, sum: u64 },
    #[error("solutions have different moduli ({left} and {right})")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("the trivial solution has no decomposability status")]
    TrivialSolution,
    #[error("enumeration needs {needed} candidates, cap is {cap}")]
    ResourceLimit { needed: u128, cap: u64 },
    #[error("brute-force oracle is limited to n <= {max}, got {n}")]
    OracleScaleExceeded { n: u32, max: u32 },
    #[error("check is limited to n <= {max}, got {n}")]
    ScaleExceeded { n: u32, max: u32 },
    #[error("{g} is not a unit modulo {n}")]
    NotAUnit { g: u32, n: u32 },
    #[error("set is not closed under the unit group: {witness:?} is missing")]
    NotActionClosed { witness: Solution },
    #[error("partition has {parts} parts but degree is {degree}")]
    TooManyParts { parts: usize, degree: u32 },
    #[error("part {part} exceeds n - 2 = {max}")]
    PartTooLarge { part: u32, max: u32 },
    #[error("partition sums to {got}, expected n - k = {expected}")]
    WrongSum { expected: u32, got: u64 },
    #[error("degree {k} is below the completeness threshold {required}")]
    BelowThreshold { k: u32, required: u32 },
    #[error("support must be non-empty")]
    EmptySupport,
    #[error("support weight {weight} is outside 1..{n}")]
    InvalidSupport { weight: u32, n: u32 },
    #[error("restricted solution has a non-zero count at weight {weight} outside the support")]
    SupportMismatch { weight: u32 },
    #[error("congruence needs at least one weight")]
    NoWeights,
}

impl Error {
    /// Resource and scale guards, as opposed to invalid input.
    pub fn is_scale(&self) -> bool {
        matches!(
            self,
            Error::ResourceLimit { .. }
                | Error::OracleScaleExceeded { .. }
                | Error::ScaleExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
