//! Monoid elements in count-vector form and in partition form.
//!
//! A [`Solution`] for modulus `n` is a vector `(a_1, ..., a_{n-1})` of
//! non-negative counts, where weight `i` is carried by `a_i`, such that
//! `a_1 + 2 a_2 + ... + (n-1) a_{n-1}` is divisible by `n`. Values are
//! validated on construction and immutable afterwards.
//!
//! The partition form lists weight `i` exactly `a_i` times, largest first.
//! Its length is the degree and its sum is `multiplicity * n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSolution")]
pub struct Solution {
    n: u32,
    counts: Vec<u32>,
}

#[derive(Deserialize)]
struct RawSolution {
    n: u32,
    counts: Vec<i64>,
}

impl TryFrom<RawSolution> for Solution {
    type Error = Error;

    fn try_from(raw: RawSolution) -> Result<Self> {
        Solution::new(raw.n, &raw.counts)
    }
}

fn check_modulus(n: u32) -> Result<()> {
    if n < 2 {
        Err(Error::ModulusTooSmall(n))
    } else {
        Ok(())
    }
}

fn weighted_sum(counts: &[u32]) -> u64 {
    counts
        .iter()
        .enumerate()
        .map(|(i, &a)| (i as u64 + 1) * a as u64)
        .sum()
}

impl Solution {
    /// Validate signed input counts; the entry at position `i` has weight `i + 1`.
    pub fn new(n: u32, counts: &[i64]) -> Result<Self> {
        check_modulus(n)?;
        let expected = n as usize - 1;
        if counts.len() != expected {
            return Err(Error::WrongLength {
                expected,
                got: counts.len(),
            });
        }
        let mut out = Vec::with_capacity(expected);
        for (i, &value) in counts.iter().enumerate() {
            if value < 0 {
                return Err(Error::NegativeEntry {
                    weight: i + 1,
                    value,
                });
            }
            let v = u32::try_from(value).map_err(|_| Error::EntryTooLarge {
                weight: i + 1,
                value,
            })?;
            out.push(v);
        }
        Self::from_counts(n, out)
    }

    pub fn from_counts(n: u32, counts: Vec<u32>) -> Result<Self> {
        check_modulus(n)?;
        if counts.len() != n as usize - 1 {
            return Err(Error::WrongLength {
                expected: n as usize - 1,
                got: counts.len(),
            });
        }
        let residue = weighted_sum(&counts) % n as u64;
        if residue != 0 {
            return Err(Error::NotInMonoid { n, residue });
        }
        Ok(Self { n, counts })
    }

    /// Callers guarantee membership; checked in debug builds.
    pub(crate) fn from_counts_unchecked(n: u32, counts: Vec<u32>) -> Self {
        debug_assert_eq!(counts.len(), n as usize - 1);
        debug_assert_eq!(weighted_sum(&counts) % n as u64, 0);
        Self { n, counts }
    }

    pub fn zero(n: u32) -> Result<Self> {
        check_modulus(n)?;
        Ok(Self {
            n,
            counts: vec![0; n as usize - 1],
        })
    }

    /// `E_i = n * e_i`.
    pub fn extremal(n: u32, i: u32) -> Result<Self> {
        let mut e = Self::zero(n)?;
        if i == 0 || i >= n {
            return Err(Error::PartOutOfRange {
                part: i,
                max: n - 1,
            });
        }
        e.counts[i as usize - 1] = n;
        Ok(e)
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Count carried by weight `i` (1-based).
    pub fn count(&self, i: u32) -> u32 {
        self.counts[i as usize - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&a| a == 0)
    }

    pub fn degree(&self) -> u64 {
        self.counts.iter().map(|&a| a as u64).sum()
    }

    pub fn weighted_sum(&self) -> u64 {
        weighted_sum(&self.counts)
    }

    pub fn multiplicity(&self) -> u64 {
        let s = self.weighted_sum();
        assert!(
            s.is_multiple_of(self.n as u64),
            "invariant violated: {self:?} is not in the monoid"
        );
        s / self.n as u64
    }

    /// Componentwise `self <= other`.
    pub fn is_dominated_by(&self, other: &Solution) -> bool {
        self.n == other.n && self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Solution) -> Result<Solution> {
        self.same_modulus(other)?;
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Solution::from_counts_unchecked(self.n, counts))
    }

    /// `self - other` when `other <= self` componentwise, else `None`.
    pub fn checked_sub(&self, other: &Solution) -> Result<Option<Solution>> {
        self.same_modulus(other)?;
        let counts: Option<Vec<u32>> = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a.checked_sub(*b))
            .collect();
        Ok(counts.map(|c| Solution::from_counts_unchecked(self.n, c)))
    }

    fn same_modulus(&self, other: &Solution) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn to_partition_form(&self) -> PartitionForm {
        let mut parts = Vec::with_capacity(self.degree() as usize);
        for (i, &a) in self.counts.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i as u32 + 1, a as usize));
        }
        PartitionForm { n: self.n, parts }
    }
}

impl fmt::Debug for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Unordered multiset of weights, stored weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPartitionForm")]
pub struct PartitionForm {
    n: u32,
    parts: Vec<u32>,
}

#[derive(Deserialize)]
struct RawPartitionForm {
    n: u32,
    parts: Vec<u32>,
}

impl TryFrom<RawPartitionForm> for PartitionForm {
    type Error = Error;

    fn try_from(raw: RawPartitionForm) -> Result<Self> {
        PartitionForm::new(raw.n, raw.parts)
    }
}

impl PartitionForm {
    /// Parts in any order; they are sorted into canonical form.
    pub fn new(n: u32, mut parts: Vec<u32>) -> Result<Self> {
        check_modulus(n)?;
        if let Some(&bad) = parts.iter().find(|&&y| y == 0 || y >= n) {
            return Err(Error::PartOutOfRange {
                part: bad,
                max: n - 1,
            });
        }
        let sum: u64 = parts.iter().map(|&y| y as u64).sum();
        if !sum.is_multiple_of(n as u64) {
            return Err(Error::PartSumNotMultipleOfModulus { n, sum });
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { n, parts })
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn to_solution(&self) -> Solution {
        let mut counts = vec![0u32; self.n as usize - 1];
        for &y in &self.parts {
            counts[y as usize - 1] += 1;
        }
        Solution::from_counts_unchecked(self.n, counts)
    }

    /// Multiply every part by the unit `g` modulo `n`; this is the unit
    /// group action in partition form.
    pub fn scaled(&self, g: u32) -> Result<PartitionForm> {
        if g == 0 || g >= self.n || crate::arith::gcd(g as u64, self.n as u64) != 1 {
            return Err(Error::NotAUnit { g, n: self.n });
        }
        let n = self.n as u64;
        let parts = self
            .parts
            .iter()
            .map(|&y| ((y as u64 * g as u64) % n) as u32)
            .collect();
        PartitionForm::new(self.n, parts)
    }
}

impl TryFrom<PartitionForm> for Solution {
    type Error = Error;

    fn try_from(p: PartitionForm) -> Result<Self> {
        Ok(p.to_solution())
    }
}
