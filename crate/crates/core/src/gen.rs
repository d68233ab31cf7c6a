//! Direct construction of the level-1 layer of high degree.
//!
//! A multiplicity-1 solution of degree `k` is a partition of `n` into `k`
//! parts below `n`. Subtracting one from every part leaves a partition of
//! `n - k` (padded with zeros), and this is reversible. Once
//! `k >= ceil(n/2) + 1` the construction reaches every multiplicity-1
//! solution of degree `k`, each one sits in its own orbit, and every such
//! orbit has exactly `phi(n)` elements.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{partitions, PartitionSpec};
use crate::error::{Error, Result};
use crate::orbit::{Orbit, UnitGroup};
use crate::solution::Solution;

/// `ceil(n/2)`, written as `n - floor(n/2)`.
pub fn ceil_half(n: u32) -> u32 {
    n - n / 2
}

/// Smallest degree for which the construction is complete: `ceil(n/2) + 1`.
pub fn completeness_threshold(n: u32) -> u32 {
    ceil_half(n) + 1
}

/// Degree bound used by the open conjectures: `floor(n/2) + 2`.
pub fn conjecture_threshold(n: u32) -> u32 {
    n / 2 + 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorMode {
    Mult1Only,
    FullOrbits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorRequest {
    pub modulus: u32,
    pub degree: u32,
    pub mode: GeneratorMode,
}

impl GeneratorRequest {
    pub fn new(modulus: u32, degree: u32, mode: GeneratorMode) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::ModulusTooSmall(modulus));
        }
        Ok(Self {
            modulus,
            degree,
            mode,
        })
    }

    pub fn meets_threshold(&self) -> bool {
        self.degree >= completeness_threshold(self.modulus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Layer {
    Mult1(Vec<Solution>),
    Orbits(Vec<Orbit>),
}

impl Layer {
    /// Every solution in the layer, orbit members included.
    pub fn solutions(&self) -> Vec<Solution> {
        match self {
            Layer::Mult1(s) => s.clone(),
            Layer::Orbits(orbits) => orbits
                .iter()
                .flat_map(|o| o.elements.iter().cloned())
                .collect(),
        }
    }
}

/// The solution with parts `b_j + 1`, padded with ones up to `k` parts.
pub fn mult1_from_partition(n: u32, k: u32, partition: &[u32]) -> Result<Solution> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    if partition.len() > k as usize {
        return Err(Error::TooManyParts {
            parts: partition.len(),
            degree: k,
        });
    }
    if let Some(&b) = partition.iter().find(|&&b| b > n.saturating_sub(2)) {
        return Err(Error::PartTooLarge {
            part: b,
            max: n.saturating_sub(2),
        });
    }
    let sum: u64 = partition.iter().map(|&b| b as u64).sum();
    if sum + k as u64 != n as u64 {
        return Err(Error::WrongSum {
            expected: n.saturating_sub(k),
            got: sum,
        });
    }
    let mut counts = vec![0u32; n as usize - 1];
    for &b in partition {
        counts[b as usize] += 1;
    }
    counts[0] += k - partition.len() as u32;
    Ok(Solution::from_counts_unchecked(n, counts))
}

/// The level-1 layer of degree `k`; refuses below the completeness threshold.
pub fn level1_layer(req: &GeneratorRequest) -> Result<Layer> {
    if !req.meets_threshold() {
        return Err(Error::BelowThreshold {
            k: req.degree,
            required: completeness_threshold(req.modulus),
        });
    }
    build_layer(req)
}

/// Same construction without the threshold check. Below the threshold the
/// result is only a subset of the multiplicity-1 solutions.
pub fn forced_layer(req: &GeneratorRequest) -> Result<Layer> {
    build_layer(req)
}

fn build_layer(req: &GeneratorRequest) -> Result<Layer> {
    let (n, k) = (req.modulus, req.degree);
    if k > n || k == 0 || n < 3 && k < n {
        return Ok(match req.mode {
            GeneratorMode::Mult1Only => Layer::Mult1(Vec::new()),
            GeneratorMode::FullOrbits => Layer::Orbits(Vec::new()),
        });
    }
    let spec = PartitionSpec::new(n - k)
        .max_part((n - 2).max(1))
        .max_len(k);
    let mult1 = partitions(spec)
        .map(|p| mult1_from_partition(n, k, &p))
        .collect::<Result<Vec<_>>>()?;
    match req.mode {
        GeneratorMode::Mult1Only => Ok(Layer::Mult1(mult1)),
        GeneratorMode::FullOrbits => {
            let group = UnitGroup::shared(n)?;
            let mut covered = BTreeSet::new();
            let mut orbits = Vec::new();
            for a in &mult1 {
                // Only possible below the threshold: two seeds in one orbit.
                if covered.contains(a) {
                    continue;
                }
                let orbit = group.orbit_of(a)?;
                covered.extend(orbit.elements.iter().cloned());
                orbits.push(orbit);
            }
            Ok(Layer::Orbits(orbits))
        }
    }
}
