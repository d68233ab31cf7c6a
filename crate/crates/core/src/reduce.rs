//! Reduction of `w_1 x_1 + ... + w_r x_r = 0 (mod n)` to the canonical
//! congruence, and lifting generators back to the original variables.
//!
//! Weights only matter modulo `n`. Variables whose weight vanishes are
//! unconstrained and contribute their unit vectors as generators. Variables
//! sharing a residue `s` are merged into the single canonical coordinate
//! `a_s`; lifting distributes `a_s` over the group in every possible way.
//! Since every merged weight is non-zero, a decomposition of a lifted vector
//! projects to a decomposition downstairs, so lifts of indecomposables are
//! exactly the indecomposables of the original congruence.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::{sweep, SweepConfig};
use crate::solution::Solution;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralCongruence {
    pub modulus: u32,
    pub weights: Vec<i64>,
}

impl GeneralCongruence {
    pub fn new(modulus: u32, weights: Vec<i64>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::ModulusTooSmall(modulus));
        }
        if weights.is_empty() {
            return Err(Error::NoWeights);
        }
        Ok(Self { modulus, weights })
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    /// Direct membership test on the original variables.
    pub fn is_solution(&self, x: &[u32]) -> bool {
        let n = self.modulus as i128;
        x.len() == self.weights.len()
            && self
                .weights
                .iter()
                .zip(x)
                .map(|(&w, &a)| w as i128 * a as i128)
                .sum::<i128>()
                .rem_euclid(n)
                == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionMap {
    pub modulus: u32,
    pub arity: usize,
    /// Reduced weights that occur, ascending.
    pub canonical_support: Vec<u32>,
    /// Original (0-based) variable indices per reduced weight.
    pub groups: BTreeMap<u32, Vec<usize>>,
    /// Original indices whose weight is divisible by `n`.
    pub dropped: Vec<usize>,
}

pub fn reduce(gc: &GeneralCongruence) -> ReductionMap {
    let n = gc.modulus as i64;
    let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    let mut dropped = Vec::new();
    for (idx, &w) in gc.weights.iter().enumerate() {
        match w.rem_euclid(n) as u32 {
            0 => dropped.push(idx),
            s => groups.entry(s).or_default().push(idx),
        }
    }
    ReductionMap {
        modulus: gc.modulus,
        arity: gc.arity(),
        canonical_support: groups.keys().copied().collect(),
        groups,
        dropped,
    }
}

/// Generators of the canonical monoid with `a_i = 0` off `support`, from a
/// degree sweep over the supported coordinates only.
pub fn restricted_indecomposables(n: u32, support: &[u32]) -> Result<Vec<Solution>> {
    restricted_indecomposables_with(n, support, &SweepConfig::default())
}

pub fn restricted_indecomposables_with(
    n: u32,
    support: &[u32],
    cfg: &SweepConfig,
) -> Result<Vec<Solution>> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    if let Some(&w) = support.iter().find(|&&w| w == 0 || w >= n) {
        return Err(Error::InvalidSupport { weight: w, n });
    }
    let mut weights = support.to_vec();
    weights.sort_unstable();
    weights.dedup();
    sweep(n, &weights, cfg)
}

/// Compositions of `total` into `parts` non-negative entries, in
/// lexicographically decreasing order.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// Every original-variable vector lying over `restricted`.
pub fn lift(rm: &ReductionMap, restricted: &Solution) -> Result<Lifts> {
    if restricted.modulus() != rm.modulus {
        return Err(Error::ModulusMismatch {
            left: rm.modulus,
            right: restricted.modulus(),
        });
    }
    for (i, &c) in restricted.counts().iter().enumerate() {
        let w = i as u32 + 1;
        if c > 0 && !rm.groups.contains_key(&w) {
            return Err(Error::SupportMismatch { weight: w });
        }
    }
    let groups: Vec<(Vec<usize>, Vec<Vec<u32>>)> = rm
        .groups
        .iter()
        .map(|(&w, idx)| (idx.clone(), compositions(restricted.count(w), idx.len())))
        .collect();
    Ok(Lifts {
        arity: rm.arity,
        odometer: vec![0; groups.len()],
        groups,
        done: false,
    })
}

/// Iterator over the lifts of one restricted solution; odometer over the
/// per-group compositions.
#[derive(Debug, Clone)]
pub struct Lifts {
    arity: usize,
    groups: Vec<(Vec<usize>, Vec<Vec<u32>>)>,
    odometer: Vec<usize>,
    done: bool,
}

impl Iterator for Lifts {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let mut x = vec![0u32; self.arity];
        for ((indices, comps), &pos) in self.groups.iter().zip(&self.odometer) {
            for (&idx, &v) in indices.iter().zip(&comps[pos]) {
                x[idx] = v;
            }
        }
        let mut i = self.groups.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.odometer[i] += 1;
            if self.odometer[i] < self.groups[i].1.len() {
                break;
            }
            self.odometer[i] = 0;
        }
        Some(x)
    }
}

/// Indecomposable solutions of the original congruence: lifts of the
/// restricted generators plus a unit vector per dropped variable. Sorted by
/// (degree, vector).
pub fn general_indecomposables(gc: &GeneralCongruence) -> Result<Vec<Vec<u32>>> {
    general_indecomposables_with(gc, &SweepConfig::default())
}

pub fn general_indecomposables_with(
    gc: &GeneralCongruence,
    cfg: &SweepConfig,
) -> Result<Vec<Vec<u32>>> {
    let rm = reduce(gc);
    let mut out = Vec::new();
    if !rm.canonical_support.is_empty() {
        for s in restricted_indecomposables_with(gc.modulus, &rm.canonical_support, cfg)? {
            out.extend(lift(&rm, &s)?);
        }
    }
    for &j in &rm.dropped {
        let mut e = vec![0u32; rm.arity];
        e[j] = 1;
        out.push(e);
    }
    out.sort_by(|a, b| {
        let da: u64 = a.iter().map(|&v| v as u64).sum();
        let db: u64 = b.iter().map(|&v| v as u64).sum();
        (da, a).cmp(&(db, b))
    });
    out.dedup();
    Ok(out)
}
