//! Degree slices of the solution monoid and its indecomposable generators.
//!
//! [`indecomposables`] sweeps degrees `1..=n` in ascending order. A member of
//! `M(k)` is decomposable exactly when some indecomposable of smaller degree
//! sits below it componentwise, because `B <= A` with `B` in the monoid forces
//! `A - B` into the monoid as well. Every indecomposable has degree at most
//! `n`, which bounds the sweep.

use std::collections::BTreeMap;
use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::solution::Solution;

/// Largest modulus [`brute_force_im`] accepts.
pub const ORACLE_MAX_N: u32 = 15;

/// Guard against combinatorial blow-up in degree sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    /// Maximum number of count vectors the sweep may visit.
    pub candidate_cap: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        // Enough for the full sweep at n = 15 (about 7.8e7 vectors).
        Self {
            candidate_cap: 100_000_000,
        }
    }
}

/// `C(a, b)` in 128 bits; saturates instead of overflowing.
fn binomial(a: u64, b: u64) -> u128 {
    let b = b.min(a - b.min(a));
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = match acc.checked_mul((a - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of count vectors with `support` free coordinates and total `k`.
pub fn multiset_count(support: u64, k: u64) -> u128 {
    if support == 0 {
        return u128::from(k == 0);
    }
    binomial(k + support - 1, support - 1)
}

/// Ascending weights `1..n`.
pub(crate) fn full_support(n: u32) -> Vec<u32> {
    (1..n).collect()
}

/// Visit every member of `M(k)` supported on `weights` (ascending), in
/// lexicographic order of the count vector. `first` restricts the count of
/// the first support weight.
fn for_each_member<F>(n: u32, weights: &[u32], k: u32, first: Option<u32>, mut visit: F)
where
    F: FnMut(&[u32]),
{
    let mut counts = vec![0u32; n as usize - 1];
    if weights.is_empty() {
        if k == 0 {
            visit(&counts);
        }
        return;
    }
    #[allow(clippy::too_many_arguments)]
    fn rec<F: FnMut(&[u32])>(
        n: u64,
        weights: &[u32],
        idx: usize,
        remaining: u32,
        residue: u64,
        first: Option<u32>,
        counts: &mut [u32],
        visit: &mut F,
    ) {
        let w = weights[idx] as u64;
        let slot = weights[idx] as usize - 1;
        if idx + 1 == weights.len() {
            if first.is_some_and(|f| f != remaining) {
                return;
            }
            if (residue + w * remaining as u64).is_multiple_of(n) {
                counts[slot] = remaining;
                visit(counts);
                counts[slot] = 0;
            }
            return;
        }
        let range = match first {
            Some(f) if f <= remaining => f..=f,
            Some(_) => return,
            None => 0..=remaining,
        };
        for a in range {
            counts[slot] = a;
            rec(
                n,
                weights,
                idx + 1,
                remaining - a,
                (residue + w * a as u64) % n,
                None,
                counts,
                visit,
            );
        }
        counts[slot] = 0;
    }
    rec(n as u64, weights, 0, k, 0, first, &mut counts, &mut visit);
}

/// All elements of `M(k)`, lexicographically ordered.
pub fn enumerate_degree(n: u32, k: u32) -> Result<Vec<Solution>> {
    enumerate_degree_with(n, k, &SweepConfig::default())
}

pub fn enumerate_degree_with(n: u32, k: u32, cfg: &SweepConfig) -> Result<Vec<Solution>> {
    enumerate_supported(n, &full_support(n), k, cfg)
}

pub(crate) fn enumerate_supported(
    n: u32,
    weights: &[u32],
    k: u32,
    cfg: &SweepConfig,
) -> Result<Vec<Solution>> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    let needed = multiset_count(weights.len() as u64, k as u64);
    if needed > cfg.candidate_cap as u128 {
        return Err(Error::ResourceLimit {
            needed,
            cap: cfg.candidate_cap,
        });
    }
    let mut out = Vec::new();
    for_each_member(n, weights, k, None, |c| {
        out.push(Solution::from_counts_unchecked(n, c.to_vec()))
    });
    Ok(out)
}

/// Flattened rows of indecomposables found so far, with support masks for a
/// cheap necessary test before the componentwise comparison.
struct DominanceIndex {
    width: usize,
    rows: Vec<u32>,
    masks: Vec<u64>,
}

fn mask_of(counts: &[u32]) -> u64 {
    counts
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
}

impl DominanceIndex {
    fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            masks: Vec::new(),
        }
    }

    fn push(&mut self, counts: &[u32]) {
        self.rows.extend_from_slice(counts);
        self.masks.push(mask_of(counts));
    }

    fn dominates_something(&self, counts: &[u32]) -> bool {
        let mask = mask_of(counts);
        self.masks
            .iter()
            .zip(self.rows.chunks_exact(self.width))
            .any(|(&m, row)| m & !mask == 0 && row.iter().zip(counts).all(|(b, a)| b <= a))
    }
}

/// Ascending-degree sweep restricted to `weights`; returns the generators in
/// (degree, lexicographic) order.
pub(crate) fn sweep(n: u32, weights: &[u32], cfg: &SweepConfig) -> Result<Vec<Solution>> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    let s = weights.len() as u64;
    let needed: u128 = (1..=n as u64).map(|k| multiset_count(s, k)).sum();
    if needed > cfg.candidate_cap as u128 {
        return Err(Error::ResourceLimit {
            needed,
            cap: cfg.candidate_cap,
        });
    }
    let mut index = DominanceIndex::new(n as usize - 1);
    let mut found = Vec::new();
    for k in 1..=n {
        // Members of one degree never dominate each other, so the level can
        // be tested in parallel against the lower degrees only.
        let layer: Vec<Vec<Vec<u32>>> = (0..=k)
            .into_par_iter()
            .map(|first| {
                let mut keep = Vec::new();
                for_each_member(n, weights, k, Some(first), |c| {
                    if !index.dominates_something(c) {
                        keep.push(c.to_vec());
                    }
                });
                keep
            })
            .collect();
        for counts in layer.into_iter().flatten() {
            index.push(&counts);
            found.push(Solution::from_counts_unchecked(n, counts));
        }
    }
    Ok(found)
}

/// The indecomposable generators of `M`, ordered by (degree, counts).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSet")]
pub struct IndecomposableSet {
    n: u32,
    elements: Vec<Solution>,
    #[serde(skip)]
    by_degree: BTreeMap<u64, Range<usize>>,
}

#[derive(Deserialize)]
struct RawSet {
    n: u32,
    elements: Vec<Solution>,
}

impl TryFrom<RawSet> for IndecomposableSet {
    type Error = Error;

    fn try_from(raw: RawSet) -> Result<Self> {
        IndecomposableSet::from_elements(raw.n, raw.elements)
    }
}

impl IndecomposableSet {
    /// Canonicalize a list of generators. Indecomposability itself is not
    /// re-derived here.
    pub fn from_elements(n: u32, mut elements: Vec<Solution>) -> Result<Self> {
        if n < 2 {
            return Err(Error::ModulusTooSmall(n));
        }
        for e in &elements {
            if e.modulus() != n {
                return Err(Error::ModulusMismatch {
                    left: n,
                    right: e.modulus(),
                });
            }
            if e.is_zero() {
                return Err(Error::TrivialSolution);
            }
        }
        elements.sort_by(|a, b| (a.degree(), a).cmp(&(b.degree(), b)));
        elements.dedup();
        let mut by_degree = BTreeMap::new();
        let mut start = 0;
        while start < elements.len() {
            let d = elements[start].degree();
            let end = start + elements[start..].partition_point(|e| e.degree() == d);
            by_degree.insert(d, start..end);
            start = end;
        }
        Ok(Self {
            n,
            elements,
            by_degree,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn elements(&self) -> &[Solution] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `IM(k)`.
    pub fn degree_slice(&self, k: u64) -> &[Solution] {
        match self.by_degree.get(&k) {
            Some(r) => &self.elements[r.clone()],
            None => &[],
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = u64> + '_ {
        self.by_degree.keys().copied()
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.by_degree.keys().next_back().copied()
    }

    pub fn contains(&self, a: &Solution) -> bool {
        self.degree_slice(a.degree()).binary_search(a).is_ok()
    }

    /// Greedy factorization into generators: repeatedly strip off any
    /// generator lying below what remains.
    pub fn factor(&self, a: &Solution) -> Option<Vec<Solution>> {
        let mut rest = a.clone();
        let mut parts = Vec::new();
        while !rest.is_zero() {
            let next = self
                .elements
                .iter()
                .find(|b| b.is_dominated_by(&rest))?
                .clone();
            rest = rest.checked_sub(&next).ok()??;
            parts.push(next);
        }
        Some(parts)
    }
}

/// `IM` for modulus `n`.
pub fn indecomposables(n: u32) -> Result<IndecomposableSet> {
    indecomposables_with(n, &SweepConfig::default())
}

pub fn indecomposables_with(n: u32, cfg: &SweepConfig) -> Result<IndecomposableSet> {
    let elements = sweep(n, &full_support(n), cfg)?;
    IndecomposableSet::from_elements(n, elements)
}

/// Whether a non-trivial `a` is indecomposable.
///
/// With `context` holding every generator of degree below `deg(a)`, this is a
/// dominance test against that list. Without it, a reachability table over
/// (residue, degree) decides whether some sub-vector strictly between `0` and
/// `a` lies in the monoid.
pub fn is_indecomposable(a: &Solution, context: Option<&[Solution]>) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::TrivialSolution);
    }
    if let Some(lower) = context {
        let d = a.degree();
        return Ok(!lower.iter().any(|b| b.degree() < d && b.is_dominated_by(a)));
    }
    let n = a.modulus() as usize;
    let d = a.degree() as usize;
    let mut reach = vec![false; n * (d + 1)];
    reach[0] = true;
    let mut top = 0;
    for (i, &c) in a.counts().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let w = i + 1;
        let mut next = reach.clone();
        for deg in 0..=top {
            for r in 0..n {
                if !reach[deg * n + r] {
                    continue;
                }
                for take in 1..=c as usize {
                    next[(deg + take) * n + (r + w * take) % n] = true;
                }
            }
        }
        top += c as usize;
        reach = next;
    }
    Ok(!(1..d).any(|deg| reach[deg * n]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extremal {
    pub index: u32,
    pub solution: Solution,
    pub indecomposable: bool,
}

/// `E_i = n e_i` for `i = 1..n-1`, flagged indecomposable iff `gcd(i, n) = 1`.
pub fn extremals(n: u32) -> Result<Vec<Extremal>> {
    (1..n.max(2))
        .map(|i| {
            Ok(Extremal {
                index: i,
                solution: Solution::extremal(n, i)?,
                indecomposable: gcd(i as u64, n as u64) == 1,
            })
        })
        .collect()
}

/// Naive reference computation of `IM`: every vector of total at most `n`,
/// membership by direct residue check, indecomposability by trying every
/// sub-vector. Only meant for validating [`indecomposables`].
pub fn brute_force_im(n: u32) -> Result<IndecomposableSet> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    if n > ORACLE_MAX_N {
        return Err(Error::OracleScaleExceeded {
            n,
            max: ORACLE_MAX_N,
        });
    }
    let len = n as usize - 1;
    let in_monoid = |v: &[u32]| {
        v.iter()
            .enumerate()
            .map(|(i, &a)| (i as u64 + 1) * a as u64)
            .sum::<u64>()
            % n as u64
            == 0
    };
    let has_proper_part = |a: &[u32]| {
        let mut b = vec![0u32; len];
        loop {
            // odometer over 0 <= b <= a
            let mut i = 0;
            while i < len && b[i] == a[i] {
                b[i] = 0;
                i += 1;
            }
            if i == len {
                return false;
            }
            b[i] += 1;
            if b.as_slice() != a && in_monoid(&b) {
                return true;
            }
        }
    };
    let mut found = Vec::new();
    let mut v = vec![0u32; len];
    let mut total = 0u32;
    'outer: loop {
        // odometer over all vectors with total at most n
        let mut i = 0;
        loop {
            if i == len {
                break 'outer;
            }
            v[i] += 1;
            total += 1;
            if total <= n {
                break;
            }
            total -= v[i];
            v[i] = 0;
            i += 1;
        }
        if in_monoid(&v) && !has_proper_part(&v) {
            found.push(Solution::from_counts(n, v.clone()).expect("member"));
        }
    }
    IndecomposableSet::from_elements(n, found)
}
