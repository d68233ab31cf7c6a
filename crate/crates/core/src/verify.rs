//! Machine checks of the structural theorems and conjectures about the
//! solution monoid, with structured reports.
//!
//! Checks come in two tiers. Proved statements (Noether bound, orbit
//! identities, the quadratic condition, trailing ones, the level-1 layer
//! count, the level-2 orbit-size remark) must never produce a witness; a
//! witness there is a bug. Open conjectures are only reported.
//!
//! Every witness can be re-examined on its own with [`Harness::reproduces`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, partition_count_u64, partitions, totient, units_mod, PartitionSpec};
use crate::error::{Error, Result};
use crate::gen::{
    completeness_threshold, conjecture_threshold, level1_layer, GeneratorMode, GeneratorRequest,
};
use crate::monoid::{
    enumerate_degree_with, indecomposables_with, is_indecomposable, IndecomposableSet, SweepConfig,
};
use crate::orbit::{level, orbit_decomposition, Orbit, UnitGroup};
use crate::solution::{PartitionForm, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Noether,
    Identities,
    Quadratic,
    LemmaOnes,
    Conjecture3,
    Level2Remark,
    Conjecture1,
    Conjecture2,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Noether,
        Check::Identities,
        Check::Quadratic,
        Check::LemmaOnes,
        Check::Conjecture3,
        Check::Level2Remark,
        Check::Conjecture1,
        Check::Conjecture2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Noether => "noether",
            Check::Identities => "identities",
            Check::Quadratic => "quadratic",
            Check::LemmaOnes => "lemma-ones",
            Check::Conjecture3 => "conjecture3",
            Check::Level2Remark => "level2-remark",
            Check::Conjecture1 => "conjecture1",
            Check::Conjecture2 => "conjecture2",
        }
    }

    pub fn tier(self) -> Tier {
        match self {
            Check::Conjecture1 | Check::Conjecture2 => Tier::Open,
            _ => Tier::Proved,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Check::ALL.iter().map(|c| c.name()).collect();
                format!("unknown check '{s}', expected one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    Proved,
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "proved-and-verified")]
    ProvedAndVerified,
    #[serde(rename = "conjecture-holds-in-range")]
    ConjectureHoldsInRange,
    #[serde(rename = "FAILED")]
    Failed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::ProvedAndVerified => "proved-and-verified",
            Status::ConjectureHoldsInRange => "conjecture-holds-in-range",
            Status::Failed => "FAILED",
        })
    }
}

/// A counterexample. `degree` is always set; the other fields depend on the
/// check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub degree: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<Solution>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<u32>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: Check,
    pub modulus: u32,
    pub scope: String,
    pub tier: Tier,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub counts: BTreeMap<String, u64>,
}

impl VerificationReport {
    fn new(check: Check, n: u32, scope: String) -> Self {
        Self {
            check_name: check,
            modulus: n,
            scope,
            tier: check.tier(),
            status: Status::ProvedAndVerified,
            witnesses: Vec::new(),
            counts: BTreeMap::new(),
        }
    }

    fn bump(&mut self, key: &str, by: u64) {
        *self.counts.entry(key.to_string()).or_insert(0) += by;
    }

    fn finish(mut self) -> Self {
        self.status = match (self.witnesses.is_empty(), self.tier) {
            (false, _) => Status::Failed,
            (true, Tier::Proved) => Status::ProvedAndVerified,
            (true, Tier::Open) => Status::ConjectureHoldsInRange,
        };
        self
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Failed
    }

    /// Consistency of status, tier and witnesses.
    pub fn is_well_formed(&self) -> bool {
        let status_ok = match self.status {
            Status::Failed => !self.witnesses.is_empty(),
            Status::ProvedAndVerified => self.witnesses.is_empty() && self.tier == Tier::Proved,
            Status::ConjectureHoldsInRange => self.witnesses.is_empty() && self.tier == Tier::Open,
        };
        status_ok && self.tier == self.check_name.tier()
    }
}

/// Desk-scale caps. Rough release-build runtimes on one core: every check
/// at n = 12 takes well under a second, F(15) under two seconds, F(18)
/// over a minute and F(19) about five.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyLimits {
    /// Checks that need all of `IM` or whole degree slices.
    pub exhaustive_max_n: u32,
    /// Checks driven only by partitions of `n`.
    pub generator_max_n: u32,
    /// [`Harness::summary_table`].
    pub table_max_n: u32,
    pub sweep: SweepConfig,
}

impl Default for VerifyLimits {
    fn default() -> Self {
        Self {
            exhaustive_max_n: 12,
            generator_max_n: 20,
            table_max_n: 15,
            sweep: SweepConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: u32,
    #[serde(rename = "F")]
    pub f: u64,
    pub p: u64,
    pub phi: u64,
    pub kac_bound: u64,
    pub bound_met: bool,
}

/// Runs checks, sharing one `IM` computation per modulus.
#[derive(Debug, Default)]
pub struct Harness {
    limits: VerifyLimits,
    im_cache: Mutex<HashMap<u32, Arc<IndecomposableSet>>>,
}

fn in_range(n: u32, max: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    if n > max {
        return Err(Error::ScaleExceeded { n, max });
    }
    Ok(())
}

/// `u g^2 - (k + u + v) g + v (n + 1)`.
fn quadratic_value(n: u32, k: u64, g: u32, u: u64, v: u64) -> i128 {
    let (n, k, g, u, v) = (n as i128, k as i128, g as i128, u as i128, v as i128);
    u * g * g - (k + u + v) * g + v * (n + 1)
}

/// Whether `(A, g)` meets the hypothesis `k >= g m(A) - m(g A)` and violates
/// the quadratic condition.
fn quadratic_violation(a: &Solution, g: u32) -> Option<bool> {
    let group = UnitGroup::shared(a.modulus()).ok()?;
    let b = group.act(g, a).ok()?;
    let (k, u, v) = (a.degree(), a.multiplicity(), b.multiplicity());
    let hypothesis = k as i128 >= g as i128 * u as i128 - v as i128;
    Some(hypothesis && quadratic_value(a.modulus(), k, g, u, v) < 0)
}

/// Failing parts of the trailing-ones property for a multiplicity-1 form.
fn trailing_ones_failure(pf: &PartitionForm) -> Option<String> {
    let n = pf.modulus();
    let parts = pf.parts();
    let k = parts.len() as u32;
    let ones = |m: usize| parts.len() >= m && parts[parts.len() - m..].iter().all(|&y| y == 1);
    if k >= conjecture_threshold(n) && !ones(3) {
        return Some(format!(
            "degree {k} >= floor(n/2)+2 but last three parts {parts:?}"
        ));
    }
    if k >= completeness_threshold(n) && !ones(2) {
        return Some(format!(
            "degree {k} >= ceil(n/2)+1 but last two parts {parts:?}"
        ));
    }
    None
}

fn level2_failure(a: &Solution) -> Option<String> {
    let n = a.modulus();
    if a.degree() * 3 < 2 * n as u64 + 8 || level(a) != 2 {
        return None;
    }
    let phi = totient(n as u64) as usize;
    let size = crate::orbit::orbit_of(a).size;
    if size == phi || 2 * size == phi {
        None
    } else {
        Some(format!("orbit size {size}, phi(n) = {phi}"))
    }
}

fn identity_failure(a: &Solution) -> Option<String> {
    let n = a.modulus();
    let group = UnitGroup::shared(n).ok()?;
    let neg = group.act(n - 1, a).ok()?;
    if a.multiplicity() + neg.multiplicity() != a.degree() {
        return Some("m(A) + m(-A) != deg(A)".into());
    }
    let orbit = group.orbit_of(a).ok()?;
    let total: u64 = orbit.elements.iter().map(Solution::multiplicity).sum();
    if 2 * total != a.degree() * orbit.size as u64 {
        return Some(format!(
            "orbit multiplicity sum {total}, size {}, degree {}",
            orbit.size,
            a.degree()
        ));
    }
    None
}

/// Disagreement between the decomposability status of `a` (degree at least
/// `n`) and the Noether characterization.
fn noether_failure(a: &Solution) -> Option<String> {
    let n = a.modulus();
    let d = a.degree();
    if d < n as u64 || a.is_zero() {
        return None;
    }
    let actual = is_indecomposable(a, None).ok()?;
    let predicted = d == n as u64
        && a.counts().iter().filter(|&&c| c > 0).count() == 1
        && a.counts()
            .iter()
            .position(|&c| c > 0)
            .is_some_and(|i| gcd(i as u64 + 1, n as u64) == 1);
    (actual != predicted)
        .then(|| format!("indecomposable = {actual}, characterization predicts {predicted}"))
}

fn layer_orbits(im: &IndecomposableSet, k: u64) -> Vec<Orbit> {
    orbit_decomposition(im.degree_slice(k)).expect("IM(k) is closed under the unit group")
}

impl Harness {
    pub fn new(limits: VerifyLimits) -> Self {
        Self {
            limits,
            im_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn limits(&self) -> &VerifyLimits {
        &self.limits
    }

    /// `IM` for `n`, computed once per harness.
    pub fn im(&self, n: u32) -> Result<Arc<IndecomposableSet>> {
        if let Some(im) = self.im_cache.lock().unwrap().get(&n) {
            return Ok(im.clone());
        }
        let im = Arc::new(indecomposables_with(n, &self.limits.sweep)?);
        self.im_cache.lock().unwrap().insert(n, im.clone());
        Ok(im)
    }

    pub fn run(&self, check: Check, n: u32) -> Result<VerificationReport> {
        match check {
            Check::Noether => self.check_noether(n),
            Check::Identities => self.check_identities(n),
            Check::Quadratic => self.check_quadratic(n, n as u64),
            Check::LemmaOnes => self.check_lemma_ones(n),
            Check::Conjecture3 => self.check_conjecture3(n),
            Check::Level2Remark => self.check_level2_remark(n),
            Check::Conjecture1 => self.check_conjecture1(n),
            Check::Conjecture2 => self.check_conjecture2(n),
        }
    }

    /// Run every (check, n) pair; reports come back ordered by (check, n)
    /// whatever the thread count.
    pub fn run_many(&self, checks: &[Check], moduli: &[u32]) -> Result<Vec<VerificationReport>> {
        let pairs: Vec<(Check, u32)> = checks
            .iter()
            .flat_map(|&c| moduli.iter().map(move |&n| (c, n)))
            .collect();
        let mut reports = pairs
            .par_iter()
            .map(|&(c, n)| self.run(c, n))
            .collect::<Result<Vec<_>>>()?;
        reports.sort_by_key(|r| (r.check_name, r.modulus));
        Ok(reports)
    }

    /// Exhaustive check of `u g^2 - (k+u+v) g + v(n+1) >= 0` over all
    /// `A` in `M(k)`, `k <= k_max`, and all units `g` with `k >= g u - v`.
    pub fn check_quadratic(&self, n: u32, k_max: u64) -> Result<VerificationReport> {
        in_range(n, self.limits.exhaustive_max_n)?;
        let group = UnitGroup::shared(n)?;
        let mut report = VerificationReport::new(
            Check::Quadratic,
            n,
            format!("all A in M(k), 0 <= k <= {k_max}, all units g"),
        );
        for k in 0..=k_max {
            let slice = enumerate_degree_with(n, k as u32, &self.limits.sweep)?;
            report.bump("solutions", slice.len() as u64);
            for a in &slice {
                let u = a.multiplicity();
                for &g in group.elements() {
                    let v = group.act(g, a)?.multiplicity();
                    report.bump("pairs", 1);
                    if (k as i128) < g as i128 * u as i128 - v as i128 {
                        continue;
                    }
                    report.bump("hypothesis_met", 1);
                    let q = quadratic_value(n, k, g, u, v);
                    if q < 0 {
                        report.witnesses.push(Witness {
                            degree: k,
                            solution: Some(a.clone()),
                            unit: Some(g),
                            detail: format!("u={u} v={v} value={q}"),
                        });
                    }
                }
            }
        }
        Ok(report.finish())
    }

    /// Trailing ones of every multiplicity-1 solution, generated from the
    /// partitions of `n` with parts below `n`.
    pub fn check_lemma_ones(&self, n: u32) -> Result<VerificationReport> {
        in_range(n, self.limits.generator_max_n)?;
        let mut report = VerificationReport::new(
            Check::LemmaOnes,
            n,
            "every multiplicity-1 solution".to_string(),
        );
        for parts in partitions(PartitionSpec::new(n).max_part(n - 1)) {
            let pf = PartitionForm::new(n, parts)?;
            let k = pf.parts().len() as u32;
            report.bump("tested", 1);
            if k >= completeness_threshold(n) {
                report.bump("two_ones_hypothesis", 1);
            }
            if k >= conjecture_threshold(n) {
                report.bump("three_ones_hypothesis", 1);
            }
            if let Some(detail) = trailing_ones_failure(&pf) {
                report.witnesses.push(Witness {
                    degree: k as u64,
                    solution: Some(pf.to_solution()),
                    unit: None,
                    detail,
                });
            }
        }
        Ok(report.finish())
    }

    fn conjecture3_failures(&self, im: &IndecomposableSet, k: u64) -> Result<Vec<String>> {
        let n = im.modulus();
        let phi = totient(n as u64) as usize;
        let expected = partition_count_u64(n - k as u32);
        let orbits = layer_orbits(im, k);
        let level1: Vec<&Orbit> = orbits.iter().filter(|o| o.level == 1).collect();
        let mut failures = Vec::new();
        if level1.len() as u64 != expected {
            failures.push(format!(
                "{} level-1 orbits, expected p({}) = {expected}",
                level1.len(),
                n as u64 - k
            ));
        }
        for o in &level1 {
            let ones = o.multiplicity_one().count();
            if o.size != phi || ones != 1 {
                failures.push(format!(
                    "orbit of {} has size {} (phi = {phi}) and {ones} multiplicity-1 members",
                    o.representative, o.size
                ));
            }
        }
        let req = GeneratorRequest::new(n, k as u32, GeneratorMode::FullOrbits)?;
        let generated: BTreeSet<Solution> = level1_layer(&req)?.solutions().into_iter().collect();
        let exhaustive: BTreeSet<Solution> = level1
            .iter()
            .flat_map(|o| o.elements.iter().cloned())
            .collect();
        if generated != exhaustive {
            failures.push(format!(
                "generator layer has {} solutions, exhaustive level-1 set has {}",
                generated.len(),
                exhaustive.len()
            ));
        }
        Ok(failures)
    }

    /// Level-1 orbits of `IM(k)` for `k >= ceil(n/2) + 1`: `p(n-k)` of them,
    /// each of size `phi(n)` with one multiplicity-1 member, and matching the
    /// generator output. This range contains `k >= floor(n/2) + 2`.
    pub fn check_conjecture3(&self, n: u32) -> Result<VerificationReport> {
        in_range(n, self.limits.exhaustive_max_n)?;
        let im = self.im(n)?;
        let lo = completeness_threshold(n);
        let mut report = VerificationReport::new(
            Check::Conjecture3,
            n,
            format!("{lo} <= k <= {n} (ceil(n/2)+1 = {lo})"),
        );
        for k in lo..=n {
            report.bump("degrees", 1);
            let orbits = layer_orbits(&im, k as u64);
            let level1 = orbits.iter().filter(|o| o.level == 1).count() as u64;
            report.bump("level1_orbits", level1);
            for detail in self.conjecture3_failures(&im, k as u64)? {
                report.witnesses.push(Witness {
                    degree: k as u64,
                    solution: None,
                    unit: None,
                    detail,
                });
            }
        }
        Ok(report.finish())
    }

    /// Open: every `A` in `IM(k)` with `k >= floor(n/2) + 2` has level 1.
    pub fn check_conjecture1(&self, n: u32) -> Result<VerificationReport> {
        in_range(n, self.limits.exhaustive_max_n)?;
        let im = self.im(n)?;
        let lo = conjecture_threshold(n);
        let mut report =
            VerificationReport::new(Check::Conjecture1, n, format!("{lo} <= k <= {n}"));
        for k in lo..=n {
            for a in im.degree_slice(k as u64) {
                report.bump("tested", 1);
                let l = level(a);
                if l != 1 {
                    report.witnesses.push(Witness {
                        degree: k as u64,
                        solution: Some(a.clone()),
                        unit: None,
                        detail: format!("level {l}"),
                    });
                }
            }
        }
        Ok(report.finish())
    }

    /// Open: `IM(k)` splits into exactly `p(n-k)` orbits for
    /// `k >= floor(n/2) + 2`.
    pub fn check_conjecture2(&self, n: u32) -> Result<VerificationReport> {
        in_range(n, self.limits.exhaustive_max_n)?;
        let im = self.im(n)?;
        let lo = conjecture_threshold(n);
        let mut report =
            VerificationReport::new(Check::Conjecture2, n, format!("{lo} <= k <= {n}"));
        for k in lo..=n {
            report.bump("degrees", 1);
            let orbits = layer_orbits(&im, k as u64).len() as u64;
            report.bump("orbits", orbits);
            let expected = partition_count_u64(n - k);
            if orbits != expected {
                report.witnesses.push(Witness {
                    degree: k as u64,
                    solution: None,
                    unit: None,
                    detail: format!("{orbits} orbits, expected p({}) = {expected}", n - k),
                });
            }
        }
        Ok(report.finish())
    }

    /// Degrees of `IM` never exceed `n`, the degree-`n` slice is
    /// `{E_i : gcd(i, n) = 1}`, and nothing of degree `n + 1` is
    /// indecomposable (checked without the sweep).
    pub fn check_noether(&self, n: u32) -> Result<VerificationReport> {
        in_range(n, self.limits.exhaustive_max_n)?;
        let im = self.im(n)?;
        let mut report = VerificationReport::new(
            Check::Noether,
            n,
            format!("IM, plus every A in M({})", n + 1),
        );
        report.bump("im_size", im.len() as u64);
        report.bump("max_degree", im.max_degree().unwrap_or(0));
        for a in im.elements().iter().filter(|a| a.degree() >= n as u64) {
            if let Some(detail) = noether_failure(a) {
                report.witnesses.push(Witness {
                    degree: a.degree(),
                    solution: Some(a.clone()),
                    unit: None,
                    detail,
                });
            }
        }
        let top: BTreeSet<&Solution> = im.degree_slice(n as u64).iter().collect();
        report.bump("degree_n_slice", top.len() as u64);
        for g in units_mod(n)? {
            let e = Solution::extremal(n, g)?;
            if !top.contains(&e) {
                report.witnesses.push(Witness {
                    degree: n as u64,
                    solution: Some(e),
                    unit: None,
                    detail: "coprime extremal solution missing from IM(n)".into(),
                });
            }
        }
        let above = enumerate_degree_with(n, n + 1, &self.limits.sweep)?;
        report.bump("tested_above", above.len() as u64);
        for a in &above {
            if let Some(detail) = noether_failure(a) {
                report.witnesses.push(Witness {
                    degree: a.degree(),
                    solution: Some(a.clone()),
                    unit: None,
                    detail,
                });
            }
        }
        Ok(report.finish())
    }

    /// For every solution of level 2 and degree `k >= (2n + 8)/3`, the orbit
    /// has `phi(n)` or `phi(n)/2` elements. Each such orbit contains a
    /// multiplicity-2 element, i.e. a partition of `2n` into `k` parts
    /// below `n`, so those partitions are enumerated.
    pub fn check_level2_remark(&self, n: u32) -> Result<VerificationReport> {
        in_range(n, self.limits.exhaustive_max_n)?;
        let kmin = (2 * n + 8).div_ceil(3);
        let mut report = VerificationReport::new(
            Check::Level2Remark,
            n,
            format!("level-2 solutions of degree >= {kmin}"),
        );
        report.bump("tested", 0);
        if n >= 3 {
            for parts in partitions(PartitionSpec::new(2 * n).max_part(n - 1)) {
                if (parts.len() as u32) < kmin {
                    continue;
                }
                let a = PartitionForm::new(n, parts)?.to_solution();
                if level(&a) != 2 {
                    continue;
                }
                report.bump("tested", 1);
                if let Some(detail) = level2_failure(&a) {
                    report.witnesses.push(Witness {
                        degree: a.degree(),
                        solution: Some(a),
                        unit: None,
                        detail,
                    });
                }
            }
        }
        Ok(report.finish())
    }

    /// `m(A) + m(-A) = deg(A)` and `2 sum_{B in G.A} m(B) = deg(A) |G.A|` for
    /// every `A` in `IM`.
    pub fn check_identities(&self, n: u32) -> Result<VerificationReport> {
        in_range(n, self.limits.exhaustive_max_n)?;
        let im = self.im(n)?;
        let mut report = VerificationReport::new(Check::Identities, n, "every A in IM".into());
        for a in im.elements() {
            report.bump("tested", 1);
            if let Some(detail) = identity_failure(a) {
                report.witnesses.push(Witness {
                    degree: a.degree(),
                    solution: Some(a.clone()),
                    unit: None,
                    detail,
                });
            }
        }
        Ok(report.finish())
    }

    /// Re-run the single-instance check behind `w`; true when the failure
    /// recorded in `report` shows up again.
    pub fn reproduces(&self, report: &VerificationReport, w: &Witness) -> Result<bool> {
        let n = report.modulus;
        Ok(match report.check_name {
            Check::Quadratic => match (&w.solution, w.unit) {
                (Some(a), Some(g)) => quadratic_violation(a, g).unwrap_or(false),
                _ => false,
            },
            Check::LemmaOnes => w.solution.as_ref().is_some_and(|a| {
                a.multiplicity() == 1 && trailing_ones_failure(&a.to_partition_form()).is_some()
            }),
            Check::Level2Remark => w
                .solution
                .as_ref()
                .is_some_and(|a| level2_failure(a).is_some()),
            Check::Identities => w
                .solution
                .as_ref()
                .is_some_and(|a| identity_failure(a).is_some()),
            Check::Noether => match &w.solution {
                Some(a) if a.degree() == n as u64 && is_extremal_unit(a) => {
                    !self.im(n)?.contains(a)
                }
                Some(a) => noether_failure(a).is_some(),
                None => false,
            },
            Check::Conjecture1 => w.solution.as_ref().is_some_and(|a| {
                a.degree() >= conjecture_threshold(n) as u64
                    && is_indecomposable(a, None).unwrap_or(false)
                    && level(a) != 1
            }),
            Check::Conjecture2 => {
                let im = self.im(n)?;
                layer_orbits(&im, w.degree).len() as u64
                    != partition_count_u64(n.saturating_sub(w.degree as u32))
            }
            Check::Conjecture3 => {
                let im = self.im(n)?;
                !self.conjecture3_failures(&im, w.degree)?.is_empty()
            }
        })
    }

    /// One row per `n` in `2..=n_max`.
    pub fn summary_table(&self, n_max: u32) -> Result<Vec<SummaryRow>> {
        if n_max < 2 {
            return Err(Error::ModulusTooSmall(n_max));
        }
        if n_max > self.limits.table_max_n {
            return Err(Error::ScaleExceeded {
                n: n_max,
                max: self.limits.table_max_n,
            });
        }
        (2..=n_max)
            .map(|n| {
                let f = self.im(n)?.len() as u64;
                let p = partition_count_u64(n);
                let phi = totient(n as u64);
                let kac_bound = p + phi - 1;
                Ok(SummaryRow {
                    n,
                    f,
                    p,
                    phi,
                    kac_bound,
                    bound_met: f >= kac_bound,
                })
            })
            .collect()
    }
}

fn is_extremal_unit(a: &Solution) -> bool {
    let n = a.modulus();
    let nonzero: Vec<usize> = a
        .counts()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, _)| i)
        .collect();
    nonzero.len() == 1 && a.counts()[nonzero[0]] == n && gcd(nonzero[0] as u64 + 1, n as u64) == 1
}

/// True when some proved-tier report failed.
pub fn any_proved_failure(reports: &[VerificationReport]) -> bool {
    reports
        .iter()
        .any(|r| r.tier == Tier::Proved && r.status == Status::Failed)
}

/// Left-aligned columns separated by two spaces, trailing blanks trimmed.
pub fn render_columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &mut dyn Iterator<Item = &str>| {
        let mut first = true;
        let mut buf = String::new();
        for (cell, w) in cells.zip(&widths) {
            if !first {
                buf.push_str("  ");
            }
            first = false;
            let _ = write!(buf, "{cell:<w$}");
        }
        out.push_str(buf.trim_end());
        out.push('\n');
    };
    line(&mut out, &mut header.iter().copied());
    for row in rows {
        line(&mut out, &mut row.iter().map(String::as_str));
    }
    out
}

/// Aligned text table, one line per report, followed by any witnesses.
pub fn render_reports(reports: &[VerificationReport]) -> String {
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            let counts: Vec<String> = r.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            vec![
                r.check_name.to_string(),
                r.modulus.to_string(),
                match r.tier {
                    Tier::Proved => "proved".into(),
                    Tier::Open => "open".into(),
                },
                r.status.to_string(),
                r.witnesses.len().to_string(),
                r.scope.clone(),
                counts.join(" "),
            ]
        })
        .collect();
    let mut out = render_columns(
        &[
            "check",
            "n",
            "tier",
            "status",
            "witnesses",
            "scope",
            "counts",
        ],
        &rows,
    );
    for r in reports.iter().filter(|r| !r.witnesses.is_empty()) {
        for w in &r.witnesses {
            let _ = write!(out, "{} n={} k={}", r.check_name, r.modulus, w.degree);
            if let Some(s) = &w.solution {
                let _ = write!(out, " A={s}");
            }
            if let Some(g) = w.unit {
                let _ = write!(out, " g={g}");
            }
            let _ = writeln!(out, ": {}", w.detail);
        }
    }
    out
}

pub fn render_summary(rows: &[SummaryRow]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.f.to_string(),
                r.p.to_string(),
                r.phi.to_string(),
                r.kac_bound.to_string(),
                r.bound_met.to_string(),
            ]
        })
        .collect();
    render_columns(&["n", "F", "p", "phi", "kac_bound", "bound_met"], &body)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sol(n: u32, c: &[i64]) -> Solution {
        Solution::new(n, c).unwrap()
    }

    #[test]
    fn quadratic_small() {
        let h = Harness::default();
        let r = h.check_quadratic(6, 8).unwrap();
        assert_eq!(r.status, Status::ProvedAndVerified);
        assert!(r.counts["hypothesis_met"] > 0);
        // u = v = 1 reduces to g^2 - (k+2) g + (n+1).
        assert_eq!(quadratic_value(9, 6, 2, 1, 1), 4 - 16 + 10);
        assert_eq!(
            h.check_quadratic(13, 3),
            Err(Error::ScaleExceeded { n: 13, max: 12 })
        );
    }

    #[test]
    fn lemma_ones() {
        let h = Harness::default();
        for n in 2..=20 {
            let r = h.check_lemma_ones(n).unwrap();
            assert_eq!(r.status, Status::ProvedAndVerified, "{n}");
            assert_eq!(r.counts["tested"], partition_count_u64(n) - 1);
        }
        let pf = sol(9, &[4, 1, 1, 0, 0, 0, 0, 0]).to_partition_form();
        assert_eq!(pf.parts(), &[3, 2, 1, 1, 1, 1]);
        assert!(trailing_ones_failure(&pf).is_none());
        let fine = PartitionForm::new(8, vec![2, 2, 2, 1, 1]).unwrap();
        assert!(trailing_ones_failure(&fine).is_none());
        // Degree 6 with no trailing ones (multiplicity 2, so outside the lemma).
        let flagged = PartitionForm::new(9, vec![3, 3, 3, 3, 3, 3]).unwrap();
        assert!(trailing_ones_failure(&flagged).is_some());
    }

    #[test]
    fn conjecture3_small() {
        let h = Harness::default();
        let r = h.check_conjecture3(4).unwrap();
        assert_eq!(r.status, Status::ProvedAndVerified);
        assert_eq!(r.counts["degrees"], 2);
        let r = h.check_conjecture3(6).unwrap();
        assert_eq!(r.status, Status::ProvedAndVerified);
        let im = h.im(6).unwrap();
        let lvl1 = |k| layer_orbits(&im, k).iter().filter(|o| o.level == 1).count();
        assert_eq!(lvl1(5), 1);
        assert_eq!(lvl1(6), 1);
        let im9 = h.im(9).unwrap();
        let orbits: Vec<Orbit> = layer_orbits(&im9, 6)
            .into_iter()
            .filter(|o| o.level == 1)
            .collect();
        assert_eq!(orbits.len(), 3);
        assert!(orbits.iter().all(|o| o.size == 6));
    }

    #[test]
    fn noether_small() {
        let h = Harness::default();
        for n in [2, 4, 6] {
            let r = h.check_noether(n).unwrap();
            assert_eq!(r.status, Status::ProvedAndVerified);
            assert_eq!(r.counts["degree_n_slice"], totient(n as u64));
        }
    }

    #[test]
    fn conjectures_report() {
        let h = Harness::default();
        for n in [4, 6] {
            let r1 = h.check_conjecture1(n).unwrap();
            let r2 = h.check_conjecture2(n).unwrap();
            assert_eq!(r1.status, Status::ConjectureHoldsInRange);
            assert_eq!(r2.status, Status::ConjectureHoldsInRange);
            assert!(r1.is_well_formed() && r2.is_well_formed());
        }
    }

    #[test]
    fn level2_vacuous_range_is_explicit() {
        let h = Harness::default();
        let r = h.check_level2_remark(2).unwrap();
        assert_eq!(r.counts["tested"], 0);
        assert_eq!(r.status, Status::ProvedAndVerified);
    }

    #[test]
    fn witnesses_reproduce() {
        let h = Harness::default();
        // Hand-made failing reports: each witness must re-validate, and a
        // harmless one must not.
        let mut r = VerificationReport::new(Check::Identities, 4, String::new());
        r.witnesses.push(Witness {
            degree: 2,
            solution: Some(sol(4, &[1, 0, 1])),
            unit: None,
            detail: String::new(),
        });
        assert!(!h.reproduces(&r, &r.witnesses[0]).unwrap());

        let mut r = VerificationReport::new(Check::Conjecture1, 6, String::new());
        r.witnesses.push(Witness {
            degree: 4,
            solution: Some(sol(6, &[1, 0, 1, 2, 0])),
            unit: None,
            detail: String::new(),
        });
        // Degree 4 is below floor(6/2)+2 = 5, so this is not a counterexample.
        assert!(!h.reproduces(&r, &r.witnesses[0]).unwrap());

        let mut r = VerificationReport::new(Check::Noether, 4, String::new());
        r.witnesses.push(Witness {
            degree: 4,
            solution: Some(sol(4, &[0, 4, 0])),
            unit: None,
            detail: String::new(),
        });
        assert!(!h.reproduces(&r, &r.witnesses[0]).unwrap());
    }

    #[test]
    fn json_and_text() {
        let h = Harness::default();
        let reports = h
            .run_many(&[Check::Conjecture3, Check::Noether], &[5, 4])
            .unwrap();
        let order: Vec<(Check, u32)> = reports.iter().map(|r| (r.check_name, r.modulus)).collect();
        assert_eq!(
            order,
            vec![
                (Check::Noether, 4),
                (Check::Noether, 5),
                (Check::Conjecture3, 4),
                (Check::Conjecture3, 5)
            ]
        );
        let text = serde_json::to_string(&reports).unwrap();
        assert!(text.contains(r#""check_name":"conjecture3""#));
        assert!(text.contains(r#""status":"proved-and-verified""#));
        let back: Vec<VerificationReport> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, reports);
        let rendered = render_reports(&reports);
        assert_eq!(rendered.lines().count(), 5);
        assert!(rendered.starts_with("check"));
    }

    #[test]
    fn check_names() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("conjecture4".parse::<Check>().is_err());
    }

    #[test]
    fn kac_bound_rows() {
        let h = Harness::default();
        let rows = h.summary_table(12).unwrap();
        // F(2) = 1 and F(3) = 3 both fall one short of p + phi - 1.
        assert_eq!(
            (rows[0].f, rows[0].kac_bound, rows[0].bound_met),
            (1, 2, false)
        );
        assert_eq!(
            (rows[1].f, rows[1].kac_bound, rows[1].bound_met),
            (3, 4, false)
        );
        assert!(rows[2..].iter().all(|r| r.bound_met), "{rows:?}");
        assert_eq!(h.summary_table(1), Err(Error::ModulusTooSmall(1)));
    }
}
