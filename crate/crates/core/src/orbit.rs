//! The unit group of `Z/nZ` acting on solutions.
//!
//! A unit `g` induces the permutation `sigma_g(i) = g i mod n` of the weights
//! `1..n`, and acts by `(g . A)_{sigma_g(i)} = a_i`. In partition form this
//! multiplies every part by `g` modulo `n`.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, units_mod};
use crate::error::{Error, Result};
use crate::solution::Solution;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroup {
    n: u32,
    elements: Vec<u32>,
    /// `perms[j][i - 1] = sigma_g(i)` for `g = elements[j]`.
    perms: Vec<Vec<u32>>,
}

impl UnitGroup {
    pub fn new(n: u32) -> Result<Self> {
        let elements = units_mod(n)?;
        let perms = elements
            .iter()
            .map(|&g| {
                (1..n)
                    .map(|i| ((g as u64 * i as u64) % n as u64) as u32)
                    .collect()
            })
            .collect();
        Ok(Self { n, elements, perms })
    }

    /// Process-wide cached group for `n`.
    pub fn shared(n: u32) -> Result<Arc<UnitGroup>> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<UnitGroup>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(g) = cache.lock().unwrap().get(&n) {
            return Ok(g.clone());
        }
        let group = Arc::new(UnitGroup::new(n)?);
        cache.lock().unwrap().insert(n, group.clone());
        Ok(group)
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    fn position(&self, g: u32) -> Result<usize> {
        self.elements
            .binary_search(&g)
            .map_err(|_| Error::NotAUnit { g, n: self.n })
    }

    /// `sigma_g` as the image list of `1..n`.
    pub fn permutation(&self, g: u32) -> Result<&[u32]> {
        Ok(&self.perms[self.position(g)?])
    }

    /// Cycle decomposition of `sigma_g`, fixed points included, each cycle
    /// starting at its smallest entry.
    pub fn cycles(&self, g: u32) -> Result<Vec<Vec<u32>>> {
        let perm = self.permutation(g)?;
        let mut seen = vec![false; perm.len()];
        let mut out = Vec::new();
        for start in 1..self.n {
            if seen[start as usize - 1] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i as usize - 1] {
                seen[i as usize - 1] = true;
                cycle.push(i);
                i = perm[i as usize - 1];
            }
            out.push(cycle);
        }
        Ok(out)
    }

    pub fn act(&self, g: u32, a: &Solution) -> Result<Solution> {
        if a.modulus() != self.n {
            return Err(Error::ModulusMismatch {
                left: self.n,
                right: a.modulus(),
            });
        }
        let perm = self.permutation(g)?;
        Ok(self.apply(perm, a))
    }

    fn apply(&self, perm: &[u32], a: &Solution) -> Solution {
        let mut out = vec![0u32; a.counts().len()];
        for (i, &c) in a.counts().iter().enumerate() {
            out[perm[i] as usize - 1] = c;
        }
        Solution::from_counts_unchecked(self.n, out)
    }

    /// `{g . A : g in G}` in lexicographic order.
    pub fn orbit_set(&self, a: &Solution) -> BTreeSet<Solution> {
        self.perms.iter().map(|p| self.apply(p, a)).collect()
    }

    pub fn orbit_of(&self, a: &Solution) -> Result<Orbit> {
        if a.modulus() != self.n {
            return Err(Error::ModulusMismatch {
                left: self.n,
                right: a.modulus(),
            });
        }
        Ok(Orbit::from_elements(
            self.orbit_set(a).into_iter().collect(),
        ))
    }
}

/// `g . A`.
pub fn act(g: u32, a: &Solution) -> Result<Solution> {
    let n = a.modulus();
    if g == 0 || g >= n || gcd(g as u64, n as u64) != 1 {
        return Err(Error::NotAUnit { g, n });
    }
    UnitGroup::shared(n)?.act(g, a)
}

/// A full orbit, elements in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub representative: Solution,
    pub size: usize,
    pub level: u64,
    pub elements: Vec<Solution>,
}

impl Orbit {
    fn from_elements(elements: Vec<Solution>) -> Orbit {
        let level = elements
            .iter()
            .map(Solution::multiplicity)
            .min()
            .unwrap_or(0);
        Orbit {
            representative: elements[0].clone(),
            size: elements.len(),
            level,
            elements,
        }
    }

    pub fn degree(&self) -> u64 {
        self.representative.degree()
    }

    /// Members of multiplicity exactly one.
    pub fn multiplicity_one(&self) -> impl Iterator<Item = &Solution> {
        self.elements.iter().filter(|s| s.multiplicity() == 1)
    }
}

pub fn orbit_of(a: &Solution) -> Orbit {
    UnitGroup::shared(a.modulus())
        .expect("solutions always carry a valid modulus")
        .orbit_of(a)
        .expect("modulus matches")
}

/// Minimum multiplicity over the orbit of `a`; zero for the trivial solution.
pub fn level(a: &Solution) -> u64 {
    let group = UnitGroup::shared(a.modulus()).expect("valid modulus");
    group
        .perms
        .iter()
        .map(|p| group.apply(p, a).multiplicity())
        .min()
        .unwrap_or(0)
}

/// Split an action-closed set into orbits, ordered by representative.
pub fn orbit_decomposition(solutions: &[Solution]) -> Result<Vec<Orbit>> {
    let Some(first) = solutions.first() else {
        return Ok(Vec::new());
    };
    let n = first.modulus();
    if let Some(other) = solutions.iter().find(|s| s.modulus() != n) {
        return Err(Error::ModulusMismatch {
            left: n,
            right: other.modulus(),
        });
    }
    let group = UnitGroup::shared(n)?;
    let input: BTreeSet<&Solution> = solutions.iter().collect();
    let mut seen: BTreeSet<&Solution> = BTreeSet::new();
    let mut orbits = Vec::new();
    for a in &input {
        if seen.contains(a) {
            continue;
        }
        let orbit = group.orbit_set(a);
        for b in &orbit {
            match input.get(b) {
                Some(member) => {
                    seen.insert(member);
                }
                None => {
                    return Err(Error::NotActionClosed { witness: b.clone() });
                }
            }
        }
        orbits.push(Orbit::from_elements(orbit.into_iter().collect()));
    }
    orbits.sort_by(|x, y| x.representative.cmp(&y.representative));
    Ok(orbits)
}
