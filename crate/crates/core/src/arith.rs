//! Elementary number theory and integer partitions.
//!
//! Everything here is exact. Partition counts grow super-polynomially, so
//! [`partition_count`] returns a [`BigUint`].

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Euler's totient, with `totient(1) == 1`.
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1, "totient is defined for n >= 1");
    let mut m = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

/// Residues in `1..n` coprime to `n`, ascending.
pub fn units_mod(n: u32) -> Result<Vec<u32>> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    Ok((1..n).filter(|&g| gcd(g as u64, n as u64) == 1).collect())
}

/// Number of partitions of `t`, with `p(0) = 1`.
///
/// Euler's pentagonal recurrence, O(t^1.5) big-integer additions.
pub fn partition_count(t: u32) -> BigUint {
    partition_table(t).pop().unwrap()
}

/// `p(0), p(1), ..., p(t)`.
pub fn partition_table(t: u32) -> Vec<BigUint> {
    let t = t as usize;
    let mut table: Vec<BigUint> = Vec::with_capacity(t + 1);
    table.push(BigUint::from(1u32));
    for i in 1..=t {
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = j * (3 * j + 1) / 2;
            let bucket = if j % 2 == 1 { &mut plus } else { &mut minus };
            *bucket += &table[i - g1];
            if g2 <= i {
                *bucket += &table[i - g2];
            }
        }
        table.push(plus - minus);
    }
    table
}

/// `p(t)` as a machine integer; panics once the count no longer fits in 64 bits.
pub fn partition_count_u64(t: u32) -> u64 {
    partition_count(t)
        .to_u64()
        .expect("partition count overflows u64")
}

/// Bounds for [`partitions`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionSpec {
    pub target: u32,
    pub max_part: Option<u32>,
    pub max_len: Option<u32>,
}

impl PartitionSpec {
    pub fn new(target: u32) -> Self {
        Self {
            target,
            max_part: None,
            max_len: None,
        }
    }

    pub fn max_part(mut self, bound: u32) -> Self {
        assert!(bound >= 1, "part bound must be positive");
        self.max_part = Some(bound);
        self
    }

    pub fn max_len(mut self, bound: u32) -> Self {
        assert!(bound >= 1, "length bound must be positive");
        self.max_len = Some(bound);
        self
    }
}

/// Stream every partition described by `spec` as a weakly decreasing part
/// list, in lexicographically decreasing order. The empty partition is
/// emitted for `target == 0`.
pub fn partitions(spec: PartitionSpec) -> Partitions {
    Partitions {
        spec,
        current: Vec::new(),
        started: false,
        done: false,
    }
}

#[derive(Debug, Clone)]
pub struct Partitions {
    spec: PartitionSpec,
    current: Vec<u32>,
    started: bool,
    done: bool,
}

impl Partitions {
    /// Append the lexicographically largest tail summing to `rest` with parts
    /// at most `cap`, if one fits in the remaining length budget.
    fn fill(&mut self, mut rest: u32, cap: u32) -> bool {
        if rest == 0 {
            return true;
        }
        if cap == 0 {
            return false;
        }
        if let Some(max_len) = self.spec.max_len {
            let slots = max_len as u64 - self.current.len() as u64;
            if rest as u64 > cap as u64 * slots {
                return false;
            }
        }
        while rest > 0 {
            let part = cap.min(rest);
            self.current.push(part);
            rest -= part;
        }
        true
    }

    fn advance(&mut self) -> bool {
        // Walk back from the end looking for a part that can shrink by one
        // with the remainder still fitting underneath it.
        let mut rest = 0u32;
        while let Some(last) = self.current.pop() {
            rest += last;
            if last > 1 {
                self.current.push(last - 1);
                if self.fill(rest + 1 - last, last - 1) {
                    return true;
                }
                self.current.pop();
            }
        }
        false
    }
}

impl Iterator for Partitions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let ok = if !self.started {
            self.started = true;
            let cap = self.spec.max_part.unwrap_or(u32::MAX).min(self.spec.target);
            self.fill(self.spec.target, cap)
        } else {
            self.advance()
        };
        if ok {
            Some(self.current.clone())
        } else {
            self.done = true;
            None
        }
    }
}
