use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::Dfa;
use crate::error::{Error, Result};

/// Threshold and period of the cyclic monoid generated by `b`.
///
/// `b^t` and `b^(t+p)` act identically on the minimal automaton, and `t+p`
/// is the least sum with that property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Torsion {
    pub t: u32,
    pub p: u32,
}

impl Torsion {
    pub fn new(t: u32, p: u32) -> Self {
        assert!(p >= 1, "torsion period must be positive");
        Torsion { t, p }
    }

    /// Representative `c ≤ t+p-1` of the class of `b^n`.
    pub fn class_rep(self, n: u64) -> u32 {
        class_rep(self, n)
    }

    /// Largest reduced exponent, `t+p-1`.
    pub fn ell(self) -> u32 {
        self.t + self.p - 1
    }

    /// Whether a reduced exponent stands for infinitely many exponents.
    pub fn is_big(self, c: u32) -> bool {
        c >= self.t
    }
}

/// `n` if `n < t`, else `t + ((n - t) mod p)`.
pub fn class_rep(tor: Torsion, n: u64) -> u32 {
    let t = tor.t as u64;
    if n < t {
        n as u32
    } else {
        (t + (n - t) % tor.p as u64) as u32
    }
}

/// Iterates the powers of the `b`-transformation until the first repeat.
pub fn torsion_pair(d: &Dfa) -> Torsion {
    let fb = d.transformation(1);
    let mut seen: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut cur: Vec<u32> = (0..d.len() as u32).collect();
    let mut k = 0;
    loop {
        if let Some(&i) = seen.get(&cur) {
            return Torsion::new(i, k - i);
        }
        seen.insert(cur.clone(), k);
        cur = cur.iter().map(|&q| fb[q as usize]).collect();
        k += 1;
    }
}

/// Whether every element `m` of the transition monoid satisfies
/// `m^k = m^(k+1)` for some `k`.
pub fn is_aperiodic(d: &Dfa, cap: usize) -> Result<bool> {
    let gens = [d.transformation(0), d.transformation(1)];
    let id: Vec<u32> = (0..d.len() as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(m) = queue.pop_front() {
        if !idempotent_power_is_stable(&m) {
            return Ok(false);
        }
        for g in &gens {
            let next: Vec<u32> = m.iter().map(|&q| g[q as usize]).collect();
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(Error::resource(format!("transition monoid exceeds {cap} elements")));
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(true)
}

/// Whether the powers of `m` end in a cycle of length one.
fn idempotent_power_is_stable(m: &[u32]) -> bool {
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut cur = m.to_vec();
    let mut k = 1;
    loop {
        if let Some(&i) = seen.get(&cur) {
            return k - i == 1;
        }
        seen.insert(cur.clone(), k);
        cur = cur.iter().map(|&q| m[q as usize]).collect();
        k += 1;
    }
}
