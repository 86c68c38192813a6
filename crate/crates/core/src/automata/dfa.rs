use std::collections::{HashMap, VecDeque};

use super::nfa::{symbol, Nfa};
use super::regex::parse_regex;
use super::to_nfa;

/// Complete deterministic automaton over `{a,b}`.
///
/// States are `0..len()`; index 0 of each transition row is letter `a`.
/// A rejecting sink is always present unless every state is live.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    trans: Vec<[u32; 2]>,
    accept: Vec<bool>,
    start: u32,
}

impl Dfa {
    /// Builds a DFA from raw parts. Panics if a transition leaves the state range.
    pub fn from_parts(trans: Vec<[u32; 2]>, accept: Vec<bool>, start: u32) -> Dfa {
        assert_eq!(trans.len(), accept.len());
        assert!((start as usize) < trans.len());
        assert!(trans.iter().flatten().all(|&q| (q as usize) < trans.len()));
        Dfa { trans, accept, start }
    }

    pub fn len(&self) -> usize {
        self.trans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trans.is_empty()
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn is_accepting(&self, q: u32) -> bool {
        self.accept[q as usize]
    }

    pub fn step(&self, q: u32, c: u8) -> u32 {
        self.trans[q as usize][symbol(c).expect("letter outside {a,b}")]
    }

    /// Transition on symbol index (0 = `a`, 1 = `b`).
    pub fn step_sym(&self, q: u32, x: usize) -> u32 {
        self.trans[q as usize][x]
    }

    pub fn run(&self, q: u32, w: &str) -> u32 {
        w.bytes().fold(q, |q, c| self.step(q, c))
    }

    /// State reached from `q` by reading `b^n`; cycles are short-cut.
    pub fn run_b(&self, q: u32, n: u64) -> u32 {
        let mut seen: HashMap<u32, u64> = HashMap::new();
        let mut cur = q;
        let mut i = 0;
        while i < n {
            if let Some(&j) = seen.get(&cur) {
                let period = i - j;
                let rest = (n - i) % period;
                for _ in 0..rest {
                    cur = self.step_sym(cur, 1);
                }
                return cur;
            }
            seen.insert(cur, i);
            cur = self.step_sym(cur, 1);
            i += 1;
        }
        cur
    }

    pub fn accepts(&self, w: &str) -> bool {
        if !w.bytes().all(|c| symbol(c).is_some()) {
            return false;
        }
        self.accept[self.run(self.start, w) as usize]
    }

    /// Transformation of the states induced by a symbol.
    pub fn transformation(&self, x: usize) -> Vec<u32> {
        self.trans.iter().map(|row| row[x]).collect()
    }

    /// States from which an accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.len();
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (q, row) in self.trans.iter().enumerate() {
            for &r in row {
                rev[r as usize].push(q as u32);
            }
        }
        let mut live = self.accept.clone();
        let mut stack: Vec<u32> = (0..n as u32).filter(|&q| live[q as usize]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    pub fn is_empty_language(&self) -> bool {
        !self.live_states()[self.start as usize]
    }

    /// Whether the language is finite.
    pub fn is_finite_language(&self) -> bool {
        // A cycle through a live state reachable from the start means infinity.
        let live = self.live_states();
        let n = self.len();
        let mut color = vec![0u8; n];
        fn dfs(d: &Dfa, q: usize, live: &[bool], color: &mut [u8]) -> bool {
            color[q] = 1;
            for &r in &d.trans[q] {
                let r = r as usize;
                if !live[r] {
                    continue;
                }
                if color[r] == 1 || (color[r] == 0 && !dfs(d, r, live, color)) {
                    return false;
                }
            }
            color[q] = 2;
            true
        }
        !live[self.start as usize] || dfs(self, self.start as usize, &live, &mut color)
    }

    /// Subset construction.
    pub fn determinize(nfa: &Nfa) -> Dfa {
        let mut ids: HashMap<Vec<usize>, u32> = HashMap::new();
        let mut sets: Vec<Vec<usize>> = Vec::new();
        let mut trans: Vec<[u32; 2]> = Vec::new();
        let start = nfa.closure([nfa.start]);
        ids.insert(start.clone(), 0);
        sets.push(start);
        let mut i = 0;
        while i < sets.len() {
            let mut row = [0u32; 2];
            for (x, slot) in row.iter_mut().enumerate() {
                let next = nfa.closure(sets[i].iter().flat_map(|&s| nfa.step[s][x].iter().copied()));
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len() as u32;
                        ids.insert(next.clone(), id);
                        sets.push(next);
                        id
                    }
                };
                *slot = id;
            }
            trans.push(row);
            i += 1;
        }
        let accept = sets.iter().map(|s| s.binary_search(&nfa.accept).is_ok()).collect();
        Dfa { trans, accept, start: 0 }
    }

    /// Minimal complete DFA, states numbered in breadth-first order from the start.
    pub fn minimize(&self) -> Dfa {
        let reach = self.reachable_order();
        // Moore refinement on reachable states.
        let mut block: Vec<u32> = vec![0; self.len()];
        for &q in &reach {
            block[q as usize] = self.accept[q as usize] as u32;
        }
        let mut count = {
            let mut distinct: Vec<u32> = reach.iter().map(|&q| block[q as usize]).collect();
            distinct.sort_unstable();
            distinct.dedup();
            distinct.len()
        };
        loop {
            let mut sig: HashMap<(u32, u32, u32), u32> = HashMap::new();
            let mut next = vec![0u32; self.len()];
            for &q in &reach {
                let row = self.trans[q as usize];
                let key = (block[q as usize], block[row[0] as usize], block[row[1] as usize]);
                let fresh = sig.len() as u32;
                next[q as usize] = *sig.entry(key).or_insert(fresh);
            }
            let new_count = sig.len();
            block = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // Renumber blocks by BFS from the start block.
        let mut rep: Vec<Option<u32>> = vec![None; count];
        for &q in &reach {
            rep[block[q as usize] as usize].get_or_insert(q);
        }
        let mut id: Vec<Option<u32>> = vec![None; count];
        let mut order: Vec<u32> = Vec::new();
        let mut queue = VecDeque::new();
        let b0 = block[self.start as usize];
        id[b0 as usize] = Some(0);
        order.push(b0);
        queue.push_back(b0);
        while let Some(b) = queue.pop_front() {
            let q = rep[b as usize].unwrap();
            for x in 0..2 {
                let nb = block[self.trans[q as usize][x] as usize];
                if id[nb as usize].is_none() {
                    id[nb as usize] = Some(order.len() as u32);
                    order.push(nb);
                    queue.push_back(nb);
                }
            }
        }
        let trans = order
            .iter()
            .map(|&b| {
                let q = rep[b as usize].unwrap() as usize;
                [
                    id[block[self.trans[q][0] as usize] as usize].unwrap(),
                    id[block[self.trans[q][1] as usize] as usize].unwrap(),
                ]
            })
            .collect();
        let accept = order.iter().map(|&b| self.accept[rep[b as usize].unwrap() as usize]).collect();
        Dfa { trans, accept, start: 0 }
    }

    fn reachable_order(&self) -> Vec<u32> {
        let mut seen = vec![false; self.len()];
        let mut order = vec![self.start];
        seen[self.start as usize] = true;
        let mut i = 0;
        while i < order.len() {
            for &r in &self.trans[order[i] as usize] {
                if !std::mem::replace(&mut seen[r as usize], true) {
                    order.push(r);
                }
            }
            i += 1;
        }
        order
    }

    /// Product automaton; `op` combines the two acceptance bits.
    pub fn product(&self, other: &Dfa, op: impl Fn(bool, bool) -> bool) -> Dfa {
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs = vec![(self.start, other.start)];
        ids.insert((self.start, other.start), 0);
        let mut trans = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = [0u32; 2];
            for (x, slot) in row.iter_mut().enumerate() {
                let next = (self.trans[p as usize][x], other.trans[q as usize][x]);
                let fresh = pairs.len() as u32;
                let id = *ids.entry(next).or_insert(fresh);
                if id == fresh {
                    pairs.push(next);
                }
                *slot = id;
            }
            trans.push(row);
            i += 1;
        }
        let accept = pairs
            .iter()
            .map(|&(p, q)| op(self.accept[p as usize], other.accept[q as usize]))
            .collect();
        Dfa { trans, accept, start: 0 }
    }

    pub fn intersect(&self, other: &Dfa) -> Dfa {
        self.product(other, |x, y| x && y).minimize()
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            trans: self.trans.clone(),
            accept: self.accept.iter().map(|&x| !x).collect(),
            start: self.start,
        }
    }

    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.product(other, |x, y| x != y).is_empty_language()
    }

    /// Whether the language of `self` is contained in that of `other`.
    pub fn is_subset_of(&self, other: &Dfa) -> bool {
        self.product(other, |x, y| x && !y).is_empty_language()
    }

    /// Minimal DFA of a regular expression.
    pub fn from_regex(text: &str) -> crate::Result<Dfa> {
        Ok(Dfa::determinize(&to_nfa(&parse_regex(text)?)).minimize())
    }
}

/// Regular expression for the code language of graph encodings.
pub const G_REGEX: &str = "(ab+a(aab+a)?)*";

/// Minimal DFA of the code language.
pub fn g_dfa() -> Dfa {
    Dfa::from_regex(G_REGEX).expect("code language regex parses")
}

/// Restricts a DFA to words that encode graphs.
///
/// Returns the minimal DFA of the intersection and whether it is strictly
/// smaller than the input language.
pub fn intersect_with_g(d: &Dfa) -> (Dfa, bool) {
    let g = g_dfa();
    let meet = d.intersect(&g);
    let shrunk = !d.is_subset_of(&g);
    (meet, shrunk)
}
