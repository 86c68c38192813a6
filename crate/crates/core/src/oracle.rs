//! Brute-force ground truth: accepted words, decoded and canonicalized.

use std::collections::{BTreeMap, HashMap};

use crate::automata::Dfa;
use crate::codec::{canonical_form_with_cap, graph_of_items, Graph, Item};

/// Largest graph whose canonical form the oracle stores.
pub const STORE_VERTICES: usize = 8;

/// Accepted words in order of length, then lexicographically.
///
/// Prefixes that cannot be completed to an accepted word are pruned, so the
/// cost is proportional to the number of live prefixes.
pub struct Words<'a> {
    dfa: &'a Dfa,
    live: Vec<bool>,
    layer: Vec<(String, u32)>,
    pos: usize,
    len: usize,
    max_len: usize,
}

impl Iterator for Words<'_> {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        loop {
            while self.pos < self.layer.len() {
                let (w, q) = &self.layer[self.pos];
                self.pos += 1;
                if self.dfa.is_accepting(*q) {
                    return Some(w.clone());
                }
            }
            if self.len == self.max_len || self.layer.is_empty() {
                return None;
            }
            let mut next = Vec::new();
            for (w, q) in &self.layer {
                for c in *b"ab" {
                    let r = self.dfa.step(*q, c);
                    if self.live[r as usize] {
                        let mut v = w.clone();
                        v.push(c as char);
                        next.push((v, r));
                    }
                }
            }
            self.layer = next;
            self.pos = 0;
            self.len += 1;
        }
    }
}

pub fn enumerate_words(dfa: &Dfa, max_len: usize) -> Words<'_> {
    let live = dfa.live_states();
    let start = dfa.start();
    let layer = if live[start as usize] {
        vec![(String::new(), start)]
    } else {
        Vec::new()
    };
    Words {
        dfa,
        live,
        layer,
        pos: 0,
        len: 0,
        max_len,
    }
}

/// Result of an oracle run.
#[derive(Clone, Debug, Default)]
pub struct OracleRun {
    pub max_len: usize,
    pub max_vertices: usize,
    /// Canonical graphs with a shortest accepted word decoding to them.
    pub members: BTreeMap<Graph, String>,
    /// Accepted configurations whose graph was too large to store.
    pub unstored: u64,
    /// Configurations explored.
    pub explored: u64,
}

impl OracleRun {
    pub fn contains(&self, canonical: &Graph) -> bool {
        self.members.contains_key(canonical)
    }
}

/// Successor states after one codeword, per state.
struct Steps {
    /// `(item, length, target)` for every codeword leading to a live state.
    moves: Vec<(Item, usize, u32)>,
}

fn steps_from(dfa: &Dfa, live: &[bool], q: u32, max_len: usize) -> Steps {
    let mut moves = Vec::new();
    // After `a b^i`, then either `a` (vertex) or `aaa b^j a` (edge).
    let mut qi = dfa.step(q, b'a');
    for i in 1..=max_len.saturating_sub(2) as u32 {
        qi = dfa.step(qi, b'b');
        let v = dfa.step(qi, b'a');
        if live[v as usize] && i as usize + 2 <= max_len {
            moves.push((Item::Vertex(i), i as usize + 2, v));
        }
        let mut qj = dfa.run(qi, "aaa");
        for j in 1..=max_len.saturating_sub(i as usize + 5) as u32 {
            qj = dfa.step(qj, b'b');
            let e = dfa.step(qj, b'a');
            if live[e as usize] {
                moves.push((Item::Edge(i, j), (i + j) as usize + 5, e));
            }
        }
    }
    Steps { moves }
}

/// All graphs decoded from accepted words of length at most `max_len`,
/// restricted to graphs with at most `max_vertices` vertices.
///
/// The language must consist of graph encodings. The search runs over
/// configurations (state, codewords seen so far), each reached first by a
/// shortest word; decoding only depends on the set of codewords, so this
/// finds the same graphs as decoding every accepted word.
pub fn oracle_members(dfa: &Dfa, max_len: usize, max_vertices: usize) -> OracleRun {
    let live = dfa.live_states();
    let mut run = OracleRun {
        max_len,
        max_vertices,
        ..OracleRun::default()
    };
    let start = dfa.start();
    if !live[start as usize] {
        return run;
    }
    let mut steps: HashMap<u32, Steps> = HashMap::new();
    // Shortest known length per configuration; bucket entries with a
    // longer length are stale.
    let mut best: HashMap<(u32, Vec<Item>), usize> = HashMap::new();
    let mut buckets: Vec<Vec<(u32, Vec<Item>, String)>> = vec![Vec::new(); max_len + 1];
    best.insert((start, Vec::new()), 0);
    buckets[0].push((start, Vec::new(), String::new()));
    for len in 0..=max_len {
        let bucket = std::mem::take(&mut buckets[len]);
        for (q, items, word) in bucket {
            if best.get(&(q, items.clone())) != Some(&len) {
                continue;
            }
            run.explored += 1;
            if dfa.is_accepting(q) {
                let g = graph_of_items(&items);
                if g.order() <= STORE_VERTICES {
                    let c = canonical_form_with_cap(&g, STORE_VERTICES).expect("within the cap");
                    run.members.entry(c).or_insert_with(|| word.clone());
                } else {
                    run.unstored += 1;
                }
            }
            let st = steps.entry(q).or_insert_with(|| steps_from(dfa, &live, q, max_len));
            for &(item, l, r) in &st.moves {
                let to = len + l;
                if to > max_len {
                    continue;
                }
                let mut next = items.clone();
                if let Err(at) = next.binary_search(&item) {
                    next.insert(at, item);
                }
                let key = (r, next);
                if best.get(&key).is_some_and(|&b| b <= to) {
                    continue;
                }
                if graph_of_items(&key.1).order() > max_vertices {
                    continue;
                }
                let next = key.1.clone();
                best.insert(key, to);
                let mut w = word.clone();
                w.push_str(&item.codeword());
                buckets[to].push((r, next, w));
            }
        }
    }
    run
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::decode;

    fn dfa(r: &str) -> Dfa {
        Dfa::from_regex(r).unwrap()
    }

    #[test]
    fn words_of_single_vertex_repetitions() {
        let d = dfa("(aba)+");
        let w: Vec<String> = enumerate_words(&d, 5).collect();
        assert_eq!(w, ["aba"]);
        let w: Vec<String> = enumerate_words(&d, 7).collect();
        assert_eq!(w, ["aba", "abaaba"]);
    }

    #[test]
    fn words_of_the_clique_language() {
        let d = dfa("(ab+aaab+a)+");
        let w: Vec<String> = enumerate_words(&d, 8).collect();
        assert_eq!(w, ["abaaaba", "abaaabba", "abbaaaba"]);
        let (none, _) = crate::automata::intersect_with_g(&dfa("a(ba)*b"));
        assert_eq!(enumerate_words(&none, 20).count(), 0);
    }

    #[test]
    fn words_are_sorted_by_length_then_lex() {
        let d = dfa("(ab+a)*");
        let w: Vec<String> = enumerate_words(&d, 9).collect();
        for pair in w.windows(2) {
            let (x, y) = (&pair[0], &pair[1]);
            assert!(x.len() < y.len() || (x.len() == y.len() && x < y));
        }
        assert!(w.iter().all(|x| d.accepts(x)));
    }

    #[test]
    fn single_vertex_oracle() {
        let run = oracle_members(&dfa("(aba)+"), 12, 3);
        let graphs: Vec<&Graph> = run.members.keys().collect();
        assert_eq!(graphs, [&Graph::new(1)]);
        assert_eq!(run.members[&Graph::new(1)], "aba");
    }

    #[test]
    fn stars_oracle() {
        let run = oracle_members(&dfa("(abaaabbb*a)*(aba)"), 40, 4);
        let sizes: Vec<(usize, usize)> = run.members.keys().map(|g| (g.order(), g.size())).collect();
        assert_eq!(sizes, [(1, 0), (2, 1), (3, 2), (4, 3)]);
        for (g, w) in &run.members {
            let back = canonical_form_with_cap(&decode(w).unwrap(), 8).unwrap();
            assert_eq!(&back, g);
        }
    }

    #[test]
    fn oracle_matches_word_enumeration() {
        let d = dfa("(abaaabba|abba|abbbaaaba)(aba|abbaaaba)*");
        let run = oracle_members(&d, 30, 8);
        let mut direct = BTreeMap::new();
        for w in enumerate_words(&d, 30) {
            let c = canonical_form_with_cap(&decode(&w).unwrap(), 8).unwrap();
            direct.entry(c).or_insert(w);
        }
        assert_eq!(run.members.keys().collect::<Vec<_>>(), direct.keys().collect::<Vec<_>>());
        for (g, w) in &run.members {
            assert_eq!(w.len(), direct[g].len());
        }
    }
}
