//! Translation between finite graphs and words over `{a,b}`.
//!
//! A vertex `i` is written `a b^i a`, an edge `(i,j)` is written
//! `a b^i a a a b^j a`. A word built from these codewords denotes the graph
//! whose vertices and edges are the codewords occurring in it; repetition and
//! order do not matter.

mod canon;
mod graph;

pub use canon::{canonical_form, canonical_form_with_cap};
pub use graph::Graph;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single codeword.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Item {
    Vertex(u32),
    Edge(u32, u32),
}

impl Item {
    /// The concrete codeword.
    pub fn codeword(self) -> String {
        match self {
            Item::Vertex(i) => format!("a{}a", "b".repeat(i as usize)),
            Item::Edge(i, j) => format!("a{}aaa{}a", "b".repeat(i as usize), "b".repeat(j as usize)),
        }
    }

    /// Length of the codeword; never zero.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        match self {
            Item::Vertex(i) => i as usize + 2,
            Item::Edge(i, j) => (i + j) as usize + 5,
        }
    }
}

/// Splits a word into codewords, or reports the first offending position.
pub fn parse_codewords(w: &str) -> Result<Vec<Item>> {
    let bytes = w.as_bytes();
    let n = bytes.len();
    let mut items = Vec::new();
    let mut i = 0;
    let bad = |pos: usize, what: &str| Error::NotInG(format!("{w} (position {pos}: {what})"));
    // Reads `b^m a` starting at `i`, returning (m, index after the `a`).
    let block = |mut i: usize| -> Result<(u32, usize)> {
        let start = i;
        while i < n && bytes[i] == b'b' {
            i += 1;
        }
        if i == start {
            return Err(bad(i, "expected b"));
        }
        if i >= n || bytes[i] != b'a' {
            return Err(bad(i, "expected a"));
        }
        let m = u32::try_from(i - start).map_err(|_| bad(start, "block too long"))?;
        Ok((m, i + 1))
    };
    while i < n {
        if bytes[i] != b'a' {
            return Err(bad(i, "expected a"));
        }
        let (m, next) = block(i + 1)?;
        i = next;
        if i + 2 < n && bytes[i] == b'a' && bytes[i + 1] == b'a' && bytes[i + 2] == b'b' {
            let (k, next) = block(i + 2)?;
            items.push(Item::Edge(m, k));
            i = next;
        } else {
            items.push(Item::Vertex(m));
        }
    }
    Ok(items)
}

/// Whether `w` is a product of vertex and edge codewords.
pub fn is_in_g(w: &str) -> bool {
    parse_codewords(w).is_ok()
}

/// Graph of a sequence of codewords.
pub fn graph_of_items(items: &[Item]) -> Graph {
    let mut g = Graph::empty();
    for &item in items {
        match item {
            Item::Vertex(i) => g.add_vertex(i),
            Item::Edge(i, j) => g.add_edge(i, j),
        }
    }
    g
}

/// The graph denoted by `w`, with vertices named by their block exponents.
pub fn decode(w: &str) -> Result<Graph> {
    Ok(graph_of_items(&parse_codewords(w)?))
}

/// The short-lex least word denoting `g` up to isomorphism.
///
/// Edge codewords come first, followed by one codeword per isolated vertex.
/// All relabelings onto `1..=n` are tried, so graphs above 8 vertices are
/// refused; use [`encode_with_cap`] to raise the limit.
pub fn encode(g: &Graph) -> Result<String> {
    encode_with_cap(g, 8)
}

pub fn encode_with_cap(g: &Graph, cap: usize) -> Result<String> {
    let n = g.order();
    if n > cap {
        return Err(Error::resource(format!("encode is limited to {cap} vertices, graph has {n}")));
    }
    let g = g.relabel_dense();
    let isolated: Vec<u32> = g.isolated_vertices().into_iter().collect();
    let edges: Vec<(u32, u32)> = g.edges().collect();

    let mut perm: Vec<u32> = (1..=n as u32).collect();
    let mut best: Option<String> = None;
    loop {
        let word = encode_labeled(&edges, &isolated, &perm);
        let better = match &best {
            None => true,
            Some(b) => shortlex(&word, b) == Ordering::Less,
        };
        if better {
            best = Some(word);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best.unwrap_or_default())
}

fn encode_labeled(edges: &[(u32, u32)], isolated: &[u32], perm: &[u32]) -> String {
    let label = |v: u32| perm[v as usize - 1];
    let mut es: Vec<String> = edges
        .iter()
        .map(|&(u, v)| Item::Edge(label(u), label(v)).codeword())
        .collect();
    let mut vs: Vec<String> = isolated.iter().map(|&v| Item::Vertex(label(v)).codeword()).collect();
    let concat_order = |x: &String, y: &String| (x.clone() + y).cmp(&(y.clone() + x));
    es.sort_by(concat_order);
    vs.sort_by(concat_order);
    es.concat() + &vs.concat()
}

/// Length first, then lexicographic.
pub fn shortlex(x: &str, y: &str) -> Ordering {
    x.len().cmp(&y.len()).then_with(|| x.cmp(y))
}

pub(crate) fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_in_g() {
        assert!(is_in_g("abaaabba"));
        assert!(is_in_g(""));
        assert!(!is_in_g("aaba"));
        assert!(!is_in_g("ab"));
        assert!(!is_in_g("aa"));
        assert!(!is_in_g("abaab"));
        assert!(is_in_g("abaaba"));
        assert!(is_in_g("abaaabbaaba"));
    }

    #[test]
    fn parse_distinguishes_vertex_then_codeword() {
        assert_eq!(parse_codewords("abaaba").unwrap(), vec![Item::Vertex(1), Item::Vertex(1)]);
        assert_eq!(
            parse_codewords("abbaaabaaba").unwrap(),
            vec![Item::Edge(2, 1), Item::Vertex(1)]
        );
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode("abaaabba").unwrap(), Graph::from_edges(2, [(1, 2)]).unwrap());
        assert_eq!(decode("").unwrap(), Graph::empty());
        assert_eq!(decode("abaaba").unwrap(), Graph::new(1));
        assert!(matches!(decode("aaba"), Err(Error::NotInG(_))));
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(&Graph::new(1)).unwrap(), "aba");
        assert_eq!(encode(&Graph::from_edges(2, [(1, 2)]).unwrap()).unwrap(), "abaaabba");
        assert_eq!(encode(&Graph::from_edges(2, [(2, 1)]).unwrap()).unwrap(), "abaaabba");
        assert_eq!(encode(&Graph::empty()).unwrap(), "");
        assert_eq!(encode(&Graph::from_edges(1, [(1, 1)]).unwrap()).unwrap(), "abaaaba");
    }

    #[test]
    fn encode_refuses_large_graphs() {
        assert!(matches!(encode(&Graph::new(9)), Err(Error::Resource(_))));
    }

    #[test]
    fn permutations_are_exhaustive() {
        let mut p = vec![1, 2, 3, 4];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
    }
}
