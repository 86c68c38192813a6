use super::Graph;
use crate::error::{Error, Result};

/// Canonical relabeling onto `1..=n`, with the default cap of 10 vertices.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    canonical_form_with_cap(g, 10)
}

/// Canonical relabeling onto `1..=n`.
///
/// The adjacency matrix is read in square order: for each position `k`,
/// the entries `(i,k),(k,i)` for `i < k` and then `(k,k)`. The chosen
/// permutation makes this bit string lexicographically least when a present
/// edge ranks before an absent one. Isomorphic graphs get equal results.
pub fn canonical_form_with_cap(g: &Graph, cap: usize) -> Result<Graph> {
    let n = g.order();
    if n > cap.min(31) {
        return Err(Error::resource(format!(
            "canonical form is limited to {} vertices, graph has {n}",
            cap.min(31)
        )));
    }
    let names: Vec<u32> = g.vertices().collect();
    let pos = |x: u32| names.binary_search(&x).unwrap();
    let mut out = vec![0u32; n];
    let mut inc = vec![0u32; n];
    let mut looped = vec![false; n];
    for (u, v) in g.edges() {
        let (i, j) = (pos(u), pos(v));
        if i == j {
            looped[i] = true;
        } else {
            out[i] |= 1 << j;
            inc[j] |= 1 << i;
        }
    }
    let twin = twin_classes(&out, &inc, &looped);

    // Level-wise search keeping every prefix that attains the best key so far.
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for k in 0..n {
        let mut best_block: Option<u64> = None;
        let mut next: Vec<Vec<usize>> = Vec::new();
        for prefix in &frontier {
            let used: u32 = prefix.iter().fold(0, |m, &v| m | 1 << v);
            for v in 0..n {
                if used & (1 << v) != 0 {
                    continue;
                }
                // Only the first unused member of a twin class needs trying.
                if (0..v).any(|w| twin[w] == twin[v] && used & (1 << w) == 0) {
                    continue;
                }
                let mut block = 0u64;
                for &u in prefix {
                    block = (block << 2) | (((out[u] >> v) & 1) as u64 * 2) | ((out[v] >> u) & 1) as u64;
                }
                block = block << 1 | looped[v] as u64;
                match best_block {
                    Some(b) if block < b => continue,
                    Some(b) if block == b => {}
                    _ => {
                        best_block = Some(block);
                        next.clear();
                    }
                }
                let mut ext = prefix.clone();
                ext.push(v);
                next.push(ext);
            }
        }
        frontier = next;
        let _ = k;
    }
    let order = frontier.into_iter().next().unwrap_or_default();
    let mut rank = vec![0u32; n];
    for (k, &v) in order.iter().enumerate() {
        rank[v] = k as u32 + 1;
    }
    Graph::from_edges(n, g.edges().map(|(u, v)| (rank[pos(u)], rank[pos(v)])))
}

/// Vertices whose exchange is an automorphism share a class id.
fn twin_classes(out: &[u32], inc: &[u32], looped: &[bool]) -> Vec<usize> {
    let n = out.len();
    let mut class: Vec<usize> = (0..n).collect();
    for v in 0..n {
        for u in 0..v {
            if class[u] != u {
                continue;
            }
            let mask = !((1u32 << u) | (1u32 << v));
            let same = looped[u] == looped[v]
                && out[u] & mask == out[v] & mask
                && inc[u] & mask == inc[v] & mask
                && ((out[u] >> v) & 1) == ((out[v] >> u) & 1);
            if same {
                class[v] = u;
                break;
            }
        }
    }
    class
}
