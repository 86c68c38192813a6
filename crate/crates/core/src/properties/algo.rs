//! Exact brute-force graph algorithms over symmetric adjacency bitmasks.
//!
//! Vertices are indices `0..n` with `n <= 64`; `adj[i]` never contains `i`.

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Whether the vertices can be colored with `k` colors.
pub fn colorable(adj: &[u64], k: usize) -> bool {
    let n = adj.len();
    if n == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].count_ones()));
    let mut color = vec![usize::MAX; n];
    fn go(i: usize, order: &[usize], adj: &[u64], k: usize, color: &mut [usize], used: usize) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        let mut banned = 0u64;
        let mut rest = adj[v];
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if color[w] != usize::MAX {
                banned |= 1 << color[w];
            }
        }
        // A fresh color is interchangeable with any other fresh color.
        for c in 0..k.min(used + 1) {
            if banned & (1 << c) == 0 {
                color[v] = c;
                if go(i + 1, order, adj, k, color, used.max(c + 1)) {
                    return true;
                }
            }
        }
        color[v] = usize::MAX;
        false
    }
    go(0, &order, adj, k.min(64), &mut color, 0)
}

pub fn chromatic_number(adj: &[u64]) -> usize {
    (0..=adj.len()).find(|&k| colorable(adj, k)).unwrap_or(adj.len())
}

/// Whether some cycle visits every vertex exactly once (`n >= 3`).
pub fn hamiltonian(adj: &[u64]) -> bool {
    let n = adj.len();
    if n < 3 || adj.iter().any(|a| a.count_ones() < 2) {
        return false;
    }
    if n <= 20 {
        // reach[mask] = endpoints of paths from vertex 0 covering `mask`.
        let mut reach = vec![0u32; 1 << n];
        reach[1] = 1;
        for mask in 1usize..(1 << n) {
            let ends = reach[mask];
            if ends == 0 || mask & 1 == 0 {
                continue;
            }
            let mut e = ends;
            while e != 0 {
                let v = e.trailing_zeros() as usize;
                e &= e - 1;
                let mut next = adj[v] as usize & !mask;
                while next != 0 {
                    let w = next.trailing_zeros() as usize;
                    next &= next - 1;
                    reach[mask | 1 << w] |= 1 << w;
                }
            }
        }
        return reach[(1 << n) - 1] as u64 & adj[0] != 0;
    }
    fn extend(v: usize, seen: u64, adj: &[u64], all: u64) -> bool {
        if seen == all {
            return adj[v] & 1 != 0;
        }
        let mut next = adj[v] & !seen;
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            if extend(w, seen | 1 << w, adj, all) {
                return true;
            }
        }
        false
    }
    extend(0, 1, adj, full(n))
}

pub fn perfect_matching(adj: &[u64]) -> bool {
    fn go(free: u64, adj: &[u64]) -> bool {
        if free == 0 {
            return true;
        }
        let v = free.trailing_zeros() as usize;
        let mut cand = adj[v] & free;
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if go(free & !(1 << v) & !(1 << w), adj) {
                return true;
            }
        }
        false
    }
    adj.len().is_multiple_of(2) && go(full(adj.len()), adj)
}

/// `floor(log2 n)`, with `log2 0` treated as 0.
pub fn log2_floor(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        n.ilog2() as usize
    }
}

/// Calls `f` on every vertex subset of size `1..=k`, stopping when it
/// returns true.
fn any_subset(n: usize, k: usize, f: &mut dyn FnMut(u64) -> bool) -> bool {
    fn go(start: usize, n: usize, left: usize, set: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
        if set != 0 && f(set) {
            return true;
        }
        if left == 0 {
            return false;
        }
        (start..n).any(|v| go(v + 1, n, left - 1, set | 1 << v, f))
    }
    go(0, n, k, 0, f)
}

fn closed(adj: &[u64], v: usize) -> u64 {
    adj[v] | 1 << v
}

/// Whether some dominating set has at most `floor(log2 n)` vertices.
pub fn dominating_log(adj: &[u64]) -> bool {
    let n = adj.len();
    if n == 0 {
        return false;
    }
    let all = full(n);
    any_subset(n, log2_floor(n), &mut |s| {
        let mut covered = 0;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            covered |= closed(adj, v);
        }
        covered == all
    })
}

/// Whether some defensive alliance has at most `floor(log2 n)` vertices.
pub fn defensive_alliance_log(adj: &[u64]) -> bool {
    let n = adj.len();
    any_subset(n, log2_floor(n), &mut |s| {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let nb = closed(adj, v);
            if 2 * (nb & s).count_ones() < nb.count_ones() {
                return false;
            }
        }
        true
    })
}

/// Whether the graph contains `k` pairwise adjacent vertices.
pub fn has_clique(adj: &[u64], k: usize) -> bool {
    fn go(cand: u64, k: usize, adj: &[u64]) -> bool {
        if k == 0 {
            return true;
        }
        if (cand.count_ones() as usize) < k {
            return false;
        }
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if go(rest & adj[v], k - 1, adj) {
                return true;
            }
        }
        false
    }
    go(full(adj.len()), k, adj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn masks(n: usize, edges: &[(usize, usize)]) -> Vec<u64> {
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    fn cycle(n: usize) -> Vec<u64> {
        masks(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn complete(n: usize) -> Vec<u64> {
        let e: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        masks(n, &e)
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&[]), 0);
        assert_eq!(chromatic_number(&masks(3, &[])), 1);
        assert_eq!(chromatic_number(&cycle(4)), 2);
        assert_eq!(chromatic_number(&cycle(5)), 3);
        assert_eq!(chromatic_number(&complete(5)), 5);
        // Petersen graph.
        let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (i, i + 5)));
        e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        assert_eq!(chromatic_number(&masks(10, &e)), 3);
    }

    #[test]
    fn hamiltonian_cases() {
        assert!(hamiltonian(&cycle(3)));
        assert!(hamiltonian(&complete(6)));
        assert!(!hamiltonian(&masks(2, &[(0, 1)])));
        assert!(!hamiltonian(&masks(4, &[(0, 1), (0, 2), (0, 3)])));
        // Two triangles sharing a vertex.
        assert!(!hamiltonian(&masks(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])));
        // The long path through the backtracking branch.
        assert!(hamiltonian(&cycle(22)));
        let mut c = cycle(22);
        c[0] &= !(1 << 21);
        c[21] &= !1;
        assert!(!hamiltonian(&c));
    }

    #[test]
    fn matching_cases() {
        assert!(perfect_matching(&[]));
        assert!(!perfect_matching(&masks(1, &[])));
        assert!(perfect_matching(&masks(2, &[(0, 1)])));
        assert!(!perfect_matching(&masks(4, &[(0, 1), (0, 2), (0, 3)])));
        assert!(perfect_matching(&cycle(6)));
    }

    #[test]
    fn dominating_and_alliance() {
        assert!(!dominating_log(&masks(1, &[])));
        assert!(dominating_log(&masks(2, &[(0, 1)])));
        assert!(!dominating_log(&masks(2, &[])));
        // Star with 3 rays: center dominates, 1 <= log2 4.
        assert!(dominating_log(&masks(4, &[(0, 1), (0, 2), (0, 3)])));
        assert!(!defensive_alliance_log(&masks(1, &[])));
        assert!(defensive_alliance_log(&masks(2, &[(0, 1)])));
        assert!(defensive_alliance_log(&masks(2, &[])));
        // In K4 a single vertex has 1 of 4 closed neighbours, two have 2 of 4.
        assert!(defensive_alliance_log(&complete(4)));
        assert!(!defensive_alliance_log(&complete(5)));
    }

    #[test]
    fn cliques() {
        assert!(has_clique(&complete(4), 4));
        assert!(!has_clique(&cycle(5), 3));
        assert!(has_clique(&masks(1, &[]), 1));
        assert!(has_clique(&[], 0));
    }
}
