//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use regfam::Graph;

/// Anchored matcher from the `regex` crate; our syntax is a subset of its.
pub fn matcher(re: &str) -> regex::Regex {
    regex::Regex::new(&format!("^(?:{re})$")).unwrap()
}

pub const CLIQUES: &str = "(ab+aaab+a)+";
pub const STARS: &str = "(abaaabbb*a)*(aba)";
pub const SINGLE: &str = "(aba)+";
pub const BIPARTITE: &str = "(abb(bb)*aaabbb(bb)*a)+";

fn block(rng: &mut StdRng) -> &'static str {
    ["b", "bb", "bbb", "b+", "bb(bb)*"][rng.gen_range(0..5)]
}

fn codeword(rng: &mut StdRng) -> String {
    if rng.gen_bool(0.3) {
        format!("a{}a", block(rng))
    } else {
        format!("a{}aaa{}a", block(rng), block(rng))
    }
}

fn expr(rng: &mut StdRng, depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.25) {
        return codeword(rng);
    }
    match rng.gen_range(0..5) {
        0 => format!("{}{}", expr(rng, depth - 1), expr(rng, depth - 1)),
        1 => format!("({}|{})", expr(rng, depth - 1), expr(rng, depth - 1)),
        2 => format!("({})*", expr(rng, depth - 1)),
        3 => format!("({})+", expr(rng, depth - 1)),
        _ => format!("({})?", expr(rng, depth - 1)),
    }
}

/// A random regular expression whose language consists of graph encodings.
pub fn random_g_regex(seed: u64) -> String {
    let mut rng = StdRng::seed_from_u64(seed);
    expr(&mut rng, 3)
}

/// The fixed oracle corpus: the four reference languages, three crowns and
/// three random languages.
pub fn corpus() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = [("cliques", CLIQUES), ("stars", STARS), ("single", SINGLE), ("bipartite", BIPARTITE)]
        .iter()
        .map(|(n, r)| (n.to_string(), r.to_string()))
        .collect();
    for n in 3..=5 {
        out.push((format!("crown{n}"), regfam::crown_regex(n)));
    }
    for seed in [1, 2, 3] {
        out.push((format!("random{seed}"), random_g_regex(seed)));
    }
    out
}

/// Symmetric adjacency matrix of the undirected simplification.
pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let names: Vec<u32> = g.vertices().collect();
    let n = names.len();
    let pos = |x: u32| names.iter().position(|&y| y == x).unwrap();
    let mut m = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        if u != v {
            m[pos(u)][pos(v)] = true;
            m[pos(v)][pos(u)] = true;
        }
    }
    m
}

fn permutations(n: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn go(p: &mut Vec<usize>, used: &mut Vec<bool>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if p.len() == used.len() {
            return f(p);
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                p.push(i);
                let hit = go(p, used, f);
                p.pop();
                used[i] = false;
                if hit {
                    return true;
                }
            }
        }
        false
    }
    go(&mut Vec::new(), &mut vec![false; n], f)
}

pub fn brute_hamiltonian(g: &Graph) -> bool {
    let m = matrix(g);
    let n = m.len();
    n >= 3 && permutations(n, &mut |p| (0..n).all(|i| m[p[i]][p[(i + 1) % n]]))
}

pub fn brute_perfect_matching(g: &Graph) -> bool {
    let m = matrix(g);
    let n = m.len();
    n.is_multiple_of(2) && permutations(n, &mut |p| (0..n / 2).all(|i| m[p[2 * i]][p[2 * i + 1]]))
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1 << n)).map(move |s| (0..n).filter(|i| s >> i & 1 == 1).collect())
}

fn log2(n: usize) -> usize {
    (0..).take_while(|k| 1usize << k <= n).last().unwrap_or(0)
}

pub fn brute_dominating_log(g: &Graph) -> bool {
    let m = matrix(g);
    let n = m.len();
    n > 0
        && subsets(n).any(|s| s.len() <= log2(n) && (0..n).all(|v| s.contains(&v) || s.iter().any(|&u| m[u][v])))
}

pub fn brute_defensive_alliance_log(g: &Graph) -> bool {
    let m = matrix(g);
    let n = m.len();
    subsets(n).any(|s| {
        s.len() <= log2(n)
            && s.iter().all(|&v| {
                let closed: Vec<usize> = (0..n).filter(|&u| u == v || m[u][v]).collect();
                let inside = closed.iter().filter(|u| s.contains(u)).count();
                2 * inside >= closed.len()
            })
    })
}

pub fn brute_chromatic(g: &Graph) -> usize {
    let m = matrix(g);
    let n = m.len();
    (0..=n)
        .find(|&k| {
            // Every assignment of k colors, as a base-k counter.
            let total = (k as u64).pow(n as u32);
            (0..total).any(|mut code| {
                let mut c = vec![0; n];
                for x in c.iter_mut() {
                    *x = (code % k.max(1) as u64) as usize;
                    code /= k.max(1) as u64;
                }
                (0..n).all(|u| (0..n).all(|v| !m[u][v] || c[u] != c[v]))
            })
        })
        .unwrap()
}
