use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::FamilyPiece;
use crate::alphabetc::Letter;
use crate::codec::{graph_of_items, Graph, Item};
use crate::error::{Error, Result};

/// How a graph arises from a piece: concrete exponents for its vertices and
/// the concrete codewords picked for every letter of the piece.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    /// Index of the piece within its family, once known.
    pub piece: Option<usize>,
    /// Concrete exponent of every vertex of the input graph.
    pub exponents: BTreeMap<u32, u32>,
    /// Picked codewords, aligned with the letters of the piece.
    pub picks: Vec<Vec<Item>>,
}

impl Realization {
    pub(crate) fn empty() -> Realization {
        Realization::default()
    }

    /// The graph of all picked codewords (vertices named by exponents).
    pub fn graph(&self) -> Graph {
        graph_of_items(&self.picks.concat())
    }
}

/// Symbol budget shared by the searches; every call decrements it.
pub(crate) fn spend(budget: &mut u64) -> Result<()> {
    if *budget == 0 {
        return Err(Error::resource("search budget exhausted"));
    }
    *budget -= 1;
    Ok(())
}

struct Search<'a> {
    piece: &'a FamilyPiece,
    order: Vec<usize>,
    prev_twin: Vec<Option<usize>>,
    domain: Vec<Vec<u32>>,
    /// Edges incident to each vertex, as (other endpoint, vertex is source).
    incident: Vec<Vec<(usize, bool)>>,
    edge_letter: HashMap<(u32, u32), usize>,
    label: Vec<Option<u32>>,
    small_used: Vec<bool>,
    count: Vec<usize>,
    zero_letters: usize,
    edges_left: usize,
    isolated: Vec<bool>,
}

pub(super) fn search(piece: &FamilyPiece, g: &Graph, budget: &mut u64) -> Result<Option<Realization>> {
    let n = g.order();
    if n == 0 {
        return Ok(None);
    }
    if n > 64 {
        return Err(Error::resource(format!("membership is limited to 64 vertices, graph has {n}")));
    }
    let names: Vec<u32> = g.vertices().collect();
    let pos = |x: u32| names.binary_search(&x).unwrap();
    let mut looped = vec![false; n];
    let mut incident: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    let mut has_out = vec![false; n];
    let mut has_in = vec![false; n];
    let mut und = vec![0u64; n];
    let mut edge_count = 0;
    for (u, v) in g.edges() {
        let (i, j) = (pos(u), pos(v));
        edge_count += 1;
        if i == j {
            looped[i] = true;
            incident[i].push((i, true));
        } else {
            has_out[i] = true;
            has_in[j] = true;
            incident[i].push((j, true));
            incident[j].push((i, false));
            und[i] |= 1 << j;
            und[j] |= 1 << i;
        }
    }
    let isolated: Vec<bool> = (0..n).map(|i| incident[i].is_empty()).collect();

    let mut edge_letter = HashMap::new();
    let mut vertex_letter = HashMap::new();
    let mut labels: Vec<u32> = Vec::new();
    for (k, &z) in piece.letters().iter().enumerate() {
        match z {
            Letter::Edge(c, d) => {
                edge_letter.insert((c, d), k);
            }
            Letter::Vertex(c) => {
                vertex_letter.insert(c, k);
            }
        }
        labels.extend(z.blocks());
    }
    labels.sort_unstable();
    labels.dedup();
    let edge_letters = edge_letter.len();
    if edge_letters > edge_count {
        return Ok(None);
    }

    let domain: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            labels
                .iter()
                .copied()
                .filter(|&x| {
                    (!looped[i] || edge_letter.contains_key(&(x, x)))
                        && (!has_out[i] || edge_letter.keys().any(|&(c, _)| c == x))
                        && (!has_in[i] || edge_letter.keys().any(|&(_, d)| d == x))
                        && (!isolated[i] || vertex_letter.contains_key(&x))
                })
                .collect()
        })
        .collect();
    if domain.iter().any(Vec::is_empty) {
        return Ok(None);
    }

    let order = search_order(&und, &incident);
    let twins = twin_classes(n, &incident, &looped);
    let mut prev_twin = vec![None; n];
    let mut last: HashMap<usize, usize> = HashMap::new();
    for &v in &order {
        prev_twin[v] = last.insert(twins[v], v);
    }

    let t = piece.torsion().t as usize;
    let mut s = Search {
        piece,
        order,
        prev_twin,
        domain,
        incident,
        edge_letter,
        label: vec![None; n],
        small_used: vec![false; t.max(1)],
        count: vec![0; piece.letters().len()],
        zero_letters: edge_letters,
        edges_left: edge_count,
        isolated,
    };
    if !s.assign(0, budget)? {
        return Ok(None);
    }
    Ok(Some(s.realize(&names)))
}

/// Breadth-first order, components by decreasing size, each started at a
/// vertex of maximum degree.
fn search_order(und: &[u64], incident: &[Vec<(usize, bool)>]) -> Vec<usize> {
    let n = und.len();
    let mut seen = vec![false; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(incident[v].len()));
    for &s in &by_degree {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            let mut nb: Vec<usize> = (0..n).filter(|&w| und[v] >> w & 1 == 1 && !seen[w]).collect();
            nb.sort_by_key(|&w| std::cmp::Reverse(incident[w].len()));
            for w in nb {
                seen[w] = true;
                comp.push(w);
            }
            i += 1;
        }
        comps.push(comp);
    }
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    comps.concat()
}

/// Vertices whose exchange is an automorphism share a class id.
fn twin_classes(n: usize, incident: &[Vec<(usize, bool)>], looped: &[bool]) -> Vec<usize> {
    let profile = |v: usize, skip: usize| -> (bool, Vec<(usize, bool)>) {
        let mut p: Vec<(usize, bool)> = incident[v].iter().copied().filter(|&(w, _)| w != v && w != skip).collect();
        p.sort_unstable();
        (looped[v], p)
    };
    let edge = |u: usize, v: usize| incident[u].contains(&(v, true));
    let mut class: Vec<usize> = (0..n).collect();
    for v in 0..n {
        for u in 0..v {
            if class[u] == u && edge(u, v) == edge(v, u) && profile(u, v) == profile(v, u) {
                class[v] = u;
                break;
            }
        }
    }
    class
}

impl Search<'_> {
    fn alpha_ok(&self, k: usize) -> bool {
        self.piece.alpha()[k].allows(self.count[k])
    }

    fn assign(&mut self, depth: usize, budget: &mut u64) -> Result<bool> {
        spend(budget)?;
        if depth == self.order.len() {
            return Ok(self.complete());
        }
        let v = self.order[depth];
        let floor = self.prev_twin[v].and_then(|u| self.label[u]).unwrap_or(0);
        for x in self.domain[v].clone() {
            if x < floor {
                continue;
            }
            let small = !self.piece.is_big(x);
            if small && self.small_used[x as usize] {
                continue;
            }
            self.label[v] = Some(x);
            if small {
                self.small_used[x as usize] = true;
            }
            let mut touched: Vec<usize> = Vec::new();
            let mut ok = true;
            for &(w, out) in &self.incident[v] {
                let Some(y) = self.label[w] else { continue };
                if w == v && !out {
                    continue;
                }
                let key = if out { (x, y) } else { (y, x) };
                let Some(&k) = self.edge_letter.get(&key) else {
                    ok = false;
                    break;
                };
                self.count[k] += 1;
                if self.count[k] == 1 {
                    self.zero_letters -= 1;
                }
                self.edges_left -= 1;
                touched.push(k);
                if !self.alpha_ok(k) {
                    ok = false;
                    break;
                }
            }
            if ok && self.zero_letters <= self.edges_left && self.assign(depth + 1, budget)? {
                return Ok(true);
            }
            for k in touched {
                self.count[k] -= 1;
                if self.count[k] == 0 {
                    self.zero_letters += 1;
                }
                self.edges_left += 1;
            }
            if small {
                self.small_used[x as usize] = false;
            }
            self.label[v] = None;
        }
        Ok(false)
    }

    fn complete(&self) -> bool {
        if self.zero_letters > 0 {
            return false;
        }
        for (k, &z) in self.piece.letters().iter().enumerate() {
            if let Letter::Vertex(c) = z {
                let with_c = (0..self.label.len()).filter(|&v| self.label[v] == Some(c));
                let (mut all, mut iso) = (0, 0);
                for v in with_c {
                    all += 1;
                    iso += self.isolated[v] as usize;
                }
                if all == 0 || !self.piece.alpha()[k].allows(iso) {
                    return false;
                }
            }
        }
        true
    }

    fn realize(&self, names: &[u32]) -> Realization {
        let p = self.piece.torsion().p;
        let n = names.len();
        let mut next: HashMap<u32, u32> = HashMap::new();
        let mut conc = vec![0u32; n];
        for (v, slot) in conc.iter_mut().enumerate() {
            let c = self.label[v].unwrap();
            *slot = if self.piece.is_big(c) {
                let j = next.entry(c).or_insert(0);
                *j += 1;
                c + p * (*j - 1)
            } else {
                c
            };
        }
        let mut picks: Vec<Vec<Item>> = vec![Vec::new(); self.piece.letters().len()];
        for (v, inc) in self.incident.iter().enumerate() {
            for &(w, out) in inc {
                if out {
                    let k = self.edge_letter[&(self.label[v].unwrap(), self.label[w].unwrap())];
                    picks[k].push(Item::Edge(conc[v], conc[w]));
                }
            }
        }
        for (k, &z) in self.piece.letters().iter().enumerate() {
            if let Letter::Vertex(c) = z {
                let with_c: Vec<usize> = (0..n).filter(|&v| self.label[v] == Some(c)).collect();
                let iso: Vec<usize> = with_c.iter().copied().filter(|&v| self.isolated[v]).collect();
                let chosen = if iso.is_empty() { vec![with_c[0]] } else { iso };
                picks[k] = chosen.into_iter().map(|v| Item::Vertex(conc[v])).collect();
            }
        }
        for list in &mut picks {
            list.sort();
        }
        Realization {
            piece: None,
            exponents: names.iter().copied().zip(conc).collect(),
            picks,
        }
    }
}
