use std::collections::{BTreeMap, HashSet};
use std::ops::ControlFlow;

use super::member::spend;
use super::{FamilyPiece, Mult, Realization};
use crate::alphabetc::Letter;
use crate::codec::{canonical_form_with_cap, graph_of_items, Graph, Item};
use crate::{Config, Result};

/// A member found by enumeration, with the codewords that produce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    /// Vertices are named by their concrete exponents.
    pub graph: Graph,
    pub realization: Realization,
}

impl Member {
    pub(crate) fn empty() -> Member {
        Member {
            graph: Graph::empty(),
            realization: Realization::empty(),
        }
    }
}

struct Walk<'a, F> {
    cfg: &'a Config,
    candidates: Vec<Vec<Item>>,
    limits: Vec<usize>,
    /// Vertex index of every candidate endpoint, per letter and candidate.
    touches: Vec<Vec<Vec<usize>>>,
    /// For each letter, vertices that no later letter can cover.
    last_chance: Vec<Vec<usize>>,
    cover: Vec<u32>,
    picks: Vec<Vec<Item>>,
    seen: &'a mut HashSet<Graph>,
    budget: &'a mut u64,
    visit: F,
}

pub(super) fn for_each<F>(piece: &FamilyPiece, max_vertices: usize, cfg: &Config, visit: F) -> Result<ControlFlow<()>>
where
    F: FnMut(&Member) -> ControlFlow<()>,
{
    let small: Vec<u32> = piece.small_exponents().into_iter().collect();
    let big: Vec<u32> = piece.big_classes().into_iter().collect();
    let p = piece.torsion().p;
    let mut seen = HashSet::new();
    let mut budget = cfg.search_budget;
    let mut walk = Walk {
        cfg,
        candidates: Vec::new(),
        limits: Vec::new(),
        touches: Vec::new(),
        last_chance: Vec::new(),
        cover: Vec::new(),
        picks: vec![Vec::new(); piece.letters().len()],
        seen: &mut seen,
        budget: &mut budget,
        visit,
    };
    let floor = small.len() + big.len();
    for total in floor..=max_vertices {
        let spare = total - floor;
        let mut counts = vec![1usize; big.len()];
        let flow = compositions(&mut counts, 0, spare, &mut |counts| {
            let mut instances: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
            for &s in &small {
                instances.insert(s, vec![s]);
            }
            for (&c, &m) in big.iter().zip(counts.iter()) {
                instances.insert(c, (0..m as u32).map(|j| c + p * j).collect());
            }
            walk.run(piece, &instances)
        })?;
        if flow.is_break() {
            return Ok(flow);
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Calls `f` with every vector `counts[i..] + extra` spreading `spare` units.
fn compositions(
    counts: &mut [usize],
    i: usize,
    spare: usize,
    f: &mut dyn FnMut(&[usize]) -> Result<ControlFlow<()>>,
) -> Result<ControlFlow<()>> {
    if i == counts.len() {
        return if spare == 0 { f(counts) } else { Ok(ControlFlow::Continue(())) };
    }
    if i + 1 == counts.len() {
        counts[i] += spare;
        let r = f(counts);
        counts[i] -= spare;
        return r;
    }
    for k in 0..=spare {
        counts[i] += k;
        let r = compositions(counts, i + 1, spare - k, f)?;
        counts[i] -= k;
        if r.is_break() {
            return Ok(r);
        }
    }
    Ok(ControlFlow::Continue(()))
}

impl<F> Walk<'_, F>
where
    F: FnMut(&Member) -> ControlFlow<()>,
{
    fn run(&mut self, piece: &FamilyPiece, instances: &BTreeMap<u32, Vec<u32>>) -> Result<ControlFlow<()>> {
        let vertices: Vec<u32> = instances.values().flatten().copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let vidx = |x: u32| vertices.binary_search(&x).unwrap();
        self.candidates.clear();
        self.touches.clear();
        self.limits.clear();
        for (&z, &a) in piece.letters().iter().zip(piece.alpha()) {
            let items: Vec<Item> = match z {
                Letter::Vertex(c) => instances[&c].iter().map(|&x| Item::Vertex(x)).collect(),
                Letter::Edge(c, d) => instances[&c]
                    .iter()
                    .flat_map(|&x| instances[&d].iter().map(move |&y| Item::Edge(x, y)))
                    .collect(),
            };
            let limit = match a {
                Mult::Finite(k) => (k as usize).min(items.len()),
                Mult::Infinite => items.len(),
            };
            self.touches.push(
                items
                    .iter()
                    .map(|it| match *it {
                        Item::Vertex(x) => vec![vidx(x)],
                        Item::Edge(x, y) => vec![vidx(x), vidx(y)],
                    })
                    .collect(),
            );
            self.candidates.push(items);
            self.limits.push(limit);
        }
        let mut last = vec![None; vertices.len()];
        for (k, t) in self.touches.iter().enumerate() {
            for v in t.iter().flatten() {
                last[*v] = Some(k);
            }
        }
        if last.iter().any(Option::is_none) {
            return Ok(ControlFlow::Continue(()));
        }
        self.last_chance = vec![Vec::new(); self.candidates.len()];
        for (v, k) in last.iter().enumerate() {
            self.last_chance[k.unwrap()].push(v);
        }
        self.cover = vec![0; vertices.len()];
        self.letter(0, 0, 0)
    }

    /// Chooses the subset for letter `k`, continuing from candidate `from`
    /// with `picked` candidates chosen so far.
    fn letter(&mut self, k: usize, from: usize, picked: usize) -> Result<ControlFlow<()>> {
        spend(self.budget)?;
        if k == self.candidates.len() {
            return Ok(self.emit());
        }
        if picked >= 1 && self.last_chance[k].iter().all(|&v| self.cover[v] > 0) {
            let r = self.letter(k + 1, 0, 0)?;
            if r.is_break() {
                return Ok(r);
            }
        }
        if picked == self.limits[k] {
            return Ok(ControlFlow::Continue(()));
        }
        for i in from..self.candidates[k].len() {
            let item = self.candidates[k][i];
            for &v in &self.touches[k][i] {
                self.cover[v] += 1;
            }
            self.picks[k].push(item);
            let r = self.letter(k, i + 1, picked + 1);
            self.picks[k].pop();
            for &v in &self.touches[k][i] {
                self.cover[v] -= 1;
            }
            if r?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn emit(&mut self) -> ControlFlow<()> {
        let graph = graph_of_items(&self.picks.concat());
        let key = canonical_form_with_cap(&graph, self.cfg.canon_vertices).unwrap_or_else(|_| graph.relabel_dense());
        if !self.seen.insert(key) {
            return ControlFlow::Continue(());
        }
        let member = Member {
            realization: Realization {
                piece: None,
                exponents: graph.vertices().map(|v| (v, v)).collect(),
                picks: self.picks.clone(),
            },
            graph,
        };
        (self.visit)(&member)
    }
}
