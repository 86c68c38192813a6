//! Deciding whether some member of a family has a given graph property.
//!
//! Three routes: hereditary properties only need small induced members,
//! some properties are settled by the marks of a piece, and everything else
//! is searched exhaustively up to a witness bound. Running out of budget
//! gives a `resource` verdict, never a guess.

pub mod algo;
mod planar;

pub use planar::is_planar;

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::codec::Graph;
use crate::family::{Family, FamilyPiece, Member, Realization};
use crate::{Config, Error, Result};

/// Chromatic number of the undirected simplification (loops ignored).
///
/// Graphs must have at most 64 vertices.
pub fn chromatic_number(g: &Graph) -> usize {
    algo::chromatic_number(&g.undirected_masks())
}

/// A decidable graph property, with what the engine may assume about it.
pub trait GraphProperty {
    fn name(&self) -> String;

    /// The predicate. It sees the undirected simplification unless
    /// `directed` is true.
    fn holds(&self, g: &Graph) -> bool;

    fn directed(&self) -> bool {
        false
    }

    /// Closed under induced subgraphs.
    fn hereditary(&self) -> bool {
        false
    }

    /// Holds iff some connected component satisfies it.
    fn component_local(&self) -> bool {
        false
    }

    /// A direct answer for a piece, when its marks settle the question.
    fn shortcut(&self, _piece: &FamilyPiece) -> Option<bool> {
        None
    }

    /// Vertex count up to which a piece must contain a satisfying member
    /// if it contains one at all; `None` if no bound is known.
    fn witness_bound(&self, piece: &FamilyPiece) -> Option<usize>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Resource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdict {
    pub answer: Answer,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_graph: Option<Graph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_word: Option<String>,
    /// Piece that produced the answer; `None` for the empty graph or a No.
    pub piece: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub realization: Option<Realization>,
}

impl Verdict {
    fn new(answer: Answer) -> Verdict {
        Verdict {
            answer,
            witness_graph: None,
            witness_word: None,
            piece: None,
            note: None,
            realization: None,
        }
    }

    fn yes(m: &Member) -> Verdict {
        Verdict {
            witness_graph: Some(m.graph.clone()),
            realization: Some(m.realization.clone()),
            ..Verdict::new(Answer::Yes)
        }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }
}

fn view<'a>(prop: &dyn GraphProperty, g: &'a Graph) -> std::borrow::Cow<'a, Graph> {
    if prop.directed() {
        std::borrow::Cow::Borrowed(g)
    } else {
        std::borrow::Cow::Owned(g.undirected_simplification())
    }
}

/// First member of `piece` up to `bound` vertices satisfying `prop`.
fn search(piece: &FamilyPiece, prop: &dyn GraphProperty, bound: usize, cfg: &Config) -> Result<Option<Member>> {
    let mut found = None;
    let _ = piece.for_each_member(bound, cfg, |m| {
        if prop.holds(&view(prop, &m.graph)) {
            found = Some(m.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// Small connected graphs used to probe component-local properties.
fn probes() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 2..=6u32 {
        let path = (1..n).map(|i| (i, i + 1));
        out.push(Graph::from_edges(n as usize, path).unwrap());
        // Same path, oriented from even to odd positions.
        let zig = (1..n).map(|i| if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) });
        out.push(Graph::from_edges(n as usize, zig).unwrap());
        if n >= 3 {
            let cycle = (1..=n).map(|i| (i, i % n + 1));
            out.push(Graph::from_edges(n as usize, cycle).unwrap());
        }
        let complete = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)));
        out.push(Graph::from_edges(n as usize, complete).unwrap());
    }
    for (a, b) in [(2u32, 2u32), (2, 3), (3, 3)] {
        let e = (1..=a).flat_map(|i| (1..=b).map(move |j| (i, a + j)));
        out.push(Graph::from_edges((a + b) as usize, e).unwrap());
    }
    out
}

/// For a component-local property: some small member plus a probe graph
/// as an extra component, confirmed by the membership search.
fn probe_piece(piece: &FamilyPiece, prop: &dyn GraphProperty, cfg: &Config) -> Result<Option<Member>> {
    let mg = piece.marked_graph();
    if !mg.has_marked_loop() && !mg.has_doubly_marked_edge() {
        return Ok(None);
    }
    let mut base = None;
    let _ = piece.for_each_member(piece.metrics().core_bound, cfg, |m| {
        base = Some(m.graph.clone());
        ControlFlow::Break(())
    })?;
    let Some(base) = base else { return Ok(None) };
    let mut budget = cfg.search_budget;
    for h in probes() {
        if !prop.holds(&view(prop, &h)) {
            continue;
        }
        let g = base.disjoint_union(&h);
        if g.order() > 64 {
            continue;
        }
        if let Some(r) = piece.member(&g, &mut budget)? {
            return Ok(Some(Member { graph: g, realization: r }));
        }
    }
    Ok(None)
}

fn decide_piece(piece: &FamilyPiece, prop: &dyn GraphProperty, cfg: &Config) -> Result<Verdict> {
    let core = piece.metrics().core_bound;
    if prop.hereditary() {
        // A satisfying member has an induced sub-member on at most one
        // codeword per letter, which satisfies the property too.
        return Ok(match search(piece, prop, core, cfg)? {
            Some(m) => Verdict::yes(&m),
            None => Verdict::new(Answer::No),
        });
    }
    let bound = prop.witness_bound(piece);
    match prop.shortcut(piece) {
        Some(false) => return Ok(Verdict::new(Answer::No)),
        Some(true) => {
            // The answer is settled; a witness is a bonus.
            let found = match bound {
                Some(b) => search(piece, prop, b, cfg).or_else(|e| match e {
                    Error::Resource(_) => Ok(None),
                    e => Err(e),
                })?,
                None => None,
            };
            return Ok(match found {
                Some(m) => Verdict::yes(&m),
                None => Verdict {
                    note: Some("decided by the marks of the piece".into()),
                    ..Verdict::new(Answer::Yes)
                },
            });
        }
        None => {}
    }
    if prop.component_local() {
        if let Some(m) = probe_piece(piece, prop, cfg)? {
            return Ok(Verdict::yes(&m));
        }
    }
    let Some(b) = bound else {
        return Err(Error::resource(format!("no witness bound for {}", prop.name())));
    };
    Ok(match search(piece, prop, b, cfg)? {
        Some(m) => Verdict::yes(&m),
        None => Verdict::new(Answer::No),
    })
}

/// Whether some member of the family satisfies `prop`.
///
/// The first piece (in order) with a satisfying member is reported. Pieces
/// that run out of budget turn a No into `resource`.
pub fn decide(family: &Family, prop: &dyn GraphProperty, cfg: &Config) -> Result<Verdict> {
    if family.accepts_empty() && prop.holds(&Graph::empty()) {
        return Ok(Verdict {
            witness_graph: Some(Graph::empty()),
            realization: Some(Realization::default()),
            ..Verdict::new(Answer::Yes)
        });
    }
    let mut starved = None;
    for (i, piece) in family.pieces().iter().enumerate() {
        match decide_piece(piece, prop, cfg) {
            Ok(mut v) if v.is_yes() => {
                v.piece = Some(i);
                if let Some(r) = v.realization.as_mut() {
                    r.piece = Some(i);
                }
                return Ok(v);
            }
            Ok(_) => {}
            Err(Error::Resource(msg)) => starved = Some(format!("piece {i}: {msg}")),
            Err(e) => return Err(e),
        }
    }
    Ok(match starved {
        Some(msg) => Verdict {
            note: Some(msg),
            ..Verdict::new(Answer::Resource)
        },
        None => Verdict::new(Answer::No),
    })
}

fn masks(g: &Graph) -> Vec<u64> {
    g.undirected_masks()
}

/// A cycle through all vertices; needs at least 3 vertices.
#[derive(Clone, Copy, Debug, Default)]
pub struct Hamiltonian;

impl GraphProperty for Hamiltonian {
    fn name(&self) -> String {
        "hamiltonian".into()
    }

    fn holds(&self, g: &Graph) -> bool {
        algo::hamiltonian(&masks(g))
    }

    /// Shrinking the excursions of a Hamiltonian cycle through copies of
    /// big vertices leaves at most `p + 1` copies per block, plus slack.
    fn witness_bound(&self, piece: &FamilyPiece) -> Option<usize> {
        let m = piece.metrics();
        Some((m.p as usize + 1) * (m.core_bound + 2) + 1)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PerfectMatching;

impl GraphProperty for PerfectMatching {
    fn name(&self) -> String {
        "perfect-matching".into()
    }

    fn holds(&self, g: &Graph) -> bool {
        algo::perfect_matching(&masks(g))
    }

    fn witness_bound(&self, piece: &FamilyPiece) -> Option<usize> {
        Some(2 * piece.metrics().core_bound)
    }
}

/// A dominating set of at most `log2 |V|` vertices.
#[derive(Clone, Copy, Debug, Default)]
pub struct DominatingLog;

impl GraphProperty for DominatingLog {
    fn name(&self) -> String {
        "dominating-log".into()
    }

    fn holds(&self, g: &Graph) -> bool {
        algo::dominating_log(&masks(g))
    }

    /// Copies of a marked endpoint of a marked edge grow a star around one
    /// fixed vertex, so the graph outgrows any fixed dominating set.
    fn shortcut(&self, piece: &FamilyPiece) -> Option<bool> {
        let mg = piece.marked_graph();
        let hit = mg
            .marked_edges()
            .iter()
            .any(|(u, v)| mg.marked_vertices().contains(u) || mg.marked_vertices().contains(v));
        hit.then_some(true)
    }

    /// Without marked edges, extra members only add isolated vertices, each
    /// of which must join the dominating set.
    fn witness_bound(&self, piece: &FamilyPiece) -> Option<usize> {
        let m = piece.metrics();
        if self.shortcut(piece).is_some() {
            Some((m.core_bound + (1usize << m.core_bound.min(4))).min(16))
        } else {
            Some(m.variant_bound)
        }
    }
}

/// A defensive alliance of at most `log2 |V|` vertices.
#[derive(Clone, Copy, Debug, Default)]
pub struct DefensiveAllianceLog;

impl GraphProperty for DefensiveAllianceLog {
    fn name(&self) -> String {
        "defensive-alliance-log".into()
    }

    fn holds(&self, g: &Graph) -> bool {
        algo::defensive_alliance_log(&masks(g))
    }

    /// A fresh copy of a marked vertex can be attached by a single edge (or
    /// none), and then forms an alliance on its own.
    fn shortcut(&self, piece: &FamilyPiece) -> Option<bool> {
        (!piece.marked_graph().marked_vertices().is_empty()).then_some(true)
    }

    fn witness_bound(&self, piece: &FamilyPiece) -> Option<usize> {
        let m = piece.metrics();
        Some(m.variant_bound.max(m.core_bound + 2))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Planar;

impl GraphProperty for Planar {
    fn name(&self) -> String {
        "planar".into()
    }

    fn holds(&self, g: &Graph) -> bool {
        is_planar(&masks(g))
    }

    fn hereditary(&self) -> bool {
        true
    }

    fn witness_bound(&self, piece: &FamilyPiece) -> Option<usize> {
        Some(piece.metrics().core_bound)
    }
}

/// Properly colorable with `k` colors.
#[derive(Clone, Copy, Debug)]
pub struct Colorable(pub usize);

impl GraphProperty for Colorable {
    fn name(&self) -> String {
        format!("colorable-{}", self.0)
    }

    fn holds(&self, g: &Graph) -> bool {
        algo::colorable(&masks(g), self.0)
    }

    fn hereditary(&self) -> bool {
        true
    }

    fn witness_bound(&self, piece: &FamilyPiece) -> Option<usize> {
        Some(piece.metrics().core_bound)
    }
}

/// Contains `k` pairwise adjacent vertices.
#[derive(Clone, Copy, Debug)]
pub struct Clique(pub usize);

impl GraphProperty for Clique {
    fn name(&self) -> String {
        format!("clique-{}", self.0)
    }

    fn holds(&self, g: &Graph) -> bool {
        algo::has_clique(&masks(g), self.0)
    }

    fn component_local(&self) -> bool {
        true
    }

    /// One codeword per letter plus the clique itself induce a member.
    fn witness_bound(&self, piece: &FamilyPiece) -> Option<usize> {
        Some(piece.metrics().core_bound + self.0)
    }
}

/// A property given by a closure, for callers with their own predicates.
pub struct Custom<F> {
    pub name: String,
    pub predicate: F,
    pub hereditary: bool,
    pub component_local: bool,
    /// Witness bound as a function of the piece's core bound.
    pub bound: Option<fn(usize) -> usize>,
}

impl<F: Fn(&Graph) -> bool> GraphProperty for Custom<F> {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn holds(&self, g: &Graph) -> bool {
        (self.predicate)(g)
    }

    fn hereditary(&self) -> bool {
        self.hereditary
    }

    fn component_local(&self) -> bool {
        self.component_local
    }

    fn witness_bound(&self, piece: &FamilyPiece) -> Option<usize> {
        self.bound.map(|f| f(piece.metrics().core_bound))
    }
}

/// Looks up a built-in property; `k` parameterizes `colorable` and `clique`.
pub fn builtin(name: &str, k: usize) -> Option<Box<dyn GraphProperty>> {
    Some(match name {
        "hamiltonian" => Box::new(Hamiltonian),
        "perfect-matching" => Box::new(PerfectMatching),
        "dominating-log" => Box::new(DominatingLog),
        "defensive-alliance-log" => Box::new(DefensiveAllianceLog),
        "planar" => Box::new(Planar),
        "bipartite" => Box::new(Colorable(2)),
        "colorable" => Box::new(Colorable(k)),
        "clique" => Box::new(Clique(k)),
        _ => return None,
    })
}

pub fn hamiltonian(family: &Family, cfg: &Config) -> Result<Verdict> {
    decide(family, &Hamiltonian, cfg)
}

pub fn perfect_matching(family: &Family, cfg: &Config) -> Result<Verdict> {
    decide(family, &PerfectMatching, cfg)
}

pub fn dominating_set_log(family: &Family, cfg: &Config) -> Result<Verdict> {
    decide(family, &DominatingLog, cfg)
}

pub fn defensive_alliance_log(family: &Family, cfg: &Config) -> Result<Verdict> {
    decide(family, &DefensiveAllianceLog, cfg)
}
