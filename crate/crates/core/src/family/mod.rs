//! Graph families of normalized linear pieces: multiplicities, marked
//! graphs, classification, membership and enumeration.

mod enumerate;
mod marked;
mod member;

pub use enumerate::Member;
pub use marked::MarkedGraph;
pub use member::Realization;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::alphabetc::{Letter, LetterAlphabet};
use crate::automata::Torsion;
use crate::codec::Graph;
use crate::semilinear::{LinearPiece, SemilinearSet, Vector};
use crate::{Config, Result};

/// How many distinct concrete codewords a letter may contribute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mult {
    Finite(u32),
    Infinite,
}

impl Mult {
    pub fn is_infinite(self) -> bool {
        self == Mult::Infinite
    }

    /// Whether `k` distinct codewords are allowed.
    pub fn allows(self, k: usize) -> bool {
        match self {
            Mult::Finite(a) => k <= a as usize,
            Mult::Infinite => true,
        }
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Finite(a) => write!(f, "{a}"),
            Mult::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for Mult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Mult::Finite(a) => s.serialize_u32(*a),
            Mult::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for Mult {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(a) => Ok(Mult::Finite(a)),
            Raw::S(s) if s == "infinity" => Ok(Mult::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad multiplicity {s:?}"))),
        }
    }
}

/// One normalized linear piece, seen as a family of graphs.
///
/// A member picks, for every letter `z` of the support, a set of between
/// 1 and `alpha(z)` concrete codewords from the saturation of `z`, with
/// distinct vertices getting distinct concrete exponents; the member is the
/// graph of all picked codewords.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPiece {
    letters: Vec<Letter>,
    index: Vec<usize>,
    q: Vec<u32>,
    r: Vec<u32>,
    alpha: Vec<Mult>,
    base: Vector,
    periods: Vec<Vector>,
    torsion: Torsion,
}

/// Sizes derived from a piece that bound its interesting members.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PieceMetrics {
    /// Vertices of the marked graph.
    pub marked_vertices: usize,
    /// Total number of blocks over all letters of the piece.
    pub core_bound: usize,
    /// Size up to which every member has a homomorphic image in the piece.
    pub variant_bound: usize,
    pub t: u32,
    pub p: u32,
}

impl FamilyPiece {
    /// Builds a piece from a normalized linear set over `alphabet`.
    ///
    /// Returns `None` for the piece `{0}`, which only yields the empty graph.
    pub fn from_linear(piece: &LinearPiece, alphabet: &LetterAlphabet) -> Option<FamilyPiece> {
        let tor = alphabet.torsion();
        let r_all = piece.period_sum();
        let support = piece.support();
        if support.is_empty() {
            return None;
        }
        let letters: Vec<Letter> = support.iter().map(|&z| alphabet.get(z)).collect();
        let q: Vec<u32> = support.iter().map(|&z| piece.base()[z]).collect();
        let r: Vec<u32> = support.iter().map(|&z| r_all[z]).collect();
        let alpha = letters
            .iter()
            .zip(q.iter().zip(&r))
            .map(|(&z, (&qz, &rz))| {
                if !z.has_big_block(tor) {
                    Mult::Finite(1)
                } else if rz >= 1 {
                    Mult::Infinite
                } else {
                    Mult::Finite(qz)
                }
            })
            .collect();
        Some(FamilyPiece {
            letters,
            index: support,
            q,
            r,
            alpha,
            base: piece.base().clone(),
            periods: piece.periods().to_vec(),
            torsion: tor,
        })
    }

    /// Builds a piece directly from letters and multiplicities.
    ///
    /// Small-only letters are forced to multiplicity 1.
    pub fn from_alpha(entries: &[(Letter, Mult)], tor: Torsion) -> FamilyPiece {
        let mut entries = entries.to_vec();
        entries.sort();
        entries.dedup_by_key(|e| e.0);
        let n = entries.len();
        let alpha: Vec<Mult> = entries
            .iter()
            .map(|&(z, a)| if z.has_big_block(tor) { a } else { Mult::Finite(1) })
            .collect();
        let q: Vec<u32> = alpha
            .iter()
            .map(|a| match a {
                Mult::Finite(k) => (*k).max(1),
                Mult::Infinite => 1,
            })
            .collect();
        let r: Vec<u32> = alpha.iter().map(|a| a.is_infinite() as u32).collect();
        let periods = (0..n)
            .filter(|&i| r[i] > 0)
            .map(|i| (0..n).map(|j| (i == j) as u32).collect())
            .collect();
        FamilyPiece {
            letters: entries.iter().map(|e| e.0).collect(),
            index: (0..n).collect(),
            base: q.clone(),
            q,
            r,
            alpha,
            periods,
            torsion: tor,
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Index of each support letter in the full alphabet.
    pub fn alphabet_index(&self) -> &[usize] {
        &self.index
    }

    pub fn alpha(&self) -> &[Mult] {
        &self.alpha
    }

    pub fn alpha_of(&self, z: Letter) -> Option<Mult> {
        self.letters.iter().position(|&y| y == z).map(|i| self.alpha[i])
    }

    /// Base vector restricted to the support.
    pub fn q(&self) -> &[u32] {
        &self.q
    }

    /// Period sum restricted to the support.
    pub fn r(&self) -> &[u32] {
        &self.r
    }

    /// Base vector over the full alphabet.
    pub fn base(&self) -> &Vector {
        &self.base
    }

    pub fn periods(&self) -> &[Vector] {
        &self.periods
    }

    pub fn torsion(&self) -> Torsion {
        self.torsion
    }

    pub(crate) fn is_big(&self, c: u32) -> bool {
        self.torsion.is_big(c)
    }

    /// Small exponents occurring in the support.
    pub fn small_exponents(&self) -> BTreeSet<u32> {
        self.letters
            .iter()
            .flat_map(|z| z.blocks())
            .filter(|&c| !self.is_big(c))
            .collect()
    }

    /// Big classes occurring in the support.
    pub fn big_classes(&self) -> BTreeSet<u32> {
        self.letters.iter().flat_map(|z| z.blocks()).filter(|&c| self.is_big(c)).collect()
    }

    /// Classification of this piece alone: 1 to 4.
    pub fn rank(&self) -> u8 {
        let mut rank = 1;
        for (&z, &a) in self.letters.iter().zip(&self.alpha) {
            if !a.is_infinite() {
                continue;
            }
            rank = rank.max(2);
            if let Letter::Edge(c, d) = z {
                if self.is_big(c) && self.is_big(d) {
                    if c == d {
                        return 4;
                    }
                    rank = 3;
                }
            }
        }
        rank
    }

    /// Whether some letter has unbounded multiplicity.
    pub fn is_infinite(&self) -> bool {
        self.alpha.iter().any(|a| a.is_infinite())
    }

    pub fn marked_graph(&self) -> MarkedGraph {
        marked::marked_graph(self)
    }

    /// Vertices touched by finite-multiplicity letters with big blocks,
    /// counted with multiplicity.
    fn finite_big_slots(&self, edges_only: bool) -> usize {
        self.letters
            .iter()
            .zip(&self.alpha)
            .filter(|(z, _)| !edges_only || z.is_edge())
            .map(|(z, a)| match a {
                Mult::Finite(k) if z.has_big_block(self.torsion) => {
                    *k as usize * z.blocks().iter().filter(|&&c| self.is_big(c)).count()
                }
                _ => 0,
            })
            .sum()
    }

    pub fn metrics(&self) -> PieceMetrics {
        let small = self.small_exponents().len();
        PieceMetrics {
            marked_vertices: self.marked_graph().graph().order(),
            core_bound: self.letters.iter().map(|z| z.blocks().len()).sum(),
            variant_bound: small + self.finite_big_slots(false) + self.big_classes().len(),
            t: self.torsion.t,
            p: self.torsion.p,
        }
    }

    /// Bounds on the vertex cover number and the bag size of a tree
    /// decomposition over all members, or `None` when unbounded.
    pub fn width_bounds(&self) -> Option<(usize, usize)> {
        for (&z, &a) in self.letters.iter().zip(&self.alpha) {
            if let (Letter::Edge(c, d), true) = (z, a.is_infinite()) {
                if self.is_big(c) && self.is_big(d) {
                    return None;
                }
            }
        }
        // Small endpoints plus every instance touched by a finite letter
        // cover all edges.
        let small_endpoints: BTreeSet<u32> = self
            .letters
            .iter()
            .filter(|z| z.is_edge())
            .flat_map(|z| z.blocks())
            .filter(|&c| !self.is_big(c))
            .collect();
        let cover = small_endpoints.len() + self.finite_big_slots(true);
        let vf = self.marked_graph().graph().order();
        Some((vf.max(cover), vf.max(cover + 1)))
    }

    /// Decides membership of `g` in this piece.
    pub fn member(&self, g: &Graph, budget: &mut u64) -> Result<Option<Realization>> {
        member::search(self, g, budget)
    }

    /// Visits every member with at most `max_vertices` vertices, at least
    /// once up to isomorphism, in order of increasing vertex count.
    pub fn for_each_member<F>(&self, max_vertices: usize, cfg: &Config, visit: F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&Member) -> ControlFlow<()>,
    {
        enumerate::for_each(self, max_vertices, cfg, visit)
    }
}

/// The family denoted by a regular language, as a union of pieces.
#[derive(Clone, Debug)]
pub struct Family {
    alphabet: LetterAlphabet,
    pieces: Vec<FamilyPiece>,
    accepts_empty: bool,
}

/// Chromatic number supremum over a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChromaticSup {
    Finite(usize),
    Infinite,
}

impl fmt::Display for ChromaticSup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChromaticSup::Finite(k) => write!(f, "{k}"),
            ChromaticSup::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for ChromaticSup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ChromaticSup::Finite(k) => s.serialize_u64(*k as u64),
            ChromaticSup::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for ChromaticSup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match Mult::deserialize(d)? {
            Mult::Finite(k) => Ok(ChromaticSup::Finite(k as usize)),
            Mult::Infinite => Ok(ChromaticSup::Infinite),
        }
    }
}

/// Turns a normalized semilinear set into family pieces.
///
/// Pieces with the same support and multiplicities denote the same family
/// and are merged; the zero vector is dropped.
pub fn build_pieces(s: &SemilinearSet, alphabet: &LetterAlphabet) -> Vec<FamilyPiece> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for lp in s.pieces() {
        if let Some(fp) = FamilyPiece::from_linear(lp, alphabet) {
            if seen.insert((fp.letters.clone(), fp.alpha.clone())) {
                out.push(fp);
            }
        }
    }
    out
}

impl Family {
    pub fn new(alphabet: LetterAlphabet, pieces: Vec<FamilyPiece>, accepts_empty: bool) -> Family {
        Family {
            alphabet,
            pieces,
            accepts_empty,
        }
    }

    pub fn alphabet(&self) -> &LetterAlphabet {
        &self.alphabet
    }

    pub fn pieces(&self) -> &[FamilyPiece] {
        &self.pieces
    }

    pub fn accepts_empty(&self) -> bool {
        self.accepts_empty
    }

    pub fn torsion(&self) -> Torsion {
        self.alphabet.torsion()
    }

    /// Largest piece rank; an empty family has rank 1.
    pub fn rank(&self) -> u8 {
        self.pieces.iter().map(FamilyPiece::rank).max().unwrap_or(1)
    }

    /// Vertex count that no member exceeds, for a finite family.
    pub fn max_order(&self) -> Option<usize> {
        let mut most = 0;
        for piece in &self.pieces {
            let mut n = 0;
            for (z, m) in piece.letters().iter().zip(piece.alpha()) {
                let Mult::Finite(k) = *m else { return None };
                n += k as usize * z.blocks().len();
            }
            most = most.max(n);
        }
        Some(most)
    }

    /// Membership; the realization names the first piece that contains `g`.
    pub fn member(&self, g: &Graph, cfg: &Config) -> Result<Option<Realization>> {
        if g.is_empty() {
            return Ok(self.accepts_empty.then(Realization::empty));
        }
        let mut budget = cfg.search_budget;
        for (i, piece) in self.pieces.iter().enumerate() {
            if let Some(mut r) = piece.member(g, &mut budget)? {
                r.piece = Some(i);
                return Ok(Some(r));
            }
        }
        Ok(None)
    }

    /// Visits members of every piece (the empty graph first, if present).
    pub fn for_each_member<F>(&self, max_vertices: usize, cfg: &Config, mut visit: F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&Member) -> ControlFlow<()>,
    {
        if self.accepts_empty && visit(&Member::empty()).is_break() {
            return Ok(ControlFlow::Break(()));
        }
        for (i, piece) in self.pieces.iter().enumerate() {
            let flow = piece.for_each_member(max_vertices, cfg, |m| {
                let mut m = m.clone();
                m.realization.piece = Some(i);
                visit(&m)
            })?;
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// All members with at most `max_vertices` vertices, as canonical
    /// forms, sorted.
    pub fn enumerate(&self, max_vertices: usize, cfg: &Config) -> Result<Vec<Graph>> {
        let mut out = BTreeSet::new();
        let mut err = None;
        let _ = self.for_each_member(max_vertices, cfg, |m| {
            match crate::codec::canonical_form_with_cap(&m.graph, cfg.canon_vertices) {
                Ok(c) => {
                    out.insert(c);
                    ControlFlow::Continue(())
                }
                Err(e) => {
                    err = Some(e);
                    ControlFlow::Break(())
                }
            }
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(out.into_iter().collect()),
        }
    }

    /// Supremum of the chromatic number over all members.
    pub fn chromatic_sup(&self, cfg: &Config) -> Result<ChromaticSup> {
        let mut best = 0;
        for piece in &self.pieces {
            if piece.marked_graph().has_marked_loop() {
                return Ok(ChromaticSup::Infinite);
            }
            let bound = piece.metrics().variant_bound;
            let _ = piece.for_each_member(bound, cfg, |m| {
                best = best.max(crate::properties::chromatic_number(&m.graph));
                ControlFlow::Continue(())
            })?;
        }
        Ok(ChromaticSup::Finite(best))
    }
}
