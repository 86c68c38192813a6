//! The full pipeline from a regular expression to a classified family, and
//! its JSON report.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::alphabetc::{build_letter_dfa, Letter, LetterDfa};
use crate::automata::{intersect_with_g, torsion_pair, Dfa, Torsion};
use crate::codec::Graph;
use crate::family::{build_pieces, ChromaticSup, Family, Mult, PieceMetrics, Realization};
use crate::properties::{decide, GraphProperty, Verdict};
use crate::semilinear::{SemilinearSet, Vector};
use crate::{Config, Error, Result};

/// A regular language of graph encodings, analyzed.
#[derive(Clone, Debug)]
pub struct Analysis {
    dfa: Dfa,
    restricted: bool,
    torsion: Torsion,
    letter_dfa: LetterDfa,
    parikh: SemilinearSet,
    family: Family,
    cfg: Config,
}

/// A member together with an accepted word that decodes to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub realization: Realization,
    pub word: String,
}

impl Analysis {
    pub fn new(regex: &str, cfg: &Config) -> Result<Analysis> {
        Analysis::from_dfa(&Dfa::from_regex(regex)?, cfg)
    }

    /// Runs the pipeline on any DFA; words that do not encode graphs are
    /// dropped first.
    pub fn from_dfa(d: &Dfa, cfg: &Config) -> Result<Analysis> {
        let (dfa, restricted) = intersect_with_g(d);
        let torsion = torsion_pair(&dfa);
        let letter_dfa = build_letter_dfa(&dfa, torsion);
        let parikh = letter_dfa.parikh(cfg)?.normalize(cfg.max_pieces)?;
        let pieces = build_pieces(&parikh, letter_dfa.alphabet());
        let family = Family::new(letter_dfa.alphabet().clone(), pieces, dfa.accepts(""));
        Ok(Analysis {
            dfa,
            restricted,
            torsion,
            letter_dfa,
            parikh,
            family,
            cfg: cfg.clone(),
        })
    }

    /// Minimal DFA of the language restricted to graph encodings.
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// Whether the input language contained words that encode no graph.
    pub fn was_restricted(&self) -> bool {
        self.restricted
    }

    pub fn torsion(&self) -> Torsion {
        self.torsion
    }

    pub fn letter_dfa(&self) -> &LetterDfa {
        &self.letter_dfa
    }

    /// Normalized Parikh image over the letter alphabet.
    pub fn parikh(&self) -> &SemilinearSet {
        &self.parikh
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn config(&self) -> &Config {
        &self.cfg
    }

    pub fn rank(&self) -> u8 {
        self.family.rank()
    }

    pub fn enumerate(&self, max_vertices: usize) -> Result<Vec<Graph>> {
        self.family.enumerate(max_vertices, &self.cfg)
    }

    pub fn chromatic_sup(&self) -> Result<ChromaticSup> {
        self.family.chromatic_sup(&self.cfg)
    }

    /// Membership, with an accepted word decoding to a graph isomorphic to
    /// `g`.
    pub fn member(&self, g: &Graph) -> Result<Option<Witness>> {
        match self.family.member(g, &self.cfg)? {
            Some(r) => {
                let word = self.witness_word(&r)?;
                Ok(Some(Witness { realization: r, word }))
            }
            None => Ok(None),
        }
    }

    /// Letter counts used for the witness of a realization: the base of its
    /// piece plus enough copies of the period sum to fit every pick.
    fn witness_vector(&self, r: &Realization) -> Option<Vector> {
        let i = r.piece?;
        let piece = &self.family.pieces()[i];
        let mut rsum = vec![0u32; piece.base().len()];
        for p in piece.periods() {
            for (x, y) in rsum.iter_mut().zip(p) {
                *x += y;
            }
        }
        let mut k = 0u32;
        for (j, &z) in piece.alphabet_index().iter().enumerate() {
            let need = r.picks[j].len() as u32;
            let have = piece.base()[z];
            if need > have && rsum[z] > 0 {
                k = k.max((need - have).div_ceil(rsum[z]));
            }
        }
        Some(piece.base().iter().zip(&rsum).map(|(q, s)| q + k * s).collect())
    }

    /// An accepted word whose codewords are exactly the picks of `r`.
    pub fn witness_word(&self, r: &Realization) -> Result<String> {
        let Some(i) = r.piece else {
            return Ok(String::new());
        };
        let v = self.witness_vector(r).expect("realization has a piece");
        let letters = letter_word(&self.letter_dfa, &v, self.cfg.search_budget)?
            .ok_or_else(|| Error::InvalidGraph("no letter word for the witness vector".into()))?;
        let piece = &self.family.pieces()[i];
        let slot: BTreeMap<usize, usize> = piece.alphabet_index().iter().enumerate().map(|(j, &z)| (z, j)).collect();
        let mut used = vec![0usize; piece.letters().len()];
        let mut word = String::new();
        for z in letters {
            let j = slot[&z];
            let picks = &r.picks[j];
            let item = picks.get(used[j]).unwrap_or(&picks[0]);
            used[j] += 1;
            word.push_str(&item.codeword());
        }
        if !self.dfa.accepts(&word) {
            return Err(Error::InvalidGraph("witness word is not accepted".into()));
        }
        Ok(word)
    }

    /// Length bound for the witness of `r`: the number of letter occurrences
    /// times the longest concrete codeword a member of this size can need.
    pub fn witness_length_bound(&self, r: &Realization, g: &Graph) -> usize {
        let Some(v) = self.witness_vector(r) else { return 0 };
        let occurrences: usize = v.iter().map(|&x| x as usize).sum();
        let Torsion { t, p } = self.torsion;
        let reach = t as usize + p as usize * (g.order() + self.letter_dfa.alphabet().len());
        occurrences * (2 * reach + 5)
    }

    /// Decides a property, attaching an accepted witness word to a Yes.
    pub fn decide(&self, prop: &dyn GraphProperty) -> Result<Verdict> {
        let mut v = decide(&self.family, prop, &self.cfg)?;
        if let Some(r) = &v.realization {
            v.witness_word = Some(self.witness_word(r)?);
        }
        Ok(v)
    }

    pub fn report(&self) -> Result<Report> {
        let letters = self.family.alphabet().letters().to_vec();
        let pieces = self
            .family
            .pieces()
            .iter()
            .map(|piece| {
                let mg = piece.marked_graph();
                PieceReport {
                    letters: piece.letters().to_vec(),
                    q: piece.base().clone(),
                    periods: piece.periods().to_vec(),
                    alpha: piece.letters().iter().map(|z| z.to_string()).zip(piece.alpha().iter().copied()).collect(),
                    marked_graph: MarkedReport {
                        vertices: mg.graph().vertices().collect(),
                        edges: mg.graph().edges().collect(),
                        marks: mg.marks(),
                    },
                    rank: piece.rank(),
                    width_bounds: match piece.width_bounds() {
                        Some((vertex_cover, bag_size)) => WidthBounds::Bounded { vertex_cover, bag_size },
                        None => WidthBounds::Unbounded,
                    },
                    metrics: piece.metrics(),
                }
            })
            .collect();
        Ok(Report {
            torsion: self.torsion,
            alphabet: letters,
            pieces,
            overall_rank: self.rank(),
            chromatic_sup: self.chromatic_sup()?,
            accepts_empty: self.family.accepts_empty(),
            restricted: self.restricted,
        })
    }
}

/// A word of the letter automaton with Parikh vector exactly `v`.
fn letter_word(ld: &LetterDfa, v: &[u32], budget: u64) -> Result<Option<Vec<usize>>> {
    struct S<'a> {
        ld: &'a LetterDfa,
        dead: HashSet<(u32, Vec<u32>)>,
        word: Vec<usize>,
        budget: u64,
    }
    fn go(s: &mut S, q: u32, rest: &mut Vec<u32>) -> Result<bool> {
        if s.budget == 0 {
            return Err(Error::resource("witness word search budget exhausted"));
        }
        s.budget -= 1;
        if rest.iter().all(|&x| x == 0) {
            return Ok(s.ld.is_accepting(q));
        }
        if s.dead.contains(&(q, rest.clone())) {
            return Ok(false);
        }
        for z in 0..rest.len() {
            if rest[z] == 0 {
                continue;
            }
            let Some(r) = s.ld.step(q, z) else { continue };
            rest[z] -= 1;
            s.word.push(z);
            let ok = go(s, r, rest)?;
            rest[z] += 1;
            if ok {
                return Ok(true);
            }
            s.word.pop();
        }
        s.dead.insert((q, rest.clone()));
        Ok(false)
    }
    let mut s = S {
        ld,
        dead: HashSet::new(),
        word: Vec::new(),
        budget,
    };
    let mut rest = v.to_vec();
    Ok(go(&mut s, ld.start(), &mut rest)?.then_some(s.word))
}

/// Report of one piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PieceReport {
    pub letters: Vec<Letter>,
    /// Base vector over the whole alphabet.
    pub q: Vector,
    pub periods: Vec<Vector>,
    pub alpha: BTreeMap<String, Mult>,
    pub marked_graph: MarkedReport,
    pub rank: u8,
    pub width_bounds: WidthBounds,
    pub metrics: PieceMetrics,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedReport {
    pub vertices: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
    pub marks: Vec<String>,
}

/// Vertex cover and bag size bounds, or the string `"unbounded"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WidthBounds {
    Bounded { vertex_cover: usize, bag_size: usize },
    Unbounded,
}

impl Serialize for WidthBounds {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        match self {
            WidthBounds::Bounded { vertex_cover, bag_size } => {
                let mut st = s.serialize_struct("WidthBounds", 2)?;
                st.serialize_field("vertexCover", vertex_cover)?;
                st.serialize_field("bagSize", bag_size)?;
                st.end()
            }
            WidthBounds::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

impl<'de> Deserialize<'de> for WidthBounds {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(rename_all = "camelCase")]
        struct B {
            vertex_cover: usize,
            bag_size: usize,
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            B(B),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::B(b) => Ok(WidthBounds::Bounded {
                vertex_cover: b.vertex_cover,
                bag_size: b.bag_size,
            }),
            Raw::S(s) if s == "unbounded" => Ok(WidthBounds::Unbounded),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad width bounds {s:?}"))),
        }
    }
}

/// The `analyze` report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub torsion: Torsion,
    pub alphabet: Vec<Letter>,
    pub pieces: Vec<PieceReport>,
    pub overall_rank: u8,
    pub chromatic_sup: ChromaticSup,
    pub accepts_empty: bool,
    /// The input contained words that encode no graph.
    pub restricted: bool,
}

/// Regular expression for the crowns around a directed `n`-cycle: the cycle
/// edges `(i, i+1)` and `(n, 1)`, then any subset of the cusps `(s, s-n)`
/// for `s` in `n+1..=2n`.
pub fn crown_regex(n: u32) -> String {
    let edge = |u: u32, v: u32| crate::codec::Item::Edge(u, v).codeword();
    let mut out = String::new();
    for i in 1..=n {
        out.push_str(&edge(i, i % n + 1));
    }
    for s in n + 1..=2 * n {
        out.push('(');
        out.push_str(&edge(s, s - n));
        out.push_str(")?");
    }
    out
}
