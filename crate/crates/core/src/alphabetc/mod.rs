//! The reduced letter alphabet: codewords whose `b`-blocks are class
//! representatives, the automaton over those letters, and its Parikh image.

mod letter_dfa;
mod parikh;

pub use letter_dfa::{build_letter_dfa, LetterDfa};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automata::Torsion;
use crate::codec::{parse_codewords, Item};
use crate::error::{Error, Result};

/// A reduced vertex or edge codeword.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Vertex(u32),
    Edge(u32, u32),
}

impl Letter {
    pub fn is_edge(self) -> bool {
        matches!(self, Letter::Edge(..))
    }

    /// Block exponents in word order.
    pub fn blocks(self) -> Vec<u32> {
        match self {
            Letter::Vertex(c) => vec![c],
            Letter::Edge(c, d) => vec![c, d],
        }
    }

    /// The codeword written with the reduced exponents.
    pub fn item(self) -> Item {
        match self {
            Letter::Vertex(c) => Item::Vertex(c),
            Letter::Edge(c, d) => Item::Edge(c, d),
        }
    }

    pub fn word(self) -> String {
        self.item().codeword()
    }

    /// Whether some block stands for infinitely many exponents.
    pub fn has_big_block(self, tor: Torsion) -> bool {
        self.blocks().into_iter().any(|c| tor.is_big(c))
    }

    /// Reduces a concrete codeword.
    pub fn reduce(item: Item, tor: Torsion) -> Letter {
        let r = |n: u32| tor.class_rep(n as u64);
        match item {
            Item::Vertex(i) => Letter::Vertex(r(i)),
            Item::Edge(i, j) => Letter::Edge(r(i), r(j)),
        }
    }
}

/// Edge letters first; within a kind, short-lex order of the codewords.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        match (*self, *other) {
            (Letter::Edge(..), Letter::Vertex(_)) => Ordering::Less,
            (Letter::Vertex(_), Letter::Edge(..)) => Ordering::Greater,
            (Letter::Vertex(c), Letter::Vertex(d)) => c.cmp(&d),
            (Letter::Edge(m, n), Letter::Edge(m2, n2)) => (m + n, m).cmp(&(m2 + n2, m2)),
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Vertex(c) => write!(f, "V({c})"),
            Letter::Edge(c, d) => write!(f, "E({c},{d})"),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Letter> {
        let bad = || Error::parse(0, format!("bad letter {s:?}"));
        let inner = |p: &str| s.strip_prefix(p).and_then(|r| r.strip_suffix(')'));
        if let Some(body) = inner("V(") {
            return body.trim().parse().map(Letter::Vertex).map_err(|_| bad());
        }
        if let Some(body) = inner("E(") {
            let (c, d) = body.split_once(',').ok_or_else(bad)?;
            let c = c.trim().parse().map_err(|_| bad())?;
            let d = d.trim().parse().map_err(|_| bad())?;
            return Ok(Letter::Edge(c, d));
        }
        Err(bad())
    }
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The letters occurring in reduced words of a language, in letter order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterAlphabet {
    letters: Vec<Letter>,
    torsion: Torsion,
}

impl LetterAlphabet {
    pub fn new(mut letters: Vec<Letter>, torsion: Torsion) -> Self {
        letters.sort();
        letters.dedup();
        LetterAlphabet { letters, torsion }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn torsion(&self) -> Torsion {
        self.torsion
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn index_of(&self, z: Letter) -> Option<usize> {
        self.letters.binary_search(&z).ok()
    }

    pub fn get(&self, i: usize) -> Letter {
        self.letters[i]
    }
}

/// Replaces every `b`-block exponent by its class representative.
pub fn reduced_form(w: &str, tor: Torsion) -> Result<String> {
    Ok(parse_codewords(w)?
        .into_iter()
        .map(|item| Letter::reduce(item, tor).word())
        .collect())
}

/// The exponents a block of a letter stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExponentClass {
    /// Exactly this exponent.
    Exact(u32),
    /// `start + step·k` for every `k ≥ 0`.
    Progression { start: u32, step: u32 },
}

impl ExponentClass {
    pub fn contains(self, n: u32) -> bool {
        match self {
            ExponentClass::Exact(c) => n == c,
            ExponentClass::Progression { start, step } => n >= start && (n - start).is_multiple_of(step),
        }
    }

    /// The `k`-th member in increasing order.
    pub fn nth(self, k: u32) -> Option<u32> {
        match self {
            ExponentClass::Exact(c) => (k == 0).then_some(c),
            ExponentClass::Progression { start, step } => Some(start + step * k),
        }
    }
}

/// Per block, the set of exponents a reduced letter stands for.
pub fn saturation_class(z: Letter, tor: Torsion) -> Vec<ExponentClass> {
    z.blocks()
        .into_iter()
        .map(|c| {
            if tor.is_big(c) {
                ExponentClass::Progression { start: c, step: tor.p }
            } else {
                ExponentClass::Exact(c)
            }
        })
        .collect()
}
