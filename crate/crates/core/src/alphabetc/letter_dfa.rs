use super::{Letter, LetterAlphabet};
use crate::automata::{Dfa, Torsion};
use crate::semilinear::SemilinearSet;
use crate::Config;
use crate::Result;

/// Automaton over reduced letters, trimmed to useful states.
///
/// A missing transition rejects. Letter indices refer to `alphabet`.
#[derive(Clone, Debug)]
pub struct LetterDfa {
    alphabet: LetterAlphabet,
    trans: Vec<Vec<Option<u32>>>,
    accept: Vec<bool>,
    start: u32,
    /// Original automaton state behind each letter-automaton state.
    origin: Vec<u32>,
}

impl LetterDfa {
    pub fn alphabet(&self) -> &LetterAlphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.trans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trans.is_empty()
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn is_accepting(&self, q: u32) -> bool {
        self.accept[q as usize]
    }

    pub fn step(&self, q: u32, z: usize) -> Option<u32> {
        self.trans[q as usize][z]
    }

    pub fn origin(&self, q: u32) -> u32 {
        self.origin[q as usize]
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut q = self.start;
        for &z in word {
            match self.step(q, z) {
                Some(r) => q = r,
                None => return false,
            }
        }
        self.accept[q as usize]
    }

    /// Whether the empty word is accepted.
    pub fn accepts_empty(&self) -> bool {
        self.accept[self.start as usize]
    }

    /// Parikh image of the accepted letter words.
    pub fn parikh(&self, cfg: &Config) -> Result<SemilinearSet> {
        super::parikh::parikh_image(self, cfg)
    }

    pub(crate) fn transitions(&self) -> &[Vec<Option<u32>>] {
        &self.trans
    }
}

/// Builds the letter automaton of a minimal DFA whose language consists of
/// graph encodings.
///
/// Every candidate letter with exponents in `1..=t+p-1` is tried from every
/// state; only letters on a transition between a reachable and a
/// co-reachable state are kept.
pub fn build_letter_dfa(d: &Dfa, tor: Torsion) -> LetterDfa {
    let ell = tor.ell();
    let mut candidates: Vec<Letter> = Vec::new();
    for m in 1..=ell {
        for n in 1..=ell {
            candidates.push(Letter::Edge(m, n));
        }
        candidates.push(Letter::Vertex(m));
    }
    candidates.sort();

    let live = d.live_states();
    let words: Vec<String> = candidates.iter().map(|z| z.word()).collect();
    let step = |q: u32, i: usize| -> Option<u32> {
        let r = d.run(q, &words[i]);
        live[r as usize].then_some(r)
    };

    // Reachable live states through letters.
    let mut reach = vec![false; d.len()];
    let mut order = Vec::new();
    if live[d.start() as usize] {
        reach[d.start() as usize] = true;
        order.push(d.start());
    }
    let mut i = 0;
    while i < order.len() {
        let q = order[i];
        for c in 0..candidates.len() {
            if let Some(r) = step(q, c) {
                if !std::mem::replace(&mut reach[r as usize], true) {
                    order.push(r);
                }
            }
        }
        i += 1;
    }
    // Co-reachability through letters: a live state may only be completed
    // by a suffix that re-parses the codeword before it.
    let mut coreach = vec![false; d.len()];
    for &q in &order {
        coreach[q as usize] = d.is_accepting(q);
    }
    let mut changed = true;
    while changed {
        changed = false;
        for &q in &order {
            if !coreach[q as usize]
                && (0..candidates.len()).any(|c| step(q, c).is_some_and(|r| coreach[r as usize]))
            {
                coreach[q as usize] = true;
                changed = true;
            }
        }
    }
    order.retain(|&q| coreach[q as usize]);
    let useful = |q: u32, c: usize| step(q, c).is_some_and(|r| coreach[r as usize]);
    let mut used = vec![false; candidates.len()];
    for &q in &order {
        for (c, flag) in used.iter_mut().enumerate() {
            if useful(q, c) {
                *flag = true;
            }
        }
    }
    let kept: Vec<usize> = (0..candidates.len()).filter(|&c| used[c]).collect();
    let alphabet = LetterAlphabet::new(kept.iter().map(|&c| candidates[c]).collect(), tor);

    let mut index = vec![u32::MAX; d.len()];
    for (k, &q) in order.iter().enumerate() {
        index[q as usize] = k as u32;
    }
    if order.is_empty() {
        // Empty language: a single rejecting state.
        return LetterDfa {
            alphabet,
            trans: vec![Vec::new()],
            accept: vec![false],
            start: 0,
            origin: vec![d.start()],
        };
    }
    let trans = order
        .iter()
        .map(|&q| {
            kept.iter()
                .map(|&c| step(q, c).filter(|&r| coreach[r as usize]).map(|r| index[r as usize]))
                .collect()
        })
        .collect();
    let accept = order.iter().map(|&q| d.is_accepting(q)).collect();
    LetterDfa {
        alphabet,
        trans,
        accept,
        start: 0,
        origin: order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{intersect_with_g, torsion_pair};

    fn letter_dfa(r: &str) -> LetterDfa {
        let (d, _) = intersect_with_g(&Dfa::from_regex(r).unwrap());
        let tor = torsion_pair(&d);
        build_letter_dfa(&d, tor)
    }

    #[test]
    fn single_vertex_letter() {
        let ld = letter_dfa("(aba)+");
        assert_eq!(ld.alphabet().letters(), &[Letter::Vertex(1)]);
        assert!(!ld.accepts(&[]));
        assert!(ld.accepts(&[0]));
        assert!(ld.accepts(&[0, 0, 0]));
    }

    #[test]
    fn single_edge_letter() {
        let ld = letter_dfa("(ab+aaab+a)+");
        assert_eq!(ld.alphabet().letters(), &[Letter::Edge(1, 1)]);
        assert!(ld.accepts(&[0, 0]));
    }

    #[test]
    fn only_empty_word() {
        let ld = letter_dfa("a*");
        assert!(ld.alphabet().is_empty());
        assert!(ld.accepts(&[]));
        let ld = letter_dfa("aa");
        assert!(ld.alphabet().is_empty());
        assert!(!ld.accepts(&[]));
    }

    #[test]
    fn vertex_prefix_of_an_edge_is_not_a_letter() {
        let ld = letter_dfa("abaaaba");
        assert_eq!(ld.alphabet().letters(), &[Letter::Edge(1, 1)]);
    }

    #[test]
    fn stars_alphabet() {
        let ld = letter_dfa("(abaaabbb*a)*(aba)");
        assert_eq!(ld.alphabet().letters(), &[Letter::Edge(1, 2), Letter::Vertex(1)]);
    }
}
