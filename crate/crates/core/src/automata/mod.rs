//! Regular expressions over `{a,b}`, finite automata, and the torsion data
//! of the letter `b`.

mod dfa;
mod monoid;
mod nfa;
mod regex;

pub use dfa::{g_dfa, intersect_with_g, Dfa, G_REGEX};
pub use monoid::{class_rep, is_aperiodic, torsion_pair, Torsion};
pub use nfa::{to_nfa, Nfa};
pub use regex::{parse_regex, Regex};

/// Subset construction; see [`Dfa::determinize`].
pub fn determinize(nfa: &Nfa) -> Dfa {
    Dfa::determinize(nfa)
}

/// Minimization; see [`Dfa::minimize`].
pub fn minimize(d: &Dfa) -> Dfa {
    d.minimize()
}
