use serde::{Deserialize, Serialize};

/// Resource caps shared by every stage of the pipeline.
///
/// Every search in the crate is bounded by one of these; exceeding a cap
/// yields [`Error::Resource`](crate::Error::Resource) rather than a guess.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Largest graph accepted by `canonical_form`.
    pub canon_vertices: usize,
    /// Largest graph accepted by `encode` (brute force over relabelings).
    pub encode_vertices: usize,
    /// Maximum number of linear pieces produced by normalization.
    pub max_pieces: usize,
    /// Maximum number of pieces a set may have before Kleene star is refused.
    pub star_pieces: usize,
    /// Node budget for the regular expression built by state elimination.
    pub max_regex_nodes: usize,
    /// Maximum number of elements enumerated in a transition monoid.
    pub monoid_size: usize,
    /// Step budget for the combinatorial searches (membership, enumeration).
    pub search_budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            canon_vertices: 10,
            encode_vertices: 8,
            max_pieces: 10_000,
            star_pieces: 12,
            max_regex_nodes: 1_000_000,
            monoid_size: 100_000,
            search_budget: 50_000_000,
        }
    }
}
