mod common;

use common::{matcher, random_g_regex};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use regfam::codec::{canonical_form, decode};
use regfam::{Analysis, Config, Error, Graph};

/// Caps small enough that hard random instances fail fast.
fn config() -> Config {
    Config {
        max_pieces: 2_000,
        search_budget: 2_000_000,
        ..Config::default()
    }
}

/// Analysis of a random language; `None` when a resource cap is hit, which
/// happens when the number of distinct letter supports explodes.
fn analyze(re: &str) -> Option<Analysis> {
    match Analysis::new(re, &config()) {
        Ok(a) => Some(a),
        Err(Error::Resource(_)) => None,
        Err(e) => panic!("{re}: {e}"),
    }
}

#[test]
fn exploding_supports_hit_the_piece_cap() {
    // One piece, sixteen periods that all share a letter: an exact normal
    // form needs a piece per reachable support, more than 2^15.
    let re = "((abaaabbbaab+aaab+a)*)*";
    assert!(analyze(re).is_none());
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 24,
        rng_seed: RngSeed::Fixed(0x5eed),
        ..ProptestConfig::default()
    })]

    #[test]
    fn enumerated_graphs_are_members(seed in 0u64..1000) {
        let re = random_g_regex(seed);
        let Some(a) = analyze(&re) else { return Ok(()) };
        let m = matcher(&re);
        for g in a.enumerate(3).unwrap() {
            let w = a.member(&g).unwrap();
            prop_assert!(w.is_some(), "{} not a member of {}", g, re);
            let w = w.unwrap();
            prop_assert!(m.is_match(&w.word));
            prop_assert_eq!(canonical_form(&decode(&w.word).unwrap()).unwrap(), g);
        }
    }

    #[test]
    fn decoded_accepted_words_are_members(seed in 0u64..1000) {
        let re = random_g_regex(seed);
        let Some(a) = analyze(&re) else { return Ok(()) };
        for w in regfam::oracle::enumerate_words(a.dfa(), 24).take(40) {
            let g = decode(&w).unwrap();
            prop_assert!(a.member(&g).unwrap().is_some(), "{} from {:?} in {}", g, w, re);
        }
    }

    #[test]
    fn membership_ignores_names(seed in 0u64..1000, shift in 1u32..20) {
        let re = random_g_regex(seed);
        let Some(a) = analyze(&re) else { return Ok(()) };
        for g in a.enumerate(3).unwrap() {
            let h = Graph::with_vertices(
                g.vertices().map(|v| v * 2 + shift),
                g.edges().map(|(u, v)| (u * 2 + shift, v * 2 + shift)),
            )
            .unwrap();
            prop_assert!(a.member(&h).unwrap().is_some());
        }
    }

    #[test]
    fn rank_is_in_range_and_bounds_chromatic_number(seed in 0u64..1000) {
        let Some(a) = analyze(&random_g_regex(seed)) else { return Ok(()) };
        let rank = a.rank();
        prop_assert!((1..=4).contains(&rank));
        match a.chromatic_sup() {
            Ok(sup) => prop_assert_eq!(rank == 4, sup == regfam::family::ChromaticSup::Infinite),
            Err(e) => prop_assert!(matches!(e, Error::Resource(_)) && rank < 4),
        }
    }
}
