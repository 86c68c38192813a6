use std::collections::HashSet;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use regfam::semilinear::{LinearPiece, SemilinearSet};

const CAP: u32 = 5;

fn piece(dim: usize) -> impl Strategy<Value = LinearPiece> {
    let vec = move || proptest::collection::vec(0u32..=3, dim);
    let period = vec().prop_filter("nonzero period", |p| p.iter().any(|&x| x > 0));
    (vec(), proptest::collection::vec(period, 0..=2)).prop_map(|(b, ps)| LinearPiece::new(b, ps))
}

fn set() -> impl Strategy<Value = SemilinearSet> {
    (1usize..=3).prop_flat_map(|dim| {
        proptest::collection::vec(piece(dim), 1..=3).prop_map(move |ps| SemilinearSet::from_pieces(dim, ps).unwrap())
    })
}

/// Reference members with every entry at most `CAP`, by closure under the
/// periods.
fn members(s: &SemilinearSet) -> HashSet<Vec<u32>> {
    let mut out = HashSet::new();
    for p in s.pieces() {
        let mut seen = HashSet::new();
        let mut stack = vec![p.base().to_vec()];
        while let Some(v) = stack.pop() {
            if v.iter().any(|&x| x > CAP) || !seen.insert(v.clone()) {
                continue;
            }
            for q in p.periods() {
                stack.push(v.iter().zip(q).map(|(a, b)| a + b).collect());
            }
        }
        out.extend(seen);
    }
    out
}

fn grid(dim: usize) -> Vec<Vec<u32>> {
    (0..(CAP + 1).pow(dim as u32))
        .map(|mut code| {
            (0..dim)
                .map(|_| {
                    let x = code % (CAP + 1);
                    code /= CAP + 1;
                    x
                })
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 48,
        rng_seed: RngSeed::Fixed(0x5eed),
        ..ProptestConfig::default()
    })]

    #[test]
    fn contains_matches_the_reference(s in set()) {
        let m = members(&s);
        for v in grid(s.dim()) {
            prop_assert_eq!(s.contains(&v), m.contains(&v), "{:?}", v);
        }
    }

    #[test]
    fn normalize_preserves_membership(s in set()) {
        let n = s.normalize(10_000).unwrap();
        prop_assert!(n.pieces().iter().all(LinearPiece::is_normal));
        for v in grid(s.dim()) {
            prop_assert_eq!(n.contains(&v), s.contains(&v), "{:?}", v);
        }
    }

    #[test]
    fn union_is_membership_or(a in set(), b in set()) {
        prop_assume!(a.dim() == b.dim());
        let u = a.union(&b).unwrap();
        for v in grid(a.dim()) {
            prop_assert_eq!(u.contains(&v), a.contains(&v) || b.contains(&v));
        }
    }

    #[test]
    fn sum_is_commutative(a in set(), b in set()) {
        prop_assume!(a.dim() == b.dim());
        let x = a.sum(&b).unwrap();
        let y = b.sum(&a).unwrap();
        for v in grid(a.dim()) {
            prop_assert_eq!(x.contains(&v), y.contains(&v));
        }
    }

    #[test]
    fn star_contains_zero_and_is_closed(a in set()) {
        let s = a.star(12).unwrap();
        let dim = a.dim();
        prop_assert!(s.contains(&vec![0; dim]));
        let inside: Vec<Vec<u32>> = grid(dim).into_iter().filter(|v| s.contains(v)).collect();
        for x in &inside {
            for y in &inside {
                let z: Vec<u32> = x.iter().zip(y).map(|(p, q)| p + q).collect();
                if z.iter().all(|&c| c <= CAP) {
                    prop_assert!(s.contains(&z), "{:?} + {:?}", x, y);
                }
            }
        }
    }
}
