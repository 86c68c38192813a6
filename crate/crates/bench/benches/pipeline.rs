use criterion::{criterion_group, criterion_main, Criterion};
use regfam::oracle::oracle_members;
use regfam::properties::Hamiltonian;
use regfam::{crown_regex, Analysis, Config, Graph};
use std::hint::black_box;

const LANGS: [(&str, &str); 4] = [
    ("cliques", "(ab+aaab+a)+"),
    ("stars", "(abaaabbb*a)*(aba)"),
    ("single", "(aba)+"),
    ("bipartite", "(abb(bb)*aaabbb(bb)*a)+"),
];

fn analysis(c: &mut Criterion) {
    let cfg = Config::default();
    for (name, re) in LANGS {
        c.bench_function(&format!("analyze/{name}"), |b| b.iter(|| Analysis::new(black_box(re), &cfg).unwrap()));
    }
}

fn queries(c: &mut Criterion) {
    let cfg = Config::default();
    let cliques = Analysis::new("(ab+aaab+a)+", &cfg).unwrap();
    let k4 = Graph::from_edges(4, (1..=4).flat_map(|i| (i + 1..=4).map(move |j| (i, j)))).unwrap();
    c.bench_function("member/cliques-k4", |b| b.iter(|| cliques.member(black_box(&k4)).unwrap()));
    c.bench_function("decide/cliques-hamiltonian", |b| b.iter(|| cliques.decide(&Hamiltonian).unwrap()));
    let crown = Analysis::new(&crown_regex(5), &cfg).unwrap();
    c.bench_function("enumerate/crown5", |b| b.iter(|| crown.enumerate(10).unwrap()));
}

fn oracle(c: &mut Criterion) {
    let cfg = Config::default();
    let stars = Analysis::new("(abaaabbb*a)*(aba)", &cfg).unwrap();
    c.bench_function("oracle/stars-40", |b| b.iter(|| oracle_members(stars.dfa(), 40, 6)));
}

criterion_group!(benches, analysis, queries, oracle);
criterion_main!(benches);
