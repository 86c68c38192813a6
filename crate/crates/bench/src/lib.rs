//! Criterion benchmarks for the analysis pipeline live under `benches/`.
