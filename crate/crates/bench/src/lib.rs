//! Benchmarks for the keyword extraction pipeline live in `benches/`.
