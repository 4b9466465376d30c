//! Benchmarks for the rewriting core live in `benches/`.
