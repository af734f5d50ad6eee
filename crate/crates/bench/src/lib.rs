//! Criterion benchmarks for the census drivers live in `benches/`.
