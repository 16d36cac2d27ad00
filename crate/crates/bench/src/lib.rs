//! Criterion benchmarks for the enriched library live in `benches/`.
