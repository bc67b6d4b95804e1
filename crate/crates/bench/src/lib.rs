//! Criterion benchmarks for `jscc-bounds`; see `benches/`.
