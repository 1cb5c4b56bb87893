//! Criterion benchmarks for `apoly-core`; see `benches/`.
