//! Criterion benchmarks for the hot paths of `conewave-core`; see `benches/`.
