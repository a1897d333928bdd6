//! Criterion benchmarks for thurston-core live under `benches/`.
