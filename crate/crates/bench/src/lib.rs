//! Criterion benchmarks for `quiverpi`; see `benches/kernels.rs`.
