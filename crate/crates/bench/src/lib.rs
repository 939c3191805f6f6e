//! Criterion benchmarks for the counting and spectrum routines; see `benches/`.
