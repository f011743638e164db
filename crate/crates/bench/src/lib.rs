//! Benchmarks live in `benches/`; run `cargo bench -p fdde-bench`.
