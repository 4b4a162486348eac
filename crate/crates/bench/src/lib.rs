//! Benchmarks for the decoder live in `benches/`; run them with `cargo bench -p multitrial-bench`.
