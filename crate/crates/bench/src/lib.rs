//! Benchmark-only crate; the measurements live in `benches/suites.rs`.
//! Run them with `cargo bench -p fekete-bench`.
