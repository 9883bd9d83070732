//! Benchmark-only crate; see benches/kernel.rs.
