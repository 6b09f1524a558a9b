//! Bench-only package; see `benches/core_ops.rs`.
