//! Benchmark-only crate; see `benches/kernels.rs`.
//!
//! The experiments' cost is dominated by four kernels: divisor-style sieves,
//! critical-line evaluations of `|ζ(½+it)|²`, truncated Voronoi partial sums,
//! and the close-quadruple counter. Each gets a criterion benchmark at a size
//! small enough to iterate quickly but large enough to exercise the real code
//! paths.
