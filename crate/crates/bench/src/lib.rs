//! Criterion benchmarks for the determinant, the Titchmarsh-Weyl coefficient
//! and the argument-principle eigenvalue search. Run with `cargo bench -p krein-ext-bench`.
