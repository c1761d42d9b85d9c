//! Shared fixtures for the benchmarks.

use iwasawa_core::{build_named, decompose, RootDatum};

/// Algebras the solver benchmarks run over, smallest first.
pub const ALGEBRAS: &[&str] = &["sl3R", "su(1,3)", "so(2,5)", "su(2,3)", "split-G2"];

pub fn datum(name: &str) -> RootDatum {
    decompose(&build_named(name).expect("catalog name")).expect("decomposes")
}
