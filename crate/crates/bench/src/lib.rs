//! Inputs shared by the kernel benchmarks.

use uecrit_core::search::triangulations;
use uecrit_core::{fixture, parse_graph6, Graph};

/// A 10-vertex, 18-edge member of `U_E` found by triangulation carving.
pub const EXTREMAL_10: &str = "I?U_hVQwW";

/// Fixtures covering both sides of every classification flag.
pub fn fixture_pool() -> Vec<(&'static str, Graph)> {
    ["diamond", "fan6", "w4", "oct", "bowtie", "diamondring"]
        .into_iter()
        .map(|name| (name, fixture(name).expect("shipped fixture")))
        .collect()
}

pub fn extremal_10() -> Graph {
    parse_graph6(EXTREMAL_10).expect("valid graph6")
}

/// Every triangulation on `n` vertices.
pub fn triangulation_pool(n: usize) -> Vec<Graph> {
    triangulations(n).expect("small n")
}
