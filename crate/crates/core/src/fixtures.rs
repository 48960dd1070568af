//! The named fixture graphs shipped under `fixtures/`.

use crate::error::{Error, Result};
use crate::graph::edgelist::parse_edge_list;
use crate::graph::Graph;

macro_rules! fixture_table {
    ($($name:literal),* $(,)?) => {
        pub const FIXTURE_NAMES: &[&str] = &[$($name),*];

        fn source(name: &str) -> Option<&'static str> {
            match name {
                $($name => Some(include_str!(concat!("../../../fixtures/", $name, ".el"))),)*
                _ => None,
            }
        }
    };
}

fixture_table!(
    "k3", "p3", "c4", "c5", "c6", "k4", "k5", "k33", "diamond", "bowtie", "fan5", "fan6", "w4",
    "oct", "twok4", "triforce", "diamondring",
);

/// Looks up a fixture by name, case-insensitively.
pub fn fixture(name: &str) -> Result<Graph> {
    let key = name.to_ascii_lowercase();
    let text = source(&key).ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    parse_edge_list(text)
}

/// Fan on `n` vertices: hub 0 joined to the path `1 - 2 - ... - (n-1)`.
pub fn fan(n: usize) -> Result<Graph> {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (0, v)).collect();
    edges.extend((1..n.saturating_sub(1)).map(|v| (v, v + 1)));
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_parse() {
        for name in FIXTURE_NAMES {
            fixture(name).unwrap();
        }
        assert!(fixture("nope").is_err());
        assert_eq!(fixture("FAN5").unwrap(), fan(5).unwrap());
        assert_eq!(fixture("fan6").unwrap(), fan(6).unwrap());
        assert_eq!(fixture("fan6").unwrap().m(), 9);
    }
}
