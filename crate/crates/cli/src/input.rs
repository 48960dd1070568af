use std::io::Read;
use std::path::Path;

use uecrit_core::{fixture, parse_edge_list, parse_graph6, Graph};

use crate::args::{GraphArgs, InputFormat};

/// Reads the graph named by `args`: a file, `-` for stdin, or a fixture.
pub fn load(args: &GraphArgs) -> Result<Graph, String> {
    let (text, from_g6_file) = if args.input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("reading standard input: {e}"))?;
        (s, false)
    } else if Path::new(&args.input).is_file() {
        let s = std::fs::read_to_string(&args.input)
            .map_err(|e| format!("reading {}: {e}", args.input))?;
        (s, args.input.ends_with(".g6"))
    } else {
        return fixture(&args.input).map_err(|_| {
            format!("{:?} is neither a readable file nor a fixture name", args.input)
        });
    };
    let format = args.format.unwrap_or_else(|| {
        if from_g6_file || looks_like_graph6(&text) {
            InputFormat::Graph6
        } else {
            InputFormat::Edgelist
        }
    });
    let parsed = match format {
        InputFormat::Graph6 => {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .unwrap_or("");
            parse_graph6(line)
        }
        InputFormat::Edgelist => parse_edge_list(&text),
    };
    parsed.map_err(|e| e.to_string())
}

/// One non-numeric token and nothing else.
fn looks_like_graph6(text: &str) -> bool {
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    match (tokens.next(), tokens.next()) {
        (Some(t), None) => !t.contains(char::is_whitespace) && !t.bytes().all(|b| b.is_ascii_digit()),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sniffs_graph6() {
        assert!(looks_like_graph6("Ch\n"));
        assert!(looks_like_graph6(">>graph6<<DF{"));
        assert!(!looks_like_graph6("n 3\n0 1\n"));
        assert!(!looks_like_graph6("0 1"));
        assert!(!looks_like_graph6("# only a comment"));
    }
}
