//! Plain-text edge lists: one `u v` pair per line, 0-indexed, `#` starts a
//! comment, and an optional leading `n <count>` line fixes the order.

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen_content = false;
    let err = |line: usize, msg: String| Error::EdgeList { line, msg };
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "n" {
            if seen_content {
                return Err(err(line_no, "`n <count>` must come first".into()));
            }
            if fields.len() != 2 {
                return Err(err(line_no, "expected `n <count>`".into()));
            }
            let n = fields[1]
                .parse()
                .map_err(|_| err(line_no, format!("bad vertex count {:?}", fields[1])))?;
            declared = Some(n);
            seen_content = true;
            continue;
        }
        seen_content = true;
        if fields.len() != 2 {
            return Err(err(
                line_no,
                format!("expected two vertex indices, found {} fields", fields.len()),
            ));
        }
        let mut pair = [0usize; 2];
        for (slot, f) in pair.iter_mut().zip(&fields) {
            *slot = f
                .parse()
                .map_err(|_| err(line_no, format!("bad vertex index {f:?}")))?;
        }
        edges.push((line_no, pair[0], pair[1]));
    }
    let n = declared.unwrap_or_else(|| {
        edges
            .iter()
            .map(|&(_, u, v)| u.max(v) + 1)
            .max()
            .unwrap_or(0)
    });
    let mut g = Graph::empty(n).map_err(|e| err(1, e.to_string()))?;
    for (line_no, u, v) in edges {
        g = g.add_edge(u, v).map_err(|e| err(line_no, e.to_string()))?;
    }
    Ok(g)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_header() {
        let g = parse_edge_list("# triangle\nn 4\n0 1 # first\n1 2\n\n0 2\n").unwrap();
        assert_eq!((g.n(), g.m()), (4, 3));
        let h = parse_edge_list("0 1\n1 2\n").unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn reports_line_numbers() {
        match parse_edge_list("n 3\n0 1\n0 x\n") {
            Err(Error::EdgeList { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_edge_list("n 3\n0 1\n1 0\n") {
            Err(Error::EdgeList { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_edge_list("n 3\n0 5\n") {
            Err(Error::EdgeList { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_edge_list("0 1\nn 3\n").is_err());
        assert!(parse_edge_list("0 1 2\n").is_err());
    }
}
