//! The graph6 interchange format, short header form only (n <= 62).
//!
//! One header byte `63 + n`, then the upper triangle of the adjacency matrix
//! in column-major order (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), packed six
//! bits per byte, most significant bit first, each byte offset by 63. The
//! final byte is zero-padded.

use super::Graph;
use crate::error::{Error, Result};

pub const MAX_GRAPH6_VERTICES: usize = 62;

fn payload_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(
        n <= MAX_GRAPH6_VERTICES,
        "graph6 long-form headers are not supported"
    );
    let mut out = Vec::with_capacity(1 + payload_len(n));
    out.push(63 + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    let Some(&head) = bytes.first() else {
        return Err(Error::Graph6("empty input".into()));
    };
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!(
                "byte {b:#04x} at position {pos} is outside the printable range 63..=126"
            )));
        }
    }
    if head == 126 {
        return Err(Error::Graph6(
            "long-form header (n > 62) is not supported".into(),
        ));
    }
    let n = (head - 63) as usize;
    let expected = 1 + payload_len(n);
    if bytes.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} bytes for n = {n}, got {}",
            bytes.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0usize;
    let total = n * n.saturating_sub(1) / 2;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[1 + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.insert_edge(i, j);
            }
            k += 1;
        }
    }
    if total % 6 != 0 {
        let last = bytes[bytes.len() - 1] - 63;
        let pad = 6 - total % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Ok(g)
}
