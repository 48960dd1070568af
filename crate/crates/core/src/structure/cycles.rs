//! Cycle enumeration and the dependence relation between cycles.
//!
//! Two cycles are dependent when a chain of cycles joins them, consecutive
//! cycles sharing an edge and every intermediate cycle having length 4.
//! The relation is taken irreflexive.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::bits::{bit, contains, members};
use crate::graph::{norm, Edge, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    /// Starts at the least vertex; the second entry is the smaller of its
    /// two cycle neighbors.
    pub vertices: Vec<usize>,
    #[serde(skip)]
    edge_bits: Vec<u64>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let n = self.vertices.len();
        let mut out: Vec<Edge> = (0..n)
            .map(|i| norm(self.vertices[i], self.vertices[(i + 1) % n]))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn shares_edge(&self, other: &Cycle) -> bool {
        self.edge_bits
            .iter()
            .zip(&other.edge_bits)
            .any(|(a, b)| a & b != 0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleList {
    pub cycles: Vec<Cycle>,
    pub truncated: bool,
}

struct Walker<'a> {
    g: &'a Graph,
    index: HashMap<Edge, usize>,
    words: usize,
    max_len: usize,
    max_count: usize,
    path: Vec<usize>,
    out: Vec<Cycle>,
    full: bool,
    cut_short: bool,
}

impl Walker<'_> {
    fn cycle(&self) -> Cycle {
        let mut edge_bits = vec![0u64; self.words];
        let n = self.path.len();
        for i in 0..n {
            let e = norm(self.path[i], self.path[(i + 1) % n]);
            let j = self.index[&e];
            edge_bits[j / 64] |= 1 << (j % 64);
        }
        Cycle {
            vertices: self.path.clone(),
            edge_bits,
        }
    }

    fn extend(&mut self, start: usize, used: u64) {
        if self.full {
            return;
        }
        let last = *self.path.last().unwrap();
        let nb = self.g.neighbors(last);
        if self.path.len() >= 3 && contains(nb, start) && self.path[1] < last {
            if self.out.len() == self.max_count {
                self.full = true;
                return;
            }
            let c = self.cycle();
            self.out.push(c);
        }
        let next = nb & !used & !((bit(start) << 1) - 1);
        if next == 0 {
            return;
        }
        if self.path.len() == self.max_len {
            self.cut_short = true;
            return;
        }
        for w in members(next) {
            self.path.push(w);
            self.extend(start, used | bit(w));
            self.path.pop();
        }
    }
}

/// All cycles of length at most `max_len`, at most `max_count` of them,
/// each listed once. `truncated` is set when either cap may have hidden a
/// cycle.
pub fn cycles_up_to(h: &Graph, max_len: usize, max_count: usize) -> CycleList {
    let edges = h.edges();
    let index: HashMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut w = Walker {
        g: h,
        words: edges.len().div_ceil(64).max(1),
        index,
        max_len: max_len.max(3),
        max_count,
        path: Vec::new(),
        out: Vec::new(),
        full: false,
        cut_short: false,
    };
    for s in 0..h.n() {
        w.path.push(s);
        w.extend(s, bit(s));
        w.path.pop();
    }
    let mut cycles = w.out;
    cycles.sort_by(|a, b| (a.len(), &a.vertices).cmp(&(b.len(), &b.vertices)));
    CycleList {
        cycles,
        truncated: w.full || w.cut_short,
    }
}

/// Symmetric, irreflexive dependence over a complete cycle list.
#[derive(Clone, Debug, Serialize)]
pub struct Dependence {
    dependents: Vec<Vec<usize>>,
}

impl Dependence {
    pub fn dependents(&self, i: usize) -> &[usize] {
        &self.dependents[i]
    }

    pub fn are_dependent(&self, i: usize, j: usize) -> bool {
        self.dependents[i].binary_search(&j).is_ok()
    }
}

pub fn dependence_relation(list: &CycleList) -> Result<Dependence> {
    if list.truncated {
        return Err(Error::TruncatedCycles(list.cycles.len()));
    }
    let cs = &list.cycles;
    let touching: Vec<Vec<usize>> = (0..cs.len())
        .map(|i| {
            (0..cs.len())
                .filter(|&j| j != i && cs[i].shares_edge(&cs[j]))
                .collect()
        })
        .collect();
    let dependents = (0..cs.len())
        .map(|s| {
            let mut seen = vec![false; cs.len()];
            let mut queue: VecDeque<usize> = VecDeque::new();
            seen[s] = true;
            queue.push_back(s);
            while let Some(c) = queue.pop_front() {
                if c != s && cs[c].len() != 4 {
                    continue;
                }
                for &d in &touching[c] {
                    if !seen[d] {
                        seen[d] = true;
                        queue.push_back(d);
                    }
                }
            }
            (0..cs.len()).filter(|&j| j != s && seen[j]).collect()
        })
        .collect();
    Ok(Dependence { dependents })
}
