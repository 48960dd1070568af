use std::collections::HashSet;

use rayon::prelude::*;

use super::{Meter, Prune, SearchConfig, ShardSpec, DEFAULT_SPLIT_DEPTH};
use crate::error::{Error, Result};
use crate::graph::bits::{bit, members, VertexSet};
use crate::graph::canon::{canonical_labeling, same_orbit};
use crate::graph::{is_planar, Graph};

/// Final graphs of a run, canonically labelled and sorted by graph6.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub graphs: Vec<Graph>,
    /// Tree nodes generated, leaves included.
    pub nodes: u64,
    pub complete: bool,
    /// The shard actually run, depth clamped to `n`.
    pub shard: Option<ShardSpec>,
}

struct Node {
    g: Graph,
    cert: Vec<VertexSet>,
}

struct Gen<'a, F> {
    n: usize,
    m_min: usize,
    m_max: usize,
    prune: Prune,
    meter: &'a Meter,
    leaf: &'a F,
}

fn triangle_floor(n: usize) -> usize {
    match n {
        0..=3 => 0,
        4 => 2,
        _ => 3,
    }
}

impl<F: Fn(&Graph) -> bool + Sync> Gen<'_, F> {
    /// Edges still addable after level `k`: vertex `j` brings at most `j`.
    fn future_edges(&self, k: usize) -> usize {
        (k..self.n).sum()
    }

    fn final_ok(&self, g: &Graph) -> bool {
        let (n, m, p) = (self.n, g.m(), &self.prune);
        if m < self.m_min {
            return false;
        }
        if p.min_edges && n >= 3 && m < 2 * n - 3 {
            return false;
        }
        if p.connected && n >= 2 && !g.is_connected() {
            return false;
        }
        if p.biconnected && n >= 4 && !g.is_biconnected() {
            return false;
        }
        if p.triangles && g.triangle_count() < triangle_floor(n) {
            return false;
        }
        (self.leaf)(g)
    }

    /// Accepted children of `parent`, one per isomorphism class.
    fn children(&self, parent: &Graph) -> Vec<Node> {
        let k = parent.n();
        let level = k + 1;
        let remaining = self.n - level;
        let need_degree = self.prune.min_degree && self.n >= 4;
        let m0 = parent.m();
        let mut seen: HashSet<Vec<VertexSet>> = HashSet::new();
        let mut out = Vec::new();
        // vertices that must gain an edge now to reach degree 2 in time
        let forced: VertexSet = if need_degree {
            (0..k)
                .filter(|&v| parent.degree(v) + remaining < 2)
                .fold(0, |a, v| a | bit(v))
        } else {
            0
        };
        let mut edge_floor = self.m_min.saturating_sub(self.future_edges(level));
        if self.prune.min_edges && self.n >= 3 {
            edge_floor = edge_floor.max((2 * self.n - 3).saturating_sub(self.future_edges(level)));
        }
        for s in 0..(1u64 << k) {
            if self.meter.halted() {
                break;
            }
            let size = s.count_ones() as usize;
            let m = m0 + size;
            if m > self.m_max || m < edge_floor || s & forced != forced {
                continue;
            }
            if need_degree && size + remaining < 2 {
                continue;
            }
            if need_degree
                && remaining == 0
                && (0..k).any(|v| parent.degree(v) + ((s >> v) & 1) as usize <= 1)
            {
                continue;
            }
            let mut adj = parent.masks().to_vec();
            for v in members(s) {
                adj[v] |= bit(k);
            }
            adj.push(s);
            let child = Graph::from_masks(adj);
            if self.prune.planar && !is_planar(&child) {
                continue;
            }
            if remaining == 0 && !self.final_ok(&child) {
                continue;
            }
            let lab = canonical_labeling(&child);
            let last = lab.last().expect("child has a vertex");
            if !same_orbit(&child, &lab, k, last) || !seen.insert(lab.cert.clone()) {
                continue;
            }
            if !self.meter.tick() {
                break;
            }
            out.push(Node {
                g: child,
                cert: lab.cert,
            });
        }
        out
    }

    fn explore(&self, node: Node, leaves: &mut Vec<Node>) {
        if node.g.n() == self.n {
            leaves.push(node);
            return;
        }
        for c in self.children(&node.g) {
            if self.meter.halted() {
                return;
            }
            self.explore(c, leaves);
        }
    }

    fn root(&self) -> Option<Node> {
        let g = Graph::empty(1).expect("one vertex");
        if self.n == 1 && !self.final_ok(&g) {
            return None;
        }
        Some(Node {
            cert: vec![0],
            g,
        })
    }
}

pub(crate) fn enumerate_with<F>(cfg: &SearchConfig, meter: &Meter, leaf: &F) -> Result<Enumeration>
where
    F: Fn(&Graph) -> bool + Sync,
{
    cfg.validate()?;
    if cfg.n > crate::graph::graph6::MAX_GRAPH6_VERTICES {
        return Err(Error::TooManyVertices {
            n: cfg.n,
            max: crate::graph::graph6::MAX_GRAPH6_VERTICES,
        });
    }
    let shard = cfg.shard.map(|s| s.clamped(cfg.n));
    let split = shard.map_or(DEFAULT_SPLIT_DEPTH.min(cfg.n), |s| s.depth);
    let gen = Gen {
        n: cfg.n,
        m_min: cfg.m_min,
        m_max: cfg.m_max,
        prune: cfg.prune,
        meter,
        leaf,
    };
    let mut frontier: Vec<Node> = gen.root().into_iter().collect();
    for _ in 1..split {
        frontier = frontier.iter().flat_map(|p| gen.children(&p.g)).collect();
    }
    frontier.sort_by(|a, b| a.cert.cmp(&b.cert));
    if let Some(s) = shard {
        frontier = frontier
            .into_iter()
            .enumerate()
            .filter(|(i, _)| i % s.total == s.index)
            .map(|(_, node)| node)
            .collect();
    }
    let leaves: Vec<Node> = cfg.install(|| {
        frontier
            .into_par_iter()
            .flat_map_iter(|node| {
                let mut out = Vec::new();
                gen.explore(node, &mut out);
                out
            })
            .collect()
    })?;
    let mut graphs: Vec<(String, Graph)> = leaves
        .into_iter()
        .map(|node| {
            let g = Graph::from_masks(node.cert);
            (crate::graph::graph6::emit_graph6(&g), g)
        })
        .collect();
    graphs.sort_by(|a, b| a.0.cmp(&b.0));
    let complete = !meter.exhausted() && !meter.stopped();
    Ok(Enumeration {
        graphs: graphs.into_iter().map(|(_, g)| g).collect(),
        nodes: meter.nodes(),
        complete,
        shard,
    })
}

/// Every isomorphism class on `cfg.n` vertices that passes the prunes, the
/// edge range and `leaf`, once each.
pub fn enumerate<F>(cfg: &SearchConfig, leaf: F) -> Result<Enumeration>
where
    F: Fn(&Graph) -> bool + Sync,
{
    let meter = Meter::new(&cfg.budget);
    enumerate_with(cfg, &meter, &leaf)
}
