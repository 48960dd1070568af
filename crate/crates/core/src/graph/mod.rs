//! Simple undirected graphs on dense vertex indices `0..n`.
//!
//! Adjacency is stored as one 64-bit neighbor mask per vertex, which caps the
//! order at [`MAX_VERTICES`]. Every graph the toolkit handles (fixtures,
//! enumeration, hunts) is far below that.

pub mod bits;
pub mod canon;
pub mod edgelist;
pub mod embedding;
pub mod graph6;
pub mod planarity;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use bits::{bit, contains, members, VertexSet};

pub use canon::{canonical_form, CanonicalForm};
pub use embedding::{dual, faces, DualMultigraph, FaceWalk, Faces, PlanarEmbedding};
pub use planarity::{embed, is_planar};

pub const MAX_VERTICES: usize = 64;

/// An undirected edge, always stored with `.0 < .1`.
pub type Edge = (usize, usize);

#[inline]
pub fn norm(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
        })
    }

    /// Builds a graph from an edge list. Loops, out-of-range endpoints and
    /// repeated edges (in either orientation) are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            if g.has_edge(u, v) {
                let (a, b) = norm(u, v);
                return Err(Error::DuplicateEdge(a, b));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw neighbor masks. The masks must already be
    /// symmetric and loop-free.
    pub(crate) fn from_masks(adj: Vec<VertexSet>) -> Self {
        let g = Graph { n: adj.len(), adj };
        debug_assert!(g.is_well_formed());
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertex_set(&self) -> VertexSet {
        bits::full(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && contains(self.adj[u], v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn masks(&self) -> &[VertexSet] {
        &self.adj
    }

    /// All edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n {
            for v in members(self.adj[u] >> (u + 1) << (u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    #[inline]
    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    #[inline]
    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn check_edge(&self, u: usize, v: usize) -> Result<()> {
        if self.has_edge(u, v) {
            Ok(())
        } else {
            let (a, b) = norm(u, v);
            Err(Error::MissingEdge(a, b))
        }
    }

    /// `G - e`.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_edge(u, v)?;
        let mut g = self.clone();
        g.remove_edge(u, v);
        Ok(g)
    }

    /// `G + e`. Fails if the edge is already present.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        if self.has_edge(u, v) {
            let (a, b) = norm(u, v);
            return Err(Error::DuplicateEdge(a, b));
        }
        let mut g = self.clone();
        g.insert_edge(u, v);
        Ok(g)
    }

    /// `G / e`: the ends of `e` are identified into the lower-indexed end,
    /// the higher-indexed end is removed and later vertices shift down by
    /// one. Parallel edges created by the merge are collapsed.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_edge(u, v)?;
        let (keep, gone) = norm(u, v);
        let merged = (self.adj[keep] | self.adj[gone]) & !bit(keep) & !bit(gone);
        let mut adj = self.adj.clone();
        adj[keep] = merged;
        for w in members(merged) {
            adj[w] = (adj[w] & !bit(gone)) | bit(keep);
        }
        adj.remove(gone);
        let low = bits::full(gone);
        for a in adj.iter_mut() {
            *a = (*a & low) | ((*a >> (gone + 1)) << gone);
        }
        Ok(Graph::from_masks(adj))
    }

    /// Removes a single vertex, shifting later indices down.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.induced_mask(self.vertex_set() & !bit(v)))
    }

    /// `G[S]`, relabelled so that the members of `S` keep their relative
    /// order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        Ok(self.induced_mask(bits::from_slice(vertices)))
    }

    /// `G[S]` for a vertex mask, relabelled in increasing order.
    pub fn induced_mask(&self, set: VertexSet) -> Graph {
        let set = set & self.vertex_set();
        let order: Vec<usize> = members(set).collect();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in order.iter().enumerate() {
            index[v] = i;
        }
        let adj = order
            .iter()
            .map(|&v| {
                members(self.adj[v] & set).fold(0u64, |acc, w| acc | bit(index[w]))
            })
            .collect();
        Graph::from_masks(adj)
    }

    /// The spanning subgraph on the same vertex universe that keeps only the
    /// edges with both ends in `set`.
    pub fn restrict_edges(&self, set: VertexSet) -> Graph {
        let adj = (0..self.n)
            .map(|v| if contains(set, v) { self.adj[v] & set } else { 0 })
            .collect();
        Graph::from_masks(adj)
    }

    /// Union of subgraphs drawn on the same vertex universe.
    pub fn union_subgraphs(parts: &[Graph]) -> Result<Graph> {
        let Some(first) = parts.first() else {
            return Graph::empty(0);
        };
        let n = first.n;
        let mut adj = vec![0u64; n];
        for p in parts {
            if p.n != n {
                return Err(Error::IncompatibleUniverse);
            }
            for (a, b) in adj.iter_mut().zip(&p.adj) {
                *a |= b;
            }
        }
        Ok(Graph::from_masks(adj))
    }

    /// Relabels vertices so that vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            adj[perm[v]] = members(self.adj[v]).fold(0u64, |acc, w| acc | bit(perm[w]));
        }
        Graph::from_masks(adj)
    }

    /// Number of edges with one end in `a` and the other in `b`.
    pub fn e_between(&self, a: VertexSet, b: VertexSet) -> Result<usize> {
        if a & b != 0 {
            return Err(Error::OverlappingSets);
        }
        let all = self.vertex_set();
        if let Some(v) = members((a | b) & !all).next() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(members(a)
            .map(|v| (self.adj[v] & b).count_ones() as usize)
            .sum())
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let mut next = 0;
            for v in members(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components of `G[within]`, ordered by least vertex.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within & self.vertex_set();
        let mut out = Vec::new();
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let comp = self.reach(v, rest);
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertex_set())
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.reach(0, self.vertex_set()) == self.vertex_set()
    }

    /// 2-connected in the usual sense: connected, at least three vertices,
    /// and no cut vertex.
    pub fn is_biconnected(&self) -> bool {
        if self.n < 3 || !self.is_connected() {
            return false;
        }
        let all = self.vertex_set();
        (0..self.n).all(|v| {
            let rest = all & !bit(v);
            let start = rest.trailing_zeros() as usize;
            self.reach(start, rest) == rest
        })
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = [0u8; MAX_VERTICES];
        let mut seen: VertexSet = 0;
        for s in 0..self.n {
            if contains(seen, s) {
                continue;
            }
            seen |= bit(s);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in members(self.adj[v]) {
                    if contains(seen, w) {
                        if side[w] == side[v] {
                            return false;
                        }
                    } else {
                        seen |= bit(w);
                        side[w] = 1 - side[v];
                        stack.push(w);
                    }
                }
            }
        }
        true
    }

    /// All 3-cycles `(a, b, c)` with `a < b < c`, in lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for a in 0..self.n {
            let up = self.adj[a] & !bits::full(a + 1);
            for b in members(up) {
                for c in members(up & self.adj[b] & !bits::full(b + 1)) {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles().len()
    }

    /// Triangles whose removal leaves at least two components.
    pub fn separating_3_cycles(&self) -> Vec<[usize; 3]> {
        let all = self.vertex_set();
        self.triangles()
            .into_iter()
            .filter(|t| {
                let rest = all & !bits::from_slice(t);
                self.components_within(rest).len() >= 2
            })
            .collect()
    }

    fn is_well_formed(&self) -> bool {
        (0..self.n).all(|v| {
            !contains(self.adj[v], v)
                && self.adj[v] & !self.vertex_set() == 0
                && members(self.adj[v]).all(|w| contains(self.adj[w], v))
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
