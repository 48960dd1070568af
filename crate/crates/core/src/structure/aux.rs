//! The auxiliary graph `H_G`: one node per maximal triangle-subgraph.
//!
//! Step 1 joins the two subgraphs at every vertex with `D(u) = 2`. Step 2
//! handles `D(u) >= 3`: the subgraphs at `u` are read in rotation order,
//! Property-P pairs form `G_u`, and `G_u` is completed to a tree with
//! consecutive pairs, scanning cyclically from the smallest index and adding
//! an edge only between different components.

use serde::Serialize;

use super::{property_p_at, TriangleDecomposition};
use crate::error::{Error, Result};
use crate::graph::bits::contains;
use crate::graph::canon::UnionFind;
use crate::graph::{is_planar, norm, Edge, Graph, PlanarEmbedding, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Provenance {
    #[serde(rename = "step1")]
    Step1,
    #[serde(rename = "step2_propertyP")]
    Step2PropertyP,
    #[serde(rename = "step2_tree")]
    Step2Tree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuxEdge {
    pub a: usize,
    pub b: usize,
    /// The shared vertex of `G` that produced the edge.
    pub via: usize,
    pub provenance: Provenance,
}

/// `G_u` and `G_<u>` for one vertex with `D(u) >= 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexTree {
    pub vertex: usize,
    /// Subgraph indices around `u`, rotated to start at the smallest.
    pub order: Vec<usize>,
    pub property_p: Vec<Edge>,
    pub completion: Vec<Edge>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuxGraph {
    pub k: usize,
    pub edges: Vec<AuxEdge>,
    pub per_vertex: Vec<VertexTree>,
    #[serde(skip)]
    pub graph: Graph,
}

impl AuxGraph {
    /// `|F(H_G)|` from Euler's formula.
    pub fn euler_faces(&self) -> i64 {
        self.graph.m() as i64 - self.k as i64 + 1 + self.graph.component_count() as i64
    }
}

/// Subgraphs containing `u` in the cyclic order of the rotation at `u`.
fn order_around(d: &TriangleDecomposition, emb: &PlanarEmbedding, u: usize) -> Vec<usize> {
    let mut seq: Vec<usize> = Vec::new();
    for &w in emb.rotation(u) {
        if let Some(c) = d.component_of_edge(u, w) {
            if seq.last() != Some(&c) {
                seq.push(c);
            }
        }
    }
    while seq.len() > 1 && seq.first() == seq.last() {
        seq.pop();
    }
    // a subgraph wrapping around u in two sectors keeps its first sector
    let mut seen = 0u64;
    seq.retain(|&c| {
        let fresh = !contains(seen, c);
        seen |= 1 << c;
        fresh
    });
    let start = seq
        .iter()
        .enumerate()
        .min_by_key(|&(_, &c)| c)
        .map_or(0, |(i, _)| i);
    seq.rotate_left(start);
    seq
}

pub fn build_hg(
    g: &Graph,
    emb: &PlanarEmbedding,
    d: &TriangleDecomposition,
) -> Result<AuxGraph> {
    if d.k > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n: d.k,
            max: MAX_VERTICES,
        });
    }
    let mut edges: Vec<AuxEdge> = Vec::new();
    let mut per_vertex = Vec::new();
    for u in 0..g.n() {
        match d.d_map[u] {
            0 | 1 => {}
            2 => {
                let mut it = (0..d.k).filter(|&i| contains(d.components[i].mask, u));
                let (a, b) = (it.next().unwrap(), it.next().unwrap());
                edges.push(AuxEdge {
                    a,
                    b,
                    via: u,
                    provenance: Provenance::Step1,
                });
            }
            _ => {
                let order = order_around(d, emb, u);
                let mut uf = UnionFind::new(d.k);
                let mut pp = Vec::new();
                for x in 0..order.len() {
                    for y in x + 1..order.len() {
                        let (i, j) = (order[x], order[y]);
                        if property_p_at(d, i, j, u) {
                            if !uf.union(i, j) {
                                return Err(Error::TheoremViolation(format!(
                                    "G_{u} has a cycle through h{i}h{j}"
                                )));
                            }
                            pp.push(norm(i, j));
                        }
                    }
                }
                let mut completion = Vec::new();
                let len = order.len();
                for l in 0..len {
                    let (i, j) = (order[l], order[(l + 1) % len]);
                    if uf.union(i, j) {
                        completion.push(norm(i, j));
                    }
                }
                for &(a, b) in &pp {
                    edges.push(AuxEdge {
                        a,
                        b,
                        via: u,
                        provenance: Provenance::Step2PropertyP,
                    });
                }
                for &(a, b) in &completion {
                    edges.push(AuxEdge {
                        a,
                        b,
                        via: u,
                        provenance: Provenance::Step2Tree,
                    });
                }
                pp.sort_unstable();
                completion.sort_unstable();
                per_vertex.push(VertexTree {
                    vertex: u,
                    order,
                    property_p: pp,
                    completion,
                });
            }
        }
    }

    let mut graph = Graph::empty(d.k)?;
    for e in &edges {
        if e.a == e.b || graph.has_edge(e.a, e.b) {
            return Err(Error::TheoremViolation(format!(
                "H_G is not simple: h{}h{} added twice (again via vertex {})",
                e.a, e.b, e.via
            )));
        }
        graph.insert_edge(e.a, e.b);
    }
    if !is_planar(&graph) {
        return Err(Error::TheoremViolation("H_G is not planar".into()));
    }
    edges.sort_by_key(|e| (e.a, e.b));
    Ok(AuxGraph {
        k: d.k,
        edges,
        per_vertex,
        graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use crate::graph::embed;
    use crate::structure::triangle_components;

    fn hg(name: &str) -> AuxGraph {
        let g = fixture(name).unwrap();
        let emb = embed(&g).unwrap();
        build_hg(&g, &emb, &triangle_components(&g)).unwrap()
    }

    #[test]
    fn small_examples() {
        let h = hg("bowtie");
        assert_eq!((h.k, h.edges.len()), (2, 1));
        assert_eq!(h.edges[0].provenance, Provenance::Step1);
        assert_eq!(h.euler_faces(), 1);

        let h = hg("k3");
        assert_eq!((h.k, h.edges.len()), (1, 0));
        assert_eq!(h.euler_faces(), 1);
    }

    #[test]
    fn ring_of_three_is_a_triangle() {
        let h = hg("diamondring");
        assert_eq!(h.k, 3);
        assert_eq!(h.graph.m(), 3);
        assert!(h.edges.iter().all(|e| e.provenance == Provenance::Step1));
        assert_eq!(h.euler_faces(), 2);
    }

    #[test]
    fn step_two_builds_a_tree_per_vertex() {
        // four triangles around a hub 0: 0-1-2, 0-3-4, 0-5-6, 0-7-8
        let mut edges = Vec::new();
        for b in [1, 3, 5, 7] {
            edges.extend([(0, b), (0, b + 1), (b, b + 1)]);
        }
        let g = Graph::from_edges(9, &edges).unwrap();
        let emb = embed(&g).unwrap();
        let d = triangle_components(&g);
        let h = build_hg(&g, &emb, &d).unwrap();
        assert_eq!(h.per_vertex.len(), 1);
        let t = &h.per_vertex[0];
        assert_eq!(t.order.len(), 4);
        assert_eq!(t.order[0], 0);
        assert!(t.property_p.is_empty());
        assert_eq!(t.completion.len(), 3);
        assert!(h.edges.iter().all(|e| e.provenance == Provenance::Step2Tree));
        // a path of 4 nodes: connected and acyclic
        assert_eq!(h.graph.m(), 3);
        assert!(h.graph.is_connected());
    }
}
