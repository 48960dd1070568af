//! Maximal triangle-subgraphs and everything built on them.
//!
//! Triangles are all 3-cycles of the abstract graph. Two triangles are
//! linked when they share an edge; each linked class is one maximal
//! triangle-subgraph `H_i`. `G'` is the union of the `H_i` and `D(u)`
//! counts the `H_i` containing `u`.

mod aux;
mod audits;
mod cycles;
mod discharge;

pub use aux::{build_hg, AuxEdge, AuxGraph, Provenance, VertexTree};
pub use audits::{
    cor34_audit, cor35_audit, cor45_audit, thm36_audit, thm41_audit, thm42_audit, Cor34Report,
    Cor35Report, Cor45Report, Thm36Report, Thm41Report, Thm42Report, UnionCertificate,
    union_certificate,
};
pub use cycles::{cycles_up_to, dependence_relation, Cycle, CycleList, Dependence};
pub use discharge::{lemma43_check, ChargeLedger, FaceCharge, Lemma43Report, Transfer};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::bits::{bit, contains, members, VertexSet};
use crate::graph::canon::UnionFind;
use crate::graph::{Faces, Graph, PlanarEmbedding};

/// One maximal triangle-subgraph. `graph` lives on the full vertex
/// universe of the host.
#[derive(Clone, Debug, Serialize)]
pub struct TriangleSubgraph {
    pub vertices: Vec<usize>,
    pub triangles: Vec<[usize; 3]>,
    pub t: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(skip)]
    pub mask: VertexSet,
    #[serde(skip)]
    pub graph: Graph,
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleDecomposition {
    pub n: usize,
    pub triangles: Vec<[usize; 3]>,
    pub components: Vec<TriangleSubgraph>,
    pub k: usize,
    /// `D(u)` for every vertex of the host.
    pub d_map: Vec<usize>,
    pub vprime: usize,
    pub eprime: usize,
    pub omega_prime: usize,
    #[serde(skip)]
    pub gprime: Graph,
}

/// Components are numbered by their least triangle in lexicographic order.
pub fn triangle_components(g: &Graph) -> TriangleDecomposition {
    let triangles = g.triangles();
    let mut uf = UnionFind::new(triangles.len());
    let mut owner: std::collections::HashMap<(usize, usize), usize> = Default::default();
    for (i, t) in triangles.iter().enumerate() {
        for e in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            match owner.get(&e) {
                Some(&j) => {
                    uf.union(i, j);
                }
                None => {
                    owner.insert(e, i);
                }
            }
        }
    }
    let mut index_of_root = vec![usize::MAX; triangles.len()];
    let mut groups: Vec<Vec<[usize; 3]>> = Vec::new();
    for (i, t) in triangles.iter().enumerate() {
        let r = uf.find(i);
        if index_of_root[r] == usize::MAX {
            index_of_root[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[index_of_root[r]].push(*t);
    }

    let n = g.n();
    let mut gprime = Graph::empty(n).expect("host already fits");
    let components: Vec<TriangleSubgraph> = groups
        .into_iter()
        .map(|tris| {
            let mut h = Graph::empty(n).expect("host already fits");
            for t in &tris {
                for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                    if !h.has_edge(a, b) {
                        h.insert_edge(a, b);
                    }
                    if !gprime.has_edge(a, b) {
                        gprime.insert_edge(a, b);
                    }
                }
            }
            let mask = tris
                .iter()
                .flatten()
                .fold(0, |acc, &v| acc | bit(v));
            TriangleSubgraph {
                vertices: members(mask).collect(),
                t: tris.len(),
                triangles: tris,
                edges: h.edges(),
                mask,
                graph: h,
            }
        })
        .collect();

    let d_map: Vec<usize> = (0..n)
        .map(|u| components.iter().filter(|h| contains(h.mask, u)).count())
        .collect();
    let vmask = components.iter().fold(0, |a, h| a | h.mask);
    TriangleDecomposition {
        n,
        k: components.len(),
        vprime: vmask.count_ones() as usize,
        eprime: gprime.m(),
        omega_prime: gprime.components_within(vmask).len(),
        triangles,
        components,
        d_map,
        gprime,
    }
}

/// Refuses input with separating 3-cycles.
pub fn triangle_components_strict(g: &Graph) -> Result<TriangleDecomposition> {
    let sep = g.separating_3_cycles();
    if !sep.is_empty() {
        return Err(Error::Precondition(format!(
            "separating 3-cycles present: {sep:?}"
        )));
    }
    Ok(triangle_components(g))
}

impl TriangleDecomposition {
    pub fn sum_t(&self) -> usize {
        self.components.iter().map(|h| h.t).sum()
    }

    pub fn vprime_mask(&self) -> VertexSet {
        self.components.iter().fold(0, |a, h| a | h.mask)
    }

    /// Index of the component owning the edge, if the edge lies on a
    /// triangle.
    pub fn component_of_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.components.iter().position(|h| h.graph.has_edge(u, v))
    }

    pub fn common_vertices(&self, i: usize, j: usize) -> VertexSet {
        self.components[i].mask & self.components[j].mask
    }

    /// Union of the components listed in `set` (bit `i` = `H_i`).
    pub fn union_of(&self, set: u64) -> Graph {
        let mut g = Graph::empty(self.n).expect("host already fits");
        for i in members(set) {
            for &(a, b) in &self.components[i].edges {
                if !g.has_edge(a, b) {
                    g.insert_edge(a, b);
                }
            }
        }
        g
    }

    pub fn union_vertices(&self, set: u64) -> VertexSet {
        members(set).fold(0, |a, i| a | self.components[i].mask)
    }

    /// Face count of `G'` from Euler's formula.
    pub fn euler_faces_of_gprime(&self) -> i64 {
        self.eprime as i64 - self.vprime as i64 + 1 + self.omega_prime as i64
    }

    /// `|F(G')| - Σ t_i`: the faces of `G'` other than the bounded
    /// triangles of the components.
    pub fn f_ge4_prime(&self) -> i64 {
        self.euler_faces_of_gprime() - self.sum_t() as i64
    }
}

/// Property P for `H_i`, `H_j` through their least common vertex.
pub fn property_p(d: &TriangleDecomposition, i: usize, j: usize) -> Result<bool> {
    let common = d.common_vertices(i, j);
    if i == j || common == 0 {
        return Err(Error::Precondition(format!(
            "H{i} and H{j} share no vertex"
        )));
    }
    Ok(property_p_at(d, i, j, common.trailing_zeros() as usize))
}

/// Some third `H_l` meets `H_i` and `H_j` at vertices other than `v`.
pub(crate) fn property_p_at(d: &TriangleDecomposition, i: usize, j: usize, v: usize) -> bool {
    let hi = d.components[i].mask & !bit(v);
    let hj = d.components[j].mask & !bit(v);
    (0..d.k)
        .filter(|&l| l != i && l != j)
        .any(|l| d.components[l].mask & hi != 0 && d.components[l].mask & hj != 0)
}

/// Component count, Euler count and traced count of faces of `G'` under
/// the embedding inherited from `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GprimeFaces {
    pub euler_faces: i64,
    pub traced_faces: usize,
    pub traced_3faces: usize,
    pub sum_t: usize,
    pub f_ge4: i64,
}

/// Faces of `G'` are read off the faces of the connected host `G`: the two
/// sides of every edge outside `G'` belong to the same face of `G'`.
/// Tracing the restricted rotation instead would lose how the components of
/// `G'` sit inside each other's faces.
pub fn gprime_faces(d: &TriangleDecomposition, emb: &PlanarEmbedding) -> GprimeFaces {
    let (traced_faces, traced_3faces) = if d.gprime.m() == 0 {
        (1, 0)
    } else {
        let host = emb.graph();
        let fs = Faces::trace(&host, emb);
        let mut uf = UnionFind::new(fs.len());
        for (u, v) in host.edges() {
            if !d.gprime.has_edge(u, v) {
                uf.union(fs.face_of(u, v), fs.face_of(v, u));
            }
        }
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for (u, v) in d.gprime.edges() {
            for (a, b) in [(u, v), (v, u)] {
                *degree.entry(uf.find(fs.face_of(a, b))).or_default() += 1;
            }
        }
        (degree.len(), degree.values().filter(|&&x| x == 3).count())
    };
    GprimeFaces {
        euler_faces: d.euler_faces_of_gprime(),
        traced_faces,
        traced_3faces,
        sum_t: d.sum_t(),
        f_ge4: d.f_ge4_prime(),
    }
}

/// `F_≥4(G')`, cross-checked against face traversal.
pub fn f_ge4_of_gprime(d: &TriangleDecomposition, emb: &PlanarEmbedding) -> Result<i64> {
    let r = gprime_faces(d, emb);
    if r.traced_faces as i64 != r.euler_faces {
        return Err(Error::TheoremViolation(format!(
            "G' has {} traced faces but Euler gives {}",
            r.traced_faces, r.euler_faces
        )));
    }
    Ok(r.f_ge4)
}

/// Maximal outerplanar on its own vertex set: outerplanar with `2s - 3`
/// edges. Outerplanarity is tested by adding an apex.
pub fn is_maximal_outerplanar(g: &Graph, set: VertexSet) -> bool {
    let s = set.count_ones() as usize;
    if s < 3 {
        return false;
    }
    let h = g.induced_mask(set);
    if h.m() != 2 * s - 3 || s + 1 > crate::graph::MAX_VERTICES {
        return false;
    }
    let mut edges = h.edges();
    edges.extend((0..s).map(|v| (v, s)));
    let apex = Graph::from_edges(s + 1, &edges).expect("valid edges");
    crate::graph::is_planar(&apex)
}
