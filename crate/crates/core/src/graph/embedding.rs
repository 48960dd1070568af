//! Rotation systems, face tracing and the dual multigraph.
//!
//! Faces are traced with `next(u -> v) = v -> succ_v(u)`, where `succ_v` is
//! the cyclic successor in the rotation at `v`. For a disconnected graph the
//! outer faces of the components are merged into a single face, so the face
//! count always satisfies `n - m + f = 1 + ω`. The outer face of a component
//! is, by convention, the one containing the dart from its least vertex to
//! the first entry of that vertex's rotation. A rotation system does not
//! record how components nest, so this is only a count-preserving choice.

use serde::{Deserialize, Serialize};

use super::bits::{bit, members, VertexSet};
use super::{Graph, MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarEmbedding {
    rotation: Vec<Vec<usize>>,
}

impl PlanarEmbedding {
    pub fn from_rotation(rotation: Vec<Vec<usize>>) -> Self {
        PlanarEmbedding { rotation }
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    /// The graph whose neighborhoods the rotations list.
    pub fn graph(&self) -> Graph {
        let masks = self
            .rotation
            .iter()
            .map(|rot| rot.iter().fold(0, |a, &w| a | bit(w)))
            .collect();
        Graph::from_masks(masks)
    }

    /// Position of `u` in the rotation at `v`.
    pub fn position(&self, v: usize, u: usize) -> usize {
        self.rotation[v]
            .iter()
            .position(|&x| x == u)
            .unwrap_or_else(|| panic!("{u} is not a neighbor of {v} in the embedding"))
    }

    pub fn succ(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotation[v];
        rot[(self.position(v, u) + 1) % rot.len()]
    }

    /// The embedding induced on a spanning subgraph: rotations keep their
    /// cyclic order but drop neighbors outside `sub`.
    pub fn restrict(&self, sub: &Graph) -> PlanarEmbedding {
        let rotation = self
            .rotation
            .iter()
            .enumerate()
            .map(|(v, rot)| {
                if v >= sub.n() {
                    return Vec::new();
                }
                rot.iter().copied().filter(|&w| sub.has_edge(v, w)).collect()
            })
            .collect();
        PlanarEmbedding { rotation }
    }

    /// Checks that the rotation lists exactly the neighbors of every vertex.
    pub fn is_consistent_with(&self, g: &Graph) -> bool {
        self.rotation.len() == g.n()
            && (0..g.n()).all(|v| {
                let set = self.rotation[v].iter().fold(0u64, |a, &w| a | bit(w));
                set == g.neighbors(v) && self.rotation[v].len() == g.degree(v)
            })
    }
}

/// One face: a closed boundary walk, or several when the face touches more
/// than one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceWalk {
    /// Each walk lists the tails of its darts in traversal order.
    pub boundaries: Vec<Vec<usize>>,
}

impl FaceWalk {
    /// Number of boundary edges, cut edges counted twice.
    pub fn degree(&self) -> usize {
        self.boundaries.iter().map(Vec::len).sum()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.boundaries
            .iter()
            .flatten()
            .fold(0, |a, &v| a | bit(v))
    }

    /// Darts `(u, v)` of the face in traversal order.
    pub fn darts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.boundaries.iter().flat_map(|w| {
            (0..w.len()).map(move |i| (w[i], w[(i + 1) % w.len()]))
        })
    }

    /// True for a single boundary that visits no vertex twice.
    pub fn is_simple_cycle(&self) -> bool {
        self.boundaries.len() == 1
            && self.boundaries[0].len() >= 3
            && self.vertex_set().count_ones() as usize == self.boundaries[0].len()
    }
}

/// Faces together with the dart-to-face map.
#[derive(Clone, Debug)]
pub struct Faces {
    pub walks: Vec<FaceWalk>,
    dart_face: Vec<[usize; MAX_VERTICES]>,
}

impl Faces {
    pub fn trace(g: &Graph, emb: &PlanarEmbedding) -> Faces {
        let n = g.n();
        debug_assert!(emb.is_consistent_with(g));
        let mut dart_face = vec![[usize::MAX; MAX_VERTICES]; n];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for u in 0..n {
            for &v in emb.rotation(u) {
                if dart_face[u][v] != usize::MAX {
                    continue;
                }
                let id = orbits.len();
                let mut walk = Vec::new();
                let (mut a, mut b) = (u, v);
                while dart_face[a][b] == usize::MAX {
                    dart_face[a][b] = id;
                    walk.push(a);
                    let c = emb.succ(b, a);
                    a = b;
                    b = c;
                }
                orbits.push(walk);
            }
        }

        let comps: Vec<VertexSet> = g
            .components()
            .into_iter()
            .filter(|c| members(*c).any(|v| g.degree(v) > 0))
            .collect();
        let outer: Vec<usize> = comps
            .iter()
            .map(|c| {
                let r = c.trailing_zeros() as usize;
                dart_face[r][emb.rotation(r)[0]]
            })
            .collect();

        let mut remap = vec![usize::MAX; orbits.len()];
        let mut walks: Vec<FaceWalk> = Vec::new();
        if orbits.is_empty() {
            walks.push(FaceWalk {
                boundaries: Vec::new(),
            });
        }
        for (id, orbit) in orbits.into_iter().enumerate() {
            if let Some(pos) = outer.iter().position(|&o| o == id) {
                if pos > 0 {
                    let target = remap[outer[0]];
                    walks[target].boundaries.push(orbit);
                    remap[id] = target;
                    continue;
                }
            }
            remap[id] = walks.len();
            walks.push(FaceWalk {
                boundaries: vec![orbit],
            });
        }
        for row in dart_face.iter_mut() {
            for f in row.iter_mut() {
                if *f != usize::MAX {
                    *f = remap[*f];
                }
            }
        }
        Faces { walks, dart_face }
    }

    /// Face to the traversal side of the dart `u -> v`.
    pub fn face_of(&self, u: usize, v: usize) -> usize {
        self.dart_face[u][v]
    }

    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }

    pub fn count_of_degree(&self, pred: impl Fn(usize) -> bool) -> usize {
        self.walks.iter().filter(|f| pred(f.degree())).count()
    }

    /// Faces in the corners around `v`, one entry per incident dart.
    pub fn corners(&self, emb: &PlanarEmbedding, v: usize) -> Vec<usize> {
        emb.rotation(v).iter().map(|&w| self.face_of(v, w)).collect()
    }
}

pub fn faces(g: &Graph, emb: &PlanarEmbedding) -> Vec<FaceWalk> {
    Faces::trace(g, emb).walks
}

/// One node per face, one link per edge of the primal graph joining the
/// faces on its two sides. Parallel links and self-links are kept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualMultigraph {
    pub nodes: usize,
    /// `(face of u->v, face of v->u)` for each primal edge `(u, v)`, in the
    /// primal edge order.
    pub links: Vec<(usize, usize)>,
}

impl DualMultigraph {
    pub fn degree(&self, node: usize) -> usize {
        self.links
            .iter()
            .map(|&(a, b)| (a == node) as usize + (b == node) as usize)
            .sum()
    }
}

pub fn dual(g: &Graph, emb: &PlanarEmbedding) -> DualMultigraph {
    dual_of(g, &Faces::trace(g, emb))
}

pub fn dual_of(g: &Graph, fs: &Faces) -> DualMultigraph {
    DualMultigraph {
        nodes: fs.len(),
        links: g
            .edges()
            .into_iter()
            .map(|(u, v)| (fs.face_of(u, v), fs.face_of(v, u)))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use crate::graph::planarity::embed;

    fn face_degrees(name: &str) -> Vec<usize> {
        let g = fixture(name).unwrap();
        let emb = embed(&g).unwrap();
        let mut d: Vec<usize> = faces(&g, &emb).iter().map(FaceWalk::degree).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn face_examples() {
        assert_eq!(face_degrees("k4"), vec![3, 3, 3, 3]);
        assert_eq!(face_degrees("c5"), vec![5, 5]);
        assert_eq!(face_degrees("fan5"), vec![3, 3, 3, 5]);
        assert_eq!(face_degrees("k3"), vec![3, 3]);
    }

    #[test]
    fn tree_faces_count_cut_edges_twice() {
        let p = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let emb = embed(&p).unwrap();
        let fs = faces(&p, &emb);
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].degree(), 4);
    }

    #[test]
    fn disconnected_outer_faces_merge() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let emb = embed(&g).unwrap();
        let fs = faces(&g, &emb);
        // two triangles plus one isolated vertex: 7 - 6 + f = 1 + 3
        assert_eq!(fs.len(), 3);
        assert_eq!(fs.iter().filter(|f| f.boundaries.len() == 2).count(), 1);
        let empty = Graph::empty(2).unwrap();
        assert_eq!(faces(&empty, &embed(&empty).unwrap()).len(), 1);
    }

    #[test]
    fn dual_examples() {
        let k4 = fixture("k4").unwrap();
        let d = dual(&k4, &embed(&k4).unwrap());
        assert_eq!(d.nodes, 4);
        assert_eq!(d.links.len(), 6);
        let mut pairs: Vec<(usize, usize)> = d
            .links
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        assert_eq!(pairs.len(), 6, "dual of K4 is simple K4");
        assert!(pairs.iter().all(|&(a, b)| a != b));

        let c5 = fixture("c5").unwrap();
        let d = dual(&c5, &embed(&c5).unwrap());
        assert_eq!(d.nodes, 2);
        assert_eq!(d.links.len(), 5);
        assert!(d.links.iter().all(|&(a, b)| a != b));

        let fan5 = fixture("fan5").unwrap();
        let emb = embed(&fan5).unwrap();
        let fs = faces(&fan5, &emb);
        let d = dual(&fan5, &emb);
        assert_eq!(d.nodes, 4);
        for (i, f) in fs.iter().enumerate() {
            assert_eq!(d.degree(i), f.degree());
        }
        let big = fs.iter().position(|f| f.degree() == 5).unwrap();
        assert_eq!(d.degree(big), 5);
    }

    #[test]
    fn restriction_keeps_cyclic_order() {
        let w4 = fixture("w4").unwrap();
        let emb = embed(&w4).unwrap();
        let rim = w4.delete_edge(0, 1).unwrap();
        let r = emb.restrict(&rim);
        assert!(r.is_consistent_with(&rim));
        let fs = faces(&rim, &r);
        assert_eq!(rim.n() + fs.len(), rim.m() + 2);
    }
}
