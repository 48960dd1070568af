//! Canonical labelling by ordered partition refinement and backtracking.
//!
//! The root partition orders vertices by degree; each node of the search
//! tree is refined to an equitable ordered partition, and the first
//! non-singleton cell is individualized vertex by vertex. Every leaf is a
//! labelling; the canonical one has the lexicographically greatest
//! adjacency certificate. Automorphisms found when two leaves produce equal
//! certificates prune siblings in the same orbit of the pointwise stabilizer
//! of the current prefix.
//!
//! Because refinement and individualization only ever split a cell in place,
//! the vertex given the last canonical position always lies in the last
//! cell of the root partition, i.e. it has maximum degree. The orderly
//! generator relies on this.

use serde::{Deserialize, Serialize};

use super::bits::{bit, contains, members, VertexSet};
use super::graph6::emit_graph6;
use super::{Graph, MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    /// `labeling[v]` is the canonical position of vertex `v`.
    pub labeling: Vec<usize>,
    pub graph6: String,
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let lab = canonical_labeling(g);
    let mut labeling = vec![0; g.n()];
    for (pos, &v) in lab.order.iter().enumerate() {
        labeling[v] = pos;
    }
    CanonicalForm {
        labeling,
        graph6: emit_graph6(&lab.canonical_graph()),
    }
}

impl Graph {
    /// graph6 string of the canonical relabelling; equal exactly for
    /// isomorphic graphs.
    pub fn canonical_g6(&self) -> String {
        emit_graph6(&canonical_labeling(self).canonical_graph())
    }

    pub fn canonical_graph(&self) -> Graph {
        canonical_labeling(self).canonical_graph()
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Labeling {
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    /// Row `i` is the neighbor mask of position `i` in canonical positions.
    pub cert: Vec<VertexSet>,
    pub root_cells: Vec<VertexSet>,
    pub automorphisms: Vec<Vec<usize>>,
}

impl Labeling {
    pub fn canonical_graph(&self) -> Graph {
        Graph::from_masks(self.cert.clone())
    }

    /// Vertex in the last canonical position.
    pub fn last(&self) -> Option<usize> {
        self.order.last().copied()
    }

    /// Whether `a` and `b` are related by the automorphisms found during
    /// the search. `false` is inconclusive.
    pub fn known_same_orbit(&self, a: usize, b: usize) -> bool {
        let n = self.order.len();
        let mut uf = UnionFind::new(n);
        for gamma in &self.automorphisms {
            for v in 0..n {
                uf.union(v, gamma[v]);
            }
        }
        uf.find(a) == uf.find(b)
    }
}

/// Degree-ordered root partition refined to equitability.
pub(crate) fn root_partition(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut by_degree = [0u64; MAX_VERTICES + 1];
    for v in 0..n {
        by_degree[g.degree(v)] |= bit(v);
    }
    let mut cells: Vec<VertexSet> = by_degree.iter().copied().filter(|&c| c != 0).collect();
    refine(g, &mut cells);
    cells
}

/// Splits cells by neighbor counts into every cell until nothing changes.
/// Sub-cells are ordered by their count vectors, so the result depends only
/// on the isomorphism type of (graph, ordered partition).
pub(crate) fn refine(g: &Graph, cells: &mut Vec<VertexSet>) {
    let adj = g.masks();
    loop {
        let mut changed = false;
        let snapshot = cells.clone();
        let mut next = Vec::with_capacity(snapshot.len() + 1);
        for &cell in &snapshot {
            if cell.count_ones() == 1 {
                next.push(cell);
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, usize)> = members(cell)
                .map(|v| {
                    let sig = snapshot
                        .iter()
                        .map(|&c| (adj[v] & c).count_ones() as u8)
                        .collect();
                    (sig, v)
                })
                .collect();
            keyed.sort_unstable();
            let mut current = bit(keyed[0].1);
            for w in keyed.windows(2) {
                if w[0].0 == w[1].0 {
                    current |= bit(w[1].1);
                } else {
                    next.push(current);
                    current = bit(w[1].1);
                    changed = true;
                }
            }
            next.push(current);
        }
        *cells = next;
        if !changed {
            return;
        }
    }
}

/// Whether an automorphism of `g` maps `a` to `b`. Exact: falls back to
/// comparing certificates of `g` with `a` and with `b` individualised.
pub(crate) fn same_orbit(g: &Graph, lab: &Labeling, a: usize, b: usize) -> bool {
    if a == b || lab.known_same_orbit(a, b) {
        return true;
    }
    let cell_of = |v: usize| lab.root_cells.iter().position(|&c| contains(c, v));
    if cell_of(a) != cell_of(b) {
        return false;
    }
    rooted_certificate(g, &lab.root_cells, a) == rooted_certificate(g, &lab.root_cells, b)
}

fn rooted_certificate(g: &Graph, root: &[VertexSet], v: usize) -> Vec<VertexSet> {
    let mut cells = Vec::with_capacity(root.len() + 1);
    for &c in root {
        if contains(c, v) && c.count_ones() > 1 {
            cells.push(bit(v));
            cells.push(c & !bit(v));
        } else {
            cells.push(c);
        }
    }
    let mut search = Search {
        g,
        best: None,
        automorphisms: Vec::new(),
        prefix: vec![v],
    };
    search.descend(cells, true);
    search.best.expect("search visits at least one leaf").0
}

pub(crate) fn canonical_labeling(g: &Graph) -> Labeling {
    let root = root_partition(g);
    let mut search = Search {
        g,
        best: None,
        automorphisms: Vec::new(),
        prefix: Vec::new(),
    };
    search.descend(root.clone(), false);
    let (cert, order) = search.best.expect("search visits at least one leaf");
    Labeling {
        order,
        cert,
        root_cells: root,
        automorphisms: search.automorphisms,
    }
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<VertexSet>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
    prefix: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Vec<VertexSet>, needs_refine: bool) {
        if needs_refine {
            refine(self.g, &mut cells);
        }
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            self.leaf(&cells);
            return;
        };
        let cell = cells[target];
        let mut explored: Vec<usize> = Vec::new();
        for v in members(cell) {
            if !explored.is_empty() && self.in_explored_orbit(v, &explored) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(bit(v));
            child.push(cell & !bit(v));
            child.extend_from_slice(&cells[target + 1..]);
            self.prefix.push(v);
            self.descend(child, true);
            self.prefix.pop();
            explored.push(v);
        }
    }

    fn in_explored_orbit(&self, v: usize, explored: &[usize]) -> bool {
        let n = self.g.n();
        let mut uf = UnionFind::new(n);
        let mut any = false;
        for gamma in &self.automorphisms {
            if self.prefix.iter().all(|&p| gamma[p] == p) {
                any = true;
                for x in 0..n {
                    uf.union(x, gamma[x]);
                }
            }
        }
        any && explored.iter().any(|&u| uf.find(u) == uf.find(v))
    }

    fn leaf(&mut self, cells: &[VertexSet]) {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = [0usize; MAX_VERTICES];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let adj = self.g.masks();
        let cert: Vec<VertexSet> = order
            .iter()
            .map(|&v| members(adj[v]).fold(0u64, |a, w| a | bit(pos[w])))
            .collect();
        match &self.best {
            None => self.best = Some((cert, order)),
            Some((best_cert, best_order)) => match cert.cmp(best_cert) {
                std::cmp::Ordering::Greater => self.best = Some((cert, order)),
                std::cmp::Ordering::Equal => {
                    let mut gamma = vec![0; order.len()];
                    for i in 0..order.len() {
                        gamma[order[i]] = best_order[i];
                    }
                    if gamma.iter().enumerate().any(|(i, &x)| i != x) {
                        self.automorphisms.push(gamma);
                    }
                }
                std::cmp::Ordering::Less => {}
            },
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` when the two elements were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Factorial oracle: the lexicographically greatest certificate over
    /// every relabelling.
    fn brute_canonical(g: &Graph, perms: &[Vec<usize>]) -> Vec<VertexSet> {
        perms
            .iter()
            .map(|p| {
                let h = g.relabel(p);
                h.masks().to_vec()
            })
            .max()
            .unwrap()
    }

    fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::empty(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.insert_edge(u, v);
                }
            }
        }
        g
    }

    #[test]
    fn isomorphic_relabelings_agree() {
        let c5a = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let c5b = Graph::from_edges(5, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(c5a.canonical_g6(), c5b.canonical_g6());
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_ne!(c5a.canonical_g6(), p5.canonical_g6());
    }

    #[test]
    fn eleven_classes_on_four_vertices() {
        let perms = permutations(4);
        let mut ours = std::collections::BTreeSet::new();
        let mut oracle = std::collections::BTreeSet::new();
        for mask in 0u32..64 {
            let mut g = Graph::empty(4).unwrap();
            let pairs = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)];
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.insert_edge(u, v);
                }
            }
            ours.insert(g.canonical_g6());
            oracle.insert(brute_canonical(&g, &perms));
        }
        assert_eq!(oracle.len(), 11);
        assert_eq!(ours.len(), 11);
    }

    #[test]
    fn matches_factorial_oracle_up_to_seven() {
        let mut rng = rand_chacha_like(7);
        for n in 1..=7 {
            let perms = permutations(n);
            for _ in 0..40 {
                let p = rng.gen_range(0.1..0.9);
                let g = random_graph(&mut rng, n, p);
                let h = g.relabel(&{
                    let mut q: Vec<usize> = (0..n).collect();
                    q.shuffle(&mut rng);
                    q
                });
                // Exactness: same canonical graph iff same oracle class.
                let og = brute_canonical(&g, &perms);
                let oh = brute_canonical(&h, &perms);
                assert_eq!(og, oh);
                assert_eq!(g.canonical_g6(), h.canonical_g6());
                let k = random_graph(&mut rng, n, p);
                assert_eq!(
                    brute_canonical(&k, &perms) == og,
                    k.canonical_g6() == g.canonical_g6(),
                    "{g:?} vs {k:?}"
                );
            }
        }
    }

    #[test]
    fn canonical_graph_is_isomorphic_to_input() {
        let g = fixture("fan6").unwrap();
        let cf = canonical_form(&g);
        assert_eq!(g.relabel(&cf.labeling), g.canonical_graph());
    }

    #[test]
    fn last_vertex_has_maximum_degree() {
        let mut rng = rand_chacha_like(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..10);
            let g = random_graph(&mut rng, n, 0.4);
            let lab = canonical_labeling(&g);
            assert_eq!(g.degree(lab.last().unwrap()), g.max_degree());
        }
    }

    #[test]
    fn symmetric_graphs_terminate() {
        let empty = Graph::empty(12).unwrap();
        assert_eq!(empty.canonical_g6(), crate::graph::graph6::emit_graph6(&empty));
        let mut k = Graph::empty(10).unwrap();
        for u in 0..10 {
            for v in u + 1..10 {
                k.insert_edge(u, v);
            }
        }
        assert_eq!(k.canonical_graph(), k);
    }

    #[test]
    fn orbits_match_automorphism_oracle() {
        let mut rng = rand_chacha_like(5);
        for n in 2..=6 {
            let perms = permutations(n);
            for _ in 0..30 {
                let p = rng.gen_range(0.2..0.8);
                let g = random_graph(&mut rng, n, p);
                let autos: Vec<&Vec<usize>> = perms.iter().filter(|p| g.relabel(p) == g).collect();
                let lab = canonical_labeling(&g);
                for a in 0..n {
                    for b in 0..n {
                        let oracle = autos.iter().any(|p| p[a] == b);
                        assert_eq!(same_orbit(&g, &lab, a, b), oracle, "{g:?} {a} {b}");
                    }
                }
            }
        }
    }

    fn rand_chacha_like(seed: u64) -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(seed)
    }
}
