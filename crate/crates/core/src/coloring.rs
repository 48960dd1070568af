//! Proper 3-colorings, represented as vertex partitions.
//!
//! Everything outside [`chromatic_value`] works with unlabelled partitions:
//! two colorings are the same when they induce the same partition. The
//! partition enumerator breaks color symmetry with restricted growth over a
//! fixed vertex order (descending degree, ties by index): the first vertex
//! takes class 0 and a vertex may open class `j` only once class `j - 1` is
//! open, so every partition is produced exactly once.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::bits::{bit, contains, members, VertexSet};
use crate::graph::Graph;

/// At most three nonempty, pairwise disjoint independent classes covering
/// the vertex set, sorted by least element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorPartition {
    classes: Vec<Vec<usize>>,
}

impl ColorPartition {
    pub fn from_masks(masks: &[VertexSet]) -> Self {
        let mut nonempty: Vec<VertexSet> = masks.iter().copied().filter(|&m| m != 0).collect();
        nonempty.sort_unstable_by_key(|m| m.trailing_zeros());
        ColorPartition {
            classes: nonempty.into_iter().map(|m| members(m).collect()).collect(),
        }
    }

    pub fn from_classes(classes: Vec<Vec<usize>>) -> Self {
        let masks: Vec<VertexSet> = classes
            .iter()
            .map(|c| c.iter().fold(0, |a, &v| a | bit(v)))
            .collect();
        Self::from_masks(&masks)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn masks(&self) -> Vec<VertexSet> {
        self.classes
            .iter()
            .map(|c| c.iter().fold(0, |a, &v| a | bit(v)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&v))
    }

    /// Checks independence, disjointness and coverage against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.classes.len() > 3 {
            return Err(Error::ImproperColoring(format!(
                "{} classes",
                self.classes.len()
            )));
        }
        let masks = self.masks();
        let mut seen: VertexSet = 0;
        for (i, &m) in masks.iter().enumerate() {
            if m & seen != 0 {
                return Err(Error::ImproperColoring(format!(
                    "class {i} overlaps an earlier class"
                )));
            }
            seen |= m;
            for v in members(m) {
                if v >= g.n() {
                    return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
                }
                if g.neighbors(v) & m != 0 {
                    let w = (g.neighbors(v) & m).trailing_zeros();
                    return Err(Error::ImproperColoring(format!(
                        "adjacent vertices {v} and {w} share class {i}"
                    )));
                }
            }
        }
        if seen != g.vertex_set() {
            return Err(Error::ImproperColoring(
                "classes do not cover every vertex".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Debug for ColorPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.classes)
    }
}

/// Backtracking order: descending degree, ties by index.
fn vertex_order(g: &Graph, vertices: VertexSet) -> Vec<usize> {
    let mut order: Vec<usize> = members(vertices).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

struct Enumerator<'a> {
    adj: &'a [VertexSet],
    order: &'a [usize],
    classes: [VertexSet; 3],
    cap: usize,
    out: Vec<[VertexSet; 3]>,
}

impl Enumerator<'_> {
    fn run(&mut self, i: usize, opened: usize) {
        if self.out.len() >= self.cap {
            return;
        }
        if i == self.order.len() {
            self.out.push(self.classes);
            return;
        }
        let v = self.order[i];
        let limit = (opened + 1).min(3);
        for c in 0..limit {
            if self.adj[v] & self.classes[c] != 0 {
                continue;
            }
            self.classes[c] |= bit(v);
            if opened + (c == opened) as usize == 3 && !self.forward_ok(v, i) {
                self.classes[c] &= !bit(v);
                continue;
            }
            self.run(i + 1, opened.max(c + 1));
            self.classes[c] &= !bit(v);
            if self.out.len() >= self.cap {
                return;
            }
        }
    }

    /// With all classes open, every uncolored neighbor of `v` must still
    /// have a class available.
    fn forward_ok(&self, v: usize, i: usize) -> bool {
        let colored = self.classes[0] | self.classes[1] | self.classes[2];
        let _ = i;
        members(self.adj[v] & !colored).all(|w| {
            self.classes
                .iter()
                .any(|&c| self.adj[w] & c == 0)
        })
    }
}

/// Distinct partitions induced by proper 3-colorings, at most `cap` of them.
pub fn proper_3_partitions(g: &Graph, cap: usize) -> Vec<ColorPartition> {
    let cap = cap.max(1);
    let order = vertex_order(g, g.vertex_set());
    let mut e = Enumerator {
        adj: g.masks(),
        order: &order,
        classes: [0; 3],
        cap,
        out: Vec::new(),
    };
    e.run(0, 0);
    e.out.iter().map(|c| ColorPartition::from_masks(c)).collect()
}

pub fn is_3_colorable(g: &Graph) -> bool {
    !proper_3_partitions(g, 1).is_empty()
}

/// The unique partition when `g` is uniquely 3-colorable: 3-colorable, not
/// 2-colorable, and exactly one partition.
pub fn is_uniquely_3_colorable(g: &Graph) -> Option<ColorPartition> {
    if g.n() == 0 || g.is_bipartite() {
        return None;
    }
    let mut parts = proper_3_partitions(g, 2);
    if parts.len() == 1 {
        parts.pop()
    } else {
        None
    }
}

/// Chromatic number when it is at most 3.
pub fn chromatic_number_at_most_3(g: &Graph) -> Option<usize> {
    if g.n() == 0 {
        Some(0)
    } else if g.m() == 0 {
        Some(1)
    } else if g.is_bipartite() {
        Some(2)
    } else if is_3_colorable(g) {
        Some(3)
    } else {
        None
    }
}

/// Vertex count from which [`chromatic_value`] switches to
/// deletion–contraction.
pub const DELETION_CONTRACTION_THRESHOLD: usize = 20;

/// Number of proper colorings with labels `0..k`, `k <= 4`. Exact; shares no
/// code with the partition enumerator.
pub fn chromatic_value(g: &Graph, k: usize) -> Result<u128> {
    chromatic_value_with_threshold(g, k, DELETION_CONTRACTION_THRESHOLD)
}

pub(crate) fn chromatic_value_with_threshold(g: &Graph, k: usize, threshold: usize) -> Result<u128> {
    if k > 4 {
        return Err(Error::Precondition(format!(
            "chromatic_value supports k <= 4, got {k}"
        )));
    }
    let mut memo = HashMap::new();
    let v = deletion_contraction(g, k as i128, threshold, &mut memo);
    Ok(u128::try_from(v).expect("chromatic values are nonnegative"))
}

fn deletion_contraction(
    g: &Graph,
    k: i128,
    threshold: usize,
    memo: &mut HashMap<String, i128>,
) -> i128 {
    if g.n() < threshold || g.m() == 0 {
        return count_labelled(g, k as usize) as i128;
    }
    // Simplicial vertex: P(G) = (k - d) P(G - v).
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        let d = nb.count_ones() as usize;
        if members(nb).all(|w| (g.neighbors(w) & nb).count_ones() as usize == d - 1) {
            let rest = g.delete_vertex(v).expect("vertex in range");
            return (k - d as i128) * deletion_contraction(&rest, k, threshold, memo);
        }
    }
    let key = g.canonical_g6();
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let (u, w) = g.edges()[0];
    let deleted = g.delete_edge(u, w).expect("edge present");
    let contracted = g.contract_edge(u, w).expect("edge present");
    let value = deletion_contraction(&deleted, k, threshold, memo)
        - deletion_contraction(&contracted, k, threshold, memo);
    memo.insert(key, value);
    value
}

/// Plain backtracking count of labelled colorings in index order.
fn count_labelled(g: &Graph, k: usize) -> u128 {
    fn go(adj: &[VertexSet], k: usize, v: usize, color: &mut [usize]) -> u128 {
        if v == adj.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..k {
            if members(adj[v] & crate::graph::bits::full(v)).all(|w| color[w] != c) {
                color[v] = c;
                total += go(adj, k, v + 1, color);
            }
        }
        total
    }
    let mut total = 1u128;
    for comp in g.components() {
        let sub = g.induced_mask(comp);
        let mut color = vec![usize::MAX; sub.n()];
        total *= go(sub.masks(), k, 0, &mut color);
        if total == 0 {
            break;
        }
    }
    total
}

/// Whether every pair of classes induces a connected subgraph.
pub fn classes_union_connected(g: &Graph, p: &ColorPartition) -> Result<bool> {
    p.validate(g)?;
    let masks = p.masks();
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            let union = masks[i] | masks[j];
            let start = union.trailing_zeros() as usize;
            if g.reach(start, union) != union {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All proper completions of a partial assignment `vertex -> class`
/// (classes `0..3`), at most `cap`. Classes not used by the assignment are
/// interchangeable and opened in order.
pub fn extend_precoloring(
    g: &Graph,
    assignment: &[(usize, usize)],
    cap: usize,
) -> Result<Vec<ColorPartition>> {
    let mut fixed = [0u64; 3];
    for &(v, c) in assignment {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        if c >= 3 {
            return Err(Error::ImproperColoring(format!("class {c} is not in 0..3")));
        }
        if fixed.iter().enumerate().any(|(d, &m)| d != c && contains(m, v)) {
            return Err(Error::ImproperColoring(format!(
                "vertex {v} assigned two classes"
            )));
        }
        fixed[c] |= bit(v);
    }
    for (c, &m) in fixed.iter().enumerate() {
        for v in members(m) {
            if g.neighbors(v) & m != 0 {
                let w = (g.neighbors(v) & m).trailing_zeros();
                return Err(Error::ImproperColoring(format!(
                    "adjacent vertices {v} and {w} both assigned class {c}"
                )));
            }
        }
    }
    // Move the used labels to a prefix so restricted growth covers the
    // fresh ones.
    let mut classes = [0u64; 3];
    let mut opened = 0;
    for &m in &fixed {
        if m != 0 {
            classes[opened] = m;
            opened += 1;
        }
    }
    let assigned = classes[0] | classes[1] | classes[2];
    let order = vertex_order(g, g.vertex_set() & !assigned);
    let mut e = Enumerator {
        adj: g.masks(),
        order: &order,
        classes,
        cap: cap.max(1),
        out: Vec::new(),
    };
    e.run_from(opened);
    Ok(e.out.iter().map(|c| ColorPartition::from_masks(c)).collect())
}

impl Enumerator<'_> {
    fn run_from(&mut self, opened: usize) {
        self.run(0, opened);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    fn g(name: &str) -> Graph {
        fixture(name).unwrap()
    }

    /// Oracle: every labelled assignment in `0..3`, collapsed to partitions.
    fn brute_partitions(g: &Graph) -> std::collections::BTreeSet<ColorPartition> {
        let n = g.n();
        let mut out = std::collections::BTreeSet::new();
        let total = 3usize.pow(n as u32);
        for code in 0..total {
            let mut masks = [0u64; 3];
            let mut x = code;
            for v in 0..n {
                masks[x % 3] |= bit(v);
                x /= 3;
            }
            if g.edges().iter().all(|&(u, v)| {
                masks.iter().all(|&m| !(contains(m, u) && contains(m, v)))
            }) {
                out.insert(ColorPartition::from_masks(&masks));
            }
        }
        out
    }

    #[test]
    fn partition_examples() {
        let k3 = proper_3_partitions(&g("k3"), 2);
        assert_eq!(k3.len(), 1);
        assert_eq!(k3[0].classes(), &[vec![0], vec![1], vec![2]]);
        assert_eq!(proper_3_partitions(&g("c5"), 10).len(), 5);
        assert_eq!(proper_3_partitions(&g("bowtie"), 10).len(), 2);
        assert!(proper_3_partitions(&g("k4"), 10).is_empty());
        assert_eq!(proper_3_partitions(&g("c5"), 3).len(), 3);
    }

    #[test]
    fn enumerator_matches_brute_force() {
        for name in crate::fixtures::FIXTURE_NAMES {
            let h = g(name);
            if h.n() > 9 {
                continue;
            }
            let ours: std::collections::BTreeSet<_> =
                proper_3_partitions(&h, usize::MAX).into_iter().collect();
            assert_eq!(ours, brute_partitions(&h), "{name}");
        }
    }

    #[test]
    fn chromatic_value_examples() {
        assert_eq!(chromatic_value(&g("k3"), 3), Ok(6));
        assert_eq!(chromatic_value(&g("c5"), 3), Ok(30));
        assert_eq!(chromatic_value(&g("oct"), 3), Ok(6));
        assert_eq!(chromatic_value(&g("k4"), 3), Ok(0));
        assert_eq!(chromatic_value(&g("k4"), 4), Ok(24));
        assert!(chromatic_value(&g("k4"), 5).is_err());
        // closed form for cycles: (k-1)^n + (-1)^n (k-1)
        for n in 3..9usize {
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            let c = Graph::from_edges(n, &edges).unwrap();
            let expect = 2i128.pow(n as u32) + if n % 2 == 0 { 2 } else { -2 };
            assert_eq!(chromatic_value(&c, 3).unwrap() as i128, expect);
        }
    }

    #[test]
    fn deletion_contraction_agrees_with_backtracking() {
        for name in crate::fixtures::FIXTURE_NAMES {
            let h = g(name);
            for k in 2..=4 {
                assert_eq!(
                    chromatic_value_with_threshold(&h, k, 0).unwrap(),
                    count_labelled(&h, k),
                    "{name} k={k}"
                );
            }
        }
    }

    #[test]
    fn uniqueness_examples() {
        let p = is_uniquely_3_colorable(&g("fan5")).unwrap();
        assert_eq!(p.classes(), &[vec![0], vec![1, 3], vec![2, 4]]);
        assert!(is_uniquely_3_colorable(&g("c5")).is_none());
        let oct = is_uniquely_3_colorable(&g("oct")).unwrap();
        assert_eq!(oct.classes(), &[vec![0, 1], vec![2, 3], vec![4, 5]]);
        assert!(is_uniquely_3_colorable(&g("c4")).is_none());
        assert!(is_uniquely_3_colorable(&g("k4")).is_none());
        for name in ["fan5", "oct", "k3", "diamond", "w4"] {
            let h = g(name);
            assert_eq!(chromatic_value(&h, 3), Ok(6), "{name}");
            assert_eq!(chromatic_value(&h, 2), Ok(0), "{name}");
        }
    }

    #[test]
    fn union_connectivity_examples() {
        let k3 = g("k3");
        let p = is_uniquely_3_colorable(&k3).unwrap();
        assert_eq!(classes_union_connected(&k3, &p), Ok(true));
        let fan5 = g("fan5");
        let p = is_uniquely_3_colorable(&fan5).unwrap();
        assert_eq!(classes_union_connected(&fan5, &p), Ok(true));
        let c6 = g("c6");
        let p = ColorPartition::from_classes(vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert_eq!(classes_union_connected(&c6, &p), Ok(false));
        let bad = ColorPartition::from_classes(vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        assert!(classes_union_connected(&c6, &bad).is_err());
    }

    #[test]
    fn precoloring_examples() {
        let k3 = g("k3");
        assert_eq!(extend_precoloring(&k3, &[(0, 0), (1, 1)], 10).unwrap().len(), 1);
        let c5 = g("c5");
        let done = extend_precoloring(&c5, &[(0, 0), (2, 0)], 10).unwrap();
        assert!(!done.is_empty());
        let wanted = ColorPartition::from_classes(vec![vec![0, 2], vec![1, 3], vec![4]]);
        assert!(done.contains(&wanted));
        for p in &done {
            p.validate(&c5).unwrap();
            assert_eq!(p.class_of(0), p.class_of(2));
        }
        assert!(extend_precoloring(&g("diamond"), &[(1, 0), (2, 0)], 10).is_err());
        assert!(extend_precoloring(&k3, &[(0, 3)], 10).is_err());
    }

    #[test]
    fn precoloring_matches_filtered_brute_force() {
        let c5 = g("c5");
        let done: std::collections::BTreeSet<_> = extend_precoloring(&c5, &[(0, 0), (2, 0)], 100)
            .unwrap()
            .into_iter()
            .collect();
        // brute force 3^3 over vertices 1, 3, 4 with 0, 2 in class A
        let mut oracle = std::collections::BTreeSet::new();
        for code in 0..27 {
            let cls = [code % 3, code / 3 % 3, code / 9];
            let mut color = [0usize; 5];
            color[1] = cls[0];
            color[3] = cls[1];
            color[4] = cls[2];
            if c5.edges().iter().all(|&(u, v)| color[u] != color[v]) {
                let mut masks = [0u64; 3];
                for v in 0..5 {
                    masks[color[v]] |= bit(v);
                }
                oracle.insert(ColorPartition::from_masks(&masks));
            }
        }
        assert_eq!(done, oracle);
    }

    #[test]
    fn serializes_as_sorted_class_lists() {
        let p = is_uniquely_3_colorable(&g("fan5")).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[0],[1,3],[2,4]]");
    }
}
