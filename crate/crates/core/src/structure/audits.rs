//! Instance audits over a decomposition and its auxiliary graph.
//!
//! Each audit runs mechanically on any input and reports what it found;
//! whether a failure is binding is decided by the caller from the
//! classification of the host graph.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::Serialize;

use super::{gprime_faces, is_maximal_outerplanar, AuxGraph, TriangleDecomposition};
use crate::coloring::is_uniquely_3_colorable;
use crate::error::{Error, Result};
use crate::graph::bits::{bit, contains, members, VertexSet};
use crate::graph::{embed, Faces, Graph, PlanarEmbedding};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thm41Report {
    pub hg_faces: i64,
    pub f_ge4_prime: i64,
    pub gprime_euler_faces: i64,
    pub gprime_traced_faces: usize,
    pub gprime_traced_3faces: usize,
    pub sum_t: usize,
    pub holds: bool,
}

/// `|F(H_G)| = F_≥4(G')`, plus the face-traversal cross-check on `G'`.
pub fn thm41_audit(
    aux: &AuxGraph,
    d: &TriangleDecomposition,
    emb: &PlanarEmbedding,
) -> Thm41Report {
    let gf = gprime_faces(d, emb);
    let hg_faces = aux.euler_faces();
    Thm41Report {
        hg_faces,
        f_ge4_prime: gf.f_ge4,
        gprime_euler_faces: gf.euler_faces,
        gprime_traced_faces: gf.traced_faces,
        gprime_traced_3faces: gf.traced_3faces,
        sum_t: gf.sum_t,
        holds: hg_faces == gf.f_ge4
            && gf.traced_faces as i64 == gf.euler_faces
            && gf.traced_3faces >= gf.sum_t,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cor34Violation {
    pub component: usize,
    pub from: [usize; 3],
    pub to: [usize; 3],
    pub v: usize,
    pub u: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cor34Report {
    /// Per component: is the triangle-adjacency graph a tree?
    pub trees: Vec<bool>,
    pub paths_checked: usize,
    pub violations: Vec<Cor34Violation>,
    pub holds: bool,
}

fn shared(a: &[usize; 3], b: &[usize; 3]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

fn tip(a: &[usize; 3], b: &[usize; 3]) -> usize {
    *a.iter().find(|x| !b.contains(x)).expect("triangles share an edge")
}

/// Along every shortest chain of edge-sharing triangles inside one
/// component, the two tips are distinct and non-adjacent.
pub fn cor34_audit(g: &Graph, d: &TriangleDecomposition) -> Cor34Report {
    let mut report = Cor34Report {
        trees: Vec::new(),
        paths_checked: 0,
        violations: Vec::new(),
        holds: true,
    };
    for (ci, h) in d.components.iter().enumerate() {
        let ts = &h.triangles;
        let adj: Vec<Vec<usize>> = (0..ts.len())
            .map(|i| (0..ts.len()).filter(|&j| j != i && shared(&ts[i], &ts[j]) == 2).collect())
            .collect();
        let links: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
        report.trees.push(links + 1 == ts.len());
        for s in 0..ts.len() {
            let mut parent = vec![usize::MAX; ts.len()];
            parent[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if parent[y] == usize::MAX {
                        parent[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            for t in s + 1..ts.len() {
                if parent[t] == usize::MAX {
                    continue;
                }
                // path t -> ... -> s, read backwards
                let mut path = vec![t];
                while *path.last().unwrap() != s {
                    path.push(parent[*path.last().unwrap()]);
                }
                path.reverse();
                let v = tip(&ts[path[0]], &ts[path[1]]);
                let u = tip(&ts[t], &ts[path[path.len() - 2]]);
                report.paths_checked += 1;
                if v == u || g.has_edge(v, u) {
                    report.violations.push(Cor34Violation {
                        component: ci,
                        from: ts[s],
                        to: ts[t],
                        v,
                        u,
                    });
                }
            }
        }
    }
    report.holds = report.violations.is_empty();
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cor35Component {
    pub component: usize,
    pub induced: bool,
    pub maximal_outerplanar: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cor35Report {
    pub components: Vec<Cor35Component>,
    pub holds: bool,
}

/// Each component is an induced, maximal outerplanar subgraph.
pub fn cor35_audit(g: &Graph, d: &TriangleDecomposition) -> Cor35Report {
    let components: Vec<Cor35Component> = d
        .components
        .iter()
        .enumerate()
        .map(|(i, h)| Cor35Component {
            component: i,
            induced: g.induced_mask(h.mask).m() == h.edges.len(),
            maximal_outerplanar: is_maximal_outerplanar(&h.graph, h.mask),
        })
        .collect();
    let holds = components.iter().all(|c| c.induced && c.maximal_outerplanar);
    Cor35Report { components, holds }
}

/// A union of components certified uniquely 3-colorable by the face
/// closure in `H_G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionCertificate {
    pub members: Vec<usize>,
    pub vertices: Vec<usize>,
    pub uniquely_3: bool,
}

fn union_is_unique(d: &TriangleDecomposition, set: u64) -> bool {
    let g = d.union_of(set);
    is_uniquely_3_colorable(&g.induced_mask(d.union_vertices(set))).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thm42Report {
    pub three_faces: usize,
    pub sets_explored: usize,
    pub truncated: bool,
    pub certificates: Vec<UnionCertificate>,
    pub violations: Vec<String>,
    pub holds: bool,
}

/// Cap on face sets visited by [`thm42_audit`].
pub const MAX_FACE_SETS: usize = 20_000;

/// Grows face sets from each 3-face of `H_G` by adjacent 4-faces. Every
/// added 4-face must bring exactly two new nodes and every resulting union
/// of components must be uniquely 3-colorable.
pub fn thm42_audit(aux: &AuxGraph, d: &TriangleDecomposition) -> Thm42Report {
    let mut report = Thm42Report {
        three_faces: 0,
        sets_explored: 0,
        truncated: false,
        certificates: Vec::new(),
        violations: Vec::new(),
        holds: true,
    };
    let hg = &aux.graph;
    let emb = embed(hg).expect("H_G is planar");
    let fs = Faces::trace(hg, &emb);
    if fs.len() > 128 {
        report.truncated = true;
        report.violations.push(format!("{} faces exceed the face-set width", fs.len()));
        report.holds = false;
        return report;
    }
    let nodes: Vec<VertexSet> = fs.walks.iter().map(|w| w.vertex_set()).collect();
    let degree: Vec<usize> = fs.walks.iter().map(|w| w.degree()).collect();
    let mut adjacent = vec![0u128; fs.len()];
    for (a, b) in hg.edges() {
        let (x, y) = (fs.face_of(a, b), fs.face_of(b, a));
        if x != y {
            adjacent[x] |= 1 << y;
            adjacent[y] |= 1 << x;
        }
    }

    let mut certified: BTreeMap<u64, bool> = BTreeMap::new();
    let mut check_union = |set: u64, report: &mut Thm42Report, label: &str| {
        let ok = *certified.entry(set).or_insert_with(|| union_is_unique(d, set));
        if !ok {
            report
                .violations
                .push(format!("{label}: union of H{:?} is not uniquely 3-colorable", members(set).collect::<Vec<_>>()));
        }
    };

    let mut visited: HashSet<u128> = HashSet::new();
    let mut stack: Vec<(u128, u64)> = Vec::new();
    for f0 in (0..fs.len()).filter(|&f| degree[f] == 3) {
        report.three_faces += 1;
        check_union(nodes[f0], &mut report, &format!("3-face {f0}"));
        if visited.insert(1 << f0) {
            stack.push((1 << f0, nodes[f0]));
        }
    }
    while let Some((set, seen)) = stack.pop() {
        report.sets_explored += 1;
        if report.sets_explored > MAX_FACE_SETS {
            report.truncated = true;
            break;
        }
        let frontier = (0..fs.len())
            .filter(|&f| set >> f & 1 == 0 && degree[f] == 4 && adjacent[f] & set != 0);
        for f in frontier.collect::<Vec<_>>() {
            let fresh = (nodes[f] & !seen).count_ones();
            if fresh != 2 {
                report.violations.push(format!(
                    "4-face {f} adds {fresh} new nodes to face set {:?}",
                    (0..fs.len()).filter(|&x| set >> x & 1 == 1).collect::<Vec<_>>()
                ));
            }
            let next = set | 1 << f;
            let union = seen | nodes[f];
            check_union(union, &mut report, &format!("4-face {f}"));
            if visited.insert(next) {
                stack.push((next, union));
            }
        }
    }
    report.certificates = certified
        .into_iter()
        .map(|(set, ok)| UnionCertificate {
            members: members(set).collect(),
            vertices: members(d.union_vertices(set)).collect(),
            uniquely_3: ok,
        })
        .collect();
    report.holds = report.violations.is_empty();
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thm36Report {
    /// Member sets of the subgraphs used as `G_0`.
    pub g0_candidates: Vec<Vec<usize>>,
    pub pair_checks: usize,
    pub triple_checks: usize,
    pub outside_vertex_checks: usize,
    pub violations: Vec<String>,
    pub holds: bool,
}

/// Pairwise intersection and crossing-edge bounds, union uniqueness for
/// triples, and at most two neighbors outside each `G_0`. `G_0` ranges over
/// single components and the certified unions passed in.
pub fn thm36_audit(
    g: &Graph,
    d: &TriangleDecomposition,
    unions: &[UnionCertificate],
) -> Thm36Report {
    let mut report = Thm36Report {
        g0_candidates: Vec::new(),
        pair_checks: 0,
        triple_checks: 0,
        outside_vertex_checks: 0,
        violations: Vec::new(),
        holds: true,
    };
    let mut sets: Vec<u64> = (0..d.k)
        .filter(|&i| is_uniquely_3_colorable(&d.components[i].graph.induced_mask(d.components[i].mask)).is_some())
        .map(|i| 1u64 << i)
        .collect();
    for c in unions.iter().filter(|c| c.uniquely_3) {
        let s = c.members.iter().fold(0u64, |a, &i| a | 1 << i);
        if !sets.contains(&s) {
            sets.push(s);
        }
    }
    sets.sort_unstable();
    let mut union_cache: BTreeMap<u64, bool> = BTreeMap::new();

    for &s in &sets {
        report.g0_candidates.push(members(s).collect());
        let v0 = d.union_vertices(s);
        let name = format!("G0=H{:?}", members(s).collect::<Vec<_>>());
        for v in members(g.vertex_set() & !v0) {
            report.outside_vertex_checks += 1;
            let e = (g.neighbors(v) & v0).count_ones();
            if e > 2 {
                report.violations.push(format!("{name}: vertex {v} has {e} neighbors in G0"));
            }
        }
        let others: Vec<usize> = (0..d.k).filter(|&b| !contains(s, b)).collect();
        for &b in &others {
            report.pair_checks += 1;
            let vb = d.components[b].mask;
            let common = v0 & vb;
            match common.count_ones() {
                0 => {
                    let e = g.e_between(v0, vb).expect("disjoint");
                    if e > 3 {
                        report.violations.push(format!("{name}, H{b}: {e} crossing edges > 3"));
                    }
                }
                1 => {
                    let e = g.e_between(v0 & !common, vb & !common).expect("disjoint");
                    if e > 1 {
                        report.violations.push(format!(
                            "{name}, H{b}: {e} crossing edges away from the shared vertex > 1"
                        ));
                    }
                }
                c => report.violations.push(format!("{name}, H{b}: {c} common vertices")),
            }
        }
        for (x, &b) in others.iter().enumerate() {
            for &c in &others[x + 1..] {
                let (vb, vc) = (d.components[b].mask, d.components[c].mask);
                let bc = vb & vc;
                if bc.count_ones() != 1 {
                    continue;
                }
                let v = bc.trailing_zeros() as usize;
                let meets_b = v0 & vb & !bit(v);
                let meets_c = v0 & vc & !bit(v);
                if meets_b == 0 || meets_c == 0 {
                    continue;
                }
                report.triple_checks += 1;
                let all = s | 1 << b | 1 << c;
                let ok = *union_cache.entry(all).or_insert_with(|| union_is_unique(d, all));
                if !ok {
                    report.violations.push(format!(
                        "{name} with H{b}, H{c}: union is not uniquely 3-colorable"
                    ));
                }
            }
        }
    }
    report.holds = report.violations.is_empty();
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cor45Report {
    pub k: usize,
    pub f_ge4_prime: i64,
    pub hg_faces: i64,
    /// `k - F_≥4(G')`, recorded as a statistic.
    pub gap: i64,
    pub holds: bool,
}

/// For `k >= 4`: `|F(H_G)| <= |V(H_G)| - 2` and `F_≥4(G') <= k - 2`.
pub fn cor45_audit(aux: &AuxGraph, d: &TriangleDecomposition) -> Result<Cor45Report> {
    if d.k < 4 {
        return Err(Error::Precondition(format!("needs k >= 4, got {}", d.k)));
    }
    let f = d.f_ge4_prime();
    let hg_faces = aux.euler_faces();
    let k = d.k as i64;
    Ok(Cor45Report {
        k: d.k,
        f_ge4_prime: f,
        hg_faces,
        gap: k - f,
        holds: f <= k - 2 && hg_faces <= k - 2,
    })
}

/// Certificate for an explicit member set, for callers that want to feed
/// extra `G_0` candidates into [`thm36_audit`].
pub fn union_certificate(d: &TriangleDecomposition, members_set: &[usize]) -> UnionCertificate {
    let set = members_set.iter().fold(0u64, |a, &i| a | 1 << i);
    UnionCertificate {
        members: members(set).collect(),
        vertices: members(d.union_vertices(set)).collect(),
        uniquely_3: union_is_unique(d, set),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use crate::structure::{build_hg, triangle_components};

    fn setup(name: &str) -> (Graph, PlanarEmbedding, TriangleDecomposition, AuxGraph) {
        let g = fixture(name).unwrap();
        let emb = embed(&g).unwrap();
        let d = triangle_components(&g);
        let aux = build_hg(&g, &emb, &d).unwrap();
        (g, emb, d, aux)
    }

    #[test]
    fn thm41_examples() {
        for name in ["bowtie", "k3", "diamond", "fan5"] {
            let (_, emb, d, aux) = setup(name);
            let r = thm41_audit(&aux, &d, &emb);
            assert_eq!((r.hg_faces, r.f_ge4_prime), (1, 1), "{name}");
            assert!(r.holds, "{name}");
        }
    }

    #[test]
    fn cor34_examples() {
        let (g, _, d, _) = setup("diamond");
        let r = cor34_audit(&g, &d);
        assert_eq!(r.paths_checked, 1);
        assert!(r.holds && r.trees == vec![true]);
        let (g, _, d, _) = setup("fan5");
        let r = cor34_audit(&g, &d);
        assert_eq!(r.paths_checked, 3);
        assert!(r.holds);
        // K4: all four triangles pairwise adjacent, and tips coincide
        let (g, _, d, _) = setup("k4");
        let r = cor34_audit(&g, &d);
        assert!(!r.holds && r.trees == vec![false]);
    }

    #[test]
    fn cor35_examples() {
        let (g, _, d, _) = setup("fan6");
        assert!(cor35_audit(&g, &d).holds);
        let (g, _, d, _) = setup("w4");
        let r = cor35_audit(&g, &d);
        assert!(!r.holds, "the wheel is not outerplanar");
    }

    #[test]
    fn thm42_on_a_ring() {
        let (_, _, d, aux) = setup("diamondring");
        let r = thm42_audit(&aux, &d);
        assert_eq!(r.three_faces, 2);
        // the union of three diamonds is not uniquely 3-colorable, and the
        // audit says so
        assert!(!r.holds);
        assert_eq!(r.certificates.len(), 1);
        assert_eq!(r.certificates[0].members, vec![0, 1, 2]);
        assert!(!r.certificates[0].uniquely_3);

        let (_, _, d, aux) = setup("bowtie");
        let r = thm42_audit(&aux, &d);
        assert_eq!(r.three_faces, 0);
        assert!(r.holds && r.certificates.is_empty());
    }

    #[test]
    fn thm36_examples() {
        let (g, _, d, _) = setup("bowtie");
        let r = thm36_audit(&g, &d, &[]);
        assert_eq!(r.pair_checks, 2);
        assert!(r.holds);

        let (g, _, d, _) = setup("diamondring");
        let r = thm36_audit(&g, &d, &[]);
        assert_eq!(r.triple_checks, 3);
        assert!(!r.holds, "three diamonds in a ring admit several colorings");
    }

    #[test]
    fn cor45_needs_four_components() {
        let (_, _, d, aux) = setup("diamondring");
        assert!(cor45_audit(&aux, &d).is_err());
    }
}
