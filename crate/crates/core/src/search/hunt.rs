use std::collections::{BTreeMap, HashSet};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::enumerate_with;
use super::{classification_flags, max_planar_edges, Budget, Meter, Prune, ResultRecord, SearchConfig};
use crate::audit::{audit, Mode};
use crate::bounds::{bound_report, thm46_upper};
use crate::coloring::is_uniquely_3_colorable;
use crate::criticality::{classify, in_ue_fast};
use crate::error::{Error, Result};
use crate::graph::bits::{bit, members};
use crate::graph::graph6::emit_graph6;
use crate::graph::{embed, Faces, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Augmentation,
    TriangulationCarving,
}

impl Strategy {
    pub fn label(self) -> &'static str {
        match self {
            Strategy::Augmentation => "augmentation",
            Strategy::TriangulationCarving => "triangulation-carving",
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "augmentation" => Ok(Strategy::Augmentation),
            "carving" | "triangulation-carving" => Ok(Strategy::TriangulationCarving),
            _ => Err(Error::Precondition(format!("unknown strategy {s:?}"))),
        }
    }
}

/// Face statistics of one hit, recorded but not asserted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStats {
    pub canonical_g6: String,
    pub k: usize,
    pub f_ge4_prime: i64,
    pub k_minus_f_ge4_prime: i64,
    pub f3: usize,
    pub formula2_equality: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuntOutcome {
    pub n: usize,
    pub m_target: usize,
    pub strategy: Strategy,
    /// Sorted by canonical graph6.
    pub records: Vec<ResultRecord>,
    pub stats: Vec<WitnessStats>,
    /// Graphs or carving candidates examined.
    pub examined: u64,
    pub budget_exhausted: bool,
    /// The hit cap ended the run early.
    pub stopped_at_cap: bool,
    /// The whole space was covered (never a nonexistence claim for
    /// carving, which covers only the subsets it was given).
    pub complete: bool,
    pub audit_failures: Vec<String>,
}

impl HuntOutcome {
    /// Zero hits without covering the space says nothing.
    pub fn inconclusive(&self) -> bool {
        self.records.is_empty() && !self.complete
    }
}

/// Largest admissible target: `floor(5n/2) - 6` from 6 vertices on, the
/// planar maximum below (where the tighter line does not hold: `size(5)
/// = 7`).
pub fn hunt_upper_bound(n: usize) -> usize {
    if n >= 6 {
        thm46_upper(n) as usize
    } else {
        max_planar_edges(n)
    }
}

fn vertex_splits(t: &Graph) -> Vec<Graph> {
    let emb = embed(t).expect("triangulations are planar");
    let n = t.n();
    let mut out = Vec::new();
    for v in 0..n {
        let r = emb.rotation(v);
        let d = r.len();
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                // v keeps r[i..=j], the new vertex takes r[j..=i] (cyclic)
                let mut adj = t.masks().to_vec();
                adj.push(0);
                let mut a = j;
                loop {
                    let w = r[a];
                    if a != i && a != j {
                        adj[v] &= !bit(w);
                        adj[w] &= !bit(v);
                    }
                    adj[w] |= bit(n);
                    adj[n] |= bit(w);
                    if a == i {
                        break;
                    }
                    a = (a + 1) % d;
                }
                adj[v] |= bit(n);
                adj[n] |= bit(v);
                out.push(Graph::from_masks(adj));
            }
        }
    }
    out
}

/// Planar triangulations on `n` vertices up to isomorphism, built from
/// `K4` by vertex splitting, sorted by canonical graph6.
pub fn triangulations(n: usize) -> Result<Vec<Graph>> {
    match n {
        0..=2 => Err(Error::Precondition(format!("no triangulation on {n} vertices"))),
        3 => Ok(vec![Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)])?.canonical_graph()]),
        _ if n > crate::graph::graph6::MAX_GRAPH6_VERTICES => Err(Error::TooManyVertices {
            n,
            max: crate::graph::graph6::MAX_GRAPH6_VERTICES,
        }),
        _ => {
            let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?;
            let mut level = vec![k4.canonical_graph()];
            for _ in 4..n {
                let next: BTreeMap<String, Graph> = level
                    .par_iter()
                    .flat_map_iter(|t| {
                        let mut local = HashSet::new();
                        vertex_splits(t)
                            .into_iter()
                            .map(|g| g.canonical_graph())
                            .filter(move |g| local.insert(g.masks().to_vec()))
                            .collect::<Vec<_>>()
                    })
                    .map(|g| (emit_graph6(&g), g))
                    .collect();
                level = next.into_values().collect();
            }
            Ok(level)
        }
    }
}

/// Edges of `t` and, per edge, the mask of edges sharing a face with it.
fn face_conflicts(t: &Graph) -> (Vec<(usize, usize)>, Vec<u64>) {
    let emb = embed(t).expect("triangulations are planar");
    let fs = Faces::trace(t, &emb);
    let edges = t.edges();
    let mut on_face: Vec<u64> = vec![0; fs.len()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        on_face[fs.face_of(u, v)] |= 1 << i;
        on_face[fs.face_of(v, u)] |= 1 << i;
    }
    let conflicts = edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| (on_face[fs.face_of(u, v)] | on_face[fs.face_of(v, u)]) & !(1 << i))
        .collect();
    (edges, conflicts)
}

struct Carver<'a, V> {
    t: &'a Graph,
    edges: Vec<(usize, usize)>,
    conflicts: Vec<u64>,
    q: usize,
    /// Phase one takes face-disjoint deletions only; phase two the rest.
    equality_phase: bool,
    meter: &'a Meter,
    visit: &'a V,
}

impl<V: Fn(Graph) + Sync> Carver<'_, V> {
    fn run(&self) {
        self.pick(0, 0, 0, false);
    }

    fn pick(&self, from: usize, chosen: u64, blocked: u64, clash: bool) {
        if self.meter.halted() {
            return;
        }
        if chosen.count_ones() as usize == self.q {
            if clash != self.equality_phase && self.meter.tick() {
                let mut adj = self.t.masks().to_vec();
                for e in members(chosen) {
                    let (u, v) = self.edges[e];
                    adj[u] &= !bit(v);
                    adj[v] &= !bit(u);
                }
                (self.visit)(Graph::from_masks(adj));
            }
            return;
        }
        let left = self.q - chosen.count_ones() as usize;
        for e in from..self.edges.len() {
            if self.edges.len() - e < left {
                return;
            }
            let c = blocked >> e & 1 == 1;
            if self.equality_phase && c {
                continue;
            }
            self.pick(e + 1, chosen | 1 << e, blocked | self.conflicts[e], clash || c);
        }
    }
}

fn hunt_precondition(n: usize, m_target: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Precondition(format!("no U_E graph on {n} vertices")));
    }
    let upper = hunt_upper_bound(n);
    if m_target > upper {
        return Err(Error::Precondition(format!(
            "m = {m_target} exceeds the edge bound {upper} for n = {n}"
        )));
    }
    Ok(())
}

/// Searches for `U_E` graphs with `n` vertices and `m_target` edges.
/// `max_hits` ends the run once that many distinct hits are in hand.
pub fn hunt(
    n: usize,
    m_target: usize,
    strategy: Strategy,
    budget: Budget,
    jobs: Option<usize>,
    max_hits: Option<usize>,
) -> Result<HuntOutcome> {
    hunt_precondition(n, m_target)?;
    let cfg = SearchConfig::new(n)
        .with_edges(m_target, m_target)
        .with_prune(Prune::all())
        .with_budget(budget)
        .with_jobs(jobs);
    let meter = Meter::new(&budget);
    let hits: Mutex<BTreeMap<String, Graph>> = Mutex::new(BTreeMap::new());
    let found = AtomicUsize::new(0);
    let note = |g: &Graph| {
        let c = g.canonical_graph();
        let mut h = hits.lock().expect("no poisoned lock");
        if h.insert(emit_graph6(&c), c).is_none() {
            let k = found.fetch_add(1, Ordering::Relaxed) + 1;
            if max_hits.is_some_and(|cap| k >= cap) {
                meter.stop();
            }
        }
    };

    let complete = match strategy {
        Strategy::Augmentation => {
            let leaf = |g: &Graph| {
                let hit = in_ue_fast(g);
                if hit {
                    note(g);
                }
                hit
            };
            enumerate_with(&cfg, &meter, &leaf)?.complete
        }
        Strategy::TriangulationCarving => {
            let ts = triangulations(n)?;
            let q = max_planar_edges(n) - m_target;
            let floor = if n >= 4 { 2 } else { 0 };
            let visit = |g: Graph| {
                if g.min_degree() >= floor && is_uniquely_3_colorable(&g).is_some() && in_ue_fast(&g) {
                    note(&g);
                }
            };
            cfg.install(|| {
                for equality_phase in [true, false] {
                    ts.par_iter().for_each(|t| {
                        let (edges, conflicts) = face_conflicts(t);
                        Carver {
                            t,
                            edges,
                            conflicts,
                            q,
                            equality_phase,
                            meter: &meter,
                            visit: &visit,
                        }
                        .run();
                    });
                }
            })?;
            !meter.halted()
        }
    };

    let label = format!("hunt:{}", strategy.label());
    let graphs: Vec<Graph> = hits.into_inner().expect("no poisoned lock").into_values().collect();
    let mut records = Vec::new();
    let mut stats = Vec::new();
    let mut audit_failures = Vec::new();
    for g in &graphs {
        let c = classify(g)?;
        let report = audit(g, Mode::Member)?;
        let g6 = emit_graph6(g);
        if !report.all_pass() {
            audit_failures.push(format!("{g6}:{}", report.digest()));
        }
        let b = bound_report(g)?;
        stats.push(WitnessStats {
            canonical_g6: g6.clone(),
            k: b.k,
            f_ge4_prime: b.f_ge4_prime,
            k_minus_f_ge4_prime: b.k as i64 - b.f_ge4_prime,
            f3: b.f3,
            formula2_equality: b.formula2_equality,
        });
        records.push(ResultRecord {
            canonical_g6: g6,
            n,
            m: g.m(),
            flags: classification_flags(&c),
            audit_digest: report.digest(),
            shard: label.clone(),
        });
    }
    Ok(HuntOutcome {
        n,
        m_target,
        strategy,
        records,
        stats,
        examined: meter.nodes(),
        budget_exhausted: meter.exhausted(),
        stopped_at_cap: meter.stopped(),
        complete,
        audit_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    #[test]
    fn triangulation_counts() {
        let expected = [(4, 1), (5, 1), (6, 2), (7, 5), (8, 14), (9, 50)];
        for (n, count) in expected {
            let ts = triangulations(n).unwrap();
            assert_eq!(ts.len(), count, "n = {n}");
            for t in &ts {
                assert_eq!(t.m(), 3 * n - 6);
                assert!(crate::graph::is_planar(t));
                assert!(t.min_degree() >= 3);
            }
        }
        assert_eq!(triangulations(3).unwrap().len(), 1);
        assert!(triangulations(2).is_err());
    }

    #[test]
    fn fan6_class_from_both_strategies() {
        let fan6 = fixture("fan6").unwrap().canonical_g6();
        for strategy in [Strategy::Augmentation, Strategy::TriangulationCarving] {
            let h = hunt(6, 9, strategy, Budget::unlimited(), None, None).unwrap();
            assert!(h.complete, "{strategy:?}");
            assert!(h.audit_failures.is_empty());
            let found: Vec<&str> = h.records.iter().map(|r| r.canonical_g6.as_str()).collect();
            assert!(found.contains(&fan6.as_str()), "{strategy:?}: {found:?}");
            assert!(h.records.iter().all(|r| r.flags == "PCUDKE" && r.m == 9));
        }
    }

    #[test]
    fn strategies_agree_when_complete() {
        for (n, m) in [(5, 7), (6, 9), (7, 11)] {
            let a = hunt(n, m, Strategy::Augmentation, Budget::unlimited(), None, None).unwrap();
            let b = hunt(n, m, Strategy::TriangulationCarving, Budget::unlimited(), None, None)
                .unwrap();
            assert_eq!(a.records, {
                let mut r = b.records.clone();
                for x in &mut r {
                    x.shard = "hunt:augmentation".into();
                }
                r
            });
        }
    }

    #[test]
    fn bound_violations_are_refused() {
        assert!(matches!(
            hunt(10, 20, Strategy::Augmentation, Budget::unlimited(), None, None),
            Err(Error::Precondition(_))
        ));
        assert!(hunt(2, 1, Strategy::Augmentation, Budget::unlimited(), None, None).is_err());
        assert_eq!(hunt_upper_bound(5), 9);
        assert_eq!(hunt_upper_bound(10), 19);
    }

    #[test]
    fn hit_cap_and_budget() {
        let h = hunt(6, 9, Strategy::TriangulationCarving, Budget::unlimited(), None, Some(1))
            .unwrap();
        assert_eq!(h.records.len(), 1);
        assert!(h.stopped_at_cap && !h.complete);
        let h = hunt(
            8,
            14,
            Strategy::Augmentation,
            Budget {
                seconds: None,
                nodes: Some(5),
            },
            None,
            None,
        )
        .unwrap();
        assert!(h.budget_exhausted && !h.complete);
    }
}
