//! Edge-criticality oracles and classification.
//!
//! Two independent oracles decide criticality of a uniquely 3-colorable
//! graph: the definitional one deletes each edge and counts partitions, the
//! contraction one asks whether `G / e` is still 3-colorable. They must
//! agree on every input; [`classify`] runs both and reports a disagreement
//! as [`Error::TheoremViolation`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{
    chromatic_number_at_most_3, is_3_colorable, is_uniquely_3_colorable, ColorPartition,
};
use crate::error::{Error, Result};
use crate::graph::bits::{bit, members};
use crate::graph::{is_planar, Edge, Faces, Graph, PlanarEmbedding};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "oracle", rename_all = "snake_case")]
pub enum EdgeWitness {
    /// `G - e` is still uniquely 3-colorable.
    Definitional {
        edge: Edge,
        partition: ColorPartition,
    },
    /// `G / e` is not 3-colorable.
    Contraction { edge: Edge },
}

impl EdgeWitness {
    pub fn edge(&self) -> Edge {
        match self {
            EdgeWitness::Definitional { edge, .. } | EdgeWitness::Contraction { edge } => *edge,
        }
    }
}

/// Flags are false when their precondition fails: the two criticality
/// flags are only computed for uniquely 3-colorable input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub m: usize,
    pub planar: bool,
    pub chromatic_3: bool,
    pub uniquely_3: bool,
    pub edge_critical_definitional: bool,
    pub edge_critical_contraction: bool,
    #[serde(rename = "in_UE")]
    pub in_ue: bool,
    pub partition: Option<ColorPartition>,
    pub witnesses: Vec<EdgeWitness>,
}

impl ClassificationReport {
    /// Sizes only, every flag false.
    pub fn unclassified(g: &Graph) -> Self {
        ClassificationReport {
            n: g.n(),
            m: g.m(),
            planar: false,
            chromatic_3: false,
            uniquely_3: false,
            edge_critical_definitional: false,
            edge_critical_contraction: false,
            in_ue: false,
            partition: None,
            witnesses: Vec::new(),
        }
    }
}

fn require_unique(g: &Graph) -> Result<ColorPartition> {
    is_uniquely_3_colorable(g)
        .ok_or_else(|| Error::Precondition("graph is not uniquely 3-colorable".into()))
}

/// True iff deleting any edge destroys unique 3-colorability. Witnesses are
/// the edges whose deletion leaves a uniquely 3-colorable graph, sorted.
pub fn edge_critical_definitional(g: &Graph) -> Result<(bool, Vec<EdgeWitness>)> {
    require_unique(g)?;
    let witnesses: Vec<EdgeWitness> = g
        .edges()
        .into_par_iter()
        .filter_map(|(u, v)| {
            let h = g.delete_edge(u, v).expect("edge present");
            is_uniquely_3_colorable(&h).map(|partition| EdgeWitness::Definitional {
                edge: (u, v),
                partition,
            })
        })
        .collect();
    Ok((witnesses.is_empty(), witnesses))
}

/// True iff `G / e` is 3-colorable for every edge.
pub fn edge_critical_contraction(g: &Graph) -> Result<(bool, Vec<EdgeWitness>)> {
    require_unique(g)?;
    let witnesses: Vec<EdgeWitness> = g
        .edges()
        .into_par_iter()
        .filter(|&(u, v)| !is_3_colorable(&g.contract_edge(u, v).expect("edge present")))
        .map(|edge| EdgeWitness::Contraction { edge })
        .collect();
    Ok((witnesses.is_empty(), witnesses))
}

pub fn classify(g: &Graph) -> Result<ClassificationReport> {
    let planar = is_planar(g);
    let chromatic_3 = chromatic_number_at_most_3(g) == Some(3);
    let partition = if chromatic_3 {
        is_uniquely_3_colorable(g)
    } else {
        None
    };
    let mut report = ClassificationReport {
        n: g.n(),
        m: g.m(),
        planar,
        chromatic_3,
        uniquely_3: partition.is_some(),
        edge_critical_definitional: false,
        edge_critical_contraction: false,
        in_ue: false,
        partition,
        witnesses: Vec::new(),
    };
    if !report.uniquely_3 {
        return Ok(report);
    }
    let (def, mut wd) = edge_critical_definitional(g)?;
    let (con, wc) = edge_critical_contraction(g)?;
    let def_edges: Vec<Edge> = wd.iter().map(EdgeWitness::edge).collect();
    let con_edges: Vec<Edge> = wc.iter().map(EdgeWitness::edge).collect();
    if def_edges != con_edges {
        return Err(Error::TheoremViolation(format!(
            "criticality oracles disagree on {}: deletion witnesses {def_edges:?}, contraction witnesses {con_edges:?}",
            g.canonical_g6()
        )));
    }
    wd.extend(wc);
    wd.sort_by_key(|w| (w.edge(), matches!(w, EdgeWitness::Contraction { .. })));
    report.edge_critical_definitional = def;
    report.edge_critical_contraction = con;
    report.in_ue = planar && def;
    report.witnesses = wd;
    Ok(report)
}

/// Membership test for search loops: stops at the first failing edge and
/// does not run the contraction cross-check.
pub fn in_ue_fast(g: &Graph) -> bool {
    is_planar(g)
        && is_uniquely_3_colorable(g).is_some()
        && g.edges().into_iter().all(|(u, v)| {
            is_uniquely_3_colorable(&g.delete_edge(u, v).expect("edge present")).is_none()
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinEdgeReport {
    pub n: usize,
    pub m: usize,
    pub lower: usize,
    pub meets_lower: bool,
    pub equality: bool,
    /// Set only in the equality case, where criticality is forced.
    pub edge_critical: Option<bool>,
    pub holds: bool,
}

/// A uniquely 3-colorable graph has at least `2n - 3` edges, and exactly
/// `2n - 3` forces edge-criticality.
pub fn min_edge_check(g: &Graph) -> Result<MinEdgeReport> {
    require_unique(g)?;
    let lower = 2 * g.n() - 3;
    let equality = g.m() == lower;
    let edge_critical = if equality {
        Some(edge_critical_definitional(g)?.0)
    } else {
        None
    };
    let meets_lower = g.m() >= lower;
    Ok(MinEdgeReport {
        n: g.n(),
        m: g.m(),
        lower,
        meets_lower,
        equality,
        edge_critical,
        holds: meets_lower && edge_critical != Some(false),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    /// Vertices whose incident faces are one 4-face and otherwise 3-faces.
    pub qualifying: Vec<usize>,
    /// Qualifying vertices adjacent to the opposite corner of their 4-face
    /// (or whose 4-face is not a 4-cycle). Odd degree is possible there, as
    /// at the degree-3 vertices of DIAMOND; they are listed, not asserted.
    pub chorded: Vec<usize>,
    pub violations: Vec<usize>,
}

impl ParityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Odd degree at a qualifying vertex contracts to an odd wheel once the
/// opposite corner of the 4-face is merged with a neighbor; that needs the
/// corner to be a non-neighbor.
pub fn degree_parity_audit(g: &Graph, emb: &PlanarEmbedding) -> ParityReport {
    let fs = Faces::trace(g, emb);
    let mut report = ParityReport::default();
    for v in 0..g.n() {
        let mut incident = fs.corners(emb, v);
        incident.sort_unstable();
        incident.dedup();
        let degrees: Vec<usize> = incident.iter().map(|&f| fs.walks[f].degree()).collect();
        let fours = degrees.iter().filter(|&&d| d == 4).count();
        let threes = degrees.iter().filter(|&&d| d == 3).count();
        if fours == 1 && threes + 1 == degrees.len() {
            report.qualifying.push(v);
            let four = &fs.walks[incident[degrees.iter().position(|&d| d == 4).unwrap()]];
            let opposite = four.is_simple_cycle().then(|| {
                let b = &four.boundaries[0];
                b[(b.iter().position(|&x| x == v).unwrap() + 2) % 4]
            });
            match opposite {
                Some(u) if !g.has_edge(u, v) => {
                    if g.degree(v) % 2 == 1 {
                        report.violations.push(v);
                    }
                }
                _ => report.chorded.push(v),
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleCountReport {
    pub n: usize,
    pub triangles: usize,
    pub required: usize,
    pub holds: bool,
}

/// At least two triangles from 4 vertices on, at least three from 5 on.
pub fn triangle_count_audit(g: &Graph) -> Result<TriangleCountReport> {
    require_unique(g)?;
    if !is_planar(g) {
        return Err(Error::NotPlanar);
    }
    let required = match g.n() {
        0..=3 => 0,
        4 => 2,
        _ => 3,
    };
    let triangles = g.triangle_count();
    Ok(TriangleCountReport {
        n: g.n(),
        triangles,
        required,
        holds: triangles >= required,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideCheck {
    pub triangle: [usize; 3],
    /// The triangle plus one component of what remains after deleting it.
    pub side: Vec<usize>,
    pub in_ue: bool,
}

/// Every separating triangle splits a `U_E` graph into pieces that are
/// themselves in `U_E`.
pub fn separating_triangle_audit(g: &Graph) -> Vec<SideCheck> {
    let mut out = Vec::new();
    for t in g.separating_3_cycles() {
        let tm = t.iter().fold(0, |a, &v| a | bit(v));
        for comp in g.components_within(g.vertex_set() & !tm) {
            let side = comp | tm;
            let h = g.induced_mask(side);
            out.push(SideCheck {
                triangle: t,
                side: members(side).collect(),
                in_ue: in_ue_fast(&h),
            });
        }
    }
    out
}
