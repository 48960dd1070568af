//! The counting lemma `|V| >= |F| + 2` and its discharging ledger.
//!
//! Each face starts with charge `d(f) - 4`; every 3-face then receives
//! one half from each dependent face of degree at least 5. Charges are
//! exact rationals.

use std::collections::HashMap;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use super::cycles::{cycles_up_to, dependence_relation};
use crate::error::{Error, Result};
use crate::graph::{embed, norm, Edge, Faces, Graph};

/// Cycle enumeration count cap.
pub const MAX_CYCLES: usize = 1_000_000;

fn ratio<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCharge {
    pub face: usize,
    pub degree: usize,
    #[serde(serialize_with = "ratio")]
    pub initial: Rational64,
    #[serde(rename = "final", serialize_with = "ratio")]
    pub final_charge: Rational64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub from: usize,
    pub to: usize,
    #[serde(serialize_with = "ratio")]
    pub amount: Rational64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChargeLedger {
    pub faces: Vec<FaceCharge>,
    pub transfers: Vec<Transfer>,
    #[serde(serialize_with = "ratio")]
    pub total_initial: Rational64,
    #[serde(serialize_with = "ratio")]
    pub total_final: Rational64,
    pub conserved: bool,
    pub nonnegative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PremiseFailure {
    pub cycle: Vec<usize>,
    pub dependent_triangles: usize,
    pub allowed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma43Report {
    pub n: usize,
    pub m: usize,
    pub faces: i64,
    pub cycles: usize,
    pub premise_holds: bool,
    /// The first few offending cycles.
    pub premise_failures: Vec<PremiseFailure>,
    pub conclusion_holds: bool,
    pub three_faces: Option<usize>,
    pub ledger: Option<ChargeLedger>,
    /// Conservation always; the conclusion and nonnegative final charges
    /// whenever the premise holds (the latter with at least two 3-faces).
    pub holds: bool,
}

fn allowed(len: usize) -> usize {
    if len <= 5 {
        len - 3
    } else {
        len - 2
    }
}

pub fn lemma43_check(h: &Graph) -> Result<Lemma43Report> {
    if h.n() < 4 {
        return Err(Error::Precondition(format!(
            "need at least 4 vertices, got {}",
            h.n()
        )));
    }
    let emb = embed(h).ok_or(Error::NotPlanar)?;
    let list = cycles_up_to(h, h.n(), MAX_CYCLES);
    let dep = dependence_relation(&list)?;
    let cs = &list.cycles;

    let mut premise_failures = Vec::new();
    let mut premise_holds = true;
    for (i, c) in cs.iter().enumerate() {
        let tri = dep.dependents(i).iter().filter(|&&j| cs[j].len() == 3).count();
        if tri > allowed(c.len()) {
            premise_holds = false;
            if premise_failures.len() < 8 {
                premise_failures.push(PremiseFailure {
                    cycle: c.vertices.clone(),
                    dependent_triangles: tri,
                    allowed: allowed(c.len()),
                });
            }
        }
    }
    let faces = h.m() as i64 - h.n() as i64 + 1 + h.component_count() as i64;
    let conclusion_holds = h.n() as i64 >= faces + 2;

    let (mut three_faces, mut ledger) = (None, None);
    if h.is_biconnected() {
        let fs = Faces::trace(h, &emb);
        let by_edges: HashMap<Vec<Edge>, usize> =
            cs.iter().enumerate().map(|(i, c)| (c.edges(), i)).collect();
        let cycle_of: Vec<usize> = fs
            .walks
            .iter()
            .map(|w| {
                let mut e: Vec<Edge> = w.darts().map(|(a, b)| norm(a, b)).collect();
                e.sort_unstable();
                by_edges[&e]
            })
            .collect();
        let degree: Vec<usize> = fs.walks.iter().map(|w| w.degree()).collect();
        let half = Rational64::new(1, 2);
        let mut charge: Vec<Rational64> =
            degree.iter().map(|&d| Rational64::from(d as i64 - 4)).collect();
        let total_initial: Rational64 = charge.iter().sum();
        let mut transfers = Vec::new();
        for to in 0..fs.len() {
            if degree[to] != 3 {
                continue;
            }
            for from in 0..fs.len() {
                if degree[from] >= 5 && dep.are_dependent(cycle_of[to], cycle_of[from]) {
                    charge[from] -= half;
                    charge[to] += half;
                    transfers.push(Transfer {
                        from,
                        to,
                        amount: half,
                    });
                }
            }
        }
        let total_final: Rational64 = charge.iter().sum();
        let nonnegative = charge.iter().all(|c| *c >= Rational64::from(0));
        three_faces = Some(degree.iter().filter(|&&d| d == 3).count());
        ledger = Some(ChargeLedger {
            faces: (0..fs.len())
                .map(|f| FaceCharge {
                    face: f,
                    degree: degree[f],
                    initial: Rational64::from(degree[f] as i64 - 4),
                    final_charge: charge[f],
                })
                .collect(),
            transfers,
            total_initial,
            total_final,
            conserved: total_initial == total_final,
            nonnegative,
        });
    }

    let ledger_ok = ledger.as_ref().map_or(true, |l| {
        l.conserved && (!premise_holds || three_faces.unwrap_or(0) < 2 || l.nonnegative)
    });
    Ok(Lemma43Report {
        n: h.n(),
        m: h.m(),
        faces,
        cycles: cs.len(),
        premise_holds,
        premise_failures,
        conclusion_holds,
        three_faces,
        ledger,
        holds: ledger_ok && (!premise_holds || conclusion_holds),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    #[test]
    fn pentagon_satisfies_the_premise() {
        let r = lemma43_check(&fixture("c5").unwrap()).unwrap();
        assert!(r.premise_holds);
        assert_eq!(r.faces, 2);
        assert!(r.conclusion_holds && r.holds);
        let l = r.ledger.unwrap();
        assert!(l.conserved);
        assert_eq!(l.total_initial, Rational64::from(2));
    }

    #[test]
    fn k4_premise_rejected() {
        let r = lemma43_check(&fixture("k4").unwrap()).unwrap();
        assert!(!r.premise_holds);
        assert!(!r.conclusion_holds, "|V| = 4 < |F| + 2 = 6");
        assert!(r.holds, "no conclusion asserted");
        let l = r.ledger.unwrap();
        assert!(l.conserved && !l.nonnegative);
        assert!(l.transfers.is_empty());
        assert_eq!(l.total_initial, Rational64::from(-4));
    }

    #[test]
    fn transfers_are_halves_and_conserve() {
        // hexagon with a chord-free triangle cap: triangle 0-1-6 on edge 01
        let h = Graph::from_edges(
            7,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (1, 6)],
        )
        .unwrap();
        let r = lemma43_check(&h).unwrap();
        let l = r.ledger.as_ref().unwrap();
        assert!(l.conserved);
        assert!(!l.transfers.is_empty());
        assert!(l.transfers.iter().all(|t| t.amount == Rational64::new(1, 2)));
        let s = serde_json::to_value(l).unwrap();
        assert_eq!(s["transfers"][0]["amount"], "1/2");
    }

    #[test]
    fn preconditions() {
        assert!(lemma43_check(&fixture("k3").unwrap()).is_err());
        assert_eq!(lemma43_check(&fixture("k5").unwrap()), Err(Error::NotPlanar));
    }
}
