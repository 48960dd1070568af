//! The full battery of checks on one instance.
//!
//! A check is binding when the host graph satisfies its hypotheses: the
//! membership-only checks need `G` in `U_E`, the decomposition checks also
//! need no separating 3-cycle. Non-binding checks still run and report.

use serde::Serialize;
use serde_json::Value;

use crate::bounds::bound_report_with;
use crate::coloring::classes_union_connected;
use crate::criticality::{
    classify, degree_parity_audit, min_edge_check, separating_triangle_audit,
    triangle_count_audit, ClassificationReport,
};
use crate::error::{Error, Result};
use crate::graph::{embed, Graph};
use crate::structure::{
    build_hg, cor34_audit, cor35_audit, cor45_audit, lemma43_check, thm36_audit, thm41_audit,
    thm42_audit, triangle_components,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Refuses inputs outside `U_E` or with a separating 3-cycle.
    Strict,
    /// Requires `U_E`; decomposition checks become non-binding when a
    /// separating 3-cycle exists.
    Member,
    /// Runs everything on any planar input; nothing is binding.
    Relaxed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Hypotheses of the check are structurally absent (e.g. `k < 4`).
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub verdict: Verdict,
    pub binding: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub canonical_graph6: String,
    pub mode: Mode,
    pub classification: ClassificationReport,
    pub separating_3_cycles: Vec<[usize; 3]>,
    pub checks: Vec<Check>,
}

impl AuditReport {
    pub fn binding_failures(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| c.binding && c.verdict == Verdict::Fail)
            .map(|c| c.name)
            .collect()
    }

    pub fn all_pass(&self) -> bool {
        self.binding_failures().is_empty()
    }

    /// `ok/<binding passes>` or `fail/<name,name,...>`.
    pub fn digest(&self) -> String {
        let failures = self.binding_failures();
        if failures.is_empty() {
            let passed = self
                .checks
                .iter()
                .filter(|c| c.binding && c.verdict == Verdict::Pass)
                .count();
            format!("ok/{passed}")
        } else {
            format!("fail/{}", failures.join(","))
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Names of every check, in report order.
pub const CHECK_NAMES: &[&str] = &[
    "oracle_agreement",
    "two_class_connectivity",
    "min_edges",
    "triangle_count",
    "degree_parity",
    "separating_sides",
    "tip_conditions",
    "outerplanar_components",
    "aux_graph",
    "aux_face_count",
    "face_set_unions",
    "component_intersections",
    "aux_face_bound",
    "aux_dependent_cycles",
    "edge_count_identities",
    "triangle_face_inequality",
    "edge_bound_margin",
];

struct Battery {
    checks: Vec<Check>,
    member: bool,
    domain: bool,
}

impl Battery {
    fn push(&mut self, name: &'static str, holds: Option<bool>, needs_domain: bool, detail: Value) {
        let verdict = match holds {
            None => Verdict::NotApplicable,
            Some(true) => Verdict::Pass,
            Some(false) => Verdict::Fail,
        };
        let binding = verdict != Verdict::NotApplicable
            && if needs_domain { self.domain } else { self.member };
        self.checks.push(Check {
            name,
            verdict,
            binding,
            detail,
        });
    }

    fn push_result<T: Serialize>(
        &mut self,
        name: &'static str,
        r: Result<T>,
        holds: impl Fn(&T) -> bool,
        needs_domain: bool,
    ) {
        match r {
            Ok(v) => {
                let h = holds(&v);
                self.push(name, Some(h), needs_domain, json(&v));
            }
            Err(e @ (Error::TheoremViolation(_) | Error::TruncatedCycles(_))) => {
                self.push(name, Some(false), needs_domain, Value::String(e.to_string()))
            }
            Err(e) => self.push(name, None, needs_domain, Value::String(e.to_string())),
        }
    }
}

fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

pub fn audit(g: &Graph, mode: Mode) -> Result<AuditReport> {
    let emb = embed(g).ok_or(Error::NotPlanar)?;
    let classification = match classify(g) {
        Ok(c) => c,
        // the two criticality oracles disagree: report it as a failed check
        Err(Error::TheoremViolation(msg)) => {
            return Ok(AuditReport {
                canonical_graph6: g.canonical_g6(),
                mode,
                classification: ClassificationReport::unclassified(g),
                separating_3_cycles: g.separating_3_cycles(),
                checks: vec![Check {
                    name: "oracle_agreement",
                    verdict: Verdict::Fail,
                    binding: true,
                    detail: Value::String(msg),
                }],
            })
        }
        Err(e) => return Err(e),
    };
    let separating = g.separating_3_cycles();
    let in_ue = classification.in_ue;
    match mode {
        Mode::Strict if !in_ue => {
            return Err(Error::Precondition("graph is not in U_E".into()));
        }
        Mode::Strict if !separating.is_empty() => {
            return Err(Error::Precondition(format!(
                "graph has separating 3-cycles {separating:?}"
            )));
        }
        Mode::Member if !in_ue => {
            return Err(Error::Precondition("graph is not in U_E".into()));
        }
        _ => {}
    }
    let member = in_ue && mode != Mode::Relaxed;
    let mut b = Battery {
        checks: Vec::new(),
        member,
        domain: member && separating.is_empty(),
    };

    b.push("oracle_agreement", Some(true), false, Value::Null);
    match &classification.partition {
        Some(p) => {
            let r = classes_union_connected(g, p);
            b.push_result("two_class_connectivity", r, |&c| c, false);
        }
        None => b.push("two_class_connectivity", None, false, Value::Null),
    }
    if classification.uniquely_3 {
        b.push_result("min_edges", min_edge_check(g), |r| r.holds, false);
        b.push_result("triangle_count", triangle_count_audit(g), |r| r.holds, false);
    } else {
        b.push("min_edges", None, false, Value::Null);
        b.push("triangle_count", None, false, Value::Null);
    }
    let parity = degree_parity_audit(g, &emb);
    b.push("degree_parity", Some(parity.holds()), false, json(&parity));
    let sides = separating_triangle_audit(g);
    let sides_hold = (!sides.is_empty()).then(|| sides.iter().all(|s| s.in_ue));
    b.push("separating_sides", sides_hold, false, json(&sides));

    let d = triangle_components(g);
    let c34 = cor34_audit(g, &d);
    b.push("tip_conditions", Some(c34.holds), false, json(&c34));
    let c35 = cor35_audit(g, &d);
    b.push("outerplanar_components", Some(c35.holds), true, json(&c35));

    match build_hg(g, &emb, &d) {
        Ok(aux) => {
            b.push("aux_graph", Some(true), true, json(&aux));
            let r41 = thm41_audit(&aux, &d, &emb);
            b.push("aux_face_count", Some(r41.holds), true, json(&r41));
            let r42 = thm42_audit(&aux, &d);
            b.push("face_set_unions", Some(r42.holds), true, json(&r42));
            let r36 = thm36_audit(g, &d, &r42.certificates);
            b.push("component_intersections", Some(r36.holds), true, json(&r36));
            if d.k >= 4 {
                b.push_result("aux_face_bound", cor45_audit(&aux, &d), |r| r.holds, true);
                b.push_result("aux_dependent_cycles", lemma43_check(&aux.graph), |r| r.holds, true);
            } else {
                b.push("aux_face_bound", None, true, Value::Null);
                b.push("aux_dependent_cycles", None, true, Value::Null);
            }
        }
        Err(e) => {
            let holds = match e {
                Error::TheoremViolation(_) => Some(false),
                _ => None,
            };
            b.push("aux_graph", holds, true, Value::String(e.to_string()));
            for name in [
                "aux_face_count",
                "face_set_unions",
                "component_intersections",
                "aux_face_bound",
                "aux_dependent_cycles",
            ] {
                b.push(name, None, true, Value::Null);
            }
        }
    }

    match bound_report_with(g, &emb, &d, in_ue) {
        Ok(br) => {
            let n4 = (g.n() >= 4).then_some(br.identities_hold());
            b.push("edge_count_identities", n4, true, json(&br.identities));
            let f2 = (g.n() >= 3).then_some(br.formula2_holds());
            b.push("triangle_face_inequality", f2, false, json(&br.formula2_slack));
            let margin = (g.n() >= 6).then_some(br.thm46_margin >= 0);
            b.push("edge_bound_margin", margin, false, json(&br.thm46_margin));
        }
        Err(e) => {
            for name in [
                "edge_count_identities",
                "triangle_face_inequality",
                "edge_bound_margin",
            ] {
                b.push(name, None, false, Value::String(e.to_string()));
            }
        }
    }

    debug_assert_eq!(
        b.checks.iter().map(|c| c.name).collect::<Vec<_>>(),
        CHECK_NAMES
    );
    Ok(AuditReport {
        canonical_graph6: g.canonical_g6(),
        mode,
        classification,
        separating_3_cycles: separating,
        checks: b.checks,
    })
}
