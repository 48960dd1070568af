//! Long-running searches at n = 10 and beyond. Run with
//! `cargo test -p uecrit-core --test extremal -- --ignored`.

use uecrit_core::search::{compute_size, hunt, size_config, Budget, Strategy};
use uecrit_core::{audit, bound_report, parse_graph6, Mode};

/// The only 10-vertex, 18-edge member of `U_E`, found by both strategies.
const WITNESS_10: &str = "I?U_hVQwW";

#[test]
fn carving_finds_the_ten_vertex_witness() {
    let out = hunt(10, 18, Strategy::TriangulationCarving, Budget::seconds(3600.0), None, Some(1))
        .unwrap();
    assert_eq!(out.records.len(), 1);
    assert_eq!(out.records[0].canonical_g6, WITNESS_10);
    assert!(out.audit_failures.is_empty());
    let g = parse_graph6(WITNESS_10).unwrap();
    let a = audit(&g, Mode::Strict).unwrap();
    assert!(a.all_pass(), "{:?}", a.binding_failures());
    let b = bound_report(&g).unwrap();
    assert_eq!(b.thm46_margin, 1);
    assert!(out.stats[0].formula2_equality == b.formula2_equality);
}

#[test]
fn carving_finds_a_twelve_vertex_witness() {
    let out = hunt(12, 23, Strategy::TriangulationCarving, Budget::seconds(3600.0), None, Some(1))
        .unwrap();
    assert_eq!(out.records.len(), 1, "{out:?}");
    let g = parse_graph6(&out.records[0].canonical_g6).unwrap();
    assert_eq!((g.n(), g.m()), (12, 23));
    let a = audit(&g, Mode::Member).unwrap();
    assert!(a.classification.in_ue);
    assert!(a.all_pass(), "{:?}", a.binding_failures());
}

#[test]
#[ignore = "exhaustive n = 10, several minutes"]
fn size_ten_is_eighteen() {
    let run = compute_size(&size_config(10)).unwrap();
    assert!(run.row.complete && run.row.sound(), "{:?}", run.row.audit_failures);
    assert_eq!(run.row.size, Some(18));
    assert_eq!(run.row.witnesses, vec![WITNESS_10.to_string()]);
    assert_eq!(run.row.ue_by_m.get(&18), Some(&1));
}

#[test]
#[ignore = "full carving sweep at n = 10, about two minutes"]
fn carving_sweep_agrees_with_exhaustive_search() {
    let out = hunt(10, 18, Strategy::TriangulationCarving, Budget::unlimited(), None, None).unwrap();
    assert!(out.complete);
    let found: Vec<&str> = out.records.iter().map(|r| r.canonical_g6.as_str()).collect();
    assert_eq!(found, [WITNESS_10]);
}
