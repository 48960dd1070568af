use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::enumerate_with;
use super::{
    classification_flags, max_planar_edges, shard_label, Meter, Prune, ResultCache, ResultRecord,
    SearchConfig, ShardSpec, MAX_EXHAUSTIVE_N,
};
use crate::audit::{audit, Mode};
use crate::bounds::{size_table_assert, thm46_upper, SizeEntry, SizeTableReport};
use crate::coloring::is_uniquely_3_colorable;
use crate::criticality::classify;
use crate::error::{Error, Result};
use crate::graph::graph6::emit_graph6;
use crate::graph::Graph;

/// `size(n)` with its witnesses and the statistics of the pool behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeRow {
    pub n: usize,
    /// Largest `m` over `U_E` graphs; `None` when there are none.
    pub size: Option<usize>,
    /// Canonical graph6 of every `U_E` graph with `m = size`.
    pub witnesses: Vec<String>,
    pub ue_count: usize,
    pub ue_by_m: BTreeMap<usize, usize>,
    /// Uniquely 3-colorable planar graphs in the pruned pool.
    pub uniquely_3_count: usize,
    /// Pool members on which both criticality oracles were run and agreed.
    pub oracle_agreements: usize,
    pub oracle_disagreements: Vec<String>,
    /// `graph6:digest` of every witness with a binding audit failure.
    pub audit_failures: Vec<String>,
    pub complete: bool,
}

impl SizeRow {
    pub fn entry(&self) -> SizeEntry {
        SizeEntry {
            n: self.n,
            size: self.size,
            complete: self.complete,
        }
    }

    /// Oracles agree and every witness passed its audit.
    pub fn sound(&self) -> bool {
        self.oracle_disagreements.is_empty() && self.audit_failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeRun {
    pub row: SizeRow,
    /// Sorted by canonical graph6.
    pub records: Vec<ResultRecord>,
    pub shard: Option<ShardSpec>,
    pub nodes: u64,
}

/// Pool statistics that are summed over shards.
#[derive(Clone, Copy, Default)]
struct Counts {
    uniquely_3: usize,
    agreements: usize,
}

fn assemble(
    n: usize,
    records: Vec<ResultRecord>,
    counts: Counts,
    disagreements: BTreeSet<String>,
    complete: bool,
) -> (SizeRow, Vec<ResultRecord>) {
    let mut by_key: BTreeMap<String, ResultRecord> = BTreeMap::new();
    for r in records {
        by_key.entry(r.canonical_g6.clone()).or_insert(r);
    }
    let records: Vec<ResultRecord> = by_key.into_values().collect();
    let mut ue_by_m = BTreeMap::new();
    for r in &records {
        *ue_by_m.entry(r.m).or_insert(0) += 1;
    }
    let size = ue_by_m.keys().next_back().copied();
    let witnesses = records
        .iter()
        .filter(|r| Some(r.m) == size)
        .map(|r| r.canonical_g6.clone())
        .collect();
    let audit_failures = records
        .iter()
        .filter(|r| !r.audit_digest.starts_with("ok/"))
        .map(|r| format!("{}:{}", r.canonical_g6, r.audit_digest))
        .collect();
    let row = SizeRow {
        n,
        size,
        witnesses,
        ue_count: records.len(),
        ue_by_m,
        uniquely_3_count: counts.uniquely_3,
        oracle_agreements: counts.agreements,
        oracle_disagreements: disagreements.into_iter().collect(),
        audit_failures,
        complete,
    };
    (row, records)
}

enum Outcome {
    Member(ResultRecord),
    Agree,
    Disagree(String),
}

fn examine(g: &Graph, shard: &str) -> Result<Outcome> {
    let g6 = emit_graph6(g);
    let c = match classify(g) {
        Ok(c) => c,
        Err(Error::TheoremViolation(_)) => return Ok(Outcome::Disagree(g6)),
        Err(e) => return Err(e),
    };
    if !c.in_ue {
        return Ok(Outcome::Agree);
    }
    let report = audit(g, Mode::Member)?;
    Ok(Outcome::Member(ResultRecord {
        canonical_g6: g6,
        n: g.n(),
        m: g.m(),
        flags: classification_flags(&c),
        audit_digest: report.digest(),
        shard: shard.to_string(),
    }))
}

/// Exhaustive `size(n)`. The pool is every uniquely 3-colorable planar
/// graph passing `cfg.prune` in the edge range; both criticality oracles
/// run on each, and every `U_E` member is audited.
///
/// The default edge range `[2n - 3, 3n - 6]` loses nothing: uniquely
/// 3-colorable graphs have at least `2n - 3` edges.
pub fn compute_size(cfg: &SearchConfig) -> Result<SizeRun> {
    if cfg.n > MAX_EXHAUSTIVE_N {
        return Err(Error::Precondition(format!(
            "exhaustive runs stop at n = {MAX_EXHAUSTIVE_N}, got {}",
            cfg.n
        )));
    }
    let meter = Meter::new(&cfg.budget);
    let u3 = |g: &Graph| is_uniquely_3_colorable(g).is_some();
    let e = enumerate_with(cfg, &meter, &u3)?;
    let label = shard_label(e.shard);
    let outcomes: Vec<Outcome> = cfg.install(|| {
        e.graphs
            .par_iter()
            .map(|g| examine(g, &label))
            .collect::<Result<Vec<_>>>()
    })??;
    let mut counts = Counts {
        uniquely_3: e.graphs.len(),
        agreements: 0,
    };
    let mut records = Vec::new();
    let mut disagreements = BTreeSet::new();
    for o in outcomes {
        match o {
            Outcome::Member(r) => {
                counts.agreements += 1;
                records.push(r);
            }
            Outcome::Agree => counts.agreements += 1,
            Outcome::Disagree(g6) => {
                disagreements.insert(g6);
            }
        }
    }
    let (row, records) = assemble(cfg.n, records, counts, disagreements, e.complete);
    Ok(SizeRun {
        row,
        records,
        shard: e.shard,
        nodes: e.nodes,
    })
}

/// The default size-table configuration for `n`.
pub fn size_config(n: usize) -> SearchConfig {
    let m_min = if n >= 3 { 2 * n - 3 } else { 0 };
    SearchConfig::new(n)
        .with_edges(m_min, max_planar_edges(n))
        .with_prune(Prune::uniquely_3())
}

/// Unions shard runs of one `n`. Runs must come from the same cut (depth
/// and total); repeats of an index are merged idempotently.
pub fn merge_runs(runs: &[SizeRun]) -> Result<SizeRun> {
    let first = runs
        .first()
        .ok_or_else(|| Error::Shard("nothing to merge".into()))?;
    let n = first.row.n;
    let cut = first.shard.map(|s| (s.depth, s.total));
    let mut by_index: BTreeMap<usize, &SizeRun> = BTreeMap::new();
    for r in runs {
        if r.row.n != n {
            return Err(Error::Shard(format!("runs for n = {n} and n = {}", r.row.n)));
        }
        let this = r.shard.map(|s| (s.depth, s.total));
        if this != cut {
            return Err(Error::Shard(format!(
                "overlapping shard specs {} and {}",
                shard_label(first.shard),
                shard_label(r.shard)
            )));
        }
        let index = r.shard.map_or(0, |s| s.index);
        match by_index.get(&index) {
            Some(prev) if prev.row != r.row => {
                return Err(Error::Shard(format!(
                    "two different results for shard {}",
                    shard_label(r.shard)
                )));
            }
            _ => {
                by_index.insert(index, r);
            }
        }
    }
    let total = cut.map_or(1, |(_, t)| t);
    let mut counts = Counts::default();
    let mut records = Vec::new();
    let mut disagreements = BTreeSet::new();
    let mut complete = by_index.len() == total;
    let mut nodes = 0;
    for r in by_index.values() {
        counts.uniquely_3 += r.row.uniquely_3_count;
        counts.agreements += r.row.oracle_agreements;
        records.extend(r.records.iter().cloned());
        disagreements.extend(r.row.oracle_disagreements.iter().cloned());
        complete &= r.row.complete;
        nodes += r.nodes;
    }
    let (row, records) = assemble(n, records, counts, disagreements, complete);
    Ok(SizeRun {
        row,
        records,
        shard: if total == 1 { first.shard } else { None },
        nodes,
    })
}

fn run_key(cfg: &SearchConfig, shard: Option<ShardSpec>) -> String {
    format!(
        "size n={} m={}..={} prune={} shard={}",
        cfg.n,
        cfg.m_min,
        cfg.m_max,
        serde_json::to_string(&cfg.prune).expect("prune serializes"),
        shard_label(shard)
    )
}

/// `compute_size` through a result cache: a completed run is read back
/// instead of recomputed, and a fresh run appends its new records and a
/// completion marker. The flag is `true` when the run was resumed.
pub fn compute_size_cached(cfg: &SearchConfig, cache: &ResultCache) -> Result<(SizeRun, bool)> {
    let shard = cfg.shard.map(|s| s.clamped(cfg.n));
    let key = run_key(cfg, shard);
    let contents = cache.load()?;
    if let Some(json) = contents.completed.get(&key) {
        let row: SizeRow =
            serde_json::from_str(json).map_err(|e| Error::Cache(format!("bad row: {e}")))?;
        let label = shard_label(shard);
        let records: Vec<ResultRecord> = contents
            .records
            .into_iter()
            .filter(|r| r.n == cfg.n && r.shard == label)
            .collect();
        return Ok((
            SizeRun {
                row,
                records,
                shard,
                nodes: 0,
            },
            true,
        ));
    }
    let run = compute_size(cfg)?;
    cache.append(&run.records)?;
    if run.row.complete {
        cache.mark_complete(
            &key,
            &serde_json::to_string(&run.row).expect("rows serialize"),
        )?;
    }
    Ok((run, false))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeTable {
    pub rows: Vec<SizeRow>,
}

impl SizeTable {
    pub fn entries(&self) -> Vec<SizeEntry> {
        self.rows.iter().map(SizeRow::entry).collect()
    }

    pub fn check(&self) -> SizeTableReport {
        size_table_assert(&self.entries())
    }

    /// Aligned text with the `2n - 3`, `9n/4 - 6` and `5n/2 - 6` lines.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>3}  {:>5}  {:>6}  {:>7}  {:>7}  {:>6}  {:>8}  complete",
            "n", "size", "2n-3", "9n/4-6", "5n/2-6", "#U_E", "#unique"
        );
        for r in &self.rows {
            let size = r.size.map_or("none".to_string(), |s| s.to_string());
            let lower = if r.n >= 3 {
                (2 * r.n - 3).to_string()
            } else {
                "-".into()
            };
            let _ = writeln!(
                out,
                "{:>3}  {:>5}  {:>6}  {:>7.2}  {:>7}  {:>6}  {:>8}  {}",
                r.n,
                size,
                lower,
                9.0 * r.n as f64 / 4.0 - 6.0,
                thm46_upper(r.n),
                r.ue_count,
                r.uniquely_3_count,
                if r.complete { "yes" } else { "no" }
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criticality::in_ue_fast;

    fn run(n: usize) -> SizeRun {
        compute_size(&size_config(n)).unwrap()
    }

    /// Oracle: every labelled graph on `n` vertices, tested directly.
    fn brute_size(n: usize) -> Option<usize> {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let mut best = None;
        for mask in 0u32..(1 << pairs.len()) {
            let m = mask.count_ones() as usize;
            if best.is_some_and(|b| m <= b) {
                continue;
            }
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(e, _)| mask >> e & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            if in_ue_fast(&Graph::from_edges(n, &edges).unwrap()) {
                best = Some(m);
            }
        }
        best
    }

    #[test]
    fn small_rows() {
        let expect = [(3, Some(3)), (4, Some(5)), (5, Some(7)), (6, Some(9))];
        for (n, size) in expect {
            let r = run(n);
            assert!(r.row.complete && r.row.sound(), "{:?}", r.row);
            assert_eq!(r.row.size, size, "n = {n}");
            assert_eq!(brute_size(n), size, "oracle n = {n}");
        }
        assert_eq!(run(2).row.size, None);
        let d = crate::fixtures::fixture("diamond").unwrap().canonical_g6();
        assert_eq!(run(4).row.witnesses, vec![d]);
        let fan5 = crate::fixtures::fixture("fan5").unwrap().canonical_g6();
        assert!(run(5).row.witnesses.contains(&fan5));
        let fan6 = crate::fixtures::fixture("fan6").unwrap().canonical_g6();
        assert!(run(6).row.witnesses.contains(&fan6));
    }

    #[test]
    fn shards_merge_in_any_order() {
        let whole = run(6);
        let parts: Vec<SizeRun> = (0..4)
            .map(|i| {
                let cfg = size_config(6).with_shard(Some(ShardSpec::new(4, i, 4).unwrap()));
                compute_size(&cfg).unwrap()
            })
            .collect();
        let forward = merge_runs(&parts).unwrap();
        let mut reversed = parts.clone();
        reversed.reverse();
        reversed.push(parts[1].clone());
        let backward = merge_runs(&reversed).unwrap();
        assert_eq!(forward.row, whole.row);
        assert_eq!(backward.row, whole.row);
        let keys = |r: &SizeRun| -> Vec<String> {
            r.records
                .iter()
                .map(|x| format!("{:?}", x.key()))
                .collect()
        };
        assert_eq!(keys(&forward), keys(&whole));
        assert!(merge_runs(&parts[..3]).map(|r| !r.row.complete).unwrap());
    }

    #[test]
    fn overlapping_specs_are_rejected() {
        let a = compute_size(&size_config(5).with_shard(Some(ShardSpec::new(3, 0, 2).unwrap()))).unwrap();
        let b = compute_size(&size_config(5).with_shard(Some(ShardSpec::new(4, 1, 2).unwrap()))).unwrap();
        assert!(matches!(merge_runs(&[a.clone(), b]), Err(Error::Shard(_))));
        assert!(matches!(merge_runs(&[a, run(5)]), Err(Error::Shard(_))));
        assert!(merge_runs(&[]).is_err());
    }

    #[test]
    fn cached_runs_resume() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::new(dir.path().join("cache.tsv"));
        let cfg = size_config(5).with_shard(Some(ShardSpec::new(3, 1, 2).unwrap()));
        let (first, resumed) = compute_size_cached(&cfg, &cache).unwrap();
        assert!(!resumed);
        let before = std::fs::read_to_string(dir.path().join("cache.tsv")).unwrap();
        let (second, resumed) = compute_size_cached(&cfg, &cache).unwrap();
        assert!(resumed);
        assert_eq!(first.row, second.row);
        assert_eq!(first.records, second.records);
        let after = std::fs::read_to_string(dir.path().join("cache.tsv")).unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn table_rendering() {
        let t = SizeTable {
            rows: vec![run(4).row, run(5).row],
        };
        let text = t.render_text();
        assert!(text.lines().nth(1).unwrap().contains("  5  "));
        assert!(t.check().holds);
        assert_eq!(text.lines().count(), 3);
    }
}
