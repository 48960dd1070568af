//! Isomorph-free enumeration, size tables, witness hunts and the result
//! cache.
//!
//! Enumeration is orderly generation by canonical augmentation: a graph on
//! `k + 1` vertices is a child of its parent on `k` vertices when the new
//! vertex lies in the automorphism orbit of the canonically last vertex.
//! Each isomorphism class is produced exactly once, so disjoint subtrees can
//! be handed to different workers or shards.

mod cache;
mod enumerate;
mod hunt;
mod size;

pub use cache::{CacheContents, ResultCache};
pub use enumerate::{enumerate, Enumeration};
pub use hunt::{hunt, hunt_upper_bound, triangulations, HuntOutcome, Strategy, WitnessStats};
pub use size::{compute_size, compute_size_cached, merge_runs, size_config, SizeRow, SizeRun, SizeTable};

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::criticality::ClassificationReport;
use crate::error::{Error, Result};

/// Default depth at which the augmentation tree is cut into shards or
/// parallel work items.
pub const DEFAULT_SPLIT_DEPTH: usize = 5;

/// Largest `n` accepted for exhaustive runs.
pub const MAX_EXHAUSTIVE_N: usize = 10;

/// Structural filters on the final graphs. Each is a property every
/// uniquely 3-colorable (resp. `U_E`) planar graph has in the stated range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prune {
    /// Planar at every level of the tree (hereditary).
    pub planar: bool,
    /// Connected, from 2 vertices.
    pub connected: bool,
    /// 2-connected, from 4 vertices.
    pub biconnected: bool,
    /// Minimum degree at least 2, from 4 vertices; also prunes inner nodes
    /// whose vertices cannot reach degree 2 any more.
    pub min_degree: bool,
    /// `m >= 2n - 3`, from 3 vertices.
    pub min_edges: bool,
    /// At least 2 triangles on 4 vertices and 3 from 5 on (`U_E` only).
    pub triangles: bool,
}

impl Prune {
    pub fn all() -> Self {
        Prune {
            planar: true,
            connected: true,
            biconnected: true,
            min_degree: true,
            min_edges: true,
            triangles: true,
        }
    }

    pub fn none() -> Self {
        Prune {
            planar: false,
            connected: false,
            biconnected: false,
            min_degree: false,
            min_edges: false,
            triangles: false,
        }
    }

    /// Everything valid for all uniquely 3-colorable planar graphs.
    pub fn uniquely_3() -> Self {
        Prune {
            triangles: false,
            ..Prune::all()
        }
    }
}

impl Default for Prune {
    fn default() -> Self {
        Prune::all()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub seconds: Option<f64>,
    /// Cap on generated tree nodes (or carving candidates).
    pub nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn seconds(s: f64) -> Self {
        Budget {
            seconds: Some(s),
            nodes: None,
        }
    }
}

/// Shared budget accounting for one run.
pub(crate) struct Meter {
    deadline: Option<Instant>,
    max_nodes: Option<u64>,
    nodes: AtomicU64,
    exhausted: AtomicBool,
    stopped: AtomicBool,
}

impl Meter {
    pub fn new(budget: &Budget) -> Self {
        Meter {
            deadline: budget
                .seconds
                .map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0))),
            max_nodes: budget.nodes,
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
            stopped: AtomicBool::new(false),
        }
    }

    /// Counts one unit of work; `false` once the run must wind down.
    pub fn tick(&self) -> bool {
        if self.halted() {
            return false;
        }
        let k = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.max_nodes.is_some_and(|cap| k > cap)
            || self.deadline.is_some_and(|d| Instant::now() >= d)
        {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    /// Ends the run early without it counting as budget exhaustion.
    pub fn stop(&self) {
        self.stopped.store(true, Ordering::Relaxed);
    }

    pub fn halted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed) || self.stopped.load(Ordering::Relaxed)
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    pub fn stopped(&self) -> bool {
        self.stopped.load(Ordering::Relaxed)
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}

/// Cut the augmentation tree at `depth` vertices; keep the nodes whose
/// position (in canonical order) is `index` modulo `total`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShardSpec {
    pub depth: usize,
    pub index: usize,
    pub total: usize,
}

impl ShardSpec {
    pub fn new(depth: usize, index: usize, total: usize) -> Result<Self> {
        if total == 0 || index >= total {
            return Err(Error::Shard(format!("index {index} not below total {total}")));
        }
        if depth == 0 {
            return Err(Error::Shard("depth must be positive".into()));
        }
        Ok(ShardSpec {
            depth,
            index,
            total,
        })
    }

    /// The same shard cut no deeper than `n`.
    pub fn clamped(self, n: usize) -> Self {
        ShardSpec {
            depth: self.depth.min(n.max(1)),
            ..self
        }
    }
}

impl fmt::Display for ShardSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}:{}/{}", self.depth, self.index, self.total)
    }
}

/// Accepts `i/t` (default depth) or `d<depth>:i/t`.
impl FromStr for ShardSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Shard(format!("expected i/t or d<depth>:i/t, got {s:?}"));
        let (depth, rest) = match s.split_once(':') {
            Some((d, rest)) => {
                let d = d.strip_prefix('d').ok_or_else(bad)?;
                (d.parse().map_err(|_| bad())?, rest)
            }
            None => (DEFAULT_SPLIT_DEPTH, s),
        };
        let (i, t) = rest.split_once('/').ok_or_else(bad)?;
        ShardSpec::new(
            depth,
            i.trim().parse().map_err(|_| bad())?,
            t.trim().parse().map_err(|_| bad())?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n: usize,
    pub m_min: usize,
    pub m_max: usize,
    pub prune: Prune,
    pub budget: Budget,
    pub shard: Option<ShardSpec>,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl SearchConfig {
    /// Every edge count that a planar graph on `n` vertices can have.
    pub fn new(n: usize) -> Self {
        SearchConfig {
            n,
            m_min: 0,
            m_max: max_planar_edges(n),
            prune: Prune::all(),
            budget: Budget::unlimited(),
            shard: None,
            jobs: None,
        }
    }

    pub fn with_edges(mut self, m_min: usize, m_max: usize) -> Self {
        self.m_min = m_min;
        self.m_max = m_max;
        self
    }

    pub fn with_prune(mut self, prune: Prune) -> Self {
        self.prune = prune;
        self
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_shard(mut self, shard: Option<ShardSpec>) -> Self {
        self.shard = shard;
        self
    }

    pub fn with_jobs(mut self, jobs: Option<usize>) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > crate::graph::MAX_VERTICES {
            return Err(Error::Precondition(format!("n = {} out of range", self.n)));
        }
        if self.m_min > self.m_max {
            return Err(Error::Precondition(format!(
                "empty edge range {}..={}",
                self.m_min, self.m_max
            )));
        }
        if self.prune.planar && self.m_max > max_planar_edges(self.n) {
            return Err(Error::Precondition(format!(
                "m = {} exceeds the planar maximum {} for n = {}",
                self.m_max,
                max_planar_edges(self.n),
                self.n
            )));
        }
        if self.jobs == Some(0) {
            return Err(Error::Precondition("jobs must be positive".into()));
        }
        Ok(())
    }

    /// Runs `f` inside a pool of `jobs` threads when requested.
    pub(crate) fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        match self.jobs {
            None => Ok(f()),
            Some(j) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build()
                    .map_err(|e| Error::Precondition(e.to_string()))?;
                Ok(pool.install(f))
            }
        }
    }
}

/// `3n - 6` from 3 vertices, all pairs below.
pub fn max_planar_edges(n: usize) -> usize {
    if n < 3 {
        n * n.saturating_sub(1) / 2
    } else {
        3 * n - 6
    }
}

/// One `U_E` witness, as stored in the cache.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ResultRecord {
    pub canonical_g6: String,
    pub n: usize,
    pub m: usize,
    /// Six characters: planar, 3-chromatic, uniquely 3-colorable, critical
    /// (definitional), critical (contraction), in `U_E`; `-` when false.
    pub flags: String,
    pub audit_digest: String,
    /// `all` for unsharded runs.
    pub shard: String,
}

pub fn classification_flags(c: &ClassificationReport) -> String {
    [
        (c.planar, 'P'),
        (c.chromatic_3, 'C'),
        (c.uniquely_3, 'U'),
        (c.edge_critical_definitional, 'D'),
        (c.edge_critical_contraction, 'K'),
        (c.in_ue, 'E'),
    ]
    .iter()
    .map(|&(on, ch)| if on { ch } else { '-' })
    .collect()
}

pub(crate) fn shard_label(shard: Option<ShardSpec>) -> String {
    shard.map_or_else(|| "all".to_string(), |s| s.to_string())
}

impl ResultRecord {
    pub fn to_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.canonical_g6, self.n, self.m, self.flags, self.audit_digest, self.shard
        )
    }

    pub fn from_line(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 6 {
            return Err(Error::Cache(format!(
                "expected 6 tab-separated fields, got {}",
                fields.len()
            )));
        }
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Cache(format!("not a number: {s:?}")))
        };
        if fields[3].len() != 6 {
            return Err(Error::Cache(format!("bad flags {:?}", fields[3])));
        }
        Ok(ResultRecord {
            canonical_g6: fields[0].to_string(),
            n: num(fields[1])?,
            m: num(fields[2])?,
            flags: fields[3].to_string(),
            audit_digest: fields[4].to_string(),
            shard: fields[5].to_string(),
        })
    }

    /// Everything except the shard that found it.
    pub fn key(&self) -> (&str, usize, usize, &str, &str) {
        (
            &self.canonical_g6,
            self.n,
            self.m,
            &self.flags,
            &self.audit_digest,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shard_specs_parse() {
        assert_eq!("1/4".parse::<ShardSpec>().unwrap(), ShardSpec::new(5, 1, 4).unwrap());
        assert_eq!("d3:0/2".parse::<ShardSpec>().unwrap().to_string(), "d3:0/2");
        for bad in ["4/4", "1/0", "x", "d:1/2", "d0:0/1", "1-4"] {
            assert!(bad.parse::<ShardSpec>().is_err(), "{bad}");
        }
        assert_eq!(ShardSpec::new(5, 0, 2).unwrap().clamped(3).depth, 3);
    }

    #[test]
    fn record_lines_round_trip() {
        let r = ResultRecord {
            canonical_g6: "Cz".into(),
            n: 4,
            m: 5,
            flags: "PCUDKE".into(),
            audit_digest: "ok/12".into(),
            shard: "d3:1/4".into(),
        };
        assert_eq!(ResultRecord::from_line(&r.to_line()).unwrap(), r);
        assert!(ResultRecord::from_line("Cz\t4\t5").is_err());
        assert!(ResultRecord::from_line("Cz\t4\tfive\tPCUDKE\tok/1\tall").is_err());
    }

    #[test]
    fn meter_counts_nodes() {
        let m = Meter::new(&Budget {
            seconds: None,
            nodes: Some(3),
        });
        assert!(m.tick() && m.tick() && m.tick());
        assert!(!m.tick());
        assert!(m.exhausted() && !m.stopped());
        let m = Meter::new(&Budget::unlimited());
        m.stop();
        assert!(!m.tick() && !m.exhausted());
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::new(6).validate().is_ok());
        assert!(SearchConfig::new(6).with_edges(5, 13).validate().is_err());
        assert!(SearchConfig::new(6).with_edges(9, 8).validate().is_err());
        assert!(SearchConfig::new(0).validate().is_err());
        assert_eq!(max_planar_edges(2), 1);
        assert_eq!(max_planar_edges(6), 12);
    }
}
