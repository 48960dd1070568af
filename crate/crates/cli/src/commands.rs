use serde::Serialize;
use serde_json::{json, Map, Value};
use uecrit_core::bounds::thm46_upper;
use uecrit_core::graph::graph6::MAX_GRAPH6_VERTICES;
use uecrit_core::search::{
    compute_size, compute_size_cached, hunt, size_config, Budget, ResultCache, SizeRun, SizeTable,
};
use uecrit_core::{
    audit, bound_report, build_hg, classify, embed, size_table_assert, triangle_components, Error,
    Graph, Mode,
};

use crate::args::{Cli, Command, GraphArgs, SearchArgs, TableArgs};
use crate::input;
use crate::Status;

pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::TheoremViolation(_) => Status::AssertionFailed,
            _ => Status::UsageError,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        status: Status::UsageError,
        message: message.into(),
    }
}

/// A JSON result plus an optional hand-written text rendering.
pub struct Outcome {
    pub status: Status,
    pub value: Value,
    pub table: Option<String>,
}

impl Outcome {
    fn new(ok: bool, value: Value) -> Self {
        Outcome {
            status: if ok { Status::Ok } else { Status::AssertionFailed },
            value,
            table: None,
        }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, Failure> {
    let jobs = cli.jobs;
    if jobs == Some(0) {
        return Err(usage("--jobs must be at least 1"));
    }
    match cli.command {
        Command::Check(args) => check(&args),
        Command::Audit {
            graph,
            relaxed,
            member,
        } => {
            let mode = match (relaxed, member) {
                (true, _) => Mode::Relaxed,
                (false, true) => Mode::Member,
                (false, false) => Mode::Strict,
            };
            run_audit(&graph, mode)
        }
        Command::Decompose(args) => decompose(&args),
        Command::Bound(args) => bound(&args),
        Command::Search(args) => search(&args, jobs),
        Command::SizeTable(args) => size_table(&args, jobs),
    }
}

fn load(args: &GraphArgs) -> Result<Graph, Failure> {
    let g = input::load(args).map_err(usage)?;
    if g.n() > MAX_GRAPH6_VERTICES {
        return Err(usage(format!(
            "reports carry graph6, which is limited to {MAX_GRAPH6_VERTICES} vertices (got {})",
            g.n()
        )));
    }
    Ok(g)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Puts `canonical_graph6` on a report object.
fn tagged(g: &Graph, report: Value) -> Value {
    let mut map = Map::new();
    map.insert("canonical_graph6".into(), Value::String(g.canonical_g6()));
    match report {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("report".into(), other);
        }
    }
    Value::Object(map)
}

fn budget(seconds: Option<f64>) -> Result<Budget, Failure> {
    match seconds {
        None => Ok(Budget::unlimited()),
        Some(s) if s.is_finite() && s > 0.0 => Ok(Budget::seconds(s)),
        Some(s) => Err(usage(format!("--budget-seconds must be positive, got {s}"))),
    }
}

fn check(args: &GraphArgs) -> Result<Outcome, Failure> {
    let g = load(args)?;
    let report = classify(&g)?;
    Ok(Outcome::new(true, tagged(&g, to_value(&report))))
}

fn run_audit(args: &GraphArgs, mode: Mode) -> Result<Outcome, Failure> {
    let g = load(args)?;
    let report = audit(&g, mode)?;
    let mut value = to_value(&report);
    value["digest"] = Value::String(report.digest());
    value["binding_failures"] = to_value(&report.binding_failures());
    Ok(Outcome::new(report.all_pass(), value))
}

fn decompose(args: &GraphArgs) -> Result<Outcome, Failure> {
    let g = load(args)?;
    let emb = embed(&g).ok_or(Error::NotPlanar)?;
    let d = triangle_components(&g);
    let aux = match build_hg(&g, &emb, &d) {
        Ok(aux) => to_value(&aux),
        Err(e) => json!({ "error": e.to_string() }),
    };
    // the strictest mode the input qualifies for
    let c = classify(&g)?;
    let mode = match (c.in_ue, g.separating_3_cycles().is_empty()) {
        (true, true) => Mode::Strict,
        (true, false) => Mode::Member,
        (false, _) => Mode::Relaxed,
    };
    let report = audit(&g, mode)?;
    let verdicts: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "verdict": c.verdict, "binding": c.binding }))
        .collect();
    let value = tagged(
        &g,
        json!({
            "decomposition": d,
            "aux_graph": aux,
            "audit_mode": mode,
            "audit": verdicts,
            "digest": report.digest(),
        }),
    );
    Ok(Outcome::new(report.all_pass(), value))
}

fn bound(args: &GraphArgs) -> Result<Outcome, Failure> {
    let g = load(args)?;
    let br = bound_report(&g)?;
    let formula2 = br.n < 3 || br.formula2_holds();
    let identities = !br.identities_binding || br.identities_hold();
    let margin = !(br.in_ue && br.thm46_applies()) || br.thm46_margin >= 0;
    let mut value = tagged(&g, to_value(&br));
    value["asserted"] = json!({
        "triangle_face_inequality": formula2,
        "edge_count_identities": identities,
        "edge_bound_margin": margin,
    });
    Ok(Outcome::new(formula2 && identities && margin, value))
}

fn search(args: &SearchArgs, jobs: Option<usize>) -> Result<Outcome, Failure> {
    let budget = budget(args.budget_seconds)?;
    if let Some(m) = args.edges {
        let out = hunt(args.n, m, args.strategy, budget, jobs, args.max_hits)?;
        let mut value = to_value(&out);
        value["mode"] = json!("hunt");
        value["inconclusive"] = json!(out.inconclusive());
        return Ok(Outcome::new(out.audit_failures.is_empty(), value));
    }
    let cfg = size_config(args.n)
        .with_budget(budget)
        .with_shard(args.shard)
        .with_jobs(jobs);
    let (run, resumed) = match &args.cache {
        Some(path) => compute_size_cached(&cfg, &ResultCache::new(path))?,
        None => (compute_size(&cfg)?, false),
    };
    let mut ok = run.row.sound();
    let mut value = json!({ "mode": "exhaustive", "resumed": resumed, "run": run });
    if args.shard.is_none() {
        let bounds = size_table_assert(&[run.row.entry()]);
        ok &= bounds.holds;
        value["bounds"] = to_value(&bounds);
    }
    Ok(Outcome::new(ok, value))
}

fn size_table(args: &TableArgs, jobs: Option<usize>) -> Result<Outcome, Failure> {
    if args.min_n > args.max_n {
        return Err(usage("--min-n exceeds --max-n"));
    }
    let budget = budget(args.budget_seconds)?;
    let cache = args.cache.as_ref().map(ResultCache::new);
    let mut table = SizeTable::default();
    for n in args.min_n..=args.max_n {
        let cfg = size_config(n).with_budget(budget).with_jobs(jobs);
        let run: SizeRun = match &cache {
            Some(c) => compute_size_cached(&cfg, c)?.0,
            None => compute_size(&cfg)?,
        };
        table.rows.push(run.row);
    }
    let report = table.check();
    let lines: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "lower_2n_minus_3": (r.n >= 3).then(|| 2 * r.n - 3),
                "conjecture_9n_over_4_minus_6": 9.0 * r.n as f64 / 4.0 - 6.0,
                "upper_5n_over_2_minus_6": thm46_upper(r.n),
            })
        })
        .collect();
    let ok = report.holds && table.rows.iter().all(|r| r.sound());
    let value = json!({ "rows": table.rows, "reference_lines": lines, "check": report });
    let mut out = Outcome::new(ok, value);
    out.table = Some(table.render_text());
    Ok(out)
}
