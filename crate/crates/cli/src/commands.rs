//! Subcommand implementations.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use cayley_comm_core::bounds::{
    all_but_farthest_lower_bound, hypercube_optimal_time, hypercube_optimal_times,
    oneway_broadcast_lower_bound, twoway_broadcast_lower_bound, HypercubeTask,
};
use cayley_comm_core::exchange::{
    build_exchange, build_exchange_far, build_universal_exchange, exchange_plan, far_plan,
};
use cayley_comm_core::fixtures::builtin;
use cayley_comm_core::global_sum::{build_sum_plan, norm, run_sum_plan};
use cayley_comm_core::hypercube::{broadcast_template, build_broadcast, Timing};
use cayley_comm_core::regular_order::{
    broadcast_from_regular_order, hypercube_regular_order, search_broadcast_schedule,
    template_tree, DEFAULT_SEARCH_BUDGET,
};
use cayley_comm_core::sim::{simulate, simulate_accumulation, Goal, SimError};
use cayley_comm_core::{
    build_cayley_graph, reverse_schedule, schedule_time, validate_schedule, CayleyGraph,
    CommSchedule, GroupSpec, TaskKind, ValidationReport, Vertex, WireModel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::*;
use crate::dot::{graph_to_dot, schedule_to_dot};
use crate::formats::{
    schedule_from_json, schedule_to_json, GraphFile, GroupFile, RegularOrderFile, SimReportFile,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    /// A schedule or result failed its checks; details already printed.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) | CliError::Io { .. } => 2,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes to `path`, or to `stdout` when it is absent or `-`.
fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(p) if p != Path::new("-") => write_file(p, text),
        _ => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

/// A builtin name or a JSON group file, with a short name for file stems.
pub fn load_graph(spec: &str) -> Result<(CayleyGraph, String), CliError> {
    let path = Path::new(spec);
    if spec.ends_with(".json") || path.is_file() {
        let file: GroupFile = serde_json::from_str(&read(path)?)
            .map_err(|e| usage(format!("{spec}: bad group file: {e}")))?;
        let graph = build_cayley_graph(&GroupSpec::from(file))
            .map_err(|e| usage(format!("{spec}: {e}")))?;
        let stem = path
            .file_stem()
            .map_or("graph".into(), |s| s.to_string_lossy().into_owned());
        return Ok((graph, stem));
    }
    builtin(spec)
        .map(|g| (g, spec.to_string()))
        .map_err(|e| usage(e.to_string()))
}

fn load_schedule(path: &Path) -> Result<CommSchedule, CliError> {
    schedule_from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Schedule(a) => cmd_schedule(&a, stdout, stderr),
        Command::Validate(a) => cmd_validate(&a, stdout, stderr),
        Command::Simulate(a) => cmd_simulate(&a, stdout, stderr),
        Command::Bounds(a) => cmd_bounds(&a, stdout),
        Command::Gsum(a) => cmd_gsum(&a, stdout),
        Command::Graph(a) => cmd_graph(&a, stdout),
        Command::Order(a) => cmd_order(&a, stdout),
    }
}

fn wire_model(w: WireArg) -> WireModel {
    match w {
        WireArg::OneWay => WireModel::OneWay,
        WireArg::TwoWay => WireModel::TwoWay,
    }
}

fn timing(w: WireArg) -> Timing {
    match w {
        WireArg::OneWay => Timing::ONE_WAY,
        WireArg::TwoWay => Timing::TwoWay,
    }
}

/// A built schedule with the bound it should meet.
pub struct Built {
    pub schedule: CommSchedule,
    pub bound: u64,
    pub template: Option<Value>,
    pub stem_suffix: String,
}

fn task_name(t: TaskArg) -> &'static str {
    match t {
        TaskArg::Broadcast => "broadcast",
        TaskArg::Accumulation => "accumulation",
        TaskArg::Exchange => "exchange",
    }
}

fn wire_name(w: WireArg) -> &'static str {
    match w {
        WireArg::OneWay => "one-way",
        WireArg::TwoWay => "two-way",
    }
}

fn broadcast_template_json(d: u32, l: u32) -> Result<Value, CliError> {
    let t = broadcast_template(d, l).map_err(|e| CliError::Failed(e.to_string()))?;
    let edges = |es: &[cayley_comm_core::hypercube::TemplateEdge]| -> Vec<Value> {
        es.iter()
            .map(|e| json!({"parent": e.parent, "child": e.child, "dir": e.dir, "slot": e.slot}))
            .collect()
    };
    Ok(json!({
        "d": d,
        "l": l,
        "ordering": t.ordering.subsets,
        "fallback_events": t.ordering.fallback_events.iter()
            .map(|f| json!({"cardinality": f.cardinality, "swaps": f.swaps}))
            .collect::<Vec<_>>(),
        "edges": edges(&t.edges),
        "swapped_tail": t.swapped_tail.as_deref().map(edges),
    }))
}

fn paths_json(t: &cayley_comm_core::exchange::ExchangeTemplate) -> Vec<Value> {
    t.paths
        .iter()
        .map(|p| json!({"target": p.target, "steps": p.steps}))
        .collect()
}

fn exchange_template_json(d: u32, s: u32) -> Result<Value, CliError> {
    let plan = exchange_plan(d, s).map_err(|e| CliError::Failed(e.to_string()))?;
    let classes: Vec<Value> = plan
        .classes
        .iter()
        .map(|c| {
            json!({
                "representative": c.class.representative,
                "block_size": c.class.block_size,
                "n": c.class.n,
                "special": c.class.is_special,
                "chain": c.chain,
                "step_elements": c.step_elements,
                "barber_pole": c.barber_pole,
            })
        })
        .collect();
    let slots: Vec<Vec<Value>> = plan
        .slots
        .iter()
        .map(|slot| {
            slot.iter()
                .map(|g| json!({"class": g.class, "level": g.level, "shift_start": g.shift_start, "shift_len": g.shift_len}))
                .collect()
        })
        .collect();
    Ok(json!({
        "d": d,
        "s": s,
        "classes": classes,
        "theta": plan.theta,
        "slots": slots,
        "paths": paths_json(&plan.template()),
    }))
}

fn far_template_json(d: u32) -> Result<Value, CliError> {
    let plan = far_plan(d).map_err(|e| CliError::Failed(e.to_string()))?;
    Ok(json!({"d": d, "h": plan.h, "e": plan.e, "paths": paths_json(&plan.template())}))
}

fn regular_order_json(graph: &CayleyGraph, d: u32) -> Result<Value, CliError> {
    let order = hypercube_regular_order(d).map_err(|e| CliError::Failed(e.to_string()))?;
    let tree: Vec<[u32; 3]> = template_tree(graph, &order)
        .iter()
        .map(|e| [e.src, e.dst, e.time])
        .collect();
    Ok(json!({"regular_order": RegularOrderFile::from(&order), "template": tree}))
}

fn build_broadcast_like(graph: &CayleyGraph, a: &ScheduleArgs) -> Result<Built, CliError> {
    let p = graph.vertex_count() as u64;
    let deg = graph.degree() as u64;
    let failed = |e: &dyn std::fmt::Display| CliError::Failed(e.to_string());
    if a.search {
        if a.wire != WireArg::TwoWay {
            return Err(usage("--search builds two-way schedules only"));
        }
        if a.l.is_some_and(|l| l != graph.diameter()) {
            return Err(usage("--search builds universal broadcasts only"));
        }
        let schedule = search_broadcast_schedule(graph, a.budget.unwrap_or(DEFAULT_SEARCH_BUDGET))
            .map_err(|e| failed(&e))?;
        return Ok(Built {
            schedule,
            bound: twoway_broadcast_lower_bound(p, deg),
            template: None,
            stem_suffix: String::new(),
        });
    }
    let Some(d) = graph.hypercube_dim() else {
        return Err(usage(
            "constructive schedules exist for hypercubes only; pass --search",
        ));
    };
    let l = a.l.unwrap_or(d);
    if !(1..=d).contains(&l) {
        return Err(usage(format!("--l must lie in 1..={d}")));
    }
    let wire = wire_model(a.wire);
    let (schedule, template) = if a.wire == WireArg::TwoWay && l == d {
        let order = hypercube_regular_order(d).map_err(|e| failed(&e))?;
        let s = broadcast_from_regular_order(graph, &order).map_err(|e| failed(&e))?;
        let t = if a.emit_template {
            Some(regular_order_json(graph, d)?)
        } else {
            None
        };
        (s, t)
    } else {
        let s = build_broadcast(d, l, timing(a.wire)).map_err(|e| failed(&e))?;
        let t = if a.emit_template {
            Some(broadcast_template_json(d, l)?)
        } else {
            None
        };
        (s, t)
    };
    Ok(Built {
        schedule,
        bound: hypercube_optimal_time(d, HypercubeTask::BroadcastWithin(l), wire),
        template,
        stem_suffix: if l == d {
            String::new()
        } else {
            format!("-l{l}")
        },
    })
}

fn build_exchange_like(graph: &CayleyGraph, a: &ScheduleArgs) -> Result<Built, CliError> {
    let Some(d) = graph.hypercube_dim() else {
        return Err(usage("exchange schedules exist for hypercubes only"));
    };
    if a.search || a.l.is_some() {
        return Err(usage("--search and --l do not apply to exchange"));
    }
    let failed = |e: cayley_comm_core::hypercube::HypercubeError| CliError::Failed(e.to_string());
    let tm = timing(a.wire);
    let (schedule, task, template, suffix) = if let Some(s) = a.s {
        if s == 0 || s >= d {
            return Err(usage(format!(
                "--s must lie in 1..={} (use --far for d−1 and d)",
                d.saturating_sub(1)
            )));
        }
        let t = a
            .emit_template
            .then(|| exchange_template_json(d, s))
            .transpose()?;
        (
            build_exchange(d, s, tm).map_err(failed)?,
            HypercubeTask::ExchangeAt(s),
            t,
            format!("-s{s}"),
        )
    } else if a.far {
        if d < 2 {
            return Err(usage("--far needs d ≥ 2"));
        }
        let t = a.emit_template.then(|| far_template_json(d)).transpose()?;
        (
            build_exchange_far(d, tm).map_err(failed)?,
            HypercubeTask::ExchangeFar,
            t,
            "-far".into(),
        )
    } else {
        let t = if a.emit_template {
            let mut phases = Vec::new();
            for s in 1..d.saturating_sub(1) {
                phases.push(exchange_template_json(d, s)?);
            }
            if d >= 2 {
                phases.push(far_template_json(d)?);
            }
            Some(Value::Array(phases))
        } else {
            None
        };
        (
            build_universal_exchange(d, tm).map_err(failed)?,
            HypercubeTask::UniversalExchange,
            t,
            String::new(),
        )
    };
    Ok(Built {
        schedule,
        bound: hypercube_optimal_time(d, task, wire_model(a.wire)),
        template,
        stem_suffix: suffix,
    })
}

/// Builds the schedule `a` describes on `graph`, without validating it.
pub fn build_schedule(graph: &CayleyGraph, a: &ScheduleArgs) -> Result<Built, CliError> {
    if (a.s.is_some() || a.far) && a.task != TaskArg::Exchange {
        return Err(usage("--s and --far apply to exchange only"));
    }
    match a.task {
        TaskArg::Broadcast => build_broadcast_like(graph, a),
        TaskArg::Accumulation => {
            let mut b = build_broadcast_like(graph, a)?;
            b.schedule = reverse_schedule(&b.schedule);
            Ok(b)
        }
        TaskArg::Exchange => build_exchange_like(graph, a),
    }
}

fn print_report(report: &ValidationReport, out: &mut dyn Write) {
    for v in &report.violations {
        let _ = writeln!(out, "{v:?}");
    }
    let _ = writeln!(out, "{} violation(s)", report.violations.len());
}

fn cmd_schedule(
    a: &ScheduleArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let (graph, name) = load_graph(&a.graph.graph)?;
    let built = build_schedule(&graph, a)?;
    let report = validate_schedule(&graph, &built.schedule);
    if !report.is_ok() {
        print_report(&report, stderr);
        return Err(CliError::Failed(
            "generated schedule failed validation".into(),
        ));
    }
    let tau = schedule_time(&built.schedule).map_err(|e| CliError::Failed(e.to_string()))? as u64;
    let (text, ext) = match a.format {
        Format::Dot => (schedule_to_dot(&built.schedule), "dot"),
        Format::Json => (schedule_to_json(&built.schedule), "json"),
        Format::Text => return Err(usage("schedule output is json or dot")),
    };
    let stem = format!(
        "{name}-{}{}-{}",
        task_name(a.task),
        built.stem_suffix,
        wire_name(a.wire)
    );
    let out = a
        .output
        .out
        .clone()
        .unwrap_or_else(|| a.output.out_dir.join(format!("{stem}.{ext}")));
    emit(Some(&out), &text, stdout)?;
    if let Some(t) = &built.template {
        let path = match &a.output.out {
            Some(p) if p != Path::new("-") => p.with_extension("template.json"),
            _ => a.output.out_dir.join(format!("{stem}.template.json")),
        };
        write_file(
            &path,
            &serde_json::to_string_pretty(t).expect("template serializes"),
        )?;
    }
    let verdict = match tau.cmp(&built.bound) {
        std::cmp::Ordering::Equal => "OPTIMAL",
        std::cmp::Ordering::Greater => "ABOVE_BOUND",
        std::cmp::Ordering::Less => "BELOW_BOUND",
    };
    let line = format!("tau={tau} bound={} {verdict}", built.bound);
    if out == Path::new("-") {
        let _ = writeln!(stderr, "{line}");
    } else {
        let _ = writeln!(stderr, "wrote {}", out.display());
        let _ = writeln!(stdout, "{line}");
    }
    Ok(())
}

fn cmd_validate(
    a: &ValidateArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let (graph, _) = load_graph(&a.graph.graph)?;
    let schedule = load_schedule(&a.schedule)?;
    let report = validate_schedule(&graph, &schedule);
    match a.format {
        Format::Json => {
            let violations: Vec<String> =
                report.violations.iter().map(|v| format!("{v:?}")).collect();
            let tau = schedule_time(&schedule).ok();
            let _ = writeln!(
                stdout,
                "{}",
                json!({"ok": report.is_ok(), "tau": tau, "violations": violations})
            );
        }
        _ if report.is_ok() => {
            let tau = schedule_time(&schedule).map_or(0, |t| t);
            let _ = writeln!(
                stdout,
                "ok tau={tau} tasks={} edges={}",
                schedule.tasks.len(),
                schedule.edge_count()
            );
        }
        _ => print_report(&report, stderr),
    }
    if report.is_ok() {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "{} violation(s)",
            report.violations.len()
        )))
    }
}

fn infer_goal(
    graph: &CayleyGraph,
    schedule: &CommSchedule,
    a: &SimulateArgs,
) -> Result<Goal, CliError> {
    let goal = match a.goal {
        Some(g) => g,
        None => match schedule.tasks.first().map(|t| t.kind) {
            Some(TaskKind::Broadcast { .. }) => GoalArg::Broadcast,
            Some(TaskKind::Accumulation { .. }) => GoalArg::Accumulation,
            Some(TaskKind::Path { .. }) => GoalArg::Exchange,
            _ => return Err(usage("cannot infer a goal; pass --goal")),
        },
    };
    Ok(match goal {
        GoalArg::Broadcast => Goal::Broadcast { within: a.within },
        GoalArg::Accumulation => Goal::Accumulation { within: a.within },
        GoalArg::Exchange if !a.distances.is_empty() => Goal::Exchange {
            distances: a.distances.clone(),
        },
        GoalArg::Exchange => {
            let mut distances = Vec::new();
            for t in &schedule.tasks {
                if let TaskKind::Path { src, dst } = t.kind {
                    let dist = graph.distance(src, dst).map_err(|e| usage(e.to_string()))?;
                    if !distances.contains(&dist) {
                        distances.push(dist);
                    }
                }
            }
            distances.sort_unstable();
            Goal::Exchange { distances }
        }
    })
}

/// Replays accumulation with value `v + 1` at vertex `v` and compares each
/// root's total with the sum over its ball. Returns the mismatched roots.
fn check_accumulated_sums(
    graph: &CayleyGraph,
    schedule: &CommSchedule,
    within: Option<u32>,
) -> Result<Vec<Vertex>, SimError> {
    let values: Vec<i64> = (1..=graph.vertex_count() as i64).collect();
    let sums = simulate_accumulation(graph, schedule, &values)?;
    let mut bad = Vec::new();
    for (root, got) in sums {
        let dist = graph.bfs(root);
        let want: i64 = (0..dist.len())
            .filter(|&v| v != root as usize && within.is_none_or(|l| dist[v] <= l))
            .map(|v| values[v])
            .sum();
        if got != want {
            bad.push(root);
        }
    }
    Ok(bad)
}

fn cmd_simulate(
    a: &SimulateArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let (graph, _) = load_graph(&a.graph.graph)?;
    let schedule = load_schedule(&a.schedule)?;
    let goal = infer_goal(&graph, &schedule, a)?;
    let report = match simulate(&graph, &schedule, &goal) {
        Ok(r) => r,
        Err(SimError::InvalidSchedule(report)) => {
            print_report(&report, stderr);
            return Err(CliError::Failed("schedule is invalid".into()));
        }
        Err(SimError::TooLarge) => return Err(usage("graph too large to simulate")),
        Err(e) => return Err(CliError::Failed(e.to_string())),
    };
    let mut ok = report.ok;
    if let Goal::Accumulation { within } = goal {
        let bad = check_accumulated_sums(&graph, &schedule, within)
            .map_err(|e| CliError::Failed(e.to_string()))?;
        if !bad.is_empty() {
            let _ = writeln!(stderr, "wrong sums at roots {bad:?}");
            ok = false;
        }
    }
    let mut file = SimReportFile::new(&report, a.completion);
    file.ok = ok;
    let text = serde_json::to_string(&file).expect("report serializes") + "\n";
    emit(a.out.as_deref(), &text, stdout)?;
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "{} undelivered pair(s)",
            report.undelivered.len()
        )))
    }
}

fn hypercube_task_name(t: HypercubeTask) -> String {
    match t {
        HypercubeTask::UniversalBroadcast => "universal_broadcast".into(),
        HypercubeTask::BroadcastWithin(l) => format!("broadcast_within_{l}"),
        HypercubeTask::UniversalExchange => "universal_exchange".into(),
        HypercubeTask::ExchangeAt(s) => format!("exchange_at_{s}"),
        HypercubeTask::ExchangeFar => "exchange_far".into(),
        HypercubeTask::GlobalSum => "global_sum".into(),
    }
}

/// `(task, wire, tau)` rows for the bounds table.
pub fn bounds_rows(graph: &CayleyGraph) -> Vec<(String, &'static str, u64)> {
    let wire = |w| match w {
        WireModel::OneWay => "one_way",
        WireModel::TwoWay => "two_way",
    };
    if let Some(d) = graph.hypercube_dim() {
        return hypercube_optimal_times(d)
            .into_iter()
            .map(|o| (hypercube_task_name(o.task), wire(o.wire_model), o.tau))
            .collect();
    }
    let p = graph.vertex_count() as u64;
    let d = graph.degree() as u64;
    let mut rows = vec![
        (
            "universal_broadcast".to_string(),
            "one_way",
            oneway_broadcast_lower_bound(p, d),
        ),
        (
            "universal_broadcast".to_string(),
            "two_way",
            twoway_broadcast_lower_bound(p, d),
        ),
    ];
    if p >= 2 {
        rows.push((
            "broadcast_all_but_farthest".into(),
            "one_way",
            all_but_farthest_lower_bound(p, d),
        ));
    }
    rows.push(("diameter".into(), "two_way", graph.diameter() as u64));
    rows
}

fn cmd_bounds(a: &BoundsArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (graph, _) = load_graph(&a.graph.graph)?;
    let rows = bounds_rows(&graph);
    let text = match a.format {
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(t, w, tau)| json!({"task": t, "wire": w, "tau": tau}))
                .collect();
            serde_json::to_string(&v).expect("rows serialize") + "\n"
        }
        Format::Text => {
            let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(4).max(4);
            let mut s = format!("{:width$}  {:7}  {:>6}\n", "task", "wire", "tau");
            for (t, w, tau) in &rows {
                s.push_str(&format!("{t:width$}  {w:7}  {tau:>6}\n"));
            }
            s
        }
        Format::Dot => return Err(usage("bounds output is text or json")),
    };
    emit(None, &text, stdout)
}

/// Uniform values in `[-1, 1)` from a seeded ChaCha stream.
pub fn random_values(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Tolerance for the global sum: `1e−9` relative to `‖x‖` (and to the sum).
pub fn sum_tolerance(x: &[f64]) -> f64 {
    1e-9 * norm(x)
        .max(x.iter().sum::<f64>().abs())
        .max(f64::MIN_POSITIVE)
}

fn cmd_gsum(a: &GsumArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (graph, _) = load_graph(&a.graph.graph)?;
    let p = graph.vertex_count();
    let x: Vec<f64> = if a.values == "random" {
        random_values(p, a.seed)
    } else {
        let path = Path::new(&a.values);
        serde_json::from_str(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?
    };
    let plan = build_sum_plan(&graph).map_err(|e| usage(e.to_string()))?;
    let outcome = run_sum_plan(&graph, &plan, &x).map_err(|e| usage(e.to_string()))?;
    let sum: f64 = x.iter().sum();
    let tol = sum_tolerance(&x);
    let ok = (outcome.recovered_sum - sum).abs() <= tol && outcome.max_deviation <= tol;
    let text = match a.format {
        Format::Json => {
            json!({
                "ok": ok,
                "rounds": plan.rounds,
                "diameter": plan.diameter,
                "steps": plan.steps,
                "scale": plan.scale,
                "sum": sum,
                "recovered_sum": outcome.recovered_sum,
                "max_deviation": outcome.max_deviation,
            })
            .to_string()
                + "\n"
        }
        Format::Text => format!(
            "rounds={} diameter={} scale={:e}\nsum={sum:.12} recovered={:.12} max_deviation={:e} {}\n",
            plan.rounds,
            plan.diameter,
            plan.scale,
            outcome.recovered_sum,
            outcome.max_deviation,
            if ok { "OK" } else { "MISMATCH" }
        ),
        Format::Dot => return Err(usage("gsum output is text or json")),
    };
    emit(None, &text, stdout)?;
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed("recovered sum outside tolerance".into()))
    }
}

fn cmd_graph(a: &GraphArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (graph, _) = load_graph(&a.graph.graph)?;
    let text = match a.format {
        Format::Json => {
            serde_json::to_string(&GraphFile::from(&graph)).expect("graph serializes") + "\n"
        }
        Format::Dot => graph_to_dot(&graph),
        Format::Text => return Err(usage("graph output is json or dot")),
    };
    emit(a.out.as_deref(), &text, stdout)
}

fn cmd_order(a: &OrderArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (graph, _) = load_graph(&a.graph.graph)?;
    let Some(d) = graph.hypercube_dim() else {
        return Err(usage("regular orders are generated for hypercubes only"));
    };
    let order = hypercube_regular_order(d).map_err(|e| CliError::Failed(e.to_string()))?;
    let text =
        serde_json::to_string(&RegularOrderFile::from(&order)).expect("order serializes") + "\n";
    emit(a.out.as_deref(), &text, stdout)
}
