//! Task graphs, communication schedules and their validators.
//!
//! A task graph moves one word of data. Its edges carry positive integer
//! times and must respect the precedence rules: whenever a directed path in
//! the task runs from edge `e` to edge `f` (and not back), `e` fires strictly
//! before `f`; comparable edges never share a time. A schedule is a set of
//! task graphs sharing the network; no directed edge may carry a label twice
//! (two-way wires), and under the one-way model the two directions of a wire
//! may not share a label either.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::group::{CayleyGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WireModel {
    TwoWay,
    OneWay,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TimedEdge {
    pub src: Vertex,
    pub dst: Vertex,
    pub time: u32,
}

impl TimedEdge {
    pub const fn new(src: Vertex, dst: Vertex, time: u32) -> Self {
        TimedEdge { src, dst, time }
    }
}

/// What a task graph is for; also its identity inside a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TaskKind {
    Broadcast { root: Vertex },
    Accumulation { root: Vertex },
    Path { src: Vertex, dst: Vertex },
    GlobalSumTree { root: Vertex },
}

impl TaskKind {
    /// The kind obtained by reversing every arrow.
    pub fn reversed(self) -> TaskKind {
        match self {
            TaskKind::Broadcast { root } => TaskKind::Accumulation { root },
            TaskKind::Accumulation { root } => TaskKind::Broadcast { root },
            TaskKind::Path { src, dst } => TaskKind::Path { src: dst, dst: src },
            TaskKind::GlobalSumTree { root } => TaskKind::GlobalSumTree { root },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskGraph {
    pub kind: TaskKind,
    pub edges: Vec<TimedEdge>,
}

impl TaskGraph {
    pub fn new(kind: TaskKind, edges: Vec<TimedEdge>) -> Self {
        TaskGraph { kind, edges }
    }

    /// `τ(T)`, zero for an empty task.
    pub fn time(&self) -> u32 {
        self.edges.iter().map(|e| e.time).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommSchedule {
    pub wire_model: WireModel,
    pub tasks: Vec<TaskGraph>,
}

impl CommSchedule {
    pub fn new(wire_model: WireModel, tasks: Vec<TaskGraph>) -> Self {
        CommSchedule { wire_model, tasks }
    }

    pub fn edge_count(&self) -> usize {
        self.tasks.iter().map(|t| t.edges.len()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("schedule has no edges")]
    EmptySchedule,
}

/// `τ(C)`: the latest time label in the schedule.
pub fn schedule_time(schedule: &CommSchedule) -> Result<u32, ScheduleError> {
    schedule
        .tasks
        .iter()
        .flat_map(|t| t.edges.iter().map(|e| e.time))
        .max()
        .ok_or(ScheduleError::EmptySchedule)
}

/// Structural problems specific to the task kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StructureProblem {
    DuplicateEdge {
        edge: usize,
    },
    /// Broadcast roots receive nothing; accumulation roots send nothing.
    RootEdge {
        edge: usize,
    },
    /// A vertex receives twice in a broadcast or sends twice in an accumulation.
    Branching {
        vertex: Vertex,
    },
    /// An edge not connected to the root through the task's own edges.
    Detached {
        edge: usize,
    },
    /// Path tasks must be a single simple directed path from `src` to `dst`.
    NotAPath,
    /// Global-sum trees must be an in-tree followed by an out-tree over the
    /// same vertices.
    TreesMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TaskViolation {
    ZeroTime {
        edge: usize,
    },
    SelfLoop {
        edge: usize,
    },
    /// A path runs from `upstream` to `downstream` (and not back) but
    /// `upstream` fires later.
    PrecedenceInverted {
        upstream: usize,
        downstream: usize,
    },
    /// Two distinct comparable edges with the same time.
    EqualTimeComparable {
        first: usize,
        second: usize,
    },
    Structure(StructureProblem),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    Task {
        task: usize,
        violation: TaskViolation,
    },
    NotAGraphEdge {
        task: usize,
        edge: usize,
    },
    /// Two edge occurrences share a wire and a time label.
    LabelCollision {
        time: u32,
        first: (usize, usize),
        second: (usize, usize),
    },
    DuplicateTask {
        first: usize,
        second: usize,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Vertex-compressed adjacency over a task's own edges.
struct LocalGraph {
    vertices: Vec<Vertex>,
    /// CSR offsets into `out_edges`, indexed by local vertex.
    offsets: Vec<usize>,
    out_edges: Vec<usize>,
    src: Vec<usize>,
    dst: Vec<usize>,
}

impl LocalGraph {
    fn new(edges: &[TimedEdge]) -> Self {
        let mut vertices: Vec<Vertex> = edges.iter().flat_map(|e| [e.src, e.dst]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let local = |v: Vertex| vertices.binary_search(&v).unwrap();
        let src: Vec<usize> = edges.iter().map(|e| local(e.src)).collect();
        let dst: Vec<usize> = edges.iter().map(|e| local(e.dst)).collect();
        let mut offsets = vec![0usize; vertices.len() + 1];
        for &s in &src {
            offsets[s + 1] += 1;
        }
        for i in 0..vertices.len() {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut out_edges = vec![0usize; edges.len()];
        for (i, &s) in src.iter().enumerate() {
            out_edges[fill[s]] = i;
            fill[s] += 1;
        }
        LocalGraph {
            vertices,
            offsets,
            out_edges,
            src,
            dst,
        }
    }

    fn local(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    fn out(&self, v: usize) -> &[usize] {
        &self.out_edges[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edges reachable by a walk that starts at vertex `from`.
    fn edges_from(&self, from: usize, seen_vertex: &mut [bool], out: &mut Vec<usize>) {
        out.clear();
        let mut stack = vec![from];
        seen_vertex[from] = true;
        let mut touched = vec![from];
        while let Some(v) = stack.pop() {
            for &e in self.out(v) {
                out.push(e);
                let w = self.dst[e];
                if !seen_vertex[w] {
                    seen_vertex[w] = true;
                    touched.push(w);
                    stack.push(w);
                }
            }
        }
        for v in touched {
            seen_vertex[v] = false;
        }
    }

    fn reaches(&self, from: usize, to: usize) -> bool {
        if from == to {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            for &e in self.out(v) {
                let w = self.dst[e];
                if w == to {
                    return true;
                }
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }
}

/// Checks the precedence rules and the kind-specific structure of one task.
pub fn validate_task_graph(task: &TaskGraph) -> Vec<TaskViolation> {
    let edges = &task.edges;
    let mut out = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        if e.time == 0 {
            out.push(TaskViolation::ZeroTime { edge: i });
        }
        if e.src == e.dst {
            out.push(TaskViolation::SelfLoop { edge: i });
        }
    }
    if edges.is_empty() {
        return out;
    }

    let g = LocalGraph::new(edges);
    let mut order_violations = BTreeSet::new();
    match task.kind {
        // Each half is ordered on its own; the whole graph has cycles.
        TaskKind::GlobalSumTree { root } => {
            let split = global_sum_split(edges, root);
            let (inbound, outbound): (Vec<usize>, Vec<usize>) =
                (0..edges.len()).partition(|&i| edges[i].time < split);
            precedence_violations(edges, &inbound, &mut order_violations);
            precedence_violations(edges, &outbound, &mut order_violations);
        }
        _ => {
            let all: Vec<usize> = (0..edges.len()).collect();
            precedence_violations(edges, &all, &mut order_violations);
        }
    }
    out.extend(order_violations);
    out.extend(
        check_structure(task, &g)
            .into_iter()
            .map(TaskViolation::Structure),
    );
    out
}

fn global_sum_split(edges: &[TimedEdge], root: Vertex) -> u32 {
    edges
        .iter()
        .filter(|e| e.src == root)
        .map(|e| e.time)
        .min()
        .unwrap_or(u32::MAX)
}

/// Precedence checks among `subset` of `edges`; reported indices refer to
/// `edges`.
fn precedence_violations(edges: &[TimedEdge], subset: &[usize], out: &mut BTreeSet<TaskViolation>) {
    if subset.is_empty() {
        return;
    }
    let local: Vec<TimedEdge> = subset.iter().map(|&i| edges[i]).collect();
    let g = LocalGraph::new(&local);
    let mut seen = vec![false; g.vertices.len()];
    let mut downstream = Vec::new();
    for (a, e) in local.iter().enumerate() {
        // Every edge leaving a vertex reachable from dst(e) is > e.
        g.edges_from(g.dst[a], &mut seen, &mut downstream);
        for &b in &downstream {
            if a == b {
                continue;
            }
            let f = &local[b];
            let (i, j) = (subset[a], subset[b]);
            if e.time == f.time {
                out.insert(TaskViolation::EqualTimeComparable {
                    first: i.min(j),
                    second: i.max(j),
                });
            } else if e.time > f.time && !g.reaches(g.dst[b], g.src[a]) {
                out.insert(TaskViolation::PrecedenceInverted {
                    upstream: i,
                    downstream: j,
                });
            }
        }
    }
}

fn duplicate_edges(edges: &[TimedEdge]) -> Vec<StructureProblem> {
    let mut first_seen = BTreeMap::new();
    let mut out = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        if first_seen.insert((e.src, e.dst), i).is_some() {
            out.push(StructureProblem::DuplicateEdge { edge: i });
        }
    }
    out
}

/// Out-tree rooted at `root`: no edge into the root, one parent per vertex,
/// everything reachable. With `reverse` the same check runs on the reversed
/// edges (an in-tree).
fn tree_problems(edges: &[TimedEdge], root: Vertex, reverse: bool) -> Vec<StructureProblem> {
    let flip = |e: &TimedEdge| {
        if reverse {
            (e.dst, e.src)
        } else {
            (e.src, e.dst)
        }
    };
    let mut problems = duplicate_edges(edges);
    let mut parent_edge: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        let (s, d) = flip(e);
        if d == root {
            problems.push(StructureProblem::RootEdge { edge: i });
            continue;
        }
        let _ = s;
        if parent_edge.insert(d, i).is_some() {
            problems.push(StructureProblem::Branching { vertex: d });
        }
    }
    // Walk parents up to the root.
    let mut state: BTreeMap<Vertex, bool> = BTreeMap::new();
    state.insert(root, true);
    for (i, e) in edges.iter().enumerate() {
        let (s, _) = flip(e);
        let mut chain = Vec::new();
        let mut v = s;
        let ok = loop {
            if let Some(&known) = state.get(&v) {
                break known;
            }
            if chain.contains(&v) || chain.len() > edges.len() {
                break false;
            }
            chain.push(v);
            match parent_edge.get(&v) {
                Some(&p) => v = flip(&edges[p]).0,
                None => break false,
            }
        };
        for c in chain {
            state.insert(c, ok);
        }
        if !ok {
            problems.push(StructureProblem::Detached { edge: i });
        }
    }
    problems
}

fn check_structure(task: &TaskGraph, g: &LocalGraph) -> Vec<StructureProblem> {
    let edges = &task.edges;
    match task.kind {
        TaskKind::Broadcast { root } => tree_problems(edges, root, false),
        TaskKind::Accumulation { root } => tree_problems(edges, root, true),
        TaskKind::Path { src, dst } => {
            if is_simple_path(g, src, dst, edges.len()) {
                Vec::new()
            } else {
                vec![StructureProblem::NotAPath]
            }
        }
        TaskKind::GlobalSumTree { root } => {
            let split = global_sum_split(edges, root);
            let (inbound, outbound): (Vec<TimedEdge>, Vec<TimedEdge>) =
                edges.iter().partition(|e| e.time < split);
            let mut problems = tree_problems(&inbound, root, true);
            problems.extend(tree_problems(&outbound, root, false));
            let span = |es: &[TimedEdge]| {
                let mut vs: Vec<Vertex> = es.iter().flat_map(|e| [e.src, e.dst]).collect();
                vs.push(root);
                vs.sort_unstable();
                vs.dedup();
                vs
            };
            if span(&inbound) != span(&outbound) {
                problems.push(StructureProblem::TreesMismatch);
            }
            problems
        }
    }
}

fn is_simple_path(g: &LocalGraph, src: Vertex, dst: Vertex, edge_count: usize) -> bool {
    if src == dst {
        return false;
    }
    let (Some(mut v), Some(target)) = (g.local(src), g.local(dst)) else {
        return false;
    };
    let mut visited = vec![false; g.vertices.len()];
    visited[v] = true;
    let mut steps = 0;
    while v != target {
        let out = g.out(v);
        if out.len() != 1 {
            return false;
        }
        v = g.dst[out[0]];
        if visited[v] {
            return false;
        }
        visited[v] = true;
        steps += 1;
    }
    steps == edge_count && g.out(target).is_empty()
}

/// Per-task checks plus wire-label collisions under the schedule's wire model.
pub fn validate_schedule(graph: &CayleyGraph, schedule: &CommSchedule) -> ValidationReport {
    let mut violations = Vec::new();

    let mut kinds: BTreeMap<TaskKind, usize> = BTreeMap::new();
    for (t, task) in schedule.tasks.iter().enumerate() {
        if let Some(&first) = kinds.get(&task.kind) {
            violations.push(Violation::DuplicateTask { first, second: t });
        } else {
            kinds.insert(task.kind, t);
        }
        violations.extend(
            validate_task_graph(task)
                .into_iter()
                .map(|violation| Violation::Task { task: t, violation }),
        );
        for (i, e) in task.edges.iter().enumerate() {
            if !graph.has_edge(e.src, e.dst) {
                violations.push(Violation::NotAGraphEdge { task: t, edge: i });
            }
        }
    }

    violations.extend(label_collisions(schedule));
    ValidationReport { violations }
}

/// Every pair of edge occurrences on the same wire with the same label.
pub fn label_collisions(schedule: &CommSchedule) -> Vec<Violation> {
    let one_way = schedule.wire_model == WireModel::OneWay;
    let mut keys: Vec<(Vertex, Vertex, u32, u32, u32)> = Vec::with_capacity(schedule.edge_count());
    for (t, task) in schedule.tasks.iter().enumerate() {
        for (i, e) in task.edges.iter().enumerate() {
            let (a, b) = if one_way && e.dst < e.src {
                (e.dst, e.src)
            } else {
                (e.src, e.dst)
            };
            keys.push((a, b, e.time, t as u32, i as u32));
        }
    }
    keys.sort_unstable();
    keys.windows(2)
        .filter(|w| (w[0].0, w[0].1, w[0].2) == (w[1].0, w[1].1, w[1].2))
        .map(|w| Violation::LabelCollision {
            time: w[0].2,
            first: (w[0].3 as usize, w[0].4 as usize),
            second: (w[1].3 as usize, w[1].4 as usize),
        })
        .collect()
}

/// Reverses every arrow and maps each time `t` to `t_min + τ − t`, which
/// keeps `τ` and undoes itself.
pub fn reverse_task_graph(task: &TaskGraph) -> TaskGraph {
    let span = time_span(task.edges.iter());
    TaskGraph {
        kind: task.kind.reversed(),
        edges: reversed_edges(&task.edges, span),
    }
}

fn time_span<'a>(edges: impl Iterator<Item = &'a TimedEdge>) -> u32 {
    let (lo, hi) = edges.fold((u32::MAX, 0), |(lo, hi), e| {
        (lo.min(e.time), hi.max(e.time))
    });
    lo.saturating_add(hi)
}

fn reversed_edges(edges: &[TimedEdge], span: u32) -> Vec<TimedEdge> {
    edges
        .iter()
        .map(|e| TimedEdge::new(e.dst, e.src, span - e.time))
        .collect()
}

/// Reverses every task with one schedule-wide time map, so distinct
/// `(wire, time)` pairs stay distinct.
pub fn reverse_schedule(schedule: &CommSchedule) -> CommSchedule {
    let span = time_span(schedule.tasks.iter().flat_map(|t| t.edges.iter()));
    CommSchedule {
        wire_model: schedule.wire_model,
        tasks: schedule
            .tasks
            .iter()
            .map(|task| TaskGraph {
                kind: task.kind.reversed(),
                edges: reversed_edges(&task.edges, span),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::hypercube;

    fn e(src: Vertex, dst: Vertex, time: u32) -> TimedEdge {
        TimedEdge::new(src, dst, time)
    }

    fn example_cycle() -> TaskGraph {
        TaskGraph::new(
            TaskKind::Path { src: 0, dst: 0 },
            vec![e(0, 1, 1), e(1, 2, 2), e(2, 3, 3), e(3, 0, 4)],
        )
    }

    fn example_branching() -> TaskGraph {
        TaskGraph::new(
            TaskKind::Broadcast { root: 0 },
            vec![
                e(0, 1, 1),
                e(1, 2, 2),
                e(1, 3, 2),
                e(3, 4, 4),
                e(2, 4, 3),
                e(4, 5, 5),
            ],
        )
    }

    fn order_violations(t: &TaskGraph) -> Vec<TaskViolation> {
        validate_task_graph(t)
            .into_iter()
            .filter(|v| !matches!(v, TaskViolation::Structure(_)))
            .collect()
    }

    #[test]
    fn cycle_example_satisfies_precedence() {
        assert!(order_violations(&example_cycle()).is_empty());
        assert_eq!(example_cycle().time(), 4);
    }

    #[test]
    fn incomparable_edges_may_run_out_of_order() {
        let t = example_branching();
        assert!(order_violations(&t).is_empty());
        assert_eq!(t.time(), 5);
        // Vertex 4 receives twice, which is not a broadcast tree.
        assert!(validate_task_graph(&t).contains(&TaskViolation::Structure(
            StructureProblem::Branching { vertex: 4 }
        )));
    }

    #[test]
    fn data_must_arrive_before_it_departs() {
        let t = TaskGraph::new(
            TaskKind::Path { src: 0, dst: 2 },
            vec![e(0, 1, 2), e(1, 2, 1)],
        );
        assert_eq!(
            validate_task_graph(&t),
            vec![TaskViolation::PrecedenceInverted {
                upstream: 0,
                downstream: 1
            }]
        );
        let same = TaskGraph::new(
            TaskKind::Path { src: 0, dst: 2 },
            vec![e(0, 1, 1), e(1, 2, 1)],
        );
        assert_eq!(
            validate_task_graph(&same),
            vec![TaskViolation::EqualTimeComparable {
                first: 0,
                second: 1
            }]
        );
    }

    #[test]
    fn zero_time_and_loops() {
        let t = TaskGraph::new(
            TaskKind::Broadcast { root: 0 },
            vec![e(0, 1, 0), e(1, 1, 2)],
        );
        let v = validate_task_graph(&t);
        assert!(v.contains(&TaskViolation::ZeroTime { edge: 0 }));
        assert!(v.contains(&TaskViolation::SelfLoop { edge: 1 }));
    }

    fn two_cube_universal_broadcast() -> CommSchedule {
        // Each root sends along both directions at time 1, then x ^ 2
        // forwards along direction 1 at time 2.
        let tasks = (0..4)
            .map(|x: Vertex| {
                TaskGraph::new(
                    TaskKind::Broadcast { root: x },
                    vec![e(x, x ^ 1, 1), e(x, x ^ 2, 1), e(x ^ 2, x ^ 3, 2)],
                )
            })
            .collect();
        CommSchedule::new(WireModel::TwoWay, tasks)
    }

    #[test]
    fn two_cube_broadcast_is_valid_two_way() {
        let q2 = hypercube(2).unwrap();
        let s = two_cube_universal_broadcast();
        assert!(validate_schedule(&q2, &s).is_ok());
        assert_eq!(schedule_time(&s), Ok(2));
        let mut one_way = s.clone();
        one_way.wire_model = WireModel::OneWay;
        assert!(!validate_schedule(&q2, &one_way).is_ok());
    }

    #[test]
    fn collisions_depend_on_wire_model() {
        let q2 = hypercube(2).unwrap();
        let same_dir = CommSchedule::new(
            WireModel::TwoWay,
            vec![
                TaskGraph::new(TaskKind::Path { src: 0, dst: 1 }, vec![e(0, 1, 3)]),
                TaskGraph::new(TaskKind::Broadcast { root: 0 }, vec![e(0, 1, 3)]),
            ],
        );
        let r = validate_schedule(&q2, &same_dir);
        assert_eq!(
            r.violations,
            vec![Violation::LabelCollision {
                time: 3,
                first: (0, 0),
                second: (1, 0)
            }]
        );

        let opposite = CommSchedule::new(
            WireModel::TwoWay,
            vec![
                TaskGraph::new(TaskKind::Path { src: 0, dst: 1 }, vec![e(0, 1, 3)]),
                TaskGraph::new(TaskKind::Path { src: 1, dst: 0 }, vec![e(1, 0, 3)]),
            ],
        );
        assert!(validate_schedule(&q2, &opposite).is_ok());
        let mut one_way = opposite;
        one_way.wire_model = WireModel::OneWay;
        assert_eq!(validate_schedule(&q2, &one_way).violations.len(), 1);
    }

    #[test]
    fn off_graph_edges_and_duplicate_tasks() {
        let q2 = hypercube(2).unwrap();
        let s = CommSchedule::new(
            WireModel::TwoWay,
            vec![
                TaskGraph::new(TaskKind::Path { src: 0, dst: 3 }, vec![e(0, 3, 1)]),
                TaskGraph::new(
                    TaskKind::Path { src: 0, dst: 3 },
                    vec![e(0, 1, 1), e(1, 3, 2)],
                ),
            ],
        );
        let r = validate_schedule(&q2, &s);
        assert!(r
            .violations
            .contains(&Violation::NotAGraphEdge { task: 0, edge: 0 }));
        assert!(r.violations.contains(&Violation::DuplicateTask {
            first: 0,
            second: 1
        }));
    }

    #[test]
    fn schedule_time_of_empty_schedule() {
        let s = CommSchedule::new(WireModel::TwoWay, vec![]);
        assert_eq!(schedule_time(&s), Err(ScheduleError::EmptySchedule));
    }

    #[test]
    fn reversal_of_broadcast_tree() {
        // Binomial broadcast tree on Q3 from 0.
        let t = TaskGraph::new(
            TaskKind::Broadcast { root: 0 },
            vec![
                e(0, 1, 1),
                e(0, 2, 2),
                e(1, 3, 2),
                e(0, 4, 3),
                e(1, 5, 3),
                e(2, 6, 3),
                e(3, 7, 3),
            ],
        );
        assert!(validate_task_graph(&t).is_empty());
        let r = reverse_task_graph(&t);
        assert_eq!(r.kind, TaskKind::Accumulation { root: 0 });
        assert!(r.edges.contains(&e(7, 3, 1)));
        assert!(r.edges.contains(&e(1, 0, 3)));
        assert!(validate_task_graph(&r).is_empty());
        assert_eq!(reverse_task_graph(&r), t);

        let single = TaskGraph::new(TaskKind::Broadcast { root: 0 }, vec![e(0, 1, 1)]);
        assert_eq!(reverse_task_graph(&single).edges, vec![e(1, 0, 1)]);
    }

    #[test]
    fn detached_and_branching_trees() {
        let t = TaskGraph::new(
            TaskKind::Broadcast { root: 0 },
            vec![e(0, 1, 1), e(2, 3, 1), e(0, 3, 2)],
        );
        let v = validate_task_graph(&t);
        assert!(
            v.contains(&TaskViolation::Structure(StructureProblem::Detached {
                edge: 1
            }))
        );
        assert!(
            v.contains(&TaskViolation::Structure(StructureProblem::Branching {
                vertex: 3
            }))
        );
    }

    #[test]
    fn path_structure() {
        let ok = TaskGraph::new(
            TaskKind::Path { src: 0, dst: 3 },
            vec![e(1, 3, 2), e(0, 1, 1)],
        );
        assert!(validate_task_graph(&ok).is_empty());
        let wrong_end = TaskGraph::new(
            TaskKind::Path { src: 0, dst: 2 },
            vec![e(0, 1, 1), e(1, 3, 2)],
        );
        assert!(validate_task_graph(&wrong_end)
            .contains(&TaskViolation::Structure(StructureProblem::NotAPath)));
    }

    #[test]
    fn global_sum_tree() {
        // In-tree 1→0, 2→0 at time 1; out-tree 0→1, 0→2 at times 2, 3.
        let ok = TaskGraph::new(
            TaskKind::GlobalSumTree { root: 0 },
            vec![e(1, 0, 1), e(2, 0, 1), e(0, 1, 2), e(0, 2, 3)],
        );
        assert!(validate_task_graph(&ok).is_empty());
        let early = TaskGraph::new(
            TaskKind::GlobalSumTree { root: 0 },
            vec![e(1, 0, 2), e(2, 0, 1), e(0, 1, 2), e(0, 2, 3)],
        );
        assert!(!validate_task_graph(&early).is_empty());
    }
}
