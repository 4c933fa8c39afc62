//! Token-level replay of a schedule against a declared goal.
//!
//! An edge firing at time `t` needs its task's data at the source by the
//! end of `t − 1`. For accumulation the source must also have heard from
//! all of its own children first.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Add;

use thiserror::Error;

use crate::group::{CayleyGraph, Vertex};
use crate::schedule::{schedule_time, validate_schedule, TaskKind, ValidationReport};

/// Largest vertex count for which per-pair completion times are tracked.
pub const MAX_SIM_VERTICES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Goal {
    /// Every vertex reaches every other vertex (within `within` hops).
    Broadcast { within: Option<u32> },
    /// Every vertex hears from every other vertex (within `within` hops).
    Accumulation { within: Option<u32> },
    /// One path task per ordered pair at one of the listed distances.
    Exchange { distances: Vec<u32> },
}

impl Goal {
    pub const UNIVERSAL_BROADCAST: Goal = Goal::Broadcast { within: None };

    fn wants(&self, dist: u32) -> bool {
        match self {
            Goal::Broadcast { within } | Goal::Accumulation { within } => {
                within.is_none_or(|l| dist <= l)
            }
            Goal::Exchange { distances } => distances.contains(&dist),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("schedule is invalid ({} violations)", .0.violations.len())]
    InvalidSchedule(ValidationReport),
    #[error("task {task} edge {edge} fires before its data exists")]
    PrematureFire { task: usize, edge: usize },
    #[error("graph has more than {MAX_SIM_VERTICES} vertices")]
    TooLarge,
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimReport {
    pub ok: bool,
    pub vertex_count: usize,
    pub tau: u32,
    /// Required `(source, target)` pairs that never received the data.
    pub undelivered: Vec<(Vertex, Vertex)>,
    /// Per task: every required pair it is responsible for was delivered.
    pub task_delivered: Vec<bool>,
    /// Row-major `P × P`; `u32::MAX` where nothing arrived, `0` on the
    /// diagonal.
    pub per_pair_completion: Vec<u32>,
}

impl SimReport {
    pub fn completion(&self, src: Vertex, dst: Vertex) -> Option<u32> {
        match self.per_pair_completion[src as usize * self.vertex_count + dst as usize] {
            u32::MAX => None,
            t => Some(t),
        }
    }
}

/// Pairwise distances, row-major.
fn distance_table(graph: &CayleyGraph) -> Vec<u32> {
    let p = graph.vertex_count();
    if graph.hypercube_dim().is_some() {
        let mut out = vec![0; p * p];
        for u in 0..p {
            for v in 0..p {
                out[u * p + v] = (u ^ v).count_ones();
            }
        }
        return out;
    }
    (0..p as Vertex).flat_map(|u| graph.bfs(u)).collect()
}

/// Reusable per-task scratch over all vertices.
struct Scratch {
    arrival: Vec<u32>,
    touched: Vec<Vertex>,
}

impl Scratch {
    fn set_min(&mut self, v: Vertex, t: u32) {
        let slot = &mut self.arrival[v as usize];
        if *slot == u32::MAX {
            self.touched.push(v);
        }
        *slot = (*slot).min(t);
    }

    fn set_max(&mut self, v: Vertex, t: u32) {
        let slot = &mut self.arrival[v as usize];
        if *slot == u32::MAX {
            self.touched.push(v);
            *slot = t;
        } else {
            *slot = (*slot).max(t);
        }
    }

    fn get(&self, v: Vertex) -> u32 {
        self.arrival[v as usize]
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.arrival[v as usize] = u32::MAX;
        }
        self.touched.clear();
    }
}

/// Replays `schedule` on `graph` and checks the declared goal.
pub fn simulate(
    graph: &CayleyGraph,
    schedule: &crate::schedule::CommSchedule,
    goal: &Goal,
) -> Result<SimReport, SimError> {
    let p = graph.vertex_count();
    if p > MAX_SIM_VERTICES {
        return Err(SimError::TooLarge);
    }
    let report = validate_schedule(graph, schedule);
    if !report.is_ok() {
        return Err(SimError::InvalidSchedule(report));
    }
    let mut completion = vec![u32::MAX; p * p];
    for v in 0..p {
        completion[v * p + v] = 0;
    }
    let mut scratch = Scratch {
        arrival: vec![u32::MAX; p],
        touched: Vec::new(),
    };
    // Which (source, target) pairs each task delivered.
    let mut delivered_by: Vec<Vec<(Vertex, Vertex)>> = Vec::with_capacity(schedule.tasks.len());
    for (ti, task) in schedule.tasks.iter().enumerate() {
        let mut order: Vec<usize> = (0..task.edges.len()).collect();
        order.sort_by_key(|&i| task.edges[i].time);
        let mut pairs = Vec::new();
        match task.kind {
            TaskKind::Broadcast { root } | TaskKind::Path { src: root, .. } => {
                scratch.set_min(root, 0);
                for &i in &order {
                    let e = task.edges[i];
                    if scratch.get(e.src) >= e.time {
                        return Err(SimError::PrematureFire { task: ti, edge: i });
                    }
                    scratch.set_min(e.dst, e.time);
                }
                let targets: Vec<Vertex> = match task.kind {
                    TaskKind::Path { dst, .. } => vec![dst],
                    _ => scratch
                        .touched
                        .iter()
                        .copied()
                        .filter(|&v| v != root)
                        .collect(),
                };
                for v in targets {
                    let t = scratch.get(v);
                    if t != u32::MAX {
                        pairs.push((root, v));
                        let c = &mut completion[root as usize * p + v as usize];
                        *c = (*c).min(t);
                    }
                }
            }
            TaskKind::Accumulation { root } => {
                // Latest arrival into each vertex.
                for e in &task.edges {
                    scratch.set_max(e.dst, e.time);
                }
                for &i in &order {
                    let e = task.edges[i];
                    let ready = scratch.get(e.src);
                    if ready != u32::MAX && ready >= e.time {
                        return Err(SimError::PrematureFire { task: ti, edge: i });
                    }
                }
                scratch.reset();
                // Follow each source's out-edge chain to the root.
                let mut next: alloc::collections::BTreeMap<Vertex, (Vertex, u32)> =
                    Default::default();
                for e in &task.edges {
                    next.insert(e.src, (e.dst, e.time));
                }
                for &s in next.keys() {
                    let mut v = s;
                    let mut last = 0;
                    let mut hops = 0;
                    while let Some(&(w, t)) = next.get(&v) {
                        last = t;
                        v = w;
                        hops += 1;
                        if v == root || hops > task.edges.len() {
                            break;
                        }
                    }
                    if v == root {
                        pairs.push((s, root));
                        let c = &mut completion[s as usize * p + root as usize];
                        *c = (*c).min(last);
                    }
                }
            }
            TaskKind::GlobalSumTree { .. } => {}
        }
        scratch.reset();
        delivered_by.push(pairs);
    }

    let dist = distance_table(graph);
    let accumulating = matches!(goal, Goal::Accumulation { .. });
    let counts = |kind: TaskKind| match goal {
        Goal::Broadcast { .. } => matches!(kind, TaskKind::Broadcast { .. }),
        Goal::Accumulation { .. } => matches!(kind, TaskKind::Accumulation { .. }),
        Goal::Exchange { .. } => matches!(kind, TaskKind::Path { .. }),
    };
    let mut got = vec![false; p * p];
    for (task, pairs) in schedule.tasks.iter().zip(&delivered_by) {
        if counts(task.kind) {
            for &(s, t) in pairs {
                got[s as usize * p + t as usize] = true;
            }
        }
    }
    let mut undelivered = Vec::new();
    for u in 0..p {
        for v in 0..p {
            if u != v && goal.wants(dist[u * p + v]) && !got[u * p + v] {
                undelivered.push((u as Vertex, v as Vertex));
            }
        }
    }
    let task_delivered = schedule
        .tasks
        .iter()
        .zip(&delivered_by)
        .map(|(task, pairs)| {
            if !counts(task.kind) {
                return false;
            }
            let required = |s: usize, t: usize| s != t && goal.wants(dist[s * p + t]);
            match task.kind {
                TaskKind::Broadcast { root } => {
                    let r = root as usize;
                    let want = (0..p).filter(|&v| required(r, v)).count();
                    pairs
                        .iter()
                        .filter(|&&(s, t)| required(s as usize, t as usize))
                        .count()
                        == want
                }
                TaskKind::Accumulation { root } if accumulating => {
                    let r = root as usize;
                    let want = (0..p).filter(|&v| required(v, r)).count();
                    pairs
                        .iter()
                        .filter(|&&(s, t)| required(s as usize, t as usize))
                        .count()
                        == want
                }
                TaskKind::Path { src, dst } => {
                    required(src as usize, dst as usize) && pairs.contains(&(src, dst))
                }
                _ => false,
            }
        })
        .collect();
    Ok(SimReport {
        ok: undelivered.is_empty(),
        vertex_count: p,
        tau: schedule_time(schedule).unwrap_or(0),
        undelivered,
        task_delivered,
        per_pair_completion: completion,
    })
}

/// Sums delivered to each accumulation root; the root's own value is not
/// included. Partial sums leave a vertex only after all its children have
/// reported.
pub fn simulate_accumulation<T>(
    graph: &CayleyGraph,
    schedule: &crate::schedule::CommSchedule,
    values: &[T],
) -> Result<Vec<(Vertex, T)>, SimError>
where
    T: Copy + Default + Add<Output = T>,
{
    let p = graph.vertex_count();
    if values.len() != p {
        return Err(SimError::WrongLength {
            expected: p,
            got: values.len(),
        });
    }
    let report = validate_schedule(graph, schedule);
    if !report.is_ok() {
        return Err(SimError::InvalidSchedule(report));
    }
    let mut out = Vec::new();
    let mut partial: Vec<Option<T>> = vec![None; p];
    let mut last_in = vec![0u32; p];
    for (ti, task) in schedule.tasks.iter().enumerate() {
        let TaskKind::Accumulation { root } = task.kind else {
            continue;
        };
        for e in &task.edges {
            last_in[e.dst as usize] = last_in[e.dst as usize].max(e.time);
        }
        let mut order: Vec<usize> = (0..task.edges.len()).collect();
        order.sort_by_key(|&i| task.edges[i].time);
        let mut total = T::default();
        for &i in &order {
            let e = task.edges[i];
            if last_in[e.src as usize] >= e.time {
                return Err(SimError::PrematureFire { task: ti, edge: i });
            }
            let carried = partial[e.src as usize]
                .take()
                .unwrap_or(values[e.src as usize]);
            if e.dst == root {
                total = total + carried;
            } else {
                let own = partial[e.dst as usize].unwrap_or(values[e.dst as usize]);
                partial[e.dst as usize] = Some(own + carried);
            }
        }
        for e in &task.edges {
            last_in[e.dst as usize] = 0;
            partial[e.src as usize] = None;
            partial[e.dst as usize] = None;
        }
        out.push((root, total));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::hypercube;
    use crate::schedule::{CommSchedule, TaskGraph, TimedEdge, WireModel};

    fn e(s: Vertex, d: Vertex, t: u32) -> TimedEdge {
        TimedEdge::new(s, d, t)
    }

    fn q2_broadcast() -> CommSchedule {
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
    fn full_delivery() {
        let g = hypercube(2).unwrap();
        let r = simulate(&g, &q2_broadcast(), &Goal::UNIVERSAL_BROADCAST).unwrap();
        assert!(r.ok);
        assert_eq!(r.tau, 2);
        assert_eq!(r.completion(0, 3), Some(2));
        assert_eq!(r.completion(1, 0), Some(1));
        assert!(r.task_delivered.iter().all(|&b| b));
    }

    #[test]
    fn missing_leaf_is_reported() {
        let g = hypercube(2).unwrap();
        let mut s = q2_broadcast();
        s.tasks[0].edges.pop();
        let r = simulate(&g, &s, &Goal::UNIVERSAL_BROADCAST).unwrap();
        assert!(!r.ok);
        assert_eq!(r.undelivered, vec![(0, 3)]);
        assert!(!r.task_delivered[0]);
        // Distance one is still covered.
        let near = simulate(&g, &s, &Goal::Broadcast { within: Some(1) }).unwrap();
        assert!(near.ok);
    }

    #[test]
    fn invalid_schedules_are_refused() {
        let g = hypercube(2).unwrap();
        let mut s = q2_broadcast();
        s.tasks[0].edges[2].time = 1;
        assert!(matches!(
            simulate(&g, &s, &Goal::UNIVERSAL_BROADCAST),
            Err(SimError::InvalidSchedule(_))
        ));
    }

    #[test]
    fn accumulation_sums() {
        let g = hypercube(1).unwrap();
        let s = CommSchedule::new(
            WireModel::TwoWay,
            vec![TaskGraph::new(
                TaskKind::Accumulation { root: 0 },
                vec![e(1, 0, 1)],
            )],
        );
        assert_eq!(
            simulate_accumulation(&g, &s, &[7, 5]).unwrap(),
            vec![(0, 5)]
        );

        let g = hypercube(2).unwrap();
        let s = crate::schedule::reverse_schedule(&q2_broadcast());
        let sums = simulate_accumulation(&g, &s, &[10, 20, 30, 40]).unwrap();
        for (root, sum) in sums {
            assert_eq!(sum, 100 - 10 * (root as i32 + 1));
        }
        let r = simulate(&g, &s, &Goal::Accumulation { within: None }).unwrap();
        assert!(r.ok);
    }

    #[test]
    fn exchange_goal() {
        let g = hypercube(1).unwrap();
        let s = CommSchedule::new(
            WireModel::OneWay,
            vec![
                TaskGraph::new(TaskKind::Path { src: 0, dst: 1 }, vec![e(0, 1, 1)]),
                TaskGraph::new(TaskKind::Path { src: 1, dst: 0 }, vec![e(1, 0, 2)]),
            ],
        );
        let r = simulate(&g, &s, &Goal::Exchange { distances: vec![1] }).unwrap();
        assert!(r.ok);
        assert_eq!(r.completion(1, 0), Some(2));
    }
}
