//! Regular orders and the optimal two-way universal broadcast they induce.
//!
//! A regular order lists the vertices by distance from the identity, in
//! blocks of `d`, so that every vertex of block `a` hangs off an earlier
//! vertex (index `≤ ad`) one sphere closer, and the `d` vertices of a block
//! use pairwise distinct generators. The template tree gives the edge into
//! block `a` the time `a + 1`; left translates of the template by every
//! group element never collide.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::bounds::twoway_broadcast_lower_bound;
use crate::group::{CayleyGraph, Vertex};
use crate::schedule::{CommSchedule, TaskGraph, TaskKind, TimedEdge, WireModel};
use crate::subsets::{order_all_subsets, Strengthen, MAX_ORDER_DIM};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularOrder {
    /// Generator indices in the order `δ_1, …, δ_d`.
    pub generator_order: Vec<usize>,
    /// `g_0, …, g_{P−1}`.
    pub vertex_order: Vec<Vertex>,
    /// `parents[i − 1]` is the generator index `i_c` with `g_i δ^{-1} = g_{s_c}`.
    pub parents: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OrderViolation {
    /// Only Cayley graphs (trivial subgroup) are supported.
    CosetGraph,
    GeneratorOrderNotPermutation,
    VertexOrderNotPermutation,
    WrongParentCount,
    FirstNotIdentity,
    /// `g_i` is closer to the identity than an earlier vertex.
    DistanceDecreases {
        position: usize,
    },
    BadGenerator {
        position: usize,
    },
    /// Two vertices of one block use the same generator.
    RepeatedDirection {
        block: usize,
        position: usize,
    },
    /// The parent `g_i δ^{-1}` is not among `g_0..g_{ad}`.
    ParentTooLate {
        block: usize,
        position: usize,
    },
    /// The parent is not one sphere closer.
    NotInward {
        block: usize,
        position: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegularOrderError {
    #[error("not a regular order: {0:?}")]
    RegularOrderInvalid(Vec<OrderViolation>),
    #[error("dimension {0} outside 1..=24")]
    Dimension(u32),
}

/// Checks the three conditions of a regular order; empty means valid.
pub fn check_regular_order(graph: &CayleyGraph, order: &RegularOrder) -> Vec<OrderViolation> {
    let mut out = Vec::new();
    if !graph.is_cayley() {
        out.push(OrderViolation::CosetGraph);
        return out;
    }
    let p = graph.vertex_count();
    let d = graph.degree();
    if !is_permutation(&order.generator_order, d) {
        out.push(OrderViolation::GeneratorOrderNotPermutation);
    }
    let verts: Vec<usize> = order.vertex_order.iter().map(|&v| v as usize).collect();
    if !is_permutation(&verts, p) {
        out.push(OrderViolation::VertexOrderNotPermutation);
        return out;
    }
    if order.parents.len() + 1 != p {
        out.push(OrderViolation::WrongParentCount);
        return out;
    }
    if order.vertex_order[0] != graph.identity_vertex() {
        out.push(OrderViolation::FirstNotIdentity);
    }
    let dist = graph.bfs(graph.identity_vertex());
    let mut position = vec![0usize; p];
    for (i, &v) in order.vertex_order.iter().enumerate() {
        position[v as usize] = i;
    }
    for i in 1..p {
        let prev = dist[order.vertex_order[i - 1] as usize];
        if dist[order.vertex_order[i] as usize] < prev {
            out.push(OrderViolation::DistanceDecreases { position: i });
        }
    }
    let group = graph.group();
    for (a, block) in order.parents.chunks(d).enumerate() {
        let mut used = vec![false; d];
        for (c, &gen) in block.iter().enumerate() {
            let i = a * d + c + 1;
            if gen >= d {
                out.push(OrderViolation::BadGenerator { position: i });
                continue;
            }
            if core::mem::replace(&mut used[gen], true) {
                out.push(OrderViolation::RepeatedDirection {
                    block: a,
                    position: i,
                });
            }
            let g = order.vertex_order[i];
            let parent = group.mul(g as u64, group.inv(graph.generators()[gen])) as usize;
            if position[parent] > a * d {
                out.push(OrderViolation::ParentTooLate {
                    block: a,
                    position: i,
                });
            }
            if dist[parent] + 1 != dist[g as usize] {
                out.push(OrderViolation::NotInward {
                    block: a,
                    position: i,
                });
            }
        }
    }
    out
}

fn is_permutation(v: &[usize], n: usize) -> bool {
    if v.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    v.iter()
        .all(|&x| x < n && !core::mem::replace(&mut seen[x], true))
}

/// Regular order of `Q_d` from the subset ordering: `g_i` is the bitmask of
/// `S_i` and its parent direction is `e_{i mod d}`.
pub fn hypercube_regular_order(d: u32) -> Result<RegularOrder, RegularOrderError> {
    if d == 0 || d > MAX_ORDER_DIM {
        return Err(RegularOrderError::Dimension(d));
    }
    let strengthen = Strengthen {
        antecedent: true,
        tail: false,
    };
    let ordering =
        order_all_subsets(d, d, strengthen).expect("hypercube orderings exist for every d");
    let mut vertex_order = Vec::with_capacity(ordering.len() + 1);
    vertex_order.push(0);
    vertex_order.extend(ordering.subsets.iter().map(|&s| s as Vertex));
    let parents = (0..ordering.len()).map(|i| i % d as usize).collect();
    Ok(RegularOrder {
        generator_order: (0..d as usize).collect(),
        vertex_order,
        parents,
    })
}

/// The template tree `T_{g_0}`: edge `(g_{s_c}, g_{ad+c})` at time `a + 1`.
pub fn template_tree(graph: &CayleyGraph, order: &RegularOrder) -> Vec<TimedEdge> {
    let d = graph.degree();
    let group = graph.group();
    order
        .parents
        .iter()
        .enumerate()
        .map(|(k, &gen)| {
            let g = order.vertex_order[k + 1];
            let parent = group.mul(g as u64, group.inv(graph.generators()[gen])) as Vertex;
            TimedEdge::new(parent, g, (k / d) as u32 + 1)
        })
        .collect()
}

/// Two-way universal broadcast in `⌈(P−1)/d⌉` steps by translating the
/// template to every vertex.
pub fn broadcast_from_regular_order(
    graph: &CayleyGraph,
    order: &RegularOrder,
) -> Result<CommSchedule, RegularOrderError> {
    let violations = check_regular_order(graph, order);
    if !violations.is_empty() {
        return Err(RegularOrderError::RegularOrderInvalid(violations));
    }
    let template = template_tree(graph, order);
    let tasks = (0..graph.vertex_count() as Vertex)
        .map(|x| {
            let edges = template
                .iter()
                .map(|e| {
                    let src = graph.translate(x, e.src).expect("Cayley graph");
                    let dst = graph.translate(x, e.dst).expect("Cayley graph");
                    TimedEdge::new(src, dst, e.time)
                })
                .collect();
            TaskGraph::new(TaskKind::Broadcast { root: x }, edges)
        })
        .collect();
    Ok(CommSchedule::new(WireModel::TwoWay, tasks))
}

/// Node expansions allowed by default in [`search_broadcast_schedule`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 20_000_000;

/// Largest vertex count the search accepts.
pub const MAX_SEARCH_VERTICES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum NotFound {
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("no schedule meets the lower bound")]
    ProvenInfeasible,
    #[error("graph has more than 64 vertices")]
    TooLarge,
}

struct Search {
    p: usize,
    tau: u32,
    /// Edge slots `(time, src, dst)` in expansion order.
    slots: Vec<(u32, usize, usize)>,
    /// First slot index of each time step, plus a sentinel.
    step_start: Vec<usize>,
    closed_nbhd: Vec<u64>,
    informed: Vec<u64>,
    fresh: Vec<u64>,
    choice: Vec<Option<usize>>,
    needed: usize,
    budget: u64,
    expansions: u64,
}

impl Search {
    fn full(&self) -> u64 {
        if self.p == 64 {
            u64::MAX
        } else {
            (1u64 << self.p) - 1
        }
    }

    /// Every task can still reach all vertices in the remaining steps.
    fn reachable(&self, remaining: u32) -> bool {
        let full = self.full();
        self.informed.iter().all(|&start| {
            let mut set = start;
            for _ in 0..remaining {
                if set == full {
                    break;
                }
                let mut next = set;
                let mut bits = set;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    next |= self.closed_nbhd[v];
                }
                set = next;
            }
            set == full
        })
    }

    fn run(&mut self, slot: usize) -> Result<bool, NotFound> {
        self.expansions += 1;
        if self.expansions > self.budget {
            return Err(NotFound::BudgetExhausted);
        }
        if self.needed == 0 {
            return Ok(true);
        }
        if slot == self.slots.len() {
            return Ok(false);
        }
        let (time, u, v) = self.slots[slot];
        let step_end = self.step_start[time as usize];
        let remaining_slots = self.slots.len() - slot;
        for k in 0..self.p {
            let have = self.informed[k] >> u & 1 == 1;
            let want = (self.informed[k] | self.fresh[k]) >> v & 1 == 0;
            if !(have && want) {
                continue;
            }
            self.fresh[k] |= 1 << v;
            self.choice[slot] = Some(k);
            self.needed -= 1;
            if self.advance(slot, step_end, time)? {
                return Ok(true);
            }
            self.needed += 1;
            self.choice[slot] = None;
            self.fresh[k] &= !(1 << v);
        }
        if remaining_slots > self.needed {
            return self.advance(slot, step_end, time);
        }
        Ok(false)
    }

    /// Moves past `slot`, closing the time step when it ends there.
    fn advance(&mut self, slot: usize, step_end: usize, time: u32) -> Result<bool, NotFound> {
        if slot + 1 < step_end {
            return self.run(slot + 1);
        }
        let saved: Vec<u64> = self.informed.clone();
        for k in 0..self.p {
            self.informed[k] |= self.fresh[k];
        }
        let fresh = core::mem::replace(&mut self.fresh, vec![0; self.p]);
        let ok = if self.reachable(self.tau - time) {
            self.run(slot + 1)?
        } else {
            false
        };
        if !ok {
            self.informed = saved;
            self.fresh = fresh;
        }
        Ok(ok)
    }
}

/// Backtracking search for a two-way universal broadcast meeting
/// `⌈(P−1)/d⌉`. Slots are expanded by (time, source, generator); each slot
/// is given to one task or left idle while there is spare capacity.
pub fn search_broadcast_schedule(
    graph: &CayleyGraph,
    budget: u64,
) -> Result<CommSchedule, NotFound> {
    let p = graph.vertex_count();
    if p > MAX_SEARCH_VERTICES {
        return Err(NotFound::TooLarge);
    }
    let d = graph.degree();
    if p == 1 {
        return Ok(CommSchedule::new(
            WireModel::TwoWay,
            vec![TaskGraph::new(TaskKind::Broadcast { root: 0 }, Vec::new())],
        ));
    }
    let tau = twoway_broadcast_lower_bound(p as u64, d as u64) as u32;
    let mut slots = Vec::new();
    let mut step_start = vec![0usize; tau as usize + 1];
    for t in 1..=tau {
        for u in 0..p {
            for gen in 0..d {
                slots.push((t, u, graph.neighbor(u as Vertex, gen) as usize));
            }
        }
        step_start[t as usize] = slots.len();
    }
    let closed_nbhd = (0..p)
        .map(|u| {
            graph
                .out_neighbors(u as Vertex)
                .fold(1u64 << u, |acc, (v, _)| acc | 1 << v)
        })
        .collect();
    let mut search = Search {
        p,
        tau,
        choice: vec![None; slots.len()],
        slots,
        step_start,
        closed_nbhd,
        informed: (0..p).map(|k| 1u64 << k).collect(),
        fresh: vec![0; p],
        needed: p * (p - 1),
        budget,
        expansions: 0,
    };
    if search.slots.len() < search.needed || !search.reachable(tau) {
        return Err(NotFound::ProvenInfeasible);
    }
    if !search.run(0)? {
        return Err(NotFound::ProvenInfeasible);
    }
    let mut tasks: Vec<TaskGraph> = (0..p as Vertex)
        .map(|k| TaskGraph::new(TaskKind::Broadcast { root: k }, Vec::new()))
        .collect();
    for (i, c) in search.choice.iter().enumerate() {
        if let Some(k) = *c {
            let (t, u, v) = search.slots[i];
            tasks[k]
                .edges
                .push(TimedEdge::new(u as Vertex, v as Vertex, t));
        }
    }
    Ok(CommSchedule::new(WireModel::TwoWay, tasks))
}
