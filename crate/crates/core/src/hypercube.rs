//! Hypercube broadcast and accumulation by template translation.
//!
//! The template tree reaches `S_i` from `S_i \ e_b` (`i = ad + b`) in slot
//! `a`. Translates by even vertices fire slot `a` at `2a + 1`, odd ones at
//! `2a + 2`. When `N_l ≡ r (mod d)` with `1 ≤ r ≤ d/2` the odd translates
//! re-root the last block through `e_{i+r}`, which frees them to fire at
//! `2a + 1` as well.

use alloc::vec::Vec;

use thiserror::Error;

use crate::bounds::ball_count;
use crate::group::Vertex;
use crate::schedule::{reverse_schedule, CommSchedule, TaskGraph, TaskKind, TimedEdge, WireModel};
use crate::subsets::{
    order_all_subsets, tail_length, Strengthen, Subset, SubsetError, SubsetOrdering,
};

/// Largest dimension the broadcast builders accept.
pub const MAX_BROADCAST_DIM: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypercubeError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(&'static str),
    #[error(transparent)]
    Subsets(#[from] SubsetError),
}

/// How template slots become times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Timing {
    /// Slot `u` fires at `u + 1` everywhere.
    TwoWay,
    /// Slot `u` fires at `2u + 1` on even vertices and `2u + 2` on odd ones;
    /// directions in `flip` (a bitmask) swap the two parities.
    OneWay { flip: u64 },
}

impl Timing {
    pub const ONE_WAY: Timing = Timing::OneWay { flip: 0 };

    pub fn time(self, slot: u32, x: Vertex, dir: u32) -> u32 {
        match self {
            Timing::TwoWay => slot + 1,
            Timing::OneWay { flip } => {
                let even = x.count_ones().is_multiple_of(2);
                let flipped = flip >> dir & 1 == 1;
                if even != flipped {
                    2 * slot + 1
                } else {
                    2 * slot + 2
                }
            }
        }
    }

    pub fn wire_model(self) -> WireModel {
        match self {
            Timing::TwoWay => WireModel::TwoWay,
            Timing::OneWay { .. } => WireModel::OneWay,
        }
    }
}

/// One template edge `parent → child` in slot `slot` along `dir`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TemplateEdge {
    pub parent: Subset,
    pub child: Subset,
    pub dir: u32,
    pub slot: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BroadcastTemplate {
    pub d: u32,
    pub l: u32,
    pub ordering: SubsetOrdering,
    pub edges: Vec<TemplateEdge>,
    /// Replacement for the last block used by odd translates, when the
    /// tail swap applies.
    pub swapped_tail: Option<Vec<TemplateEdge>>,
}

pub fn broadcast_template(d: u32, l: u32) -> Result<BroadcastTemplate, HypercubeError> {
    if d == 0 || l == 0 || l > d || d > MAX_BROADCAST_DIM {
        return Err(HypercubeError::InvalidParameters(
            "broadcast needs 1 ≤ l ≤ d ≤ 16",
        ));
    }
    let ordering = order_all_subsets(d, l, Strengthen::ALL)?;
    let du = d as usize;
    let edges: Vec<TemplateEdge> = ordering
        .subsets
        .iter()
        .enumerate()
        .map(|(i, &child)| {
            let dir = (i % du) as u32;
            TemplateEdge {
                parent: child & !(1 << dir),
                child,
                dir,
                slot: (i / du) as u32,
            }
        })
        .collect();
    let swapped_tail = tail_length(d, l).map(|r| {
        let n = edges.len();
        edges[n - r as usize..]
            .iter()
            .enumerate()
            .map(|(j, e)| {
                let dir = (j as u32 + r) % d;
                TemplateEdge {
                    parent: e.child & !(1 << dir),
                    dir,
                    ..*e
                }
            })
            .collect()
    });
    Ok(BroadcastTemplate {
        d,
        l,
        ordering,
        edges,
        swapped_tail,
    })
}

impl BroadcastTemplate {
    /// Translates the template to every vertex.
    pub fn materialize(&self, timing: Timing) -> CommSchedule {
        let p = 1u32 << self.d;
        let n = self.edges.len();
        let tail_len = self.swapped_tail.as_ref().map_or(0, |t| t.len());
        let tasks = (0..p)
            .map(|x| {
                let odd = x.count_ones() % 2 == 1;
                let mut edges = Vec::with_capacity(n);
                for (i, e) in self.edges.iter().enumerate() {
                    let in_tail = i >= n - tail_len;
                    let (edge, time) = match (timing, &self.swapped_tail) {
                        (Timing::OneWay { .. }, Some(tail)) if in_tail => {
                            let e = if odd { &tail[i - (n - tail_len)] } else { e };
                            (e, 2 * e.slot + 1)
                        }
                        _ => (e, timing.time(e.slot, x, e.dir)),
                    };
                    edges.push(TimedEdge::new(
                        x ^ edge.parent as Vertex,
                        x ^ edge.child as Vertex,
                        time,
                    ));
                }
                TaskGraph::new(TaskKind::Broadcast { root: x }, edges)
            })
            .collect();
        CommSchedule::new(timing.wire_model(), tasks)
    }
}

/// Broadcast from every vertex to all vertices within distance `l`.
pub fn build_broadcast(d: u32, l: u32, timing: Timing) -> Result<CommSchedule, HypercubeError> {
    Ok(broadcast_template(d, l)?.materialize(timing))
}

/// One-way broadcast within distance `l` in `⌈2 N_l / d⌉` steps.
pub fn build_oneway_broadcast(d: u32, l: u32) -> Result<CommSchedule, HypercubeError> {
    build_broadcast(d, l, Timing::ONE_WAY)
}

/// Every vertex accumulates from all vertices within distance `l`: the
/// broadcast with every arrow reversed and times mirrored.
pub fn build_oneway_accumulation(d: u32, l: u32) -> Result<CommSchedule, HypercubeError> {
    Ok(reverse_schedule(&build_oneway_broadcast(d, l)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoWayTask {
    BroadcastWithin(u32),
    ExchangeAt(u32),
    ExchangeFar,
    UniversalExchange,
}

/// The one-way constructions with both parities sharing one time per slot.
pub fn build_twoway_variants(d: u32, task: TwoWayTask) -> Result<CommSchedule, HypercubeError> {
    use crate::exchange::{build_exchange, build_exchange_far, build_universal_exchange};
    match task {
        TwoWayTask::BroadcastWithin(l) => build_broadcast(d, l, Timing::TwoWay),
        TwoWayTask::ExchangeAt(s) => build_exchange(d, s, Timing::TwoWay),
        TwoWayTask::ExchangeFar => build_exchange_far(d, Timing::TwoWay),
        TwoWayTask::UniversalExchange => build_universal_exchange(d, Timing::TwoWay),
    }
}

/// `⌈2 N_l / d⌉`, the time the one-way broadcast attains.
pub fn oneway_broadcast_time(d: u32, l: u32) -> u64 {
    (2 * ball_count(d, l)).div_ceil(d as u64)
}
