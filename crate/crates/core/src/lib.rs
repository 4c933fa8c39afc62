//! Time-optimal global communication schedules on Cayley graphs.
//!
//! Graphs are Cayley coset graphs `G(Γ, Δ, H)` over small finite groups.
//! Schedules are sets of time-labelled task graphs; the validator checks
//! precedence inside each task and wire conflicts between tasks under the
//! two-way or one-way wire model, and the simulator replays them.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod exchange;
pub mod fixtures;
pub mod global_sum;
pub mod group;
pub mod hypercube;
pub mod regular_order;
pub mod schedule;
pub mod sim;
pub mod subsets;

pub use group::{build_cayley_graph, CayleyGraph, GroupError, GroupKind, GroupSpec, Vertex};
pub use schedule::{
    reverse_schedule, reverse_task_graph, schedule_time, validate_schedule, validate_task_graph,
    CommSchedule, TaskGraph, TaskKind, TimedEdge, ValidationReport, Violation, WireModel,
};
