//! Graphviz output.

use std::fmt::Write;

use cayley_comm_core::{schedule_time, CayleyGraph, CommSchedule, TaskKind};

pub fn graph_to_dot(graph: &CayleyGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in 0..graph.vertex_count() {
        writeln!(out, "  {v};").unwrap();
    }
    for (u, v, k) in graph.edges() {
        writeln!(out, "  {u} -> {v} [gen={k}];").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Hue runs from red at time 1 to blue at `τ`.
fn time_color(t: u32, tau: u32) -> String {
    let h = if tau <= 1 {
        0.0
    } else {
        0.67 * (t - 1) as f64 / (tau - 1) as f64
    };
    format!("{h:.3} 0.85 0.85")
}

/// One cluster per task, edges labelled and coloured by time.
pub fn schedule_to_dot(schedule: &CommSchedule) -> String {
    let tau = schedule_time(schedule).unwrap_or(0);
    let mut out = String::from("digraph schedule {\n");
    for (i, task) in schedule.tasks.iter().enumerate() {
        let label = match task.kind {
            TaskKind::Broadcast { root } => format!("broadcast {root}"),
            TaskKind::Accumulation { root } => format!("accumulation {root}"),
            TaskKind::Path { src, dst } => format!("path {src}->{dst}"),
            TaskKind::GlobalSumTree { root } => format!("global sum {root}"),
        };
        writeln!(out, "  subgraph cluster_{i} {{\n    label=\"{label}\";").unwrap();
        for e in &task.edges {
            writeln!(
                out,
                "    \"{i}:{}\" -> \"{i}:{}\" [label={}, color=\"{}\"];",
                e.src,
                e.dst,
                e.time,
                time_color(e.time, tau)
            )
            .unwrap();
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cayley_comm_core::fixtures::hypercube;

    #[test]
    fn square() {
        let dot = graph_to_dot(&hypercube(2).unwrap());
        assert!(dot.contains("0 -> 1 [gen=0];"));
        assert!(dot.contains("3 -> 1 [gen=1];"));
        assert_eq!(dot.matches("->").count(), 8);
    }
}
