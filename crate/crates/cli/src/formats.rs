//! JSON file formats.

use cayley_comm_core::group::{ElementSpec, GroupKind, GroupSpec};
use cayley_comm_core::regular_order::RegularOrder;
use cayley_comm_core::sim::SimReport;
use cayley_comm_core::{
    CayleyGraph, CommSchedule, TaskGraph, TaskKind, TimedEdge, Vertex, WireModel,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WireName {
    TwoWay,
    OneWay,
}

impl From<WireModel> for WireName {
    fn from(w: WireModel) -> Self {
        match w {
            WireModel::TwoWay => WireName::TwoWay,
            WireModel::OneWay => WireName::OneWay,
        }
    }
}

impl From<WireName> for WireModel {
    fn from(w: WireName) -> Self {
        match w {
            WireName::TwoWay => WireModel::TwoWay,
            WireName::OneWay => WireModel::OneWay,
        }
    }
}

/// One task; edges are `[src, dst, time]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TaskFile {
    Broadcast {
        root: Vertex,
        edges: Vec<[u32; 3]>,
    },
    Accumulation {
        root: Vertex,
        edges: Vec<[u32; 3]>,
    },
    Path {
        src: Vertex,
        dst: Vertex,
        edges: Vec<[u32; 3]>,
    },
    GlobalSumTree {
        root: Vertex,
        edges: Vec<[u32; 3]>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleFile {
    pub wire_model: WireName,
    pub tasks: Vec<TaskFile>,
}

fn edge_triples(edges: &[TimedEdge]) -> Vec<[u32; 3]> {
    edges.iter().map(|e| [e.src, e.dst, e.time]).collect()
}

impl From<&CommSchedule> for ScheduleFile {
    fn from(s: &CommSchedule) -> Self {
        let tasks = s
            .tasks
            .iter()
            .map(|t| {
                let edges = edge_triples(&t.edges);
                match t.kind {
                    TaskKind::Broadcast { root } => TaskFile::Broadcast { root, edges },
                    TaskKind::Accumulation { root } => TaskFile::Accumulation { root, edges },
                    TaskKind::Path { src, dst } => TaskFile::Path { src, dst, edges },
                    TaskKind::GlobalSumTree { root } => TaskFile::GlobalSumTree { root, edges },
                }
            })
            .collect();
        ScheduleFile {
            wire_model: s.wire_model.into(),
            tasks,
        }
    }
}

impl From<ScheduleFile> for CommSchedule {
    fn from(f: ScheduleFile) -> Self {
        let timed = |edges: Vec<[u32; 3]>| {
            edges
                .into_iter()
                .map(|[s, d, t]| TimedEdge::new(s, d, t))
                .collect()
        };
        let tasks = f
            .tasks
            .into_iter()
            .map(|t| match t {
                TaskFile::Broadcast { root, edges } => {
                    TaskGraph::new(TaskKind::Broadcast { root }, timed(edges))
                }
                TaskFile::Accumulation { root, edges } => {
                    TaskGraph::new(TaskKind::Accumulation { root }, timed(edges))
                }
                TaskFile::Path { src, dst, edges } => {
                    TaskGraph::new(TaskKind::Path { src, dst }, timed(edges))
                }
                TaskFile::GlobalSumTree { root, edges } => {
                    TaskGraph::new(TaskKind::GlobalSumTree { root }, timed(edges))
                }
            })
            .collect();
        CommSchedule::new(f.wire_model.into(), tasks)
    }
}

pub fn schedule_to_json(s: &CommSchedule) -> String {
    serde_json::to_string(&ScheduleFile::from(s)).expect("schedule serializes")
}

pub fn schedule_from_json(text: &str) -> Result<CommSchedule, FormatError> {
    Ok(serde_json::from_str::<ScheduleFile>(text)?.into())
}

/// Graph export; edges are `[src, dst, generator index]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub p: usize,
    pub d: usize,
    pub bidirectional: bool,
    pub edges: Vec<[u64; 3]>,
}

impl From<&CayleyGraph> for GraphFile {
    fn from(g: &CayleyGraph) -> Self {
        GraphFile {
            p: g.vertex_count(),
            d: g.degree(),
            bidirectional: g.is_bidirectional(),
            edges: g
                .edges()
                .map(|(u, v, k)| [u as u64, v as u64, k as u64])
                .collect(),
        }
    }
}

/// A group element in a graph description: a raw index or a residue vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementFile {
    Index(u64),
    Residues(Vec<i64>),
}

impl From<ElementFile> for ElementSpec {
    fn from(e: ElementFile) -> Self {
        match e {
            ElementFile::Index(i) => ElementSpec::Index(i),
            ElementFile::Residues(r) => ElementSpec::Residues(r),
        }
    }
}

/// Graph input: a group, its generators and an optional coset subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupFile {
    Hypercube {
        dim: u32,
        #[serde(default)]
        generators: Vec<ElementFile>,
    },
    Abelian {
        moduli: Vec<u32>,
        generators: Vec<ElementFile>,
        #[serde(default)]
        subgroup: Vec<ElementFile>,
    },
    Table {
        table: Vec<Vec<u32>>,
        generators: Vec<ElementFile>,
        #[serde(default)]
        subgroup: Vec<ElementFile>,
    },
}

impl From<GroupFile> for GroupSpec {
    fn from(f: GroupFile) -> Self {
        let conv = |v: Vec<ElementFile>| v.into_iter().map(ElementSpec::from).collect();
        match f {
            GroupFile::Hypercube { dim, generators } => GroupSpec {
                kind: GroupKind::HypercubeZ2d { dim },
                generators: conv(generators),
                subgroup: Vec::new(),
            },
            GroupFile::Abelian {
                moduli,
                generators,
                subgroup,
            } => GroupSpec {
                kind: GroupKind::AbelianProduct { moduli },
                generators: conv(generators),
                subgroup: conv(subgroup),
            },
            GroupFile::Table {
                table,
                generators,
                subgroup,
            } => GroupSpec {
                kind: GroupKind::ExplicitTable { table },
                generators: conv(generators),
                subgroup: conv(subgroup),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegularOrderFile {
    pub generator_order: Vec<usize>,
    pub vertex_order: Vec<Vertex>,
    pub parents: Vec<usize>,
}

impl From<&RegularOrder> for RegularOrderFile {
    fn from(o: &RegularOrder) -> Self {
        RegularOrderFile {
            generator_order: o.generator_order.clone(),
            vertex_order: o.vertex_order.clone(),
            parents: o.parents.clone(),
        }
    }
}

impl From<RegularOrderFile> for RegularOrder {
    fn from(f: RegularOrderFile) -> Self {
        RegularOrder {
            generator_order: f.generator_order,
            vertex_order: f.vertex_order,
            parents: f.parents,
        }
    }
}

/// Simulator output. `per_pair_completion[u][v]` is `null` where nothing
/// arrived.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimReportFile {
    pub ok: bool,
    pub tau: u32,
    pub undelivered: Vec<[Vertex; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub per_pair_completion: Option<Vec<Vec<Option<u32>>>>,
}

impl SimReportFile {
    pub fn new(r: &SimReport, with_completion: bool) -> Self {
        let p = r.vertex_count as Vertex;
        let per_pair_completion = with_completion.then(|| {
            (0..p)
                .map(|u| (0..p).map(|v| r.completion(u, v)).collect())
                .collect()
        });
        SimReportFile {
            ok: r.ok,
            tau: r.tau,
            undelivered: r.undelivered.iter().map(|&(u, v)| [u, v]).collect(),
            per_pair_completion,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_layout() {
        let s = CommSchedule::new(
            WireModel::OneWay,
            vec![
                TaskGraph::new(
                    TaskKind::Broadcast { root: 0 },
                    vec![TimedEdge::new(0, 1, 1)],
                ),
                TaskGraph::new(
                    TaskKind::Path { src: 1, dst: 0 },
                    vec![TimedEdge::new(1, 0, 2)],
                ),
            ],
        );
        let text = schedule_to_json(&s);
        assert_eq!(
            text,
            r#"{"wire_model":"one_way","tasks":[{"kind":"broadcast","root":0,"edges":[[0,1,1]]},{"kind":"path","src":1,"dst":0,"edges":[[1,0,2]]}]}"#
        );
        assert_eq!(schedule_from_json(&text).unwrap(), s);
    }

    #[test]
    fn rejects_unknown_kind() {
        let bad = r#"{"wire_model":"two_way","tasks":[{"kind":"gossip","root":0,"edges":[]}]}"#;
        assert!(schedule_from_json(bad).is_err());
    }

    #[test]
    fn group_file_residues() {
        let f: GroupFile = serde_json::from_str(
            r#"{"group":"abelian","moduli":[2,8],"generators":[[0,1],[0,-1],[1,0]]}"#,
        )
        .unwrap();
        let spec: GroupSpec = f.into();
        assert_eq!(spec.generators[1], ElementSpec::Residues(vec![0, -1]));
    }
}
