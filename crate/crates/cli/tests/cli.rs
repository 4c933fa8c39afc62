use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cayley_comm::args::Cli;
use cayley_comm::formats::{schedule_from_json, schedule_to_json};
use cayley_comm::{run, CliError};
use cayley_comm_core::bounds::hypercube_optimal_times;
use clap::Parser;
use serde_json::Value;

fn bin(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley-comm"))
        .args(args)
        .current_dir(dir)
        .env_remove("CAYLEY_COMM_OUT")
        .output()
        .expect("binary runs")
}

/// Runs in-process; returns stdout on success.
fn call(args: &[&str]) -> Result<String, CliError> {
    let cli = Cli::try_parse_from(std::iter::once("cayley-comm").chain(args.iter().copied()))
        .expect("args parse");
    let mut out = Vec::new();
    let mut err = Vec::new();
    run(cli, &mut out, &mut err)?;
    Ok(String::from_utf8(out).unwrap())
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn documented_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(
        &[
            "schedule",
            "--graph",
            "q3",
            "--task",
            "broadcast",
            "--wire",
            "one-way",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "tau=5 bound=5 OPTIMAL");
    assert!(dir.path().join("q3-broadcast-one-way.json").is_file());

    let o = bin(
        &[
            "schedule", "--graph", "q4", "--task", "exchange", "--s", "2", "--wire", "one-way",
        ],
        dir.path(),
    );
    assert_eq!(stdout(&o).trim(), "tau=6 bound=6 OPTIMAL");

    let o = bin(
        &[
            "schedule",
            "--graph",
            "petersen",
            "--task",
            "broadcast",
            "--wire",
            "two-way",
            "--search",
        ],
        dir.path(),
    );
    assert_eq!(stdout(&o).trim(), "tau=3 bound=3 OPTIMAL");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(
        &["schedule", "--graph", "q9x", "--task", "broadcast"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    let o = bin(
        &[
            "schedule", "--graph", "q3", "--task", "exchange", "--s", "3",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    let o = bin(
        &["validate", "--graph", "q3", "--schedule", "missing.json"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["frobnicate"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    // Diameter 4 exceeds the counting bound 3, so the search proves there is no match.
    let o = bin(
        &[
            "schedule",
            "--graph",
            "z2z8x5",
            "--task",
            "broadcast",
            "--search",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn corrupted_schedule_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let out = path.to_str().unwrap();
    call(&[
        "schedule",
        "--graph",
        "q3",
        "--task",
        "broadcast",
        "--wire",
        "one-way",
        "--out",
        out,
    ])
    .unwrap();
    let mut s = schedule_from_json(&fs::read_to_string(&path).unwrap()).unwrap();
    // Copy one edge into a second task: same wire, same time.
    let e = s.tasks[0].edges[0];
    s.tasks[1].edges.push(e);
    fs::write(&path, schedule_to_json(&s)).unwrap();
    let o = bin(
        &["validate", "--graph", "q3", "--schedule", out],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("LabelCollision"));
    let o = bin(
        &["simulate", "--graph", "q3", "--schedule", out],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bounds_table_matches_library() {
    let text = call(&["bounds", "--graph", "q5", "--format", "json"]).unwrap();
    let rows: Vec<Value> = serde_json::from_str(&text).unwrap();
    let want = hypercube_optimal_times(5);
    assert_eq!(rows.len(), want.len());
    for (row, w) in rows.iter().zip(&want) {
        assert_eq!(row["tau"].as_u64(), Some(w.tau));
    }
    assert!(call(&["bounds", "--graph", "q5"])
        .unwrap()
        .contains("universal_exchange"));
}

#[test]
fn gsum_random_and_file() {
    let text = call(&[
        "gsum", "--graph", "q3", "--values", "random", "--seed", "7", "--format", "json",
    ])
    .unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["ok"], Value::Bool(true));
    assert_eq!(v["rounds"].as_u64(), Some(3));
    assert!((v["sum"].as_f64().unwrap() - v["recovered_sum"].as_f64().unwrap()).abs() < 1e-9);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    fs::write(&path, "[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]").unwrap();
    let text = call(&[
        "gsum",
        "--graph",
        "petersen",
        "--values",
        path.to_str().unwrap(),
        "--format",
        "json",
    ])
    .unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert!((v["recovered_sum"].as_f64().unwrap() - 55.0).abs() < 1e-9);
    assert!(matches!(
        call(&["gsum", "--graph", "q3", "--values", path.to_str().unwrap()]),
        Err(CliError::Usage(_))
    ));
}

#[test]
fn deterministic_output() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("x{i}.json"));
        call(&[
            "schedule",
            "--graph",
            "q5",
            "--task",
            "exchange",
            "--wire",
            "one-way",
            "--out",
            path.to_str().unwrap(),
        ])
        .unwrap();
        outputs.push(fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let a = call(&["gsum", "--graph", "k7", "--seed", "11", "--format", "json"]).unwrap();
    let b = call(&["gsum", "--graph", "k7", "--seed", "11", "--format", "json"]).unwrap();
    assert_eq!(a, b);
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_cayley-comm"))
        .args([
            "schedule",
            "--graph",
            "q2",
            "--task",
            "accumulation",
            "--wire",
            "one-way",
            "--emit-template",
        ])
        .env("CAYLEY_COMM_OUT", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("q2-accumulation-one-way.json").is_file());
    let t: Value = serde_json::from_str(
        &fs::read_to_string(dir.path().join("q2-accumulation-one-way.template.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(t["ordering"].as_array().unwrap().len(), 3);
}

fn round_trip(graph: &str, extra: &[&str], sim_extra: &[&str], dir: &Path, n: usize) {
    let path = dir.join(format!("rt{n}.json"));
    let out = path.to_str().unwrap();
    let mut args = vec!["schedule", "--graph", graph, "--out", out];
    args.extend_from_slice(extra);
    let line = call(&args).unwrap_or_else(|e| panic!("{graph} {extra:?}: {e}"));
    assert!(line.ends_with("OPTIMAL\n"), "{graph} {extra:?}: {line}");
    call(&["validate", "--graph", graph, "--schedule", out]).unwrap();
    let mut sim = vec!["simulate", "--graph", graph, "--schedule", out];
    sim.extend_from_slice(sim_extra);
    let report: Value = serde_json::from_str(&call(&sim).unwrap()).unwrap();
    assert_eq!(report["ok"], Value::Bool(true), "{graph} {extra:?}");
}

#[test]
fn round_trip_every_builder() {
    let dir = tempfile::tempdir().unwrap();
    let mut n = 0;
    for d in 1..=5u32 {
        let g = format!("q{d}");
        for wire in ["one-way", "two-way"] {
            for task in ["broadcast", "accumulation"] {
                for l in 1..=d {
                    let ls = l.to_string();
                    round_trip(
                        &g,
                        &["--task", task, "--wire", wire, "--l", &ls],
                        &["--within", &ls],
                        dir.path(),
                        n,
                    );
                    n += 1;
                }
            }
            round_trip(
                &g,
                &["--task", "exchange", "--wire", wire],
                &[],
                dir.path(),
                n,
            );
            n += 1;
            for s in 1..d {
                let ss = s.to_string();
                round_trip(
                    &g,
                    &["--task", "exchange", "--wire", wire, "--s", &ss],
                    &[],
                    dir.path(),
                    n,
                );
                n += 1;
            }
            if d >= 2 {
                round_trip(
                    &g,
                    &["--task", "exchange", "--wire", wire, "--far"],
                    &[],
                    dir.path(),
                    n,
                );
                n += 1;
            }
        }
    }
    for g in ["petersen", "k4", "k6", "c6", "q3"] {
        round_trip(g, &["--task", "broadcast", "--search"], &[], dir.path(), n);
        round_trip(
            g,
            &["--task", "accumulation", "--search"],
            &[],
            dir.path(),
            n + 1,
        );
        n += 2;
    }
}

#[test]
fn graph_exports() {
    let v: Value = serde_json::from_str(&call(&["graph", "--graph", "petersen"]).unwrap()).unwrap();
    assert_eq!((v["p"].as_u64(), v["d"].as_u64()), (Some(10), Some(3)));
    assert_eq!(v["bidirectional"], Value::Bool(true));
    assert_eq!(v["edges"].as_array().unwrap().len(), 30);
    assert!(call(&["graph", "--graph", "c5", "--format", "dot"])
        .unwrap()
        .contains("[gen=1]"));
    let order: Value = serde_json::from_str(&call(&["order", "--graph", "q3"]).unwrap()).unwrap();
    assert_eq!(order["vertex_order"].as_array().unwrap().len(), 8);
}

#[test]
fn json_group_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z2z8.json");
    fs::write(
        &path,
        r#"{"group":"abelian","moduli":[2,8],"generators":[[0,1],[0,-1],[1,0],[1,1],[1,-1]]}"#,
    )
    .unwrap();
    let text = call(&[
        "bounds",
        "--graph",
        path.to_str().unwrap(),
        "--format",
        "json",
    ])
    .unwrap();
    let rows: Vec<Value> = serde_json::from_str(&text).unwrap();
    let diameter = rows.iter().find(|r| r["task"] == "diameter").unwrap();
    assert_eq!(diameter["tau"].as_u64(), Some(4));
}
