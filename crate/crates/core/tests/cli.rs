mod common;

use std::io::Write;
use std::process::{Command, Stdio};

use spack_core::io::{parse_graph6, ColoringDocument};
use spack_core::verify::PackingColoring;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn spack(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spack"));
    cmd.args(args)
        .env_remove("SPACK_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    Output {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str], stdin: &str) -> Output {
    spack(args, stdin, &[])
}

fn gen(family: &str, n: &str) -> String {
    let out = run(&["gen", "--family", family, "--n", n], "");
    assert_eq!(out.code, 0, "{}", out.stderr);
    out.stdout
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("spack-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn color_then_verify_round_trips_through_a_pipe() {
    let graphs = format!("{}{}", gen("cycle", "5"), gen("path", "7"));
    let colored = run(&["color", "--json"], &graphs);
    assert_eq!(colored.code, 0, "{}", colored.stderr);
    assert_eq!(colored.stdout.lines().count(), 2);
    for line in colored.stdout.lines() {
        let doc: ColoringDocument = serde_json::from_str(line).unwrap();
        let g = doc.graph().unwrap().unwrap();
        assert!(common::is_packing_coloring(
            &common::graph_distances(&g),
            &doc.coloring
        ));
    }
    let verified = run(&["verify"], &colored.stdout);
    assert_eq!(verified.code, 0, "{}", verified.stderr);
    assert_eq!(verified.stdout, "[]\n[]\n");
}

#[test]
fn plain_color_output_follows_the_coloring_schema() {
    let out = run(&["color", "--input", "-"], &gen("cycle", "7"));
    assert_eq!(out.code, 0);
    let value: serde_json::Value = serde_json::from_str(out.stdout.trim()).unwrap();
    assert_eq!(value["n"], 7);
    let classes = value["classes"].as_array().unwrap();
    let labels: Vec<&str> = classes
        .iter()
        .map(|c| c["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["1_a", "1_b", "2_a", "2_b"]);
    let radii: Vec<u64> = classes
        .iter()
        .map(|c| c["radius"].as_u64().unwrap())
        .collect();
    assert_eq!(radii, [1, 1, 2, 2]);
}

#[test]
fn cubic_input_exits_one_and_bad_input_exits_two() {
    let petersen = gen("petersen", "10");
    let out = run(&["color"], &petersen);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("cubic component"));
    assert!(out.stdout.is_empty());

    let out = run(&["color", "--json"], &petersen);
    assert_eq!(out.code, 1);
    let report: serde_json::Value = serde_json::from_str(out.stdout.trim()).unwrap();
    assert_eq!(report["cubic_components"][0]["reason"], "fallback-disabled");

    assert_eq!(run(&["color"], "not a graph\n").code, 2);
    // K5 has degree 4
    assert_eq!(run(&["color"], "D~{\n").code, 2);
    assert_eq!(
        run(&["color", "--input", "/nonexistent/graph.g6"], "").code,
        2
    );
}

#[test]
fn verify_reports_violations_as_json() {
    let c4 = gen("cycle", "4");
    let bad = PackingColoring::with_classes(4, [("a", 1)]);
    let mut bad = bad;
    bad.classes[0].vertices = vec![0, 1, 2, 3];
    let coloring = temp_file("bad.json", &bad.to_json());
    let out = run(&["verify", "--coloring", &coloring], &c4);
    assert_eq!(out.code, 1);
    let problems: serde_json::Value = serde_json::from_str(out.stdout.trim()).unwrap();
    let problems = problems.as_array().unwrap();
    assert_eq!(problems.len(), 4);
    assert!(problems.iter().all(|p| p["kind"] == "distance"));
    assert!(!out.stderr.is_empty());
}

#[test]
fn exact_prints_status_and_exit_code() {
    let petersen = gen("petersen", "10");
    let unsat = run(&["exact", "--seq", "1,1,2,2"], &petersen);
    assert_eq!((unsat.code, unsat.stdout.as_str()), (1, "UNSAT\n"));
    assert!(unsat.stderr.contains("nodes explored"));

    let sat = run(&["exact", "--seq", "1,1,2,2,3"], &petersen);
    assert_eq!(sat.code, 0);
    let mut lines = sat.stdout.lines();
    assert_eq!(lines.next(), Some("SAT"));
    let c = PackingColoring::from_json(lines.next().unwrap()).unwrap();
    let g = parse_graph6(petersen.trim().as_bytes()).unwrap();
    assert!(common::is_packing_coloring(
        &common::graph_distances(&g),
        &c
    ));

    let budget = run(&["exact", "--seq", "1,1,2,2", "--budget", "1"], &petersen);
    assert_eq!((budget.code, budget.stdout.as_str()), (3, "BUDGET\n"));
}

#[test]
fn chi_rho_prints_one_value_per_graph() {
    let graphs = format!("{}{}", gen("cycle", "5"), gen("cycle", "8"));
    let out = run(&["chi-rho", "--max-k", "6"], &graphs);
    assert_eq!((out.code, out.stdout.as_str()), (0, "4\n3\n"));
    let unknown = run(&["chi-rho", "--max-k", "3"], &gen("cycle", "5"));
    assert_eq!((unknown.code, unknown.stdout.as_str()), (3, "UNKNOWN\n"));
}

#[test]
fn subdivide_lifts_a_coloring() {
    let g6 = gen("prism", "3");
    let plain = run(&["subdivide"], &g6);
    assert_eq!(plain.code, 0);
    let sub = parse_graph6(plain.stdout.trim().as_bytes()).unwrap();
    assert_eq!(sub.vertex_count(), 6 + 9);

    let path = gen("path", "6");
    let colored = run(&["color"], &path);
    let coloring = temp_file("path.json", &colored.stdout);
    let lifted = run(&["subdivide", "--with-coloring", &coloring], &path);
    assert_eq!(lifted.code, 0, "{}", lifted.stderr);
    let mut lines = lifted.stdout.lines();
    let sub = parse_graph6(lines.next().unwrap().as_bytes()).unwrap();
    let c = PackingColoring::from_json(lines.next().unwrap()).unwrap();
    assert_eq!(c.radii(), vec![1, 2, 3, 4, 5]);
    assert!(common::is_packing_coloring(
        &common::graph_distances(&sub),
        &c
    ));

    let bad = temp_file("bad-path.json", &PackingColoring::new(6).to_json());
    assert_eq!(run(&["subdivide", "--with-coloring", &bad], &path).code, 2);
}

#[test]
fn gen_uses_the_seed_from_the_environment() {
    let args = [
        "gen",
        "--family",
        "random-subcubic",
        "--n",
        "40",
        "--non-cubic",
        "--count",
        "3",
    ];
    let a = spack(&args, "", &[("SPACK_SEED", "7")]);
    let b = spack(&args, "", &[("SPACK_SEED", "7")]);
    let c = spack(&[&args[..], &["--seed", "7"]].concat(), "", &[]);
    let d = spack(&args, "", &[("SPACK_SEED", "8")]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout.lines().count(), 3);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_ne!(a.stdout, d.stdout);
    for line in a.stdout.lines() {
        let g = parse_graph6(line.as_bytes()).unwrap();
        assert!(g.is_connected() && g.max_degree() <= 3 && !g.is_cubic());
    }
}

#[test]
fn edge_list_input_is_accepted() {
    let out = run(&["color", "--format", "edges"], "4 4\n0 1\n1 2\n2 3\n3 0\n");
    assert_eq!(out.code, 0, "{}", out.stderr);
    let edges = run(
        &["gen", "--family", "cycle", "--n", "5", "--format", "edges"],
        "",
    );
    let out = run(&["chi-rho", "--max-k", "5"], &edges.stdout);
    assert_eq!(out.stdout, "4\n");
}
