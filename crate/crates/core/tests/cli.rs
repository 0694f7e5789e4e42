use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use asdim::covers::Cover;

fn asdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asdim"))
        .args(args)
        .output()
        .unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn grid_generate_cover_verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, cover, dot) = (
        dir.path().join("g.json"),
        dir.path().join("c.json"),
        dir.path().join("c.dot"),
    );
    let out = asdim(&[
        "generate",
        "--family",
        "grid",
        "--w",
        "10",
        "--h",
        "10",
        "--out",
        p(&graph),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = asdim(&[
        "cover",
        "--graph",
        p(&graph),
        "--algorithm",
        "planar-pipeline",
        "--rho",
        "1",
        "--base",
        "0",
        "--out",
        p(&cover),
        "--dot",
        p(&dot),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(fs::read_to_string(&dot).unwrap().starts_with("graph G {"));
    let out = asdim(&[
        "verify",
        "--graph",
        p(&graph),
        "--cover",
        p(&cover),
        "--diameter-bound",
        "3000000",
        "--radius",
        "1",
        "--multiplicity-bound",
        "4",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], true);
}

#[test]
fn tampered_cover_exits_with_violation() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, cover) = (dir.path().join("g.json"), dir.path().join("c.json"));
    asdim(&[
        "generate",
        "--family",
        "cycle",
        "--n",
        "300",
        "--out",
        p(&graph),
    ]);
    asdim(&[
        "cover",
        "--graph",
        p(&graph),
        "--algorithm",
        "cactus",
        "--m",
        "1",
        "--out",
        p(&cover),
    ]);
    let mut c = Cover::from_json_str(&fs::read_to_string(&cover).unwrap()).unwrap();
    let removed = c.sets[0].vertices.remove(0);
    fs::write(&cover, c.to_json_string()).unwrap();
    // Bounds come from the cover's own params.
    let out = asdim(&["verify", "--graph", p(&graph), "--cover", p(&cover)]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains(&format!("Vertex({removed})")), "{stderr}");
}

#[test]
fn theta_certificate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, cert) = (dir.path().join("t.json"), dir.path().join("cert.json"));
    asdim(&[
        "generate",
        "--family",
        "theta",
        "--arms",
        "60,60,60",
        "--out",
        p(&graph),
    ]);
    let out = asdim(&[
        "theta-search",
        "--graph",
        p(&graph),
        "--M",
        "10",
        "--mode",
        "exhaustive",
        "--certificate",
        p(&cert),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = asdim(&[
        "verify-theta",
        "--graph",
        p(&graph),
        "--certificate",
        p(&cert),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let check: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(check["valid"], true);

    let mut tampered: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    tampered["M"] = serde_json::json!(40.0);
    fs::write(&cert, tampered.to_string()).unwrap();
    let out = asdim(&[
        "verify-theta",
        "--graph",
        p(&graph),
        "--certificate",
        p(&cert),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    asdim(&[
        "generate",
        "--family",
        "grid",
        "--w",
        "8",
        "--h",
        "8",
        "--out",
        p(&graph),
    ]);
    let out = asdim(&[
        "theta-search",
        "--graph",
        p(&graph),
        "--M",
        "1",
        "--budget",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "budget-exhausted");
}

#[test]
fn annulus_check_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    asdim(&[
        "generate",
        "--family",
        "grid",
        "--w",
        "40",
        "--h",
        "40",
        "--out",
        p(&graph),
    ]);
    let out = asdim(&[
        "annulus-check",
        "--graph",
        p(&graph),
        "--r",
        "10",
        "--m",
        "2",
        "--cutoff",
        "30",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["theta_free"], true);
    let out = asdim(&["stats", "--graph", p(&graph)]);
    let stats: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(stats["diameter"], 78.0);
    assert_eq!(stats["vertices"], 1600);
}

#[test]
fn parse_errors_exit_one() {
    assert_eq!(asdim(&["cover"]).status.code(), Some(1));
    assert_eq!(
        asdim(&["generate", "--family", "nope"]).status.code(),
        Some(1)
    );
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("bad.json");
    fs::write(&graph, "{\"n\": 2, \"edges\": [[0, 5]]}").unwrap();
    let out = asdim(&["stats", "--graph", p(&graph)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("endpoint"));
}

#[test]
fn thread_count_does_not_change_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    asdim(&[
        "generate",
        "--family",
        "random-planar",
        "--w",
        "30",
        "--h",
        "30",
        "--p",
        "0.3",
        "--seed",
        "4",
        "--out",
        p(&graph),
    ]);
    let mut outputs = Vec::new();
    for threads in ["1", "4", "8"] {
        let cover = dir.path().join(format!("c{threads}.json"));
        asdim(&[
            "--threads",
            threads,
            "cover",
            "--graph",
            p(&graph),
            "--algorithm",
            "planar-pipeline",
            "--rho",
            "1",
            "--out",
            p(&cover),
        ]);
        let report = asdim(&[
            "--threads",
            threads,
            "verify",
            "--graph",
            p(&graph),
            "--cover",
            p(&cover),
        ]);
        outputs.push((fs::read(&cover).unwrap(), report.stdout));
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}
