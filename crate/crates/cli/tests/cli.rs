use std::path::PathBuf;
use std::process::{Command, Output};

fn totgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_totgeo")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name).display().to_string()
}

#[test]
fn catalog_list() {
    let o = totgeo(&["catalog", "list"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["sl_R:3", "5", "2"]));
    assert!(out.contains("g2_split"));
}

#[test]
fn rank_prints_flat() {
    let o = totgeo(&["rank", "so:2,3", "--seed", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("rank 2"));
    assert_eq!(totgeo(&["rank", "so:2,2"]).status.code(), Some(2));
    assert_eq!(totgeo(&["rank", "bogus"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let ok = totgeo(&["verify", &corpus("rh4_hyperplane.json"), "--with-transversal", "--seed", "3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("overall: PASS"));
    assert!(stdout(&ok).contains("trials"));

    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(corpus("rh4_hyperplane.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let first = v["basis"][0].clone();
    v["basis"][1] = first;
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = totgeo(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL basis-independent"));

    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{not json").unwrap();
    assert_eq!(totgeo(&["verify", junk.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(totgeo(&["verify", "/nonexistent/cert.json"]).status.code(), Some(2));
}

#[test]
fn generate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("so34.json");
    let o = totgeo(&["generate", "so3k_block", "--param", "k=4", "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), std::fs::read_to_string(corpus("so34_block.json")).unwrap());
    assert_eq!(totgeo(&["verify", out.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(totgeo(&["generate", "nope", "-o", out.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(totgeo(&["generate", "so3k_block", "--param", "k", "-o", out.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn flats_transversal() {
    let o = totgeo(&["flats", "sl_R:4", "--transversal", &corpus("sl4R_centralizer.json"), "--seed", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS transversal flat"));
    let o = totgeo(&["flats", "sl_R:4", "--transversal", &corpus("sl4R_centralizer.json"), "--budget", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = totgeo(&["flats", "sl_R:3", "--transversal", &corpus("sl4R_centralizer.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn orbit_of_veronese_vector() {
    // diag(1,1,-2) = H1 + 2 H2
    let o = totgeo(&["orbit", "sl_R:3", "--vector", "1,2,0,0,0", "--symmetric-test"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("orbit dimension 2, normal dimension 3"));
    assert!(out.contains("symmetric submanifold: true"));
    assert!(out.contains("PASS A_v = -id"));
    let o = totgeo(&["orbit", "sl_R:3", "--vector", "1,0,0,0,0", "--curvature-normals"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("m = 3, g = 3"));
    assert_eq!(totgeo(&["orbit", "sl_R:3", "--vector", "1,2,0"]).status.code(), Some(2));
    assert_eq!(totgeo(&["orbit", "sl_R:3", "--vector", "1,2,0,0,0", "--curvature-normals"]).status.code(), Some(2));
    assert_eq!(totgeo(&["orbit", "sl_R:3", "--vector", "1,x,0,0,0"]).status.code(), Some(2));
}

#[test]
fn search_and_probe() {
    let o = totgeo(&["search", "sl_R:3", "--codim", "2", "--restarts", "10", "--seed", "7"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("exact refinement verified"));
    assert!(out.contains("\"abelian_dim\": 1"));
    let o = totgeo(&["search", "so:1,4", "--codim", "1", "--probe-max", "2", "--restarts", "5"]);
    assert!(stdout(&o).contains("least accepted codimension: 1"));
    assert_eq!(totgeo(&["search", "sl_R:3", "--codim", "5"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(totgeo(&["verify"]).status.code(), Some(2));
    assert_eq!(totgeo(&["frobnicate"]).status.code(), Some(2));
}
