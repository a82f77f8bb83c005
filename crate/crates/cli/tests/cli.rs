use std::process::{Command, Output};

use dist2::{canonical_form, graph6, Graph};

fn dist2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dist2")).args(args).env_remove("DIST2_JOBS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("dist2-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_n5() {
    let o = dist2(&["verify", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["payload"]["max_pairs"], 5);
    assert_eq!(v["payload"]["mode"], "EXHAUSTIVE");
    assert_eq!(v["run"]["worker_count"].as_u64().map(|w| w >= 1), Some(true));
    assert!(v["run"]["timestamp"].as_str().unwrap().ends_with('Z'));
}

#[test]
fn report_files_are_byte_stable() {
    let (a, b) = (tmp("a.json"), tmp("b.json"));
    for p in [&a, &b] {
        let o = dist2(&["verify", "--n", "6", "--reproducible", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());
    assert_eq!(text.last(), Some(&b'\n'));
}

#[test]
fn jobs_default_comes_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_dist2")).args(["verify", "--n", "5"]).env("DIST2_JOBS", "3").output().unwrap();
    assert_eq!(json(&o)["run"]["worker_count"], 3);
}

#[test]
fn verify_from_file() {
    let path = tmp("n5.g6");
    let mut text = String::new();
    dist2::search::enumerate_connected(5, false, |g| {
        text.push_str(&graph6::encode(g).unwrap());
        text.push('\n');
    })
    .unwrap();
    text.push_str("DA_\n"); // disconnected: skipped as inadmissible
    std::fs::write(&path, text).unwrap();
    let o = dist2(&["verify", "--n", "5", "--from-file", path.to_str().unwrap(), "--reproducible"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["payload"]["mode"], "STREAM");
    assert_eq!(v["payload"]["graphs_seen"], 22);
    assert_eq!(v["payload"]["max_pairs"], 5);
    let o = dist2(&["verify", "--n", "6", "--from-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::write(&path, "Bw\nB\n").unwrap();
    let o = dist2(&["verify", "--n", "3", "--from-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(65));
}

#[test]
fn claims_exit_codes() {
    let o = dist2(&["claims", "--n", "5", "--reproducible"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let entries = v["payload"]["claims"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    // the measured-only claim has violations but does not affect the exit code
    let tfree = entries.iter().find(|e| e["claim"] == "MOVE_PRESERVES_TFREE").unwrap();
    assert_eq!(tfree["asserted"], false);
    assert!(tfree["violations"].as_u64().unwrap() > 0);
    // n = 6 has a graph where every split in Subcase 2.2 loses a pair
    assert_eq!(dist2(&["claims", "--n", "6"]).status.code(), Some(2));
}

#[test]
fn check_triangle() {
    let o = dist2(&["check", "Bw"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["diameter"], 1);
    assert_eq!(v["pairs_at_distance_2"], 0);
    assert_eq!(v["g2_triangle_free"], true);
    assert_eq!(v["claw"], serde_json::Value::Null);
}

#[test]
fn check_file_prints_one_line_per_graph() {
    let path = tmp("few.g6");
    std::fs::write(&path, ">>graph6<<Bw\nCs\n\nDQc\n").unwrap();
    let o = dist2(&["check", "--file", path.to_str().unwrap()]);
    let text = stdout(&o);
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    // Cs is the claw K_{1,3}
    assert_eq!(lines[1]["claw"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(lines[1]["g2_triangle_free"], false);
}

#[test]
fn construct_gpp_11_is_c5() {
    let o = dist2(&["construct", "--family", "gpp", "--x", "1", "--y", "1", "--g6"]);
    let g = graph6::decode(stdout(&o).trim()).unwrap();
    assert_eq!(canonical_form(&g), canonical_form(&Graph::cycle(5).unwrap()));
    let dot = stdout(&dist2(&["construct", "--family", "gp", "--x", "2", "--y", "1", "--dot"]));
    assert!(dot.starts_with("graph \""));
    assert_eq!(dot.matches(" -- ").count(), build_edges(2, 1));
}

fn build_edges(x: usize, y: usize) -> usize {
    dist2::families::build_family_gp(dist2::families::FamilyParams::new(x, y).unwrap()).unwrap().edge_count()
}

#[test]
fn transform_and_dist_graph() {
    let p4 = graph6::encode(&Graph::path(4).unwrap()).unwrap();
    let moved = stdout(&dist2(&["transform", "move", "--input", &p4]));
    let g = graph6::decode(moved.trim()).unwrap();
    assert_eq!(canonical_form(&g), canonical_form(&Graph::star(3).unwrap()));
    let trace = json(&dist2(&["transform", "move", "--input", &p4, "--trace"]));
    assert_eq!(trace["pairs"], serde_json::json!([2, 3]));
    assert_eq!(trace["diameters"], serde_json::json!([3, 2]));
    let g2 = stdout(&dist2(&["dist-graph", "--k", "2", "--input", &p4]));
    let h = graph6::decode(g2.trim()).unwrap();
    assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 3)]);
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(dist2(&[]).status.code(), Some(64));
    assert_eq!(dist2(&["verify"]).status.code(), Some(64));
    assert_eq!(dist2(&["verify", "--n", "11"]).status.code(), Some(64));
    assert_eq!(dist2(&["construct", "--family", "gpp", "--x", "0", "--y", "1"]).status.code(), Some(1));
    assert_eq!(dist2(&["check", "B"]).status.code(), Some(65));
    assert_eq!(dist2(&["check", "Bx"]).status.code(), Some(65));
    assert_eq!(dist2(&["dist-graph", "--k", "2", "--input", "A?"]).status.code(), Some(1));
    assert_eq!(dist2(&["--help"]).status.code(), Some(0));
}

#[test]
fn anneal_is_deterministic() {
    let args = ["anneal", "--n", "9", "--steps", "2000", "--seed", "3", "--reproducible"];
    let a = dist2(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&dist2(&args)));
    let v = json(&a);
    assert_eq!(v["payload"]["mode"], "ANNEAL");
    assert_eq!(v["payload"]["max_pairs"], 17);
}
