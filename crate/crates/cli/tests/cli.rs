use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn brp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert_eq!(code(out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const SQUARE: &str = r#"{
  "vertices": ["a", "b", "c", "d"],
  "edges": [
    {"id": "ab", "u": "a", "v": "b", "w": "2"},
    {"id": "bc", "u": "b", "v": "c", "w": "1"},
    {"id": "cd", "u": "c", "v": "d", "w": "2"},
    {"id": "da", "u": "d", "v": "a", "w": "1"}
  ]
}"#;

const K4: &str = r#"{
  "vertices": ["a", "b", "c", "d"],
  "edges": [
    {"id": "ab", "u": "a", "v": "b", "w": "1"},
    {"id": "ac", "u": "a", "v": "c", "w": "1"},
    {"id": "ad", "u": "a", "v": "d", "w": "1"},
    {"id": "bc", "u": "b", "v": "c", "w": "1"},
    {"id": "bd", "u": "b", "v": "d", "w": "1"},
    {"id": "cd", "u": "c", "v": "d", "w": "1"}
  ]
}"#;

#[test]
fn solves_the_square_instance() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "square.json", SQUARE);
    let out = brp(&["solve", file.to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["k"], "1");
    assert_eq!(v["root"], "a");
    assert_eq!(v["packing"]["value"], "1");
    assert_eq!(v["orientation"].as_array().unwrap().len(), 4);
    assert_eq!(v["certificates"].as_array().unwrap().len(), 1);
}

#[test]
fn honors_the_requested_root() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "square.json", SQUARE);
    let v = stdout_json(&brp(&["solve", file.to_str().unwrap(), "--root", "b"]));
    assert_eq!(v["root"], "b");
    assert_eq!(v["k"], "1");
    assert_eq!(v["certificates"][0]["root"], "b");
}

#[test]
fn rejects_bad_input_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let garbled = write(dir.path(), "garbled.json", "not json");
    assert_eq!(code(&brp(&["solve", garbled.to_str().unwrap()])), 2);

    let negative = write(
        dir.path(),
        "negative.json",
        r#"{"vertices": ["a", "b"], "edges": [{"id": "e", "u": "a", "v": "b", "w": "-3"}]}"#,
    );
    assert_eq!(code(&brp(&["solve", negative.to_str().unwrap()])), 2);

    let dangling = write(
        dir.path(),
        "dangling.json",
        r#"{"vertices": ["a", "b"], "edges": [{"id": "e", "u": "a", "v": "z", "w": "1"}]}"#,
    );
    assert_eq!(code(&brp(&["solve", dangling.to_str().unwrap()])), 2);

    let square = write(dir.path(), "square.json", SQUARE);
    assert_eq!(code(&brp(&["solve", square.to_str().unwrap(), "--root", "zz"])), 2);
}

#[test]
fn flags_non_outerplanar_input_with_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "k4.json", K4);
    let solve = brp(&["solve", file.to_str().unwrap()]);
    assert_eq!(code(&solve), 3);
    assert!(String::from_utf8_lossy(&solve.stderr).contains("not outerplanar"));
    assert_eq!(code(&brp(&["check", file.to_str().unwrap()])), 3);
}

#[test]
fn flags_disconnected_input_with_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "disconnected.json",
        r#"{
          "vertices": ["a", "b", "c", "d"],
          "edges": [
            {"id": "ab", "u": "a", "v": "b", "w": "1"},
            {"id": "cd", "u": "c", "v": "d", "w": "1"}
          ]
        }"#,
    );
    assert_eq!(code(&brp(&["solve", file.to_str().unwrap()])), 4);
    assert_eq!(code(&brp(&["check", file.to_str().unwrap()])), 4);
}

#[test]
fn refuses_oversized_oracle_runs_with_exit_five() {
    let dir = tempfile::tempdir().unwrap();
    let gen = brp(&["gen", "--n", "5", "--chords", "0", "--seed", "1"]);
    let file = write(
        dir.path(),
        "c5.json",
        &String::from_utf8(gen.stdout).unwrap(),
    );
    assert_eq!(code(&brp(&["oracle", file.to_str().unwrap(), "--max-n", "4"])), 5);
}

#[test]
fn generation_is_deterministic() {
    let a = brp(&["gen", "--n", "7", "--chords", "3", "--seed", "5"]);
    let b = brp(&["gen", "--n", "7", "--chords", "3", "--seed", "5"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn solver_matches_the_oracle_on_generated_instances() {
    let dir = tempfile::tempdir().unwrap();
    for seed in [3u64, 14, 59] {
        let gen = brp(&["gen", "--n", "6", "--chords", "2", "--seed", &seed.to_string()]);
        let file = write(
            dir.path(),
            &format!("g{seed}.json"),
            &String::from_utf8(gen.stdout).unwrap(),
        );
        let solved = stdout_json(&brp(&["solve", file.to_str().unwrap()]));
        let oracle = stdout_json(&brp(&["oracle", file.to_str().unwrap()]));
        assert_eq!(solved["k"], oracle["k"], "seed {seed}");
        assert_eq!(solved["root"], oracle["root"], "seed {seed}");
        let rooted = stdout_json(&brp(&["solve", file.to_str().unwrap(), "--root", "4"]));
        let rooted_oracle = stdout_json(&brp(&["oracle", file.to_str().unwrap(), "--root", "4"]));
        assert_eq!(rooted["k"], rooted_oracle["k"], "seed {seed}");
    }
}

#[test]
fn writes_a_dot_witness() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "square.json", SQUARE);
    let dot_path = dir.path().join("witness.dot");
    let out = brp(&[
        "solve",
        file.to_str().unwrap(),
        "--dot",
        dot_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 4);
    assert!(dot.contains("doublecircle"));
}

#[test]
fn counts_orientations_of_a_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "triangle.json",
        r#"{
          "vertices": ["a", "b", "c"],
          "edges": [
            {"id": "ab", "u": "a", "v": "b", "w": "1"},
            {"id": "bc", "u": "b", "v": "c", "w": "1"},
            {"id": "ca", "u": "c", "v": "a", "w": "1"}
          ]
        }"#,
    );
    let v = stdout_json(&brp(&["oracle", file.to_str().unwrap(), "--count"]));
    assert_eq!(v["count"], 6);
}

#[test]
fn check_reports_structure() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "square.json", SQUARE);
    let v = stdout_json(&brp(&["check", file.to_str().unwrap()]));
    assert_eq!(v["vertices"], 4);
    assert_eq!(v["edges"], 4);
    assert_eq!(v["blocks"], 1);
    assert_eq!(v["outerplanar"], true);
    assert_eq!(v["cut_vertices"].as_array().unwrap().len(), 0);
}

#[test]
fn merges_parallel_edges_and_skips_loops() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "multi.json",
        r#"{
          "vertices": ["a", "b"],
          "edges": [
            {"id": "e1", "u": "a", "v": "b", "w": "2"},
            {"id": "e2", "u": "a", "v": "b", "w": "3"},
            {"id": "loop", "u": "a", "v": "a", "w": "5"}
          ]
        }"#,
    );
    let v = stdout_json(&brp(&["solve", file.to_str().unwrap()]));
    assert_eq!(v["k"], "5");
    let arcs = v["orientation"].as_array().unwrap();
    assert_eq!(arcs.len(), 2);
    for arc in arcs {
        assert_eq!(arc["tail"], "a");
        assert_eq!(arc["head"], "b");
    }
    let report = stdout_json(&brp(&["check", file.to_str().unwrap()]));
    assert_eq!(report["merged_parallels"], 1);
    assert_eq!(report["dropped_loops"], 1);
}
