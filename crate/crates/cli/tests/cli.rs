use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn tfano(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tfano")).args(args).env_remove("TFANO_FIXTURES").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn invariants_json(path: &std::path::Path) -> Value {
    let out = tfano(&["invariants", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn props_of_the_cube_of_lines() {
    let out = tfano(&["props", fixture("62.txt").to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let flags: Value = serde_json::from_str(&stdout(&out)).unwrap();
    for key in ["is_fano", "is_terminal", "is_canonical", "is_reflexive", "is_simplicial", "is_regular"] {
        assert_eq!(flags[key], Value::Bool(true), "{key}");
    }
}

#[test]
fn quadric_prism_is_not_simplicial() {
    let out = tfano(&["props", fixture("297.txt").to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("simplicial: false"));
    assert!(text.contains("terminal: true"));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(&dir, "bad.txt", "# three points\n3 3\n1 0 0\n0 1\n0 0 1\n");
    let out = tfano(&["props", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    let flat = write_temp(&dir, "flat.txt", "3 3\n1 0 0\n0 1 0\n0 0 1\n");
    let out = tfano(&["props", flat.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not full-dimensional"));
}

#[test]
fn non_fano_input_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write_temp(&dir, "cube.txt", "8 3\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n1 1 0\n1 0 1\n0 1 1\n1 1 1\n");
    let out = tfano(&["invariants", cube.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a Fano polytope"));
}

#[test]
fn invariants_of_projective_space() {
    let dir = tempfile::tempdir().unwrap();
    let out = tfano(&["wps", "1", "1", "1", "1"]);
    assert!(out.status.success());
    let path = write_temp(&dir, "4.txt", &stdout(&out));
    let r = invariants_json(&path);
    assert_eq!(r["degree"], "64");
    assert_eq!(r["genus"], 33);
    assert_eq!(r["rk_cl"], 1);
    assert_eq!(r["rk_pic"], 1);
    assert_eq!(r["is_gfano"], true);
}

#[test]
fn invariants_of_the_prism() {
    let r = invariants_json(&fixture("92.txt"));
    assert_eq!(r["degree"], "81/2");
    assert_eq!(r["genus"], 21);
    assert_eq!(r["rk_cl"], 3);
    assert_eq!(r["rk_pic"], 1);
    assert_eq!(r["is_gfano"], true);
}

#[test]
fn invariants_of_a_weighted_projective_space() {
    let dir = tempfile::tempdir().unwrap();
    let out = tfano(&["wps", "2", "3", "5", "7"]);
    let path = write_temp(&dir, "2.txt", &stdout(&out));
    let r = invariants_json(&path);
    assert_eq!(r["degree"], "4913/210");
    assert_eq!(r["genus"], 11);
}

#[test]
fn json_report_has_a_fixed_key_set() {
    let r = invariants_json(&fixture("32.txt"));
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    let mut expected = [
        "id", "vertices", "flags", "rk_cl", "rk_pic", "degree", "genus", "aut_order", "n_orbits", "fixed_dim",
        "inv_cl_rank", "is_gfano",
    ];
    expected.sort();
    let mut keys = keys;
    keys.sort();
    assert_eq!(keys, expected);
    assert_eq!(r["id"], "32");
    assert!(r["degree"].is_string());
}

#[test]
fn verify_builtin_fixtures() {
    let out = tfano(&["verify-theorem1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("13/13 fixtures pass"));
}

#[test]
fn verify_reports_mismatches_and_ignores_file_order() {
    let src = fixture("");
    let dir = tempfile::tempdir().unwrap();
    for name in ["32.txt", "47.txt", "62.txt", "92.txt", "297.txt"] {
        std::fs::copy(src.join(name), dir.path().join(name)).unwrap();
    }
    let manifest = std::fs::read_to_string(src.join("theorem1.toml")).unwrap();
    // reverse the fixture order
    let mut blocks: Vec<&str> = manifest.split("[[fixture]]").collect();
    let head = blocks.remove(0);
    blocks.reverse();
    let reversed = format!("{head}[[fixture]]{}", blocks.join("[[fixture]]"));
    std::fs::write(dir.path().join("theorem1.toml"), &reversed).unwrap();
    let out = tfano(&["verify-theorem1", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), stdout(&tfano(&["verify-theorem1"])));

    let wrong = manifest.replace("degree = \"81/2\"", "degree = \"40\"");
    assert_ne!(wrong, manifest);
    std::fs::write(dir.path().join("theorem1.toml"), wrong).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_tfano"))
        .arg("verify-theorem1")
        .env("TFANO_FIXTURES", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("12/13 fixtures pass"));
    assert!(text.contains("degree: expected 40, got 81/2"));
}

#[test]
fn enumerate_polygons_in_the_unit_box() {
    let out = tfano(&["enumerate", "--box", "1", "--dim", "2", "--jobs", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("2 classes\n"));
}

#[test]
fn quotient_of_the_cube_of_lines_is_the_antiprism() {
    let dir = tempfile::tempdir().unwrap();
    let out = tfano(&["quotient", fixture("62.txt").to_str().unwrap(), "--gen", "1/2,1/2,1/2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let q = write_temp(&dir, "q.txt", &stdout(&out));
    let a = tfano(&["normal-form", q.to_str().unwrap()]);
    let b = tfano(&["normal-form", fixture("47.txt").to_str().unwrap()]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn automorphisms_of_the_pyramid() {
    let out = tfano(&["aut", fixture("32.txt").to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("order: 8\n"));
    assert!(text.contains("inv_cl_rank: 1"));
}
