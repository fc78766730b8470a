use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const K4: &str = "4 6\n0: 1 2 3\n1: 2 0 3\n2: 3 0 1\n3: 1 0 2\n";

fn ifpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ifpart")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let p = dir.join(name);
    let p = p.to_str().unwrap();
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", p]);
    assert_eq!(ifpart(&all).status.code(), Some(0));
    p.to_string()
}

#[test]
fn hex_patch_is_in_class_and_colorable() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "hex.txt", &["hex", "3", "2"]);
    let o = ifpart(&["check-class", &g]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("d_star INF"));
    let o = ifpart(&["color", &g]);
    assert_eq!(o.status.code(), Some(0));
    let c = write(dir.path(), "c.txt", &stdout(&o));
    let o = ifpart(&["verify", &g, c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn k4_is_uncolorable() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k4.txt", K4);
    let o = ifpart(&["color", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "NONE\n");
    let o = ifpart(&["check-class", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let split = write(dir.path(), "split.txt", "4 2\n0: 1\n1: 0\n2: 3\n3: 2\n");
    let o = ifpart(&["color", split.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("disconnected"));
    assert_eq!(ifpart(&["color", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(ifpart(&["gen", "gadget", "L9"]).status.code(), Some(2));
    assert_eq!(ifpart(&["--quiet", "color", "/nonexistent/graph.txt"]).stderr.len(), 0);
}

#[test]
fn verify_reports_violations() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k4.txt", K4);
    let c = write(dir.path(), "c.txt", "0 I\n1 I\n2 F\n3 F\n");
    let o = ifpart(&["verify", g.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("ADJACENT_I 0 1"));
}

#[test]
fn extend_completes_a_precolored_outer_cycle() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "fig3a.txt", &["gadget", "FIG3A"]);
    let o = ifpart(&["--format", "data", "detect", &g, "--all-9"]);
    assert_eq!(o.status.code(), Some(0));
    let h = gen(dir.path(), "hex.txt", &["hex", "1", "1"]);
    let o = ifpart(&["extend", &h, "--cycle", "0,1,2,3,4,5", "--precolor", "0=I,1=F,2=F,3=I,4=F,5=F"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "0 I\n1 F\n2 F\n3 I\n4 F\n5 F\n");
    let o = ifpart(&["extend", &h, "--cycle", "0,1,2,3,4,5", "--precolor", "0=I,1=I,2=F,3=I,4=F,5=F"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ifpart(&["extend", &h, "--cycle", "0,1,2,3,4,5", "--precolor", "0=I"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn detect_classifies_the_claw_figure() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "fig2a.txt", &["gadget", "FIG2A"]);
    let o = ifpart(&["detect", &g, "--cycle", "0,1,2,3,4,5,6,7,8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("bad-I"), "{out}");
    assert!(out.contains("claw center 9"), "{out}");
    let o = ifpart(&["detect", &g, "--cycle", "0,1,5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn discharge_data_has_exact_rationals() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "fig2a.txt", &["gadget", "FIG2A"]);
    let o = ifpart(&["--format", "data", "discharge", &g, "--log"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["accounting"]["identity_holds"], true);
    assert_eq!(v["accounting"]["mu_star_d"], "0");
    assert!(v["transfers"].as_array().unwrap().len() > 0);
    assert_eq!(v["unexplained"], 0);
}

#[test]
fn discharge_restricts_to_a_cycle() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "hex.txt", &["hex", "2", "2"]);
    let o = ifpart(&["discharge", &g, "--cycle", "0,1,2,3,4,5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("n=6 m=6"));
}

#[test]
fn reduce_check_passes_lemma_gadgets_and_fails_the_control() {
    let o = ifpart(&["reduce-check", "--lemma", "L5", "--param", "k=3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS L5:k=3"));
    let o = ifpart(&["reduce-check", "--lemma", "L2", "--param", "d=3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample"));
    assert_eq!(ifpart(&["reduce-check", "--lemma", "FIG2A"]).status.code(), Some(2));
}

#[test]
fn find_configs_lists_the_lemma() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "l6.txt", &["gadget", "L6:m=7"]);
    let o = ifpart(&["find-configs", &g]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("L6 ")));
}

#[test]
fn random_generation_follows_the_seed() {
    let a = ifpart(&["--seed", "7", "gen", "random", "20"]);
    let b = ifpart(&["--seed", "7", "gen", "random", "20"]);
    let c = ifpart(&["--seed", "8", "gen", "random", "20"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
    let json = ifpart(&["--format", "data", "--seed", "7", "gen", "random", "20"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["n"], 20);
}

#[test]
fn suite_reports_and_sets_the_exit_code() {
    let dir = TempDir::new().unwrap();
    let empty = write(dir.path(), "empty.spec", "# nothing\n");
    let o = ifpart(&["suite", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ifpart-suite-report schema=1\n"));
    let spec = write(dir.path(), "s.spec", "hex 2 2 : class color discharge\nrandom 8 0..3 : class color\n");
    let report = dir.path().join("r.txt");
    let o = ifpart(&["suite", spec.to_str().unwrap(), "-o", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let body = std::fs::read_to_string(report).unwrap();
    assert!(body.contains("summary instances=4 checks=9 failures=0"), "{body}");
    let bad = write(dir.path(), "bad.spec", "hex 2 2 : nosuchcheck\n");
    assert_eq!(ifpart(&["suite", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn quiet_prints_nothing() {
    let o = ifpart(&["--quiet", "gen", "hex", "1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}
