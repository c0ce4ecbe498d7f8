use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qk::report::JsonReport;
use tempfile::TempDir;

const D4: &str = "# D4\n4 5\n0 1\n1 2\n1 3\n2 3\n3 2\n";

fn qk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qk")).args(args).env_remove("QK_ENUM_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn cycle(n: usize) -> String {
    let mut t = format!("{n} {n}\n");
    for i in 0..n {
        t += &format!("{i} {}\n", (i + 1) % n);
    }
    t
}

#[test]
fn check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let d4 = write(&dir, "d4.txt", D4);
    assert_eq!(qk(&["check", s(&d4), "--k", "4"]).status.code(), Some(0));
    let o = qk(&["check", s(&d4), "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("path 0 -> 1 -> 2"));
    let empty = write(&dir, "e.txt", "0 0\n");
    assert_eq!(qk(&["check", s(&empty), "--k", "3"]).status.code(), Some(0));
}

#[test]
fn kings_modes() {
    let dir = TempDir::new().unwrap();
    let d4 = write(&dir, "d4.txt", D4);
    let o = qk(&["kings", s(&d4), "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "5-kings (1): {0}\nmax out-degree 2: {1}\n");
    assert_eq!(stdout(&qk(&["kings", s(&d4), "--k", "4", "--fast"])), "5-king: 0\n");

    let two = write(&dir, "two.txt", "4 4\n0 1\n1 0\n2 3\n3 2\n");
    let o = qk(&["kings", s(&two), "--k", "2", "--fast"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no (k+1)-king: multiple initial components"));

    let c4 = write(&dir, "c4.txt", &cycle(4));
    let o = qk(&["kings", s(&c4), "--k", "3", "--census"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("audit cycle-sized-component-kings: 3-kings = 4, observed 4: PASS"));
}

#[test]
fn fast_kings_reject_non_qt_input() {
    let dir = TempDir::new().unwrap();
    let d4 = write(&dir, "d4.txt", D4);
    let o = qk(&["kings", s(&d4), "--k", "2", "--fast"]);
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not 2-quasi-transitive"));
}

#[test]
fn kernel_modes() {
    let dir = TempDir::new().unwrap();
    let chorded = write(&dir, "ch.txt", "4 5\n0 1\n1 2\n2 3\n2 0\n3 1\n");
    let o = qk(&["kernel", s(&chorded), "--k", "2", "--verify", "0,3", "--indep", "3", "--absorb", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("VERIFIED"));
    let o = qk(&["kernel", s(&chorded), "--verify", "0,1", "--indep", "3", "--absorb", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("REFUTED, d(0, 1) = 1 < 3"));

    let c3 = write(&dir, "c3.txt", &cycle(3));
    let o = qk(&["kernel", s(&c3), "--exhaustive", "--indep", "2", "--absorb", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("NoKernel"));
    let o = qk(&["kernel", s(&c3), "--k", "2", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("smallest (3, 2)-kernel: {0}"));

    let single = write(&dir, "one.txt", "1 0\n");
    let o = qk(&["kernel", s(&single), "--k", "2", "--construct", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = JsonReport::parse(&stdout(&o)).unwrap();
    assert_eq!(r.result["set"], serde_json::json!([0]));
    assert_eq!(r.result["status"], "verified");
}

#[test]
fn kernel_needs_a_mode_and_k() {
    let dir = TempDir::new().unwrap();
    let c3 = write(&dir, "c3.txt", &cycle(3));
    assert_eq!(qk(&["kernel", s(&c3), "--k", "2"]).status.code(), Some(64));
    assert_eq!(qk(&["kernel", s(&c3), "--construct"]).status.code(), Some(64));
    assert_eq!(qk(&["kernel", s(&c3), "--construct", "--exhaustive", "--k", "2"]).status.code(), Some(64));
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    let args = |p: &Path| {
        vec!["gen", "--n", "8", "--k", "3", "--p", "0.3", "--seed", "42", "-o"]
            .into_iter()
            .map(String::from)
            .chain([s(p).to_string()])
            .collect::<Vec<_>>()
    };
    let oa = Command::new(env!("CARGO_BIN_EXE_qk")).args(args(&a)).output().unwrap();
    let ob = Command::new(env!("CARGO_BIN_EXE_qk")).args(args(&b)).output().unwrap();
    assert_eq!(oa.status.code(), Some(0));
    assert_eq!(stdout(&oa), stdout(&ob));
    assert_eq!(stdout(&oa).trim().len(), 64);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(qk(&["check", s(&a), "--k", "3"]).status.code(), Some(0));
}

#[test]
fn gen_extremes() {
    let o = qk(&["gen", "--n", "5", "--k", "2", "--p", "0"]);
    assert_eq!(stdout(&o), "5 0\n");
    let o = qk(&["gen", "--n", "4", "--k", "2", "--p", "1"]);
    assert!(stdout(&o).starts_with("4 12\n"));
    assert_eq!(qk(&["gen", "--n", "4", "--k", "2", "--p", "1.5"]).status.code(), Some(64));
    assert_eq!(qk(&["gen", "--n", "4", "--k", "2", "--rule", "sideways"]).status.code(), Some(64));
}

#[test]
fn hunt_and_lemmas() {
    for k in ["2", "3"] {
        let o = qk(&["hunt", "--k", k, "--trials", "50"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let o = qk(&["hunt", "--k", "2", "--trials", "0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = JsonReport::parse(&stdout(&o)).unwrap();
    assert_eq!(r.result["trials"], serde_json::json!([]));

    // one instance per k cannot meet the vacuity floor for every checker
    let o = qk(&["lemmas", "--trials", "1"]);
    assert!(matches!(o.status.code(), Some(0 | 1)));
    assert_eq!(stdout(&o).matches(": 1 instances in").count(), 5);
    let o = qk(&["lemmas", "--k-list", "", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(JsonReport::parse(&stdout(&o)).unwrap().result["summaries"], serde_json::json!([]));
    assert_eq!(qk(&["lemmas", "--k-list", "1,2"]).status.code(), Some(64));
}

#[test]
fn usage_and_io_errors() {
    assert_eq!(qk(&[]).status.code(), Some(64));
    assert_eq!(qk(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(qk(&["check", "/nonexistent/file", "--k", "2"]).status.code(), Some(74));
    assert_eq!(qk(&["--help"]).status.code(), Some(0));
    assert_eq!(qk(&["--version"]).status.code(), Some(0));
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "3 2\n0 1\n1 1\n");
    let o = qk(&["check", s(&bad), "--k", "2"]);
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3: loop at vertex 1"));
}

#[test]
fn enum_cap_from_environment() {
    let dir = TempDir::new().unwrap();
    let d4 = write(&dir, "d4.txt", D4);
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_qk"))
            .args(["check", s(&d4), "--k", "2"])
            .env("QK_ENUM_CAP", cap)
            .output()
            .unwrap()
    };
    assert_eq!(run("3").status.code(), Some(65));
    assert_eq!(run("4").status.code(), Some(1));
    assert_eq!(run("lots").status.code(), Some(64));
}

#[test]
fn reports_are_byte_stable_and_written_to_file() {
    let dir = TempDir::new().unwrap();
    let d4 = write(&dir, "d4.txt", D4);
    let other = write(&dir, "d4-reordered.txt", "4 5\n3 2\n2 3\n1 3\n1 2\n0 1\n");
    let out = dir.path().join("r.json");
    let a = qk(&["kings", s(&d4), "--k", "4", "--census", "--json", "--report", s(&out)]);
    let b = qk(&["kings", s(&other), "--k", "4", "--census", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
    let r = JsonReport::parse(&stdout(&a)).unwrap();
    assert_eq!(r.command, "kings --k 4 --census");
    assert_eq!(r.render().unwrap(), stdout(&a));

    let h1 = qk(&["hunt", "--k", "3", "--trials", "30", "--seed", "7", "--json"]);
    let h2 = qk(&["hunt", "--k", "3", "--trials", "30", "--seed", "7", "--json"]);
    assert_eq!(h1.stdout, h2.stdout);
    let l1 = qk(&["lemmas", "--k-list", "2,4", "--trials", "20", "--json"]);
    let l2 = qk(&["lemmas", "--k-list", "2,4", "--trials", "20", "--json"]);
    assert_eq!(l1.stdout, l2.stdout);
}
