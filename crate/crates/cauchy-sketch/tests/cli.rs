use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cauchy-sketch"));
    c.env_remove("CAUCHY_SKETCH_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn plan_prints_k() {
    let o = run(&["plan", "--epsilon", "0.25", "--n", "100", "--c", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l.split_whitespace().eq(["k", "338846"])));
}

#[test]
fn plan_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("plan.json");
    let o = run(&["plan", "--epsilon", "0.25", "--n", "100", "--output", path(&out)]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["k"], 338846);
}

#[test]
fn infeasible_plans_are_usage_errors() {
    assert_eq!(code(&run(&["plan", "--epsilon", "0.3", "--n", "100"])), 2);
    assert_eq!(code(&run(&["plan", "--epsilon", "1e-7", "--n", "100"])), 2);
    assert_eq!(code(&run(&["plan", "--epsilon", "0.25", "--n", "1"])), 2);
    assert_eq!(code(&run(&["plan", "--n", "100"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn help_and_version_succeed() {
    let o = run(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verify"));
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn empty_or_missing_input_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "").unwrap();
    let out = dir.path().join("s.bin");
    assert_eq!(code(&run(&["sketch", "--input", path(&empty), "--output", path(&out)])), 3);
    let missing = dir.path().join("nope.csv");
    assert_eq!(code(&run(&["sketch", "--input", path(&missing), "--output", path(&out)])), 3);
    assert!(!out.exists());
}

#[test]
fn sketch_estimate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p.csv");
    fs::write(&input, "x,y,z\n0,0,0\n1,-2,0.5\n").unwrap();
    let a = dir.path().join("a.bin");
    let b = dir.path().join("b.bin");
    for out in [&a, &b] {
        let o = run(&["sketch", "--input", path(&input), "--output", path(out), "--seed", "5", "--k", "4000"]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let meta_a = fs::read_to_string(dir.path().join("a.bin.meta.json")).unwrap();
    let meta_b = fs::read_to_string(dir.path().join("b.bin.meta.json")).unwrap();
    assert_eq!(meta_a, meta_b);
    let meta: serde_json::Value = serde_json::from_str(&meta_a).unwrap();
    assert_eq!((meta["n"].as_u64(), meta["d"].as_u64(), meta["k"].as_u64()), (Some(2), Some(3), Some(4000)));
    assert_eq!(meta["k_source"], "override");

    let o = run(&["estimate", "--input", path(&a)]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "i,j,rho,l1_estimate,regime");
    assert_eq!(lines.len(), 2);
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(&fields[..2], ["0", "1"]);
    let l1: f64 = fields[3].parse().unwrap();
    assert!((l1 - 3.5).abs() < 0.35 * 3.5, "estimate {l1}");

    let table = dir.path().join("t.csv");
    let o = run(&["estimate", "--input", path(&a), "--output", path(&table)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    assert_eq!(fs::read_to_string(table).unwrap(), text);
}

#[test]
fn other_seed_changes_the_sketch() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p.csv");
    fs::write(&input, "1,2\n3,4\n").unwrap();
    let a = dir.path().join("a.bin");
    let b = dir.path().join("b.bin");
    assert_eq!(code(&run(&["sketch", "--input", path(&input), "--output", path(&a), "--k", "16"])), 0);
    let o = bin()
        .args(["sketch", "--input", path(&input), "--output", path(&b), "--k", "16"])
        .env("CAUCHY_SKETCH_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_ne!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn identical_points_estimate_zero() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p.csv");
    fs::write(&input, "1.5,2\n1.5,2\n").unwrap();
    let out = dir.path().join("s.bin");
    assert_eq!(code(&run(&["sketch", "--input", path(&input), "--output", path(&out), "--k", "32"])), 0);
    let o = run(&["estimate", "--input", path(&out)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().nth(1).unwrap(), "0,1,0,0,really_small_unproven_upper");
}

#[test]
fn estimate_without_metadata_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p.csv");
    fs::write(&input, "1,2\n3,4\n").unwrap();
    let out = dir.path().join("s.bin");
    assert_eq!(code(&run(&["sketch", "--input", path(&input), "--output", path(&out), "--k", "8"])), 0);
    fs::remove_file(dir.path().join("s.bin.meta.json")).unwrap();
    assert_eq!(code(&run(&["estimate", "--input", path(&out)])), 3);
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "--suite", "specfun"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).lines().last().unwrap().starts_with("PASS"));

    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.jsonl");
    let o = run(&["verify", "--suite", "moments", "--trials", "0", "--output", path(&report)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = fs::read_to_string(&report).unwrap();
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["type"], "header");
    assert_eq!(first["suite"], "moments");
    assert!(first.get("runtime_ms").is_none());

    let again = dir.path().join("r2.jsonl");
    run(&["verify", "--suite", "moments", "--trials", "0", "--output", path(&again)]);
    assert_eq!(fs::read(&report).unwrap(), fs::read(&again).unwrap());

    assert_eq!(code(&run(&["verify", "--suite", "bogus"])), 2);
}
