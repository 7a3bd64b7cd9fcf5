//! Exercises the binaries through their command-line surface.

use std::fs;
use std::process::Command;

fn tourney(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_tourney"))
        .args(args)
        .env("TOURNEY_SOLVER", env!("CARGO_BIN_EXE_dimsat"))
        .output()
        .expect("binary runs")
}

fn stdout(out: &std::process::Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn dimsat_exit_codes_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let sat = dir.path().join("sat.cnf");
    let unsat = dir.path().join("unsat.cnf");
    fs::write(&sat, "p cnf 2 2\n1 2 0\n-1 0\n").unwrap();
    fs::write(&unsat, "p cnf 1 2\n1 0\n-1 0\n").unwrap();

    let out = Command::new(env!("CARGO_BIN_EXE_dimsat")).arg(&sat).output().unwrap();
    assert_eq!(out.status.code(), Some(10));
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("s SATISFIABLE"));
    assert!(text.lines().any(|l| l.starts_with("v ") && l.ends_with(" 0")));

    let out = Command::new(env!("CARGO_BIN_EXE_dimsat")).arg(&unsat).output().unwrap();
    assert_eq!(out.status.code(), Some(20));
    assert!(String::from_utf8_lossy(&out.stdout).contains("s UNSATISFIABLE"));
}

#[test]
fn bounds_kv_output() {
    let out = tourney(&["bounds", "--n", "24", "--report", "kv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in ["tt3_min=1452", "cycles_max=572", "avg_raw=572/92", "d_cap=6"] {
        assert!(text.contains(line), "missing {line} in:\n{text}");
    }

    let out = tourney(&["bounds", "--n", "23", "--report", "kv"]);
    let text = stdout(&out);
    for line in ["cycles_max=506", "avg=6", "avg_exact=true", "dr_cycles=506", "dr_tt3=1265"] {
        assert!(text.contains(line), "missing {line} in:\n{text}");
    }
}

#[test]
fn encode_emits_dimacs() {
    let out = tourney(&["encode", "--n", "3", "--k", "3", "--encoding", "reduced"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "p cnf 3 3\n1 2 0\n-1 3 0\n-2 -3 0\n");
}

#[test]
fn ramsey_4_is_8() {
    let out = tourney(&["ramsey", "--k", "4", "--report", "kv"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ramsey_k=4 ramsey_n=8"));
}

#[test]
fn verify_passes_and_exits_zero() {
    let out = tourney(&["verify", "--report", "kv"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(!stdout(&out).contains("pass=false"));
}

#[test]
fn catalog_round_trips_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("st7.txt");
    let out = tourney(&["catalog", "--n", "7", "--k", "4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("tournament-catalog v1 n=7 k=4 complete=1 count=1"));

    // extending the unique (7,4) class one vertex finds nothing
    let out = tourney(&[
        "catalog",
        "--n",
        "8",
        "--k",
        "4",
        "--in",
        path.to_str().unwrap(),
        "--report",
        "kv",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("classes=0"), "{}", stdout(&out));
}

#[test]
fn pivot_emit_writes_instance_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pivot.cnf");
    let out = tourney(&[
        "pivot",
        "--k",
        "4",
        "--in-block",
        "generic:2",
        "--out-block",
        "artifact:y7",
        "--emit",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(fs::read_to_string(&path).unwrap().starts_with("p cnf"));
    assert!(path.with_extension("vars").is_file());
}

#[test]
fn solve_prints_witness_matrix() {
    let out = tourney(&["solve", "--n", "4", "--k", "3", "--report", "kv"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("status=unsat"));

    let out = tourney(&["solve", "--n", "3", "--k", "3", "--report", "kv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("status=sat"));
    // 3 matrix rows follow the status line
    assert_eq!(text.lines().count(), 4, "{text}");
}

#[test]
fn bad_block_spec_is_an_error() {
    let out = tourney(&["pivot", "--k", "4", "--in-block", "nope", "--out-block", "generic:1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad block spec"));
}
