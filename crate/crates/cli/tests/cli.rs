use std::fs;
use std::process::{Command, Output};

use permtool::{Check, RunReport};

fn permtool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permtool"))
        .args(args)
        .env_remove("PERMTOOL_SEED")
        .output()
        .unwrap()
}

fn reports(out: &Output) -> Vec<RunReport> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn blocal_leader_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p.txt");
    let result = dir.path().join("leaders.txt");
    fs::write(&input, "4\n2 3 4 1\n").unwrap();
    let out = permtool(&[
        "leaders", "--algo", "blocal", "--epsilon", "0.5", "--input", input.to_str().unwrap(), "--check",
        "--output", result.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = reports(&out);
    assert_eq!((r.len(), r[0].oracle_check, r[0].algo.as_str()), (1, Check::Pass, "blocal"));
    assert_eq!(fs::read_to_string(result).unwrap().trim(), "3");
}

#[test]
fn generated_inversion_checks() {
    for algo in ["naive", "logspace", "blocal"] {
        let out = permtool(&["invert", "--algo", algo, "--n", "1000", "--seed", "7", "--check"]);
        assert_eq!(out.status.code(), Some(0), "{algo}");
        let r = reports(&out);
        assert_eq!((r[0].n, r[0].oracle_check), (1000, Check::Pass));
    }
}

#[test]
fn permute_with_array() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p.txt");
    let array = dir.path().join("a.txt");
    let result = dir.path().join("out.txt");
    fs::write(&input, "3\n2 3 1\n").unwrap();
    fs::write(&array, "a b c\n").unwrap();
    let out = permtool(&[
        "permute", "--input", input.to_str().unwrap(), "--array", array.to_str().unwrap(), "--check",
        "--output", result.to_str().unwrap(), "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("task,algo,n,"));
    assert_eq!(fs::read_to_string(result).unwrap().trim(), "c a b");
}

#[test]
fn bench_emits_slope() {
    let out = permtool(&["bench", "--algo", "logspace", "--sizes", "1024..8192x2", "--trials", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(&out.stdout[..]);
    let rows: Vec<RunReport> = rdr.deserialize().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 8);
    let slope = rows[0].slope.unwrap();
    assert!(rows.iter().all(|r| r.slope == Some(slope)));
    assert!(slope > 0.9 && slope < 1.3, "{slope}");
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_permtool"));
        c.args(["leaders", "--n", "200"]);
        match env {
            Some(v) => c.env("PERMTOOL_SEED", v),
            None => c.env_remove("PERMTOOL_SEED"),
        };
        reports(&c.output().unwrap())[0].clone()
    };
    assert_eq!(run(Some("5")).digest, run(Some("5")).digest);
    assert_ne!(run(Some("5")).digest, run(None).digest);
    assert_eq!(run(None).digest, reports(&permtool(&["leaders", "--n", "200", "--seed", "0"]))[0].digest);
}

#[test]
fn errors_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "4\n2 3 x 1\n").unwrap();
    let out = permtool(&["leaders", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    fs::write(&bad, "4\n2 3 4\n").unwrap();
    let out = permtool(&["leaders", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(permtool(&["leaders"]).status.code(), Some(2));
    assert_eq!(permtool(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(permtool(&["bench", "--sizes", "64..128"]).status.code(), Some(2));
    assert_eq!(permtool(&["leaders", "--n", "5", "--epsilon", "1.5", "--algo", "blocal"]).status.code(), Some(2));
    assert_eq!(permtool(&["leaders", "--n", "5", "--array", "x"]).status.code(), Some(2));
}
