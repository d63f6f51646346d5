use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn divrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_divrank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("divrank-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

const RUNNING: &str = r#"{"m":3,"n":1,"c":[3,2,0],"a":[1,-1,0],"w":[1],"b1":-0.5,"b2":0.5}"#;

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn solve_running_example() {
    let input = scratch("running.json", RUNNING);
    let out = divrank(&["solve", "--input", input.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["status"], "UpperActive");
    assert!((v["lambda_star"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((v["rho"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert!((v["objective"].as_f64().unwrap() - 2.75).abs() < 1e-12);
    assert!((v["diversity"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn solve_is_repeatable_and_flags_agree() {
    let input = scratch("repeat.json", RUNNING);
    let path = input.to_str().unwrap();
    let strip = |mut v: serde_json::Value| {
        v["stats"]["wall_time_us"] = serde_json::Value::Null;
        v
    };
    let first = strip(json(&divrank(&["solve", "--input", path])));
    let second = strip(json(&divrank(&["solve", "--input", path])));
    assert_eq!(first, second);
    let plain = json(&divrank(&["solve", "--input", path, "--no-screening"]));
    assert_eq!(plain["objective"], first["objective"]);
}

#[test]
fn malformed_input_exits_2() {
    let input = scratch("bad.json", "{\"m\": 3, \"c\": [1,");
    let out = divrank(&["solve", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_instance_lists_every_violation() {
    let input = scratch(
        "invalid.json",
        r#"{"m":3,"n":2,"c":[3,1,0],"a":[2,0,1],"w":[0.5,1],"b1":2,"b2":1}"#,
    );
    let out = divrank(&["solve", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.lines().filter(|l| l.trim_start().starts_with("- ")).count(), 2, "{err}");
}

#[test]
fn infeasible_exits_3_with_status() {
    let input = scratch(
        "infeasible.json",
        r#"{"m":3,"n":2,"c":[3,1,0],"a":[2,0,1],"w":[1,0.5],"b1":10,"b2":11}"#,
    );
    let out = divrank(&["solve", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "Infeasible");
}

#[test]
fn gen_then_solve() {
    let dir = std::env::temp_dir().join(format!("divrank-gen-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let file = dir.join("gen.json");
    let out = divrank(&["gen", "--m", "50", "--n", "5", "--seed", "4", "--output", file.to_str().unwrap()]);
    assert!(out.status.success());
    let again = divrank(&["gen", "--m", "50", "--n", "5", "--seed", "4"]);
    assert_eq!(
        serde_json::from_str::<serde_json::Value>(&fs::read_to_string(&file).unwrap()).unwrap(),
        json(&again)
    );
    let solved = divrank(&["solve", "--input", file.to_str().unwrap()]);
    assert!(solved.status.success());
    assert_eq!(json(&solved)["status"], "UpperActive");
}

#[test]
fn verify_small_runs_pass() {
    let out = divrank(&["verify", "--count", "20", "--m", "7", "--n", "2", "--seed", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("0 mismatches"));
    let empty = divrank(&["verify", "--count", "0"]);
    assert!(empty.status.success());
}

#[test]
fn bench_csv_shape() {
    let out = divrank(&["bench", "--m-list", "50,100", "--n-list", "5", "--reps", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,n,algorithm,mean_ms,std_ms,reps");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("50,5,no_screening,"));
}
