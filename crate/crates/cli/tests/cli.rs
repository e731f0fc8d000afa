//! End-to-end tests of the ranklab binary: file formats, exit codes, and the
//! external-procedure protocol.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ranklab"))
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ranklab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

const ORDER123: &str = r#"{"n":3,"m":1,"matrices":[[[0,1,1],[0,0,1],[0,0,0]]]}"#;

#[test]
fn score_borda_on_linear_order() {
    let input = write_temp("p123.json", ORDER123);
    let out = run(&[
        "score",
        "--method",
        "borda",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout_json(&out)["scores"],
        serde_json::json!([2.0, 0.0, -2.0])
    );
}

#[test]
fn score_grs_matches_borda() {
    let input = write_temp("p123b.json", ORDER123);
    let out = run(&[
        "score",
        "--method",
        "grs",
        "--eps",
        "0.5",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let scores = stdout_json(&out)["scores"].as_array().unwrap().clone();
    let want = [2.0, 0.0, -2.0];
    for (s, w) in scores.iter().zip(want) {
        assert!((s.as_f64().unwrap() - w).abs() < 1e-9);
    }
}

#[test]
fn zermelo_ford_failure_exits_3() {
    let input = write_temp(
        "unanimous.json",
        r#"{"n":2,"m":1,"matrices":[[[0,1],[0,0]]]}"#,
    );
    let out = run(&[
        "score",
        "--method",
        "zermelo",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "FORD_CONDITION");
}

#[test]
fn validation_error_exits_2() {
    let input = write_temp(
        "bad.json",
        r#"{"n":2,"m":1,"matrices":[[[0,0.6],[0.3,0]]]}"#,
    );
    let out = run(&[
        "score",
        "--method",
        "borda",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "COMPLEMENTARITY_VIOLATION");
}

#[test]
fn score_reads_stdin_and_speaks_the_subprocess_protocol() {
    let mut child = bin()
        .args(["score", "--method", "borda"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(ORDER123.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["scores"], serde_json::json!([2.0, 0.0, -2.0]));
}

#[test]
fn csv_input_matches_json_input() {
    let m1 = write_temp("m1.csv", "0,1,1\n0,0,1\n0,0,0");
    let out = run(&[
        "score",
        "--method",
        "borda",
        "--format",
        "csv",
        "--input",
        m1.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2,0,-2");
}

#[test]
fn residual_at_solution_is_zero() {
    let input = write_temp(
        "two.json",
        r#"{"n":2,"m":1,"matrices":[[[0,0.75],[0.25,0]]]}"#,
    );
    let scores = write_temp("s.json", r#"{"scores":[0.75,0.25]}"#);
    let out = run(&[
        "residual",
        "--method",
        "zermelo",
        "--input",
        input.to_str().unwrap(),
        "--scores",
        scores.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["max_abs"], 0.0);
}

#[test]
fn check_self_consistency_of_borda_passes() {
    let out = run(&[
        "check",
        "--axiom",
        "self-consistency",
        "--method",
        "borda",
        "--trials",
        "200",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["passed"], true);
    assert_eq!(report["trials"], 200);
}

#[test]
fn check_external_constant_zero_fails_with_exit_1() {
    let cmd = format!(
        "{} score --method const-zero",
        env!("CARGO_BIN_EXE_ranklab")
    );
    let report_path = std::env::temp_dir().join(format!("ranklab-rep-{}.json", std::process::id()));
    let out = run(&[
        "check",
        "--axiom",
        "self-consistency",
        "--exec",
        &cmd,
        "--trials",
        "50",
        "--seed",
        "7",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["passed"], false);
    assert!(!report["violations"].as_array().unwrap().is_empty());
    // violations embed the offending profiles for replay
    assert!(report["violations"][0]["profiles"][0]["n"].is_number());
}

#[test]
fn malformed_external_output_exits_4() {
    let out = run(&[
        "check",
        "--axiom",
        "self-consistency",
        "--exec",
        "echo not-json",
        "--trials",
        "3",
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "EXTERNAL_PROTOCOL");
}

#[test]
fn kemeny_condorcet_cycle() {
    let cycle = r#"{"n":3,"m":3,"matrices":[
        [[0,1,1],[0,0,1],[0,0,0]],
        [[0,0,0],[1,0,1],[1,0,0]],
        [[0,1,0],[0,0,0],[1,1,0]]]}"#;
    let input = write_temp("cycle.json", cycle);
    let out = run(&["kemeny", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["distance"], 8.0);
    assert_eq!(
        v["medians"],
        serde_json::json!([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    );
}

#[test]
fn choice_unanimity_and_method_agree_on_linear_orders() {
    let two = r#"{"n":3,"m":2,"matrices":[
        [[0,1,1],[0,0,1],[0,0,0]],
        [[0,0,1],[1,0,1],[0,0,0]]]}"#;
    let input = write_temp("two_orders.json", two);
    let a = run(&[
        "choice",
        "--method",
        "unanimity",
        "--input",
        input.to_str().unwrap(),
    ]);
    let b = run(&[
        "choice",
        "--method",
        "borda",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout_json(&a)["choice"], stdout_json(&b)["choice"]);
    assert_eq!(stdout_json(&a)["choice"], serde_json::json!([0, 1]));
}

#[test]
fn extend_evaluates_queries() {
    let set = write_temp(
        "set.json",
        r#"{"k":2,"points":[[0.5,-0.5],[-0.5,0.5]],"values":[0,0]}"#,
    );
    let queries = write_temp("q.json", "[[0.5,-0.5],[-0.5,0.5],[2.0,2.0],[-2.0,-2.0]]");
    let out = run(&[
        "extend",
        "--set",
        set.to_str().unwrap(),
        "--queries",
        queries.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let values = stdout_json(&out)["values"].as_array().unwrap().clone();
    assert_eq!(values[0], 0.0); // restriction
    assert_eq!(values[1], 0.0);
    assert!(values[2].as_f64().unwrap() > 0.0); // above both points
    assert!(values[3].as_f64().unwrap() < 0.0); // below both points
}

#[test]
fn generate_is_deterministic_and_crisp_mode_is_crisp() {
    let args = [
        "generate", "--count", "5", "--seed", "42", "--mode", "crisp", "--n-min", "3", "--n-max",
        "4", "--m-min", "1", "--m-max", "2",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same seed must give identical bytes");
    for line in String::from_utf8_lossy(&a.stdout).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        for mat in v["matrices"].as_array().unwrap() {
            for row in mat.as_array().unwrap() {
                for cell in row.as_array().unwrap() {
                    let x = cell.as_f64().unwrap();
                    assert!(x == 0.0 || x == 0.5 || x == 1.0);
                }
            }
        }
    }
}

#[test]
fn generated_linear_order_profiles_pass_point_preconditions() {
    let out = run(&[
        "generate",
        "--count",
        "4",
        "--seed",
        "3",
        "--mode",
        "linear-order",
    ]);
    assert!(out.status.success());
    for line in String::from_utf8_lossy(&out.stdout).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let n = v["n"].as_u64().unwrap() as usize;
        let profile = write_temp("gen_profile.json", line);
        let weights = write_temp(
            "w.json",
            &serde_json::to_string(&(0..n).collect::<Vec<_>>()).unwrap(),
        );
        let score = run(&[
            "score",
            "--method",
            "point",
            "--points",
            weights.to_str().unwrap(),
            "--input",
            profile.to_str().unwrap(),
        ]);
        assert!(
            score.status.success(),
            "{}",
            String::from_utf8_lossy(&score.stderr)
        );
    }
}

#[test]
fn point_scores_reject_valued_profile_via_cli() {
    let tied = write_temp(
        "tied.json",
        r#"{"n":3,"m":1,"matrices":[[[0,0.5,0.5],[0.5,0,0.5],[0.5,0.5,0]]]}"#,
    );
    let weights = write_temp("w3.json", "[0,1,2]");
    let out = run(&[
        "score",
        "--method",
        "point",
        "--points",
        weights.to_str().unwrap(),
        "--input",
        tied.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "NOT_LINEAR_ORDER_PROFILE");
}

#[test]
fn compare_reports_agreement() {
    let input = write_temp("cmp.json", ORDER123);
    let out = run(&[
        "compare",
        "--method-a",
        "borda",
        "--method-b",
        "lsq",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["rankings_agree"], true);
    assert!(v["max_abs_diff"].as_f64().unwrap() < 1e-9);
}

#[test]
fn tolerance_env_var_controls_tie_merging() {
    // scores (1, 1 - 1e-6, 0): default tolerance keeps {0} on top; a coarse
    // RANKLAB_TOL merges the near-tie
    let profile = r#"{"n":2,"m":1,"matrices":[[[0,0.5000001],[0.4999999,0]]]}"#;
    let input = write_temp("near_tie.json", profile);
    let strict = run(&[
        "choice",
        "--method",
        "borda",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert_eq!(stdout_json(&strict)["choice"], serde_json::json!([0]));
    let coarse = bin()
        .args([
            "choice",
            "--method",
            "borda",
            "--input",
            input.to_str().unwrap(),
        ])
        .env("RANKLAB_TOL", "0.01")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&coarse.stdout).unwrap();
    assert_eq!(v["choice"], serde_json::json!([0, 1]));
}
