use std::process::{Command, Output};

fn bridgekit(args: &[&str]) -> Output {
    bridgekit_env(args, &[])
}

fn bridgekit_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bridgekit"));
    cmd.args(args).env_remove("BRIDGEKIT_CEILING");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn invariants_of_a_four_braid_knot() {
    let o = bridgekit(&["invariants", "2,-4,4,-2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("| crossing | 9 |"), "{out}");
    assert!(out.contains("| braid | 4 |"), "{out}");
}

#[test]
fn invariants_of_the_trefoil_as_json() {
    let o = bridgekit(&["invariants", "2,-2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "2/3");
    assert_eq!(v["braid"], 2);
    assert_eq!(v["torus"], 3);
    assert_eq!(v["name"], "3_1");
}

#[test]
fn leading_minus_is_a_word_not_a_flag() {
    let o = bridgekit(&["invariants", "-2,-2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("| name | 4_1 |"));
}

#[test]
fn parse_errors_exit_3_and_name_the_token() {
    let o = bridgekit(&["invariants", "2,0,2"]);
    assert_eq!(code(&o), 3);
    let err = stderr(&o);
    assert!(err.contains("zero entry") && err.contains("\"0\""), "{err}");
    assert_eq!(code(&bridgekit(&["invariants", "2,x"])), 3);
    assert_eq!(code(&bridgekit(&["invariants", "2,-2,2"])), 3);
    assert_eq!(code(&bridgekit(&["no-such-command"])), 3);
}

#[test]
fn census_single_row() {
    let o = bridgekit(&["census", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("| 4 | 1 | 0 | 3 | 1 | 0 | 3 |"));
}

#[test]
fn census_verify_reproduces_reference() {
    let o = bridgekit(&["census", "3..15", "--verify"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(
        out.contains("| 10 | 85 | 242 | 389/85 | 45 | 128 | 206/45 |"),
        "{out}"
    );
    assert!(out.contains("| 14 | 1365 | 5758 | 8041/1365 | 693 | 2920 | 4084/693 |"));
    assert!(stderr(&o).contains("no mismatches"));
}

#[test]
fn census_formulas_only_skips_enumeration() {
    let o = bridgekit(&["census", "100", "--formulas-only", "--format", "csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("100,"));
}

#[test]
fn census_decimal_rendering() {
    let o = bridgekit(&["census", "6", "--decimal", "--up-to-mirror"]);
    assert!(
        stdout(&o).contains("| 6 | 3 | 4 | 3.33333333333 |"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn resource_bound_exits_4() {
    assert_eq!(code(&bridgekit(&["census", "23"])), 4);
    let o = bridgekit_env(&["census", "11"], &[("BRIDGEKIT_CEILING", "10")]);
    assert_eq!(code(&o), 4);
    assert_eq!(code(&bridgekit(&["census", "11", "--ceiling", "10"])), 4);
    let o = bridgekit(&[
        "epi",
        "targets",
        "2,-2,2,-2,2,-2,2,-2",
        "--search-budget",
        "2",
    ]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("partial results"));
}

#[test]
fn config_file_is_read_and_flags_win() {
    let path = std::env::temp_dir().join(format!("bridgekit-test-{}.conf", std::process::id()));
    std::fs::write(&path, "# test\nceiling = 8\nformat = csv\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(code(&bridgekit(&["census", "9", "--config", p])), 4);
    let o = bridgekit(&["census", "5", "--config", p]);
    assert!(stdout(&o).starts_with("c,TK,"));
    let o = bridgekit(&["census", "5", "--config", p, "--format", "md"]);
    assert!(stdout(&o).starts_with("| c |"));
    std::fs::write(&path, "ceiling = eight\n").unwrap();
    assert_eq!(code(&bridgekit(&["census", "5", "--config", p])), 3);
    std::fs::remove_file(&path).ok();
}

#[test]
fn epi_targets_of_t15() {
    let o = bridgekit(&["epi", "targets", "2,-2,2,-2,2,-2,2,-2,2,-2,2,-2,2,-2"]);
    assert_eq!(code(&o), 0);
    assert!(
        stdout(&o).contains("maps onto 3_1 and 5_1"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn epi_minimal_and_check() {
    let o = bridgekit(&["epi", "minimal", "2,-2,2,-2,2,-2"]);
    assert!(stdout(&o).contains("is minimal"));
    let o = bridgekit(&["epi", "minimal", "2,-4,4,-2"]);
    assert!(stdout(&o).contains("is not minimal: it maps onto 3_1"));
    let o = bridgekit(&["epi", "check", "2,2", "2,-2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("no epimorphism"));
    let o = bridgekit(&["epi", "check", "2,-4,4,-2", "2,-2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"]["params"]["r"], 1);
}

#[test]
fn epi_graph_formats() {
    let dot = stdout(&bridgekit(&[
        "epi", "graph", "--max-c", "9", "--format", "dot",
    ]));
    assert!(dot.starts_with("digraph epi {"));
    assert!(dot.contains("\"2,-2,2,-2,2,-2,2,-2\" -> \"2,-2\""), "{dot}");
    let json = stdout(&bridgekit(&[
        "epi", "graph", "--max-c", "9", "--format", "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(!v["edges"].as_array().unwrap().is_empty());
}

#[test]
fn dot_is_only_for_graphs() {
    assert_eq!(code(&bridgekit(&["census", "5", "--format", "dot"])), 3);
}

#[test]
fn table1_matches_reference() {
    let o = bridgekit(&["table1", "--max-c", "15"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 2 + 28);
    assert!(stderr(&o).contains("diff against reference table: empty"));
    assert!(stdout(&o).contains(
        "| 2 | 2 | 15 | [2, -2, 2, -2, 2, -2, 2, -2, 2, -2, 2, -2, 2, -2] | 3_1 and 5_1 |"
    ));
}

#[test]
fn table1_below_nine_is_empty() {
    let o = bridgekit(&["table1", "--max-c", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn identities_pass() {
    let o = bridgekit(&["identities", "--n-max", "200", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 7);
    assert!(checks.iter().all(|c| c["counterexample"].is_null()));
}

#[test]
fn output_does_not_depend_on_worker_count() {
    for args in [
        vec!["census", "3..17", "--format", "json"],
        vec!["epi", "graph", "--max-c", "12", "--format", "json"],
        vec![
            "table1",
            "--max-c",
            "15",
            "--with-mirrors",
            "--format",
            "csv",
        ],
    ] {
        let mut seq = args.clone();
        seq.extend(["--jobs", "1"]);
        let mut par = args.clone();
        par.extend(["--jobs", "4"]);
        assert_eq!(bridgekit(&seq).stdout, bridgekit(&par).stdout, "{args:?}");
    }
}
