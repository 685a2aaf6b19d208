use std::fs;
use std::process::{Command, Output};

fn chipfire(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chipfire"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const RUN3_PAIR: &str =
    r#"{"L": [[3,1,-1],[1,2,-1],[-1,-1,3]], "M": [[3,-1,-1],[-1,2,-1],[-1,-1,3]]}"#;

#[test]
fn enumerate_superstables_with_preimages() {
    let o = chipfire(&[
        "--fixture",
        "run3",
        "enumerate",
        "--kind",
        "superstable",
        "--preimages",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("12 superstable configurations\n"));
    assert!(out.contains("(5, 4, 0)  (4/3, 7/6, 0)  (1, 1, 0)"), "{out}");
    assert_eq!(out.lines().count(), 15);
}

#[test]
fn fixed_point_prediction() {
    let o = chipfire(&["--fixture", "run3", "fixed-points", "--predict"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("actual=4 predicted=4"));
}

#[test]
fn pair_file_and_graph_file_agree() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("pair.json");
    let graph = dir.path().join("run3.edges");
    fs::write(&pair, RUN3_PAIR).unwrap();
    fs::write(
        &graph,
        "# signed triangle\nn 4 sink 3\n0 1 -\n0 2 +\n1 2 +\n0 3 +\n2 3 +\n",
    )
    .unwrap();
    let a = chipfire(&[
        "--pair",
        pair.to_str().unwrap(),
        "duality",
        "--format",
        "json",
    ]);
    let b = chipfire(&[
        "--graph",
        graph.to_str().unwrap(),
        "duality",
        "--format",
        "json",
    ]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["duality"].as_array().unwrap().len(), 12);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("group.csv");
    let o = chipfire(&[
        "--fixture",
        "run3",
        "group",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(path).unwrap();
    assert_eq!(text, "matrix,order,invariant factors\nL,12,12\nM,8,8\n");
}

#[test]
fn duality_inverse_round_trips() {
    let o = chipfire(&[
        "--fixture",
        "run3",
        "duality",
        "--inverse",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["inverse"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["round_trip"] == true));
}

#[test]
fn frackets_verify() {
    let o = chipfire(&[
        "--fixture",
        "run3",
        "frackets",
        "--side",
        "L",
        "--verify",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["partition"]["frackets"].as_array().unwrap().len(), 6);
    assert_eq!(v["verification"]["ok"], true);
}

#[test]
fn check_mmatrix_rejects_non_m_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("bad.json");
    fs::write(&pair, r#"{"L": [[1,0],[0,1]], "M": [[1,2],[0,1]]}"#).unwrap();
    let o = chipfire(&["--pair", pair.to_str().unwrap(), "check-mmatrix"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("is_m_matrix  false"));
    let o = chipfire(&["--pair", pair.to_str().unwrap(), "show-pair"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_source_is_an_error() {
    let o = chipfire(&["group"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no pair given"));
}

#[test]
fn output_is_independent_of_thread_count() {
    let args = |t: &'static str| {
        [
            "--threads",
            t,
            "family-scan",
            "--kind",
            "cycle",
            "--n",
            "6",
            "--format",
            "json",
        ]
    };
    let one = chipfire(&args("1"));
    let four = chipfire(&args("4"));
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["patterns"].as_array().unwrap().len(), 16);
}

#[test]
fn k4_critical_groups() {
    let o = chipfire(&[
        "family-scan",
        "--kind",
        "complete",
        "--n",
        "4",
        "--verify",
        "z2-subgroup",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = chipfire(&[
        "family-scan",
        "--kind",
        "cycle",
        "--n",
        "4",
        "--verify",
        "half-n",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reference_check_reports_each_criterion() {
    let o = chipfire(&[
        "reference-check",
        "--criterion",
        "1,4,10",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ids: Vec<u64> = v["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_u64().unwrap())
        .collect();
    assert_eq!(ids, vec![1, 4, 10]);
    assert_eq!(v["ok"], true);
    let o = chipfire(&["paper-check", "--criterion", "11"]);
    assert_eq!(o.status.code(), Some(2));
}
