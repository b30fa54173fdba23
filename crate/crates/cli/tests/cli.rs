use std::process::{Command, Output};

fn operad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_operad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn square_of_dendriform() {
    let o = operad(&["square", "dendriform", "dendriform"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("dendriform □ dendriform: 4 generators, 9 relations"));
}

#[test]
fn square_json_lists_tuple_labels() {
    let o = operad(&["--json", "square", "dendriform", "dendriform"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 4);
    assert_eq!(v["relations"].as_array().unwrap().len(), 9);
}

#[test]
fn non_duality_pairs_to_minus_one() {
    let o = operad(&["non-duality"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("= -1"));
}

#[test]
fn rota_baxter_on_associative() {
    let o = operad(&[
        "verify-operator",
        "associative",
        "--law",
        "rb",
        "--weight",
        "formal",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("7/7 relations verified"));
}

#[test]
fn commuting_family_gives_quadri() {
    let o = operad(&["verify-family", "associative", "--laws", "rb0,rb0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("9/9 relations verified"));
}

#[test]
fn unknown_type_is_a_usage_error() {
    let o = operad(&["show", "no_such_type"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown type"));
}

#[test]
fn bad_weight_is_a_usage_error() {
    let o = operad(&[
        "verify-operator",
        "associative",
        "--law",
        "rb",
        "--weight",
        "x",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quadri.json");
    let p = path.to_str().unwrap();
    let o = operad(&["export", "quadri", "--format", "json", "-o", p]);
    assert_eq!(o.status.code(), Some(0));
    let from_file = operad(&["show", p]);
    let from_catalog = operad(&["show", "quadri"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_file), stdout(&from_catalog));
}

#[test]
fn validate_reports_a_broken_presentation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.op");
    std::fs::write(
        &path,
        "type broken {\n  generators: lt, gt;\n  star: lt + gt;\n  relations:\n    (lt.lt | lt.lt + lt.gt)\n    (gt.lt | gt.lt)\n}\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = operad(&["validate", p]);
    assert_eq!(o.status.code(), Some(1));
    // other commands refuse to work on it
    assert_eq!(operad(&["show", p]).status.code(), Some(2));
}

#[test]
fn morphism_from_label_map() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("transpose.json");
    std::fs::write(
        &path,
        r#"{"map": {"(lt|lt)": "(lt|lt)", "(lt|gt)": "(gt|lt)", "(gt|lt)": "(lt|gt)", "(gt|gt)": "(gt|gt)"}}"#,
    )
    .unwrap();
    let o = operad(&[
        "check-morphism",
        "--map",
        path.to_str().unwrap(),
        "quadri",
        "quadri",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("isomorphism: true"));

    std::fs::write(&path, r#"{"matrix": [["0", "1"], ["1", "0"]]}"#).unwrap();
    let o = operad(&[
        "check-morphism",
        "--map",
        path.to_str().unwrap(),
        "dendriform",
        "dendriform",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("morphism: false"));
}

#[test]
fn single_suite_check() {
    let o = operad(&["suite", "--check", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("[3] PASS"));
    assert_eq!(operad(&["suite", "--check", "10"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = operad(&["auto-group", "quadri"]);
    let b = operad(&["auto-group", "quadri"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("order 2"));
}
