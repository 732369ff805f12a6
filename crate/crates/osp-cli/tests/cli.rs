use std::process::{Command, Output};

fn osp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_osp"))
        .args(args)
        .env_remove("OSP_REPORT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn dim_prints_rows_per_degree() {
    let o = osp(&["dim", "--family", "A", "--m1", "2", "--n", "1", "--r", "0", "--k", "1", "--max-deg", "4", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("k=1, d=1, dimA=6, dimH=6"), "{out}");
    assert!(out.contains("k=1, d=4, dimA=6, dimH=6"), "{out}");
}

#[test]
fn json_report_has_schema_and_sorted_keys() {
    let o = osp(&["dim", "--family", "A", "--m1", "1", "--n", "1", "--k", "0..1", "--max-deg", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "osp-report/1");
    assert_eq!(v["status"], "pass");
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn rep_property_suite_passes() {
    let o = osp(&["verify", "--suite", "rep-property", "--samples", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("claim_id,cfg,k,d,dimA,dimH,status\n"), "{out}");
    assert!(!out.contains(",fail"), "{out}");
}

#[test]
fn failing_claims_exit_two() {
    let o = osp(&["verify", "--suite", "thm1", "--family", "A", "--m1", "1", "--n", "1", "--r", "0", "--k", "3", "--format", "text"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("fail"));
}

#[test]
fn usage_errors_exit_one_and_name_the_flag() {
    for (args, flag) in [
        (&["dim", "--family", "A", "--m1", "2", "--k", "1"][..], "--n"),
        (&["verify", "--suite", "nope"][..], "--suite"),
        (&["dim", "--family", "A", "--m1", "1", "--n", "1", "--k", "x"][..], "--k"),
        (&["generate", "--family", "A", "--m1", "1", "--n", "1", "--k", "1", "--gen", "x1", "--max-deg", "4", "--margin", "5"][..], "margin"),
        (&["harmonic-basis", "--closed", "f_lt:even:k=2"][..], "l"),
    ] {
        let o = osp(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(stderr(&o).contains(flag), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(osp(&["dim", "--bogus"]).status.code(), Some(1));
    assert_eq!(osp(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "rep-property", "--samples", "4", "--seed", "7"];
    let a = osp(&args);
    let b = osp(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_dir_receives_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_osp"))
        .args(["dim", "--family", "A", "--m1", "1", "--n", "1", "--k", "1", "--max-deg", "3", "--format", "csv"])
        .env("OSP_REPORT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1, "{files:?}");
    assert_eq!(files[0].extension().unwrap(), "csv");
    let body = std::fs::read_to_string(&files[0]).unwrap();
    assert!(body.starts_with("claim_id,cfg,k,d,dimA,dimH,status"));
}

#[test]
fn closed_family_is_evaluated_and_checked() {
    let o = osp(&["harmonic-basis", "--closed", "f_lt:even:k=2,l=1,t=0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "pass");
    assert!(!v["polynomials"].as_array().unwrap().is_empty());
}

#[test]
fn suites_are_listed() {
    let o = osp(&["suites"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for id in ["thm1", "thm2", "thm3", "bases", "rep-property"] {
        assert!(out.contains(id), "{out}");
    }
}
