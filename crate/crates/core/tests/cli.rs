use std::process::{Command, Output};

fn prufer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prufer"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn factor_reports_divisorial_part_and_maxima() {
    let o = prufer(&["factor", "data/hlocal.pres", "I"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("I = (A=attained(2) B=attained(1/2)) * B * C"), "{}", stdout(&o));
}

#[test]
fn closure_in_json() {
    let o = prufer(&["closure", "data/sqrt2.pres", "I", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["closure"]["M"], "open(1*sqrt2)");
    assert_eq!(v["divisorial"], true);
}

#[test]
fn closure_falls_back_to_the_oracle_without_h_locality() {
    let o = prufer(&["closure", "data/shared.pres", "J"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("divisorial: false") && out.contains("method: oracle"), "{out}");
}

#[test]
fn ops_on_both_file_kinds() {
    let o = prufer(&["op", "--kind", "trace", "data/sqrt2.pres", "I"]);
    assert!(stdout(&o).starts_with("M=open(0)\n"));
    let o = prufer(&["op", "--kind", "product", "data/hlocal.pres", "I", "J"]);
    assert_eq!(stdout(&o), "A=attained(2) B=open(5/6) C=attained(2,-inf)\n");
    let o = prufer(&["op", "--kind", "sum", "data/nofac.pres", "M", "T"]);
    assert_eq!(o.status.code(), Some(0));
    let o = prufer(&["factor", "data/infnondiv.pres", "I", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exponents"]["1"], 2);
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        vec!["op", "--kind", "product", "data/hlocal.pres", "I"],
        vec!["factor", "data/hlocal.pres", "Nope"],
        vec!["factor", "data/missing.pres", "I"],
        vec!["factor", "data/nofac.pres", "M"],
        vec!["verify", "--suite", "everything"],
        vec!["verify", "--suite", "examples", "--trunc", "3"],
    ] {
        assert_eq!(prufer(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "all", "--seed", "3", "--cases", "20", "--format", "json"];
    let a = prufer(&args);
    let b = prufer(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["fixtures"].as_array().unwrap().len(), 4);
}
