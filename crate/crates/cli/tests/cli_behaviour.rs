use std::path::{Path, PathBuf};

use assert_cmd::Command;
use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn qclass() -> Command {
    let mut c = Command::cargo_bin("qclass").unwrap();
    c.current_dir(root()).env_remove("QCLASS_PRESET_DIR");
    c
}

#[test]
fn usage_errors_exit_64() {
    qclass().arg("frobnicate").assert().code(64);
    qclass().arg("seidel").assert().code(64);
    qclass().args(["index", "--weights=a,b"]).assert().code(64);
    qclass().args(["seidel", "scenes/nope.scene"]).assert().code(64);
    qclass().args(["validate", "cpn:x"]).assert().code(64);
}

#[test]
fn help_and_version_exit_zero() {
    qclass().arg("--help").assert().success();
    qclass().arg("--version").assert().success();
}

#[test]
fn invalid_models_exit_1() {
    qclass().args(["validate", "scenes/corrupted_gw3.scene"]).assert().code(1);
    qclass().args(["qmul-table", "scenes/corrupted_gw3.scene"]).assert().code(1);
    qclass().args(["run", "scenes/corrupted_gw3.scene"]).assert().code(1);
}

#[test]
fn computation_errors_exit_2() {
    // a positive weight is caught at load, a bad base arity during the run
    let dir = std::env::temp_dir().join(format!("qclass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let scene = dir.join("arity.scene");
    std::fs::write(
        &scene,
        "manifold = \"cpn:2\"\n[action]\nweights = [-2, -1]\nh_max = \"1\"\nf_max = { p0 = \"1\" }\n\
         [base]\nkind = \"sphere\"\ndim = 2\n[eL]\nvalues = [\"0\"]\n",
    )
    .unwrap();
    qclass().args(["euler", scene.to_str().unwrap()]).assert().code(2);
    let positive = dir.join("positive.scene");
    std::fs::write(
        &positive,
        "manifold = \"cpn:1\"\n[action]\nweights = [1]\nh_max = \"1\"\nf_max = { p0 = \"1\" }\n",
    )
    .unwrap();
    qclass().args(["seidel", positive.to_str().unwrap()]).assert().code(1);
}

#[test]
fn weights_index_matches_formula() {
    let out = qclass().args(["index", "--weights=-1,-1,-1"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0\n");
    let out = qclass().args(["index", "--weights=-3,-2,0"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "6\n");
}

#[test]
fn structured_output_is_one_document() {
    let dir = std::env::temp_dir().join(format!("qclass-json-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("run.json");
    qclass()
        .args(["run", "scenes/su2_cpn.scene", "--out", out.to_str().unwrap()])
        .assert()
        .success()
        .stdout("");
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["command"], "run");
    assert_eq!(doc["results"]["certify"]["certified"], true);
    assert_eq!(doc["results"]["index"]["virtual_index"], 2);
    assert_eq!(doc["results"]["qcclass"]["class"]["terms"][0]["coeff"], "-1 q^3 t^{1}");
    assert_eq!(doc["results"]["seidel"]["h_max"], "1");

    qclass()
        .args(["--decimal", "--out", out.to_str().unwrap(), "seidel", "scenes/rotation_point.scene"])
        .assert()
        .success();
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["results"]["seidel"]["h_max"]["exact"], "1/2");
    assert_eq!(doc["results"]["seidel"]["h_max"]["decimal_approx"], "0.500000");
}

#[test]
fn preset_dir_overrides_builtin_models() {
    let dir = std::env::temp_dir().join(format!("qclass-presets-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = "name = \"cpn:1\"\ndim = 2\n[basis]\nlabels = [\"p0\", \"p1\"]\ndegrees = [0, 2]\n\
                  [pairing]\nrows = [[\"0\", \"1\"], [\"1\", \"1\"]]\n";
    std::fs::write(dir.join("cpn_1.toml"), broken).unwrap();
    qclass().args(["validate", "cpn:1"]).assert().success();
    qclass().env("QCLASS_PRESET_DIR", &dir).args(["validate", "cpn:1"]).assert().code(1);
}
