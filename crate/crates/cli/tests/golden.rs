//! Golden-file tests: every subcommand on the shipped scenes, compared byte
//! for byte. Set `QCLASS_BLESS=1` to rewrite the expected files.

use std::path::{Path, PathBuf};

use assert_cmd::Command;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn qclass(args: &[&str]) -> (i32, String, String) {
    let out = Command::cargo_bin("qclass")
        .unwrap()
        .current_dir(root())
        .env_remove("QCLASS_PRESET_DIR")
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn check(name: &str, args: &[&str], code: i32) {
    let (got_code, stdout, stderr) = qclass(args);
    assert_eq!(got_code, code, "{args:?} exited {got_code}; stderr: {stderr}");
    let path = golden_dir().join(format!("{name}.txt"));
    if std::env::var_os("QCLASS_BLESS").is_some() {
        std::fs::write(&path, &stdout).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("missing golden file {}: {e}", path.display()));
    assert_eq!(stdout, expected, "output of {args:?} drifted from {}", path.display());
}

const SU2: &str = "scenes/su2_cpn.scene";
const ROT: &str = "scenes/rotation_point.scene";

#[test]
fn validate_goldens() {
    check("validate_cpn3", &["validate", "cpn:3"], 0);
    check("validate_su2", &["validate", SU2], 0);
    check("validate_corrupted", &["validate", "scenes/corrupted_gw3.scene"], 1);
}

#[test]
fn qmul_table_goldens() {
    check("qmul_table_cpn2", &["qmul-table", "cpn:2"], 0);
    check("qmul_table_rotation", &["qmul-table", ROT], 0);
}

#[test]
fn seidel_goldens() {
    check("seidel_su2", &["seidel", SU2], 0);
    check("seidel_rotation", &["seidel", ROT], 0);
}

#[test]
fn index_goldens() {
    check("index_semifree", &["index", "--weights=-1,-1,-1"], 0);
    check("index_su2", &["index", SU2], 0);
}

#[test]
fn euler_goldens() {
    check("euler_su2", &["euler", SU2], 0);
    check("euler_zero", &["euler", "scenes/zero_euler.scene"], 0);
}

#[test]
fn qcclass_goldens() {
    check("qcclass_su2", &["qcclass", SU2], 0);
    check("qcclass_rotation", &["qcclass", ROT], 0);
}

#[test]
fn psi_goldens() {
    check("psi_su2", &["psi", SU2], 0);
    check("psi_mismatch", &["psi", "scenes/index_mismatch.scene"], 0);
}

#[test]
fn bound_goldens() {
    check("bound_su2", &["bound", SU2], 0);
    check("bound_su2_decimal", &["bound", SU2, "--decimal"], 0);
    check("bound_mismatch", &["bound", "scenes/index_mismatch.scene"], 0);
}

#[test]
fn certify_goldens() {
    check("certify_su2", &["certify", SU2], 0);
    check("certify_rotation", &["certify", ROT], 0);
    check("certify_mismatch", &["certify", "scenes/index_mismatch.scene"], 0);
    check("certify_zero_euler", &["certify", "scenes/zero_euler.scene"], 0);
}

#[test]
fn run_goldens() {
    check("run_su2", &["run", SU2], 0);
    check("run_rotation", &["run", ROT], 0);
}

#[test]
fn certify_line_for_su2() {
    let (_, out, _) = qclass(&["certify", SU2]);
    assert!(out.starts_with("CERTIFIED: I(γ)=2=dim B; e^1 ≠ 0; bound L^+ ≥ h_max"));
}

#[test]
fn output_is_deterministic() {
    for args in [&["run", SU2][..], &["qmul-table", "cpn:4"][..]] {
        assert_eq!(qclass(args).1, qclass(args).1);
    }
}
