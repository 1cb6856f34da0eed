//! End-to-end runs of the binary against the bundled data files: output
//! shapes, determinism, and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_BIN_EXE_ck"));
    assert!(p.exists(), "binary missing at {}", p.display());
    p = p.canonicalize().unwrap();
    p
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn ck")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn trefoil_integral_text_and_json() {
    let text = stdout(&["sig", "integral", &data("trefoil.json"), "--tol", "1e-6"]);
    assert!(text.contains("[-4/3, -4/3]"), "{}", text);
    assert!(text.contains("symbolic: -4/3"));
    let json = stdout(&["sig", "integral", &data("trefoil.json"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["lo"], "-4/3");
    assert_eq!(v["hi"], "-4/3");
}

#[test]
fn signature_at_minus_one() {
    let out = stdout(&["sig", "at", &data("trefoil.json"), "--omega", "-1"]);
    assert_eq!(out.trim(), "-2");
}

#[test]
fn signature_function_formats() {
    let csv = stdout(&["sig", "function", &data("trefoil.json"), "--format", "csv"]);
    assert!(csv.starts_with("cos_lo,cos_hi,value"));
    assert!(csv.lines().count() >= 3);
    let svg = stdout(&["sig", "function", &data("trefoil.json"), "--format", "svg"]);
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("path"));
}

#[test]
fn alexander_polynomial_of_seifert() {
    let out = stdout(&["alex", "poly", &data("trefoil.json")]);
    assert!(out.contains("t - 1 + t^-1"), "{}", out);
}

#[test]
fn fox_then_snf_pipeline() {
    let dir = tempdir();
    let fox_path = dir.join("fox.json");
    stdout_to(
        &["alex", "fox", &data("trefoil.grp"), "--group", "T"],
        &fox_path,
    );
    let out = stdout(&["alex", "snf", fox_path.to_str().unwrap()]);
    assert!(out.contains("free rank 1"), "{}", out);
    assert!(out.contains("torsion divisor"), "{}", out);
}

#[test]
fn group_subcommands() {
    let out = stdout(&["group", "abelianize", &data("trefoil.grp"), "--group", "T"]);
    assert!(out.contains("rank 1"), "{}", out);
    let out = stdout(&["group", "nq", &data("heisenberg.grp"), "--group", "G", "--class", "3"]);
    assert!(out.contains("weight 1: rank 2"));
    assert!(out.contains("weight 2: rank 1"));
    assert!(out.contains("weight 3: rank 0"));
    let out = stdout(&[
        "group",
        "jsurgery",
        &data("trefoil.grp"),
        "--knot",
        "T",
        "--companion",
        "T",
    ]);
    assert!(out.contains("gens x y x' y'"), "{}", out);
}

#[test]
fn series_membership() {
    let out = stdout(&[
        "series",
        "member",
        &data("heisenberg.grp"),
        "--group",
        "A",
        "--word",
        "[x,y] t^-1",
        "--depth",
        "1",
    ]);
    assert!(out.contains("NotIn"), "{}", out);
    let out = stdout(&[
        "series",
        "member",
        &data("heisenberg.grp"),
        "--group",
        "A",
        "--word",
        "[x,y] t^-1",
    ]);
    assert!(out.contains("In"), "{}", out);
}

#[test]
fn loc_solve_trace() {
    let out = stdout(&[
        "loc",
        "solve",
        &data("free.grp"),
        "--group",
        "A",
        "--system",
        &data("system.txt"),
        "--class",
        "3",
    ]);
    assert!(out.contains("stabilized at step 3"), "{}", out);
    assert!(out.contains("z ="), "{}", out);
}

#[test]
fn ledger_pipeline() {
    let out = stdout(&[
        "ledger",
        "rho",
        &data("heisenberg.grp"),
        "--knot",
        "A",
        "--eta",
        "[x,y] t^-1",
        "--depth",
        "0",
        "--seifert",
        &data("trefoil.json"),
    ]);
    assert!(out.contains("rho[0] difference: 0 (exact)"), "{}", out);
    assert!(out.contains("rho[1] difference: [-4/3, -4/3]"), "{}", out);
    let report = stdout(&[
        "ledger",
        "report",
        &data("heisenberg.grp"),
        "--knot",
        "A",
        "--eta",
        "[x,y] t^-1",
        "--family",
        &format!("{},{}", data("trefoil.json"), data("trefoil.json")),
    ]);
    assert!(report.contains("no verdict"), "{}", report);
}

#[test]
fn deterministic_json_output() {
    let args = ["ledger", "certify", &data("heisenberg.grp"), "--knot", "A", "--eta",
        "[x,y] t^-1", "--format", "json"];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(a, b, "outputs must be byte-identical");
    assert!(a.contains("\"depth\": 0"));
}

#[test]
fn domain_error_exits_one_with_position() {
    let dir = tempdir();
    let bad = dir.join("bad.grp");
    std::fs::write(&bad, "group B\ngens x\nrel x z\n").unwrap();
    let out = run(&["group", "parse", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("undeclared generator 'z'"), "{}", err);
    assert!(err.contains("line 3"), "{}", err);
}

#[test]
fn usage_error_exits_two() {
    let out = run(&["sig", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ck-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout_to(args: &[&str], path: &Path) {
    let mut full: Vec<&str> = args.to_vec();
    let p = path.display().to_string();
    full.push("--out");
    full.push(&p);
    let out = run(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
