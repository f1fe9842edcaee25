use std::path::PathBuf;
use std::process::Command;

fn problems() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("problems")
}

fn noether(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_noether"))
        .args(args)
        .current_dir(problems())
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn golden(args: &[&str], expected: &str) {
    let (code, stdout, stderr) = noether(args);
    assert_eq!(code, 0, "{args:?} failed: {stderr}");
    assert_eq!(stdout, format!("{expected}\n"), "{args:?}");
}

#[test]
fn operators_for_every_strategy() {
    for s in ["punctual-hilbert", "macaulay", "hybrid"] {
        golden(&["noetherian-ops", "--strategy", s, "running.prob"], "{1, x3*dx1 + dx2}");
    }
    golden(&["noetherian-ops", "--verify-input", "curve.prob"], "{1, dx2}");
}

#[test]
fn dual_space_commands() {
    golden(&["hilbert", "--degrees", "0..2", "approx.prob"], "1 1 0");
    golden(&["gcorners", "approx.prob"], "x2 x1^2");
    golden(&["dual", "approx.prob"], "| 1 -1.73205*dx1 + dx2 |");
    golden(&["dual", "--point", "1.0,-1.7320508", "approx.prob"], "| 1 1.73205*dx1 + dx2 |");
    golden(&["dual", "tangent.prob"], "| 1 1/2*dx1^2 + dx2 dx1 1/6*dx1^3 + dx1*dx2 |");
    golden(&["hilbert", "--degrees", "0..4", "tangent.prob"], "1 1 1 1 0");
    golden(&["gcorners", "tangent.prob"], "x2 x1^4");
    golden(&["gcorners", "--degree", "4", "embedded.prob"], "x^2 x*y");
    golden(&["hilbert", "--degrees", "0..4", "--degree", "4", "embedded.prob"], "1 2 1 1 1");
    golden(&["eliminating-dual", "--eliminate", "x1", "--degree", "2", "tangent.prob"], "| 1 1/2*dx1^2 + dx2 dx1 |");
}

#[test]
fn primary_ideal_commands() {
    golden(&["specialized-ops", "running.prob"], "{1, 5*dx1 + dx2}");
    golden(&["specialized-ops", "--point", "0,0,-2", "running.prob"], "{1, -2*dx1 + dx2}");
    golden(&["numerical-ops", "running.prob"], "{1, x3*dx1 + dx2}");
    golden(&["numerical-ops", "--points", "points.txt", "running.prob"], "{1, x3*dx1 + dx2}");
    golden(&["ideal-from-ops", "running.prob"], "ideal (x2*x3 - x1, x2^2, x1*x2, x1^2)");
    golden(&["ideal-from-ops", "curve.prob"], "ideal (x1^4 - 2*x1^2*x2 + x2^2)");
    golden(&["hilb-map", "running.prob"], "ideal (hx1 - x3*hx2, hx2^2)");
}

#[test]
fn parse_errors_exit_one_with_position() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let bad = dir.join("bad.prob");
    std::fs::write(&bad, "ring QQ[x1,x2];\nideal I = x1^2,\n  x1*y;\n").unwrap();
    let (code, stdout, stderr) = noether(&["dual", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.is_empty());
    assert!(stderr.contains("line 3, column 6: unknown identifier 'y'"), "{stderr}");

    std::fs::write(&bad, "ring QQ[x1,x2];\nideal I = ;\n").unwrap();
    let (code, _, stderr) = noether(&["dual", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("line 2, column 10: ideal requires at least one generator"), "{stderr}");

    let (code, _, _) = noether(&["hilbert", "--degrees", "2..0", "approx.prob"]);
    assert_eq!(code, 1);
    let (code, _, _) = noether(&["noetherian-ops", "--dependent", "x9", "running.prob"]);
    assert_eq!(code, 1);
    let (code, _, _) = noether(&["frobnicate"]);
    assert_eq!(code, 1);
    let (code, _, _) = noether(&["dual", "missing.prob"]);
    assert_eq!(code, 1);
}

#[test]
fn domain_errors_exit_two() {
    let (code, _, stderr) = noether(&["dual", "--point", "1.0,1.0", "approx.prob"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("point not on variety"));
    let (code, _, stderr) = noether(&["hilb-map", "--ideal", "P", "--prime", "Q", "running.prob"]);
    assert_eq!(code, 2, "{stderr}");
    let (code, _, stderr) = noether(&["hilbert", "--degrees", "0..3", "--degree", "2", "approx.prob"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("beyond truncation"));
    // a non-isolated point without truncation
    let (code, _, stderr) = noether(&["dual", "embedded.prob"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("isolated"), "{stderr}");
}

#[test]
fn coordinate_changes() {
    golden(&["noetherian-ops", "--substitute", "x1=x1-x2", "skew.prob"], "{1, dx3}");
    golden(&["hilb-map", "--substitute", "x1=x1-x2", "--dependent", "x1,x3", "skew.prob"], "ideal (hx1, hx3^2)");
    let (code, _, stderr) = noether(&["noetherian-ops", "--dependent", "x1,x2", "skew.prob"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--substitute"), "{stderr}");
    let (code, _, stderr) = noether(&["noetherian-ops", "--substitute", "x1=x2", "skew.prob"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("not invertible"));
    let (code, _, _) = noether(&["noetherian-ops", "--substitute", "x1=x1^2", "skew.prob"]);
    assert_eq!(code, 1);
}

#[test]
fn help_exits_zero() {
    let (code, stdout, _) = noether(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["noetherian-ops", "specialized-ops", "numerical-ops", "ideal-from-ops", "dual", "eliminating-dual", "hilbert", "gcorners", "hilb-map"] {
        assert!(stdout.contains(sub), "{sub} missing from help");
    }
}
