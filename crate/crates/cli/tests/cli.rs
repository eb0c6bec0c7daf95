use assert_cmd::Command;
use serde_json::Value;

fn weylcheb() -> Command {
    Command::cargo_bin("weylcheb").unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = weylcheb().args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn poly_prints_expanded_polynomials() {
    let (code, out, _) = run(&["poly", "--algebra", "A2", "-m", "1", "-n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "x*y - 3");
    let (_, out, _) = run(&["poly", "--algebra", "A1", "-m", "3"]);
    assert_eq!(out.trim(), "x^3 - 3*x");
    let (_, out, _) = run(&["poly", "--algebra", "C2", "-m", "2", "-n", "0"]);
    assert_eq!(out.trim(), "x^2 - 2*y - 4");
    let (_, out, _) = run(&["poly", "--algebra", "A2", "-m", "1", "-n", "0"]);
    assert_eq!(out.trim(), "x");
    let (_, out, _) = run(&["poly", "--algebra", "c2", "-m", "0", "-n", "0"]);
    assert_eq!(out.trim(), "1");
}

#[test]
fn a2_order_two_text() {
    let (code, out, _) = run(&["derive", "--algebra", "A2", "--order", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("E(m,n) = m^2+mn+n^2"), "{out}");
    assert!(out.contains(
        "(x^2 - 3*y) d^2/dx^2 + (x*y - 9) d^2/dxdy + (y^2 - 3*x) d^2/dy^2 + (x) d/dx + (y) d/dy"
    ));
    assert!(out.contains("eigen 49/49"));
    assert!(out.contains("methods agree"));
}

#[test]
fn c2_order_four_json_lists_both_operators() {
    let (code, out, _) = run(&["derive", "--algebra", "C2", "--order", "4", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["basis"].as_array().unwrap().len(), 2);
    assert_eq!(v["basis"][1].to_string(), "[0,0,1,2,1]");
    assert_eq!(v["operators"].as_array().unwrap().len(), 2);
    assert_eq!(v["checks"]["all_passed"], Value::Bool(true));
    assert_eq!(v["checks"]["molien"].to_string(), "2");
}

#[test]
fn order_two_json_symbols() {
    for (algebra, basis, spectrum) in [
        ("A2", "[[1,1,1]]", "m^2+mn+n^2"),
        ("G2", "[[1,3,3]]", "m^2+3mn+3n^2"),
    ] {
        let (code, out, _) = run(&["derive", "--algebra", algebra, "--order", "2", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["basis"].to_string(), basis);
        assert_eq!(v["spectrum"], spectrum);
        assert_eq!(v["cartesian"].as_array().unwrap().len(), 5);
    }
}

#[test]
fn latex_output() {
    let (code, out, _) = run(&["derive", "--algebra", "C2", "--order", "2", "--format", "latex"]);
    assert_eq!(code, 0);
    assert!(out.contains("\\partial_{x}^{2}"), "{out}");
    assert!(out.contains("E(m,n) = m^{2} + 2 mn + 2 n^{2}"), "{out}");
}

#[test]
fn empty_fixed_space_exits_two() {
    for algebra in ["C2", "G2"] {
        let (code, out, err) = run(&["derive", "--algebra", algebra, "--order", "3"]);
        assert_eq!(code, 2, "{algebra}");
        assert!(out.contains("fixed space dimension 0"));
        assert!(err.contains("no invariant operators"));
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["derive", "--algebra", "B2", "--order", "2"]).0, 1);
    assert_eq!(run(&["derive", "--algebra", "A2", "--order", "1"]).0, 1);
    assert_eq!(run(&["poly", "--algebra", "A1", "-m", "2", "-n", "1"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn degree_cap_failure_exits_three() {
    let (code, _, err) = run(&["derive", "--algebra", "G2", "--order", "6"]);
    assert_eq!(code, 3);
    assert!(err.contains("needs degree 9"), "{err}");
}

#[test]
fn verify_reports_counts() {
    let (code, out, _) = run(&["verify", "--algebra", "A2", "--order", "2", "--max-index", "6"]);
    assert_eq!(code, 0);
    assert!(out.contains("49/49 eigen-relations pass"), "{out}");
    assert!(out.contains("49/49 polynomials agree"), "{out}");
    let (code, out, _) = run(&["verify", "--algebra", "A2", "--order", "2", "--max-index", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("1/1 eigen-relations pass"), "{out}");
    let (code, out, _) = run(&["verify", "--algebra", "G2", "--order", "2", "--max-index", "6"]);
    assert_eq!(code, 0);
    assert!(out.contains("49/49 eigen-relations pass"), "{out}");
    assert!(out.contains("49/49 polynomials agree"), "{out}");
}

#[test]
fn verify_json_summary() {
    let (code, out, _) =
        run(&["verify", "--algebra", "G2", "--order", "2", "--max-index", "3", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["operators"][0]["checked"].to_string(), "16");
    assert_eq!(v["oracle"]["points"].to_string(), "200");
}

#[test]
fn derived_operators_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c2.json");
    let (code, out, _) = run(&["derive", "--algebra", "C2", "--order", "4", "--format", "json"]);
    assert_eq!(code, 0);
    std::fs::write(&path, &out).unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) =
        run(&["verify", "--algebra", "C2", "--order", "4", "--max-index", "6", "--operator", p]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.matches("49/49 eigen-relations pass").count(), 2);
    let (code, _, err) =
        run(&["verify", "--algebra", "A2", "--order", "4", "--max-index", "2", "--operator", p]);
    assert_eq!(code, 1);
    assert!(err.contains("C2"));
}

#[test]
fn tampered_operator_fails_verification() {
    let (_, out, _) = run(&["derive", "--algebra", "A2", "--order", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let mut op = v["operators"][0]["operator"].clone();
    // Bump the constant in the d^2/dxdy coefficient from -9 to -8.
    let terms = op["cartesian"][1]["poly"].as_array_mut().unwrap();
    let constant = terms
        .iter_mut()
        .find(|t| t["dx"].as_u64() == Some(0) && t["dy"].as_u64() == Some(0))
        .unwrap();
    constant["num"] = serde_json::from_str("-8").unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_string(&op).unwrap()).unwrap();
    let (code, out, _) = run(&[
        "verify",
        "--algebra",
        "A2",
        "--order",
        "2",
        "--max-index",
        "3",
        "--operator",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 3, "{out}");
    assert!(out.contains("FAIL at"), "{out}");
}

#[test]
fn reproduce_flags_suspect_entries() {
    let (code, out, _) = run(&["reproduce", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let entries = v["entries"].as_array().unwrap();
    let status = |id: &str| {
        entries
            .iter()
            .find(|e| e["id"] == id)
            .map(|e| e["status"].as_str().unwrap().to_owned())
            .unwrap()
    };
    assert_eq!(status("c2-order-4a"), "MISMATCH-PAPER-SUSPECT");
    assert_eq!(status("g2-powers-only/N=6"), "MISMATCH-PAPER-SUSPECT");
    assert_eq!(status("a2-cartesian"), "MATCH");
    assert_eq!(status("c2-order-4-cartesian/(0,0,1,2,1)"), "NOT-PRINTED");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["derive", "--algebra", "C2", "--order", "4", "--format", "json"][..],
        &["verify", "--algebra", "G2", "--order", "2", "--max-index", "4", "--json"][..],
        &["reproduce"][..],
    ] {
        let first = run(args);
        let second = run(args);
        assert_eq!(first, second, "{args:?}");
    }
}
