//! Runs the `modcov` binary against the fixtures in tests/data and compares
//! the JSON reports with tests/golden. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_modcov"));
    c.current_dir(env!("CARGO_MANIFEST_DIR"));
    c.env_remove("TOOLKIT_THREADS");
    c
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Exact on everything but floats, which may differ in the last bits.
fn same(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) if x.is_f64() || y.is_f64() => {
            (x.as_f64().unwrap() - y.as_f64().unwrap()).abs() <= 1e-9
        }
        (Value::Array(x), Value::Array(y)) => x.len() == y.len() && x.iter().zip(y).all(|(p, q)| same(p, q)),
        (Value::Object(x), Value::Object(y)) => {
            x.len() == y.len() && x.iter().all(|(k, v)| y.get(k).is_some_and(|w| same(v, w)))
        }
        _ => a == b,
    }
}

fn golden(name: &str, args: &[&str], code: i32) {
    let (got_code, stdout, stderr) = run(args);
    assert_eq!(got_code, code, "{name}: stderr {stderr}");
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", &format!("{name}.json")].iter().collect();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).unwrap();
    }
    let want: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let got: Value = serde_json::from_str(&stdout).unwrap();
    assert!(same(&got, &want), "{name} differs from golden:\n{stdout}");
}

#[test]
fn lie_goldens() {
    golden("lie_cohomology_poincare4", &["lie", "cohomology", "--algebra", "poincare4", "--degree", "2"], 0);
    golden("lie_perfect_poincare2", &["lie", "perfect", "--algebra", "poincare2"], 0);
    golden("lie_validate_corrupted", &["lie", "validate", "--algebra", "tests/data/corrupted.json"], 1);
    golden(
        "lie_generate_six",
        &["lie", "generate", "--algebra", "poincare4", "--generators", "tests/data/six_boosts.json"],
        0,
    );
    golden("lie_ideal", &["lie", "ideal", "--algebra", "poincare4", "--element", "tests/data/element.json"], 0);
}

#[test]
fn group_goldens() {
    golden("group_h_z2_z2", &["group", "h", "--group", "z2", "--coeff", "z2", "--degree", "2"], 0);
    golden("group_h_z3_z2", &["group", "h", "--group", "z3", "--coeff", "z2", "--degree", "2"], 0);
    golden("group_cocycles_z2_z2", &["group", "cocycles", "--group", "z2", "--coeff", "z2"], 0);
    golden(
        "extension_build_nontrivial",
        &["group", "extension", "build", "--cocycle", "tests/data/nontrivial.json"],
        0,
    );
    golden(
        "extension_build_noncocycle",
        &["group", "extension", "build", "--cocycle", "tests/data/noncocycle.json"],
        1,
    );
    golden(
        "extension_equiv",
        &[
            "group",
            "extension",
            "equiv",
            "--cocycle",
            "tests/data/trivial.json",
            "--other",
            "tests/data/shifted.json",
        ],
        0,
    );
    golden(
        "extension_split_trivial",
        &["group", "extension", "split", "--cocycle", "tests/data/trivial.json"],
        0,
    );
    golden(
        "correspondence_z4_z2",
        &["group", "correspondence", "--extension", "z4", "--quotient", "z2", "--coeff", "z2"],
        0,
    );
}

#[test]
fn modular_goldens() {
    golden("modular_tracial", &["modular", "--input", "tests/data/tracial.json", "--seed", "1"], 0);
    golden("modular_two_thirds", &["modular", "--input", "tests/data/two_thirds.json", "--seed", "1"], 0);
    golden("modular_product", &["modular", "--input", "tests/data/product.json", "--seed", "1"], 1);
}

#[test]
fn spacetime_goldens() {
    golden("spacetime_boost_generation", &["spacetime", "boost-generation"], 0);
    golden(
        "spacetime_boost_generation_coordinate",
        &["spacetime", "boost-generation", "--wedges", "coordinate-only"],
        1,
    );
    golden("spacetime_boost_zero", &["spacetime", "boost", "--t", "0"], 0);
    golden(
        "spacetime_complement_shifted",
        &["spacetime", "complement", "--wedge", "tests/data/wedge_x2_shifted.json"],
        0,
    );
}

#[test]
fn report_values() {
    let (_, out, _) = run(&["spacetime", "boost", "--t", "0"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let l = &v["result"]["lorentz"];
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(l[i][j].as_f64().unwrap(), if i == j { 1.0 } else { 0.0 });
        }
    }
    let (_, out, _) = run(&["modular", "--input", "tests/data/two_thirds.json", "--seed", "1"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let spec: Vec<f64> = v["result"]["spectrum"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    for (s, w) in spec.iter().zip([0.5, 1.0, 1.0, 2.0]) {
        assert!((s - w).abs() < 1e-10);
    }
    let (_, out, _) = run(&["modular", "--input", "tests/data/tracial.json", "--seed", "1"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["result"]["spectrum"].as_array().unwrap().iter().all(|x| (x.as_f64().unwrap() - 1.0).abs() < 1e-10));
    let (_, out, _) = run(&["lie", "validate", "--algebra", "tests/data/sl2.json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["valid"], Value::Bool(true));
    assert!(v["inputs"]["tests/data/sl2.json"].as_str().unwrap().len() == 64);
}

#[test]
fn byte_identical_across_runs() {
    for args in [
        &["modular", "--input", "tests/data/two_thirds.json", "--seed", "9"][..],
        &["group", "h", "--group", "q8", "--coeff", "z2xz2", "--degree", "2"],
        &["spacetime", "boost-generation"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a, b);
    }
    let threaded = bin()
        .args(["group", "cocycles", "--group", "z3", "--coeff", "z3"])
        .env("TOOLKIT_THREADS", "1")
        .output()
        .unwrap();
    let (_, default, _) = run(&["group", "cocycles", "--group", "z3", "--coeff", "z3"]);
    assert_eq!(String::from_utf8(threaded.stdout).unwrap(), default);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &["lie", "cohomology", "--algebra", "nope", "--degree", "1"],
        &["lie", "cohomology", "--algebra", "poincare4"],
        &["modular", "--input", "tests/data/tracial.json"],
        &["modular", "--input", "tests/data/missing.json", "--seed", "1"],
        &["group", "h", "--group", "z2", "--coeff", "zz", "--degree", "1"],
        &["lie", "generate", "--algebra", "poincare4", "--generators", "tests/data/element.json"],
    ] {
        let (code, stdout, stderr) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(stdout.is_empty());
        assert!(!stderr.is_empty());
    }
    let bad = bin()
        .args(["lie", "perfect", "--algebra", "sl2"])
        .env("TOOLKIT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn size_limit_names_bound() {
    let (code, _, stderr) = run(&["group", "cocycles", "--group", "s3", "--coeff", "z4"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("1048576"), "{stderr}");
}

#[test]
fn text_format_and_timing() {
    let (code, out, _) = run(&["group", "h", "--group", "z4", "--coeff", "z6", "--degree", "2", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("invariant_factors: [2]"));
    let (_, out, _) = run(&["spacetime", "boost", "--t", "0.1", "--timing"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["elapsed_ms"].as_f64().is_some());
    let (_, out, _) = run(&["spacetime", "boost", "--t", "0.1"]);
    assert!(!out.contains("elapsed_ms"));
}
