use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn sample(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../samples").join(format!("{name}.json")).to_string_lossy().into_owned()
}

fn galmodel(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_galmodel")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("galmodel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn good_samples_exit_zero() {
    for s in ["sqrt2", "s3", "zeta5", "elliptic", "trivial"] {
        for cmd in ["verify-galois", "build-model", "check-qgc", "aut-group", "report"] {
            let (code, _, err) = galmodel(&[cmd, &sample(s)]);
            assert_eq!(code, 0, "{cmd} {s}: {err}");
        }
    }
}

#[test]
fn non_galois_input_exits_three() {
    for cmd in ["verify-galois", "build-model", "report"] {
        let (code, _, err) = galmodel(&[cmd, &sample("cube_root")]);
        assert_eq!(code, 3, "{cmd}");
        assert!(err.contains("not Galois"), "{err}");
    }
}

#[test]
fn refuted_qgc_exits_three() {
    let (code, out, _) = galmodel(&["check-qgc", &sample("s3_cube_root_chart"), "--format", "json"]);
    assert_eq!(code, 3);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["qgc"]["verdict"], "refuted");
    assert_eq!(galmodel(&["verify-galois", &sample("s3_cube_root_chart")]).0, 0);
}

#[test]
fn exhausted_budgets_exit_four() {
    let (code, _, err) = galmodel(&["build-model", &sample("elliptic"), "--gb-budget", "1"]);
    assert_eq!(code, 4);
    assert!(err.contains("budget"), "{err}");
    let (code, _, err) = galmodel(&["verify-galois", &sample("s3"), "--factor-degree-cap", "1"]);
    assert_eq!(code, 4);
    assert!(err.contains("cap"), "{err}");
}

#[test]
fn uncertified_fraction_field_exits_four() {
    let p = scratch(
        "even.json",
        r#"{"base": {"transcendentals": ["t"]}, "extension": {"algebraics": []}, "nice_basis": [],
            "cover": {"charts": [{"name": "V", "generators": ["t^2"]}], "overlaps": []}}"#,
    );
    let (code, out, _) = galmodel(&["build-model", &p, "--format", "json"]);
    assert_eq!(code, 4);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["verdicts"]["cover_y"], "inconclusive");
}

#[test]
fn malformed_input_exits_two_with_location() {
    let p = scratch("bad.json", "{\"base\": {\"transcendentals\": []},\n \"extension\": {\"algebraics\": [}\n");
    let (code, out, err) = galmodel(&["report", &p]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 2"), "{err}");

    let p = scratch(
        "paren.json",
        r#"{"extension": {"algebraics": [{"name": "a", "min_poly": "a^2 - (2"}]}, "nice_basis": ["a"], "cover": {"charts": [], "overlaps": []}}"#,
    );
    let (code, _, err) = galmodel(&["report", &p]);
    assert_eq!(code, 2);
    assert!(err.contains("extension.algebraics[0].min_poly") && err.contains("column"), "{err}");

    let (code, _, _) = galmodel(&["report", "/nonexistent/input.json"]);
    assert_eq!(code, 2);
}

#[test]
fn reducible_minimal_polynomial_exits_two() {
    let p = scratch(
        "reducible.json",
        r#"{"extension": {"algebraics": [{"name": "a", "min_poly": "a^2 - 4"}]}, "nice_basis": ["a"], "cover": {"charts": [], "overlaps": []}}"#,
    );
    let (code, _, err) = galmodel(&["verify-galois", &p]);
    assert_eq!(code, 2);
    assert!(err.contains("reducible"), "{err}");
}

/// Every `verdict.<name>: <value>` line of the text output agrees with the
/// JSON verdict object.
#[test]
fn text_and_json_verdicts_agree() {
    for s in ["sqrt2", "s3", "elliptic", "cube_root", "s3_cube_root_chart"] {
        let (_, text, _) = galmodel(&["report", &sample(s)]);
        let (_, json, _) = galmodel(&["report", &sample(s), "--format", "json"]);
        let v: Value = serde_json::from_str(&json).unwrap();
        let verdicts = v["verdicts"].as_object().unwrap();
        let mut seen = 0;
        for line in text.lines() {
            let Some(rest) = line.strip_prefix("verdict.") else { continue };
            let (name, value) = rest.split_once(": ").unwrap();
            let expected = match &verdicts[name] {
                Value::Bool(b) => b.to_string(),
                Value::String(s) => s.clone(),
                other => panic!("{s}: unexpected verdict {other}"),
            };
            assert_eq!(value, expected, "{s}: {name}");
            seen += 1;
        }
        assert_eq!(seen, verdicts.values().filter(|x| !x.is_null()).count(), "{s}");
    }
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for s in ["sqrt2", "elliptic", "s3_cube_root_chart"] {
        let a = galmodel(&["report", &sample(s), "--format", "json"]).1;
        let b = galmodel(&["report", &sample(s), "--format", "json"]).1;
        assert_eq!(a, b, "{s}");
    }
}

#[test]
fn timings_only_with_flag() {
    let (_, plain, _) = galmodel(&["report", &sample("sqrt2"), "--format", "json"]);
    assert!(serde_json::from_str::<Value>(&plain).unwrap().get("timings").is_none());
    let (_, timed, _) = galmodel(&["report", &sample("sqrt2"), "--format", "json", "--timings"]);
    assert!(serde_json::from_str::<Value>(&timed).unwrap()["timings"].is_array());
}

#[test]
fn output_flag_writes_the_report() {
    let p = scratch("out.json", "");
    let (code, out, _) = galmodel(&["verify-galois", &sample("zeta5"), "--format", "json", "-o", &p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(r["galois"]["order"], 4);
}
