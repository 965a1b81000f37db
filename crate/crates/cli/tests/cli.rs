//! End-to-end tests through the compiled binary: command examples,
//! deterministic output, and structured errors on malformed input.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(command: &str, input: &str, extra: &[&str]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_schur-forge"))
        .arg(command)
        .args(extra)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

const SCHUR_PAIR: &str = r#"{
  "rep": {
    "presentation": {"generators": ["t0", "t1"], "relations": []},
    "field": {"kind": "rational"},
    "n": 2,
    "images": {"t0": [["1", "0"], ["0", "2"]], "t1": [["0", "1"], ["1", "0"]]}
  }
}"#;

const QUATERNIONIC_PAIR: &str = r#"{
  "rep": {
    "presentation": {"generators": ["t0", "t1"], "relations": []},
    "field": {"kind": "quadratic", "d": -1},
    "n": 2,
    "images": {
      "t0": [[{"a": "0", "b": "1"}, "0"], ["0", {"a": "0", "b": "-1"}]],
      "t1": [["0", "1"], ["-1", "0"]]
    }
  }
}"#;

#[test]
fn schur_on_the_diag_swap_pair() {
    let out = run("schur", SCHUR_PAIR, &[]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["schur"], serde_json::json!(true));
    assert_eq!(v["commutant_dim"], serde_json::json!(1));
}

#[test]
fn schur_via_quiver_representation() {
    let input = r#"{
      "quiver_rep": {
        "quiver": {"vertices": 2, "arrows": [{"src": 0, "dst": 1}]},
        "dims": [1, 1],
        "maps": [[["1"]]]
      }
    }"#;
    for extra in [&[][..], &["--quiver"][..]] {
        let out = run("schur", input, extra);
        assert!(out.status.success());
        let v = stdout_json(&out);
        assert_eq!(v["schur"], serde_json::json!(true));
    }
    // --quiver with a plain matrix representation is a schema error
    let out = run("schur", SCHUR_PAIR, &["--quiver"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn demo_quadratic_matches_the_threshold() {
    for (lambda, expected) in [("3", true), ("-3", true), ("1", false), ("0", false)] {
        let input = format!(r#"{{"lambda": "{lambda}", "mode": "real-sign"}}"#);
        let out = run("demo-quadratic", &input, &[]);
        assert!(out.status.success());
        assert_eq!(stdout_json(&out)["origin"], serde_json::json!(expected));
    }
    let out = run(
        "demo-quadratic",
        r#"{"lambda": "5/2", "mode": "rational-square"}"#,
        &[],
    );
    assert_eq!(stdout_json(&out)["origin"], serde_json::json!(true));
    // degenerate discriminant is a reported error
    let out = run("demo-quadratic", r#"{"lambda": "2", "mode": "real-sign"}"#, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        stderr_json(&out)["error"]["name"],
        serde_json::json!("DegenerateDiscriminant")
    );
}

#[test]
fn hilbert_symbol_at_infinity() {
    let out = run("hilbert", r#"{"a": "-1", "b": "-1", "place": "inf"}"#, &[]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["symbol"], serde_json::json!(-1));
    let out = run("hilbert", r#"{"a": "2", "b": "3", "place": 3}"#, &[]);
    assert_eq!(stdout_json(&out)["symbol"], serde_json::json!(-1));
}

#[test]
fn split_reports_ramified_places() {
    let out = run("split", r#"{"a": "-1", "b": "-1"}"#, &[]);
    let v = stdout_json(&out);
    assert_eq!(v["split"], serde_json::json!(false));
    let places: Vec<_> = v["ramified"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["place"].clone())
        .collect();
    assert_eq!(places, vec![serde_json::json!("inf"), serde_json::json!(2)]);

    let out = run("split", r#"{"a": "1", "b": "7"}"#, &[]);
    assert_eq!(stdout_json(&out)["split"], serde_json::json!(true));
}

#[test]
fn quaternion_builds_the_table() {
    let out = run("quaternion", r#"{"a": "-1", "b": "-1"}"#, &[]);
    let v = stdout_json(&out);
    assert_eq!(v["algebra"]["dim"], serde_json::json!(4));
    assert_eq!(v["nrd_basis"]["i"], serde_json::json!("1"));
    // zero parameters are rejected
    let out = run("quaternion", r#"{"a": "0", "b": "1"}"#, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        stderr_json(&out)["error"]["name"],
        serde_json::json!("ZeroParameter")
    );
}

#[test]
fn origin_pipeline_obstructed_case() {
    let out = run("origin", QUATERNIONIC_PAIR, &[]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["origin"], serde_json::json!(false));
    assert_eq!(v["class"], serde_json::json!({"a": -1, "b": -1}));
    assert_eq!(v["lambda"], serde_json::json!("-1"));
    let qf = &v["twisted_algebra"]["quaternion_form"];
    assert_eq!(qf["a"], serde_json::json!("-1"));
    assert_eq!(qf["b"], serde_json::json!("-1"));
    assert_eq!(v["twisted_rep"]["algebra"]["dim"], serde_json::json!(4));
}

#[test]
fn origin_pipeline_split_case_and_intertwine() {
    // a rational representation, base-changed by hand to Q(i)
    let input = r#"{
      "rep": {
        "presentation": {"generators": ["t0", "t1"], "relations": []},
        "field": {"kind": "quadratic", "d": -1},
        "n": 2,
        "images": {"t0": [["1", "0"], ["0", "2"]], "t1": [["0", "1"], ["1", "0"]]}
      }
    }"#;
    let out = run("origin", input, &[]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["origin"], serde_json::json!(true));
    let witness = &v["descended_rep"];
    assert_eq!(witness["field"], serde_json::json!({"kind": "rational"}));

    // the descended witness is isomorphic to the original rational pair
    let intertwine_input = format!(
        r#"{{"rep1": {}, "rep2": {}}}"#,
        serde_json::to_string(witness).unwrap(),
        r#"{
          "presentation": {"generators": ["t0", "t1"], "relations": []},
          "field": {"kind": "rational"},
          "n": 2,
          "images": {"t0": [["1", "0"], ["0", "2"]], "t1": [["0", "1"], ["1", "0"]]}
        }"#
    );
    let out = run("intertwine", &intertwine_input, &[]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["isomorphic"], serde_json::json!(true));
}

#[test]
fn twist_and_descend_round_trip() {
    // twist the quaternionic pair by its own cocycle
    let rot = r#"{"S": [["0", "1"], ["-1", "0"]], "d": -1}"#;
    let input = format!(
        r#"{{"rep": {}, "cocycle": {rot}}}"#,
        serde_json::from_str::<serde_json::Value>(QUATERNIONIC_PAIR).unwrap()["rep"]
    );
    let out = run("twist", &input, &[]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["lambda"], serde_json::json!("-1"));
    assert_eq!(v["twisted_algebra"]["algebra"]["dim"], serde_json::json!(4));

    // descend a single diagonal generator with the swap cocycle
    let descend_input = r#"{
      "rep": {
        "presentation": {"generators": ["t"], "relations": []},
        "field": {"kind": "quadratic", "d": -1},
        "n": 2,
        "images": {"t": [[{"a": "0", "b": "1"}, "0"], ["0", {"a": "0", "b": "-1"}]]}
      },
      "cocycle": {"S": [["0", "1"], ["1", "0"]], "d": -1}
    }"#;
    let out = run("descend", descend_input, &[]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(
        v["descended_rep"]["field"],
        serde_json::json!({"kind": "rational"})
    );

    // descending the obstructed pair must fail with NormMismatch
    let bad = format!(
        r#"{{"rep": {}, "cocycle": {rot}}}"#,
        serde_json::from_str::<serde_json::Value>(QUATERNIONIC_PAIR).unwrap()["rep"]
    );
    let out = run("descend", &bad, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        stderr_json(&out)["error"]["name"],
        serde_json::json!("NormMismatch")
    );
}

#[test]
fn quiver2rep_reports_morita_data() {
    let input = r#"{
      "quiver_rep": {
        "quiver": {"vertices": 2, "arrows": [{"src": 0, "dst": 1}]},
        "dims": [1, 1],
        "maps": [[["1"]]]
      }
    }"#;
    let out = run("quiver2rep", input, &[]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["dim_vector"], serde_json::json!([1, 1]));
    assert_eq!(v["right_ideal_dims"], serde_json::json!([2, 2]));
}

#[test]
fn endo_and_simple() {
    let jordan = r#"{
      "rep": {
        "presentation": {"generators": ["t"], "relations": []},
        "field": {"kind": "rational"},
        "n": 2,
        "images": {"t": [["0", "1"], ["0", "0"]]}
      }
    }"#;
    let out = run("endo", jordan, &[]);
    assert_eq!(stdout_json(&out)["algebra"]["dim"], serde_json::json!(2));
    let out = run("simple", jordan, &[]);
    let v = stdout_json(&out);
    assert_eq!(v["absolutely_simple"], serde_json::json!(false));
    assert_eq!(v["span_dim"], serde_json::json!(2));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for (cmd, input) in [
        ("origin", QUATERNIONIC_PAIR),
        ("schur", SCHUR_PAIR),
        ("split", r#"{"a": "-15", "b": "21"}"#),
    ] {
        let a = run(cmd, input, &["--seed", "7"]);
        let b = run(cmd, input, &["--seed", "7"]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {cmd}");
    }
}

#[test]
fn malformed_inputs_give_structured_errors() {
    let cases: Vec<(&str, &str)> = vec![
        ("schur", "not json at all"),
        ("schur", r#"{"rep": 17}"#),
        ("schur", r#"{"no_rep_key": {}}"#),
        ("schur", r#"{"rep": {"presentation": {"generators": ["t"]}, "field": {"kind": "rational"}, "n": 2, "images": {}}}"#),
        ("schur", r#"{"rep": {"presentation": {"generators": ["t"]}, "field": {"kind": "rational"}, "n": 2, "images": {"t": [["1"]]}}}"#),
        ("schur", r#"{"rep": {"presentation": {"generators": ["t"]}, "field": {"kind": "quadratic", "d": 12}, "n": 1, "images": {"t": [["1"]]}}}"#),
        ("hilbert", r#"{"a": "0", "b": "1", "place": "inf"}"#),
        ("hilbert", r#"{"a": "1", "b": "1", "place": 9}"#),
        ("hilbert", r#"{"a": "1", "b": "1", "place": []}"#),
        ("quaternion", r#"{"a": "1/0", "b": "1"}"#),
        ("demo-quadratic", r#"{"lambda": "2/3", "mode": "imaginary"}"#),
        ("descend", r#"{"rep": {"presentation": {"generators": []}, "field": {"kind": "rational"}, "n": 1, "images": {}}, "cocycle": {"S": [["1"]], "d": -1}}"#),
        ("origin", r#"{"rep": {"presentation": {"generators": ["t"], "relations": [{"terms": [{"coeff": "1", "word": [0, 0]}]}]}, "field": {"kind": "quadratic", "d": -1}, "n": 2, "images": {"t": [["1", "0"], ["0", "1"]]}}}"#),
        ("nonsense-command", r#"{}"#),
        ("schur", r#"{"schema": "wrong/9", "rep": {}}"#),
    ];
    for (cmd, input) in cases {
        let out = run(cmd, input, &[]);
        assert_eq!(
            out.status.code(),
            Some(2),
            "expected exit 2 for {cmd} with {input}"
        );
        let err = stderr_json(&out);
        assert!(
            err["error"]["name"].is_string(),
            "diagnostic must carry an error name for {cmd}"
        );
        assert!(out.stdout.is_empty(), "no report on stdout for bad input");
    }
}

#[test]
fn norm_search_budget_is_respected() {
    // S = (2+i) I intertwines a rational pair with itself and has
    // lambda = 5; descending needs a norm solution x^2 + y^2 = 5
    let input = r#"{
      "rep": {
        "presentation": {"generators": ["t0", "t1"], "relations": []},
        "field": {"kind": "quadratic", "d": -1},
        "n": 2,
        "images": {"t0": [["1", "0"], ["0", "2"]], "t1": [["0", "1"], ["1", "0"]]}
      },
      "cocycle": {"S": [[{"a": "2", "b": "1"}, "0"], ["0", {"a": "2", "b": "1"}]], "d": -1}
    }"#;
    // default bounds find c = 1 + 2i
    let out = run("descend", input, &[]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["lambda"], serde_json::json!("5"));
    // a height bound of 1 cannot reach (1, 2): budget exhausted, exit 3
    let out = run("descend", input, &["--bound-norm-search", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr_json(&out);
    assert_eq!(err["error"]["name"], serde_json::json!("BudgetExhausted"));
    assert_eq!(err["bounds"]["norm_height"], serde_json::json!(1));
}

#[test]
fn origin_error_names_pass_through() {
    // Galois-unstable representation: diag(i, 2i)
    let input = r#"{
      "rep": {
        "presentation": {"generators": ["t"], "relations": []},
        "field": {"kind": "quadratic", "d": -1},
        "n": 2,
        "images": {"t": [[{"a": "0", "b": "1"}, "0"], ["0", {"a": "0", "b": "2"}]]}
      }
    }"#;
    let out = run("origin", input, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        stderr_json(&out)["error"]["name"],
        serde_json::json!("NotGaloisStable")
    );

    // Galois-stable but not Schur: diag(i, -i)
    let input = r#"{
      "rep": {
        "presentation": {"generators": ["t"], "relations": []},
        "field": {"kind": "quadratic", "d": -1},
        "n": 2,
        "images": {"t": [[{"a": "0", "b": "1"}, "0"], ["0", {"a": "0", "b": "-1"}]]}
      }
    }"#;
    let out = run("origin", input, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        stderr_json(&out)["error"]["name"],
        serde_json::json!("NotSchur")
    );
}
