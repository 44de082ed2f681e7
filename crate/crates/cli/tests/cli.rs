use std::path::Path;
use std::process::{Command, Output};

use lie_frobenius::scalar::parse_rational;
use lie_frobenius::{Rational, Scalar};
use serde_json::Value;

fn frobenius(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobenius"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

const BROKEN: &str = r#"{
  "format_version": 1, "field": "rational", "dim": 3, "basis": ["e1", "e2", "e3"],
  "brackets": [{"i": 0, "j": 1, "k": 0, "c": "1"}, {"i": 0, "j": 2, "k": 1, "c": "1"}]
}"#;

#[test]
fn broken_jacobi_exits_2_and_names_the_triple() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "broken.json", BROKEN);
    let o = frobenius(&["validate", &path]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.contains("(e1, e2, e3): residual -e2"), "{text}");

    let o = frobenius(&["validate", &path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"][0]["triple"], serde_json::json!([0, 1, 2]));
    assert_eq!(
        v["violations"][0]["residual"],
        serde_json::json!(["0", "-1", "0"])
    );

    let o = frobenius(&["analyze", &path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["frobenius"]["status"], "skipped");
}

#[test]
fn malformed_scalar_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "bad.json",
        &BROKEN.replace(r#""c": "1"}, {"#, r#""c": "1/0"}, {"#),
    );
    let o = frobenius(&["validate", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero denominator"));
    assert_eq!(
        frobenius(&["validate", "/nonexistent/file.json"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        frobenius(&["analyze", "--preset", "nope"]).status.code(),
        Some(1)
    );
}

#[test]
fn g7b_report_shows_a_nonsemisimple_principal_element() {
    let o = frobenius(&["analyze", "--preset", "g7b", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let spectrum = &v["spectrum"];
    let values: Vec<(String, u64)> = spectrum["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["value"].as_str().unwrap().to_string(),
                e["algebraic"].as_u64().unwrap(),
            )
        })
        .collect();
    let expected = [("-1", 1), ("-1/2", 2), ("0", 1)].map(|(s, m)| (s.to_string(), m));
    assert_eq!(values, expected);
    assert_eq!(spectrum["verdict"], "not diagonalizable");
    assert_eq!(v["jordan"]["nilpotent_zero"], false);
    assert_eq!(v["jordan"]["invariants_hold"], true);

    let text = stdout(&frobenius(&["analyze", "--preset", "g7b"]));
    assert!(text.contains("verdict: not diagonalizable"));
    assert!(text.contains("nilpotent part: nonzero"));
}

#[test]
fn aff1_report_has_the_expected_product_table() {
    let o = frobenius(&["analyze", "--preset", "aff1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in [
        "e1 * e1 = -e1",
        "e2 * e1 = -e2",
        "x0 = -e1",
        "all other products of basis vectors vanish",
    ] {
        assert!(text.contains(line), "missing {line:?} in\n{text}");
    }
    let v = json(&frobenius(&[
        "analyze", "--preset", "aff1", "--format", "json",
    ]));
    assert_eq!(v["frobenius"]["x0"], serde_json::json!(["-1", "0"]));
    assert_eq!(
        v["lsa"]["products"],
        serde_json::json!([{"i": 0, "j": 0, "value": ["-1", "0"]}, {"i": 1, "j": 0, "value": ["0", "-1"]}])
    );
}

#[test]
fn explicit_canonical_functional_matches_the_default() {
    let default = json(&frobenius(&[
        "analyze", "--preset", "g7a", "--format", "json",
    ]));
    let mut explicit = json(&frobenius(&[
        "analyze",
        "--preset",
        "g7a",
        "--functional",
        "0,1,0,0",
        "--format",
        "json",
    ]));
    assert_eq!(explicit["frobenius"]["origin"], "argument");
    explicit["frobenius"]["origin"] = default["frobenius"]["origin"].clone();
    assert_eq!(default, explicit);
}

#[test]
fn text_and_json_agree_on_numbers() {
    let v = json(&frobenius(&[
        "analyze", "--preset", "g7c", "--format", "json",
    ]));
    let text = stdout(&frobenius(&["analyze", "--preset", "g7c"]));
    let s = &v["spectrum"];
    assert!(text.contains(&format!(
        "characteristic polynomial: {}",
        s["characteristic"].as_str().unwrap()
    )));
    assert!(text.contains(&format!(
        "residual factor: {}",
        s["residual_factor"].as_str().unwrap()
    )));
    assert!(text.contains(&format!(
        "non-real conjugate pairs: {}",
        s["non_real_pairs"]
    )));
    assert_eq!(s["verdict"], "diagonalizable over C, not over R");
    let d = &v["derivations"];
    assert!(text.contains(&format!(
        "dim {}, inner {}, outer {}",
        d["total"], d["inner"], d["outer"]
    )));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let file = stdout(&frobenius(&["catalog", "aff", "--n", "2"]));
    let path = write(dir.path(), "aff2.json", &file);
    let args = ["analyze", path.as_str(), "--seed", "7", "--format", "json"];
    let first = frobenius(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, frobenius(&args).stdout);
    let v = json(&first);
    assert_eq!(v["frobenius"]["origin"], "search");
    assert_eq!(v["jordan"]["nilpotent_zero"], true);
    assert_eq!(v["derivations"]["outer"], 0);
}

#[test]
fn catalog_files_round_trip_through_validate() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 6] = [
        &["catalog", "aff", "--n", "2"],
        &["catalog", "gl", "--n", "2", "--p", "1"],
        &["catalog", "gkxi", "--n", "1", "--k", "1", "--diag", "0,1"],
        &["catalog", "golden", "--n", "2"],
        &["catalog", "diagonal", "--rates", "1/3,-2"],
        &["catalog", "preset", "g7c", "--k-tilde", "-1/2"],
    ];
    for (n, args) in cases.iter().enumerate() {
        let o = frobenius(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let text = stdout(&o);
        let path = write(dir.path(), &format!("{n}.json"), &text);
        assert_eq!(
            frobenius(&["validate", &path]).status.code(),
            Some(0),
            "{args:?}"
        );
        // parse then emit reproduces the file exactly
        let parsed: lie_frobenius_cli::AlgebraFile = serde_json::from_str(&text).unwrap();
        let lie_frobenius_cli::AnyAlgebra::Rational(loaded) =
            lie_frobenius_cli::format::parse_algebra(&text).unwrap()
        else {
            panic!("rational expected")
        };
        let emitted =
            lie_frobenius_cli::format::algebra_file(&loaded.algebra, loaded.functional.as_ref());
        assert_eq!(parsed, emitted, "{args:?}");
    }
    let aff2: Value = serde_json::from_str(&stdout(&frobenius(cases[0]))).unwrap();
    assert_eq!(aff2["dim"], 6);
}

#[test]
fn gkxi_catalog_entry_is_example_a() {
    let dir = tempfile::tempdir().unwrap();
    let file = stdout(&frobenius(&[
        "catalog", "gkxi", "--n", "1", "--k", "1", "--diag", "0,1",
    ]));
    let path = write(dir.path(), "a.json", &file);
    let from_file = json(&frobenius(&["analyze", &path, "--format", "json"]));
    let preset = json(&frobenius(&[
        "analyze", "--preset", "g7a", "--format", "json",
    ]));
    for key in ["frobenius", "lsa", "spectrum", "jordan", "derivations"] {
        let mut a = from_file[key].clone();
        let mut b = preset[key].clone();
        if key == "frobenius" {
            a["origin"] = Value::Null;
            b["origin"] = Value::Null;
        }
        assert_eq!(a, b, "{key}");
    }
}

#[test]
fn golden_catalog_shows_the_repeated_factor() {
    let dir = tempfile::tempdir().unwrap();
    let file = stdout(&frobenius(&["catalog", "golden", "--n", "2"]));
    let path = write(dir.path(), "golden.json", &file);
    let v = json(&frobenius(&["analyze", &path, "--format", "json"]));
    // (T² + T − 1)² = T⁴ + 2T³ − T² − 2T + 1
    assert_eq!(
        v["spectrum"]["residual_factor"],
        "T^4 + 2*T^3 - T^2 - 2*T + 1"
    );
    assert_eq!(v["spectrum"]["diagonalizable_over_base"], true);
}

#[test]
fn embed_writes_verified_traceless_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("aff1.json");
    let o = frobenius(&["embed", "--preset", "aff1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["size"], 3);
    assert_eq!(
        v["images"],
        serde_json::json!([
            [["-2/3", "0", "1"], ["0", "1/3", "0"], ["0", "0", "1/3"]],
            [["0", "0", "0"], ["-1", "0", "1"], ["0", "0", "0"]]
        ])
    );

    let v = json(&frobenius(&["embed", "--preset", "g7a"]));
    let images = v["images"].as_array().unwrap();
    assert_eq!(images.len(), 4);
    for m in images {
        let rows = m.as_array().unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 5));
        let trace = (0..5)
            .map(|i| parse_rational(rows[i][i].as_str().unwrap()).unwrap())
            .fold(Rational::from_i64(0), |acc, x| acc + x);
        assert_eq!(trace, Rational::from_i64(0));
    }
}

#[test]
fn abelian_algebra_with_zero_product_embeds_upper_triangular() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "abelian.json",
        r#"{"format_version": 1, "field": "rational", "dim": 2, "basis": ["a", "b"], "brackets": [], "lsa": []}"#,
    );
    let o = frobenius(&["embed", &path]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for m in v["images"].as_array().unwrap() {
        for (r, row) in m.as_array().unwrap().iter().enumerate() {
            for c in 0..=r {
                assert_eq!(row[c], "0");
            }
        }
    }
    // without a product the abelian algebra has no Frobenius functional
    let path = write(
        dir.path(),
        "abelian2.json",
        r#"{"format_version": 1, "field": "rational", "dim": 2, "basis": ["a", "b"], "brackets": []}"#,
    );
    assert_eq!(frobenius(&["embed", &path]).status.code(), Some(4));
    let o = frobenius(&["analyze", &path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(json(&o)["lsa"]["status"], "skipped");
}

#[test]
fn invalid_product_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "bad_lsa.json",
        r#"{"format_version": 1, "field": "rational", "dim": 2, "basis": ["a", "b"], "brackets": [],
            "lsa": [{"i": 0, "j": 1, "k": 0, "c": "1"}]}"#,
    );
    let o = frobenius(&["embed", &path]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
}

#[test]
fn degenerate_functional_exits_4() {
    let o = frobenius(&["analyze", "--preset", "g7a", "--functional", "1,0,0,0"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("coboundary form is degenerate"));
}

#[test]
fn complex_field_skips_exact_only_sections() {
    let dir = tempfile::tempdir().unwrap();
    let file = stdout(&frobenius(&[
        "catalog",
        "diagonal",
        "--rates",
        "3.14159,2",
        "--field",
        "complex64",
    ]));
    let path = write(dir.path(), "pi.json", &file);
    let o = frobenius(&["analyze", &path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["field"], "complex64");
    assert_eq!(v["jordan"]["status"], "skipped");
    assert_eq!(v["spectrum"]["eigenvalues"].as_array().unwrap().len(), 6);
}
