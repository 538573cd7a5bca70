use serde_json::Value;

use wittlab::cli::run;
use wittlab::repro::TheoremReport;
use wittlab::DiagonalForm;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("wittlab").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let (code, out, err) = call(&full);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}\n{err}"));
    (code, v)
}

#[test]
fn documented_examples() {
    assert_eq!(call(&["hilbert", "-1", "-1", "--place", "2"]), (0, "-1\n".into(), String::new()));
    assert_eq!(call(&["witt", "<1,1,1,10057,3>", "--place", "89"]).1, "1\n");
    assert_eq!(call(&["witt", "<-1,-1,-1,-10057,3>", "--place", "113"]).1, "1\n");
    assert_eq!(call(&["hasse", "<1, 10057, 3>", "--place", "89"]).1, "-1\n");
    assert_eq!(call(&["primes", "--count", "3"]).1, "89 113 137\n");
    assert_eq!(call(&["support", "<1,1,1,10057,3>", "--places", "inf,89,113"]).1, "{2}\n");
    assert_eq!(call(&["support", "<-1,-1,-1,-10057,3>", "--places", "inf,89,113"]).1, "{4}\n");
}

#[test]
fn every_command_emits_json() {
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["hilbert", "3", "-5/4", "--place", "inf"], 0),
        (vec!["hasse", "<1,2,3>", "--place", "3"], 0),
        (vec!["witt", "<1,-1,1,-1>", "--place", "inf"], 0),
        (vec!["isotropy", "<1,1,1,10057,3>"], 1),
        (vec!["isotropy", "<-1,-1,-1,-10057,3>"], 0),
        (vec!["isometry-zp", "<1,1,1,10057>", "--prime", "2"], 0),
        (vec!["clifford", "<1,1,3>", "e1", "e2 + 1/2"], 0),
        (vec!["clifford", "<1,1,3>", "--op", "star", "e123"], 0),
        (vec!["clifford", "<1,1,3>", "--op", "parts", "1 + e1"], 0),
        (vec!["clifford", "<1,1>", "--op", "matrix", "e1"], 0),
        (vec!["clifford", "<1,1,1>", "--op", "symmetrize", "1", "3"], 0),
        (vec!["clifford", "<1,-1>", "--op", "inverse", "1 + e1"], 1),
        (vec!["spin-check", "<1,2>", "1/3 + 2/3 e12", "--inverted-primes", "3"], 0),
        (vec!["spin-check", "<1,2>", "1/3 + 2/3 e12", "--inverted-primes", "5"], 1),
        (vec!["csp", "<1,1,1,10057,3>", "--places", "inf,89,113"], 0),
        (vec!["support", "<1,1,1,10057,3>", "--places", "inf,89"], 0),
        (vec!["primes", "--count", "2"], 0),
    ];
    for (args, expected) in cases {
        let (code, v) = json(&args);
        assert_eq!(code, expected, "{args:?}: {v}");
        assert!(v.is_object(), "{args:?}");
    }
}

#[test]
fn repro_report_schema_and_round_trip() {
    let (code, out, _) = call(&["repro", "--k", "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for key in ["schema", "config", "forms", "isometry", "witt", "csp", "factors", "support", "conclusion"] {
        assert!(keys.contains(&key), "missing {key}");
    }
    assert_eq!(v["schema"], 1);
    let report: TheoremReport = serde_json::from_str(&out).unwrap();
    for entry in [&report.forms.plus, &report.forms.minus] {
        let reparsed: DiagonalForm = entry.form.to_string().parse().unwrap();
        assert_eq!(reparsed.coefficients(), entry.form.coefficients());
    }
    assert_eq!(serde_json::to_string_pretty(&report).unwrap(), out.trim_end());
    assert_eq!(v["support"]["plus"], serde_json::json!([2]));
    assert_eq!(v["support"]["minus"], serde_json::json!([4]));
}

#[test]
fn flags_reach_the_pipeline() {
    let (_, v) = json(&["repro", "--k", "3", "--bound", "50", "--precision", "20"]);
    assert_eq!(v["config"]["sampled_primes_bound"], 50);
    assert_eq!(v["config"]["precision"], 20);
    assert_eq!(v["forms"]["primes"], serde_json::json!([89, 113, 137]));
    let (code, _, err) = call(&["repro", "--k", "2", "--primes", "89,89"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = call(&["repro", "--k", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn residue_override_downgrades_to_warning() {
    let (code, _, err) = call(&["support", "<1,1,1,10057,3>", "--places", "inf,7,89"]);
    assert_eq!(code, 2);
    assert!(err.contains("89"));
    let (code, out, err) = call(&[
        "support",
        "<1,1,1,10057,3>",
        "--places",
        "inf,7,89",
        "--assume-small-residue-ok",
    ]);
    assert_eq!(code, 0);
    assert!(err.starts_with("warning:"));
    // Witt index 2 at 7, 1 at 89, 0 at inf.
    assert_eq!(out, "{3}\n");
}

#[test]
fn usage_errors() {
    let (code, _, err) = call(&["witt", "<1,,2>", "--place", "5"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 3"), "{err}");
    assert_eq!(call(&["witt", "<1,2>", "--place", "4"]).0, 2);
    assert_eq!(call(&["hilbert", "0", "1", "--place", "3"]).0, 2);
    assert_eq!(call(&["isotropy", "<1,1,1>"]).0, 2);
    assert_eq!(call(&["clifford", "<1,1>", "e3"]).0, 2);
    assert_eq!(call(&["csp", "<1,1,1,10057,3>", "--places", "89"]).0, 2);
    assert_eq!(call(&["isometry-zp", "<1,1,1,7>", "--prime", "3"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}
