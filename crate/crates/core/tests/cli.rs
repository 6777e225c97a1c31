use std::path::{Path, PathBuf};

use assert_cmd::Command;
use boundary_lab::cli::{ClassifyReport, DepthReport, LimitSetReport, PrimeEndReport};
use boundary_lab::covering::CorrespondenceReport;
use boundary_lab::group::families;
use boundary_lab::harmonic::HarmonicEstimate;
use boundary_lab::prime_ends::TrueCrosscutReport;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn lab() -> Command {
    Command::cargo_bin("boundary-lab").unwrap()
}

fn run(args: &[&str]) -> String {
    let out = lab().args(args).assert().success().get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

fn check_schema(name: &str, doc: &Value) {
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_dir().join(format!("{name}.schema.json"))).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{name}: {errors:#?}");
}

/// Validate against the schema, parse into `T` and check that re-serializing gives the same document.
fn round_trip<T: Serialize + DeserializeOwned>(schema: &str, text: &str) -> T {
    let doc: Value = serde_json::from_str(text).unwrap();
    check_schema(schema, &doc);
    let parsed: T = serde_json::from_str(text).unwrap();
    assert_eq!(serde_json::to_value(&parsed).unwrap(), doc);
    parsed
}

#[test]
fn classify_reports_bounded_hyperbolic_fixed_point() {
    let r: ClassifyReport = round_trip("classify", &run(&["classify", "--system", "cyclic", "--theta", "0"]));
    assert_eq!(serde_json::to_value(r.radial_type).unwrap(), "bounded");
    let r: ClassifyReport = round_trip("classify", &run(&["classify", "--system", "cyclic", "--theta", "pi/2"]));
    assert_eq!(serde_json::to_value(r.radial_type).unwrap(), "escaping");
    let many: Vec<ClassifyReport> = round_trip("classify", &run(&["classify", "--system", "pants", "--theta", "0..pi", "--samples", "5"]));
    assert_eq!(many.len(), 5);
}

#[test]
fn every_json_report_round_trips() {
    round_trip::<DepthReport>("depth", &run(&["depth", "--system", "nested_chains", "--theta", "0.7"]));
    let pe: PrimeEndReport = round_trip("prime_end", &run(&["prime-end", "--system", "parabolic", "--theta", "0"]));
    assert_eq!(serde_json::to_value(pe.class).unwrap(), "parabolic");
    round_trip::<PrimeEndReport>("prime_end", &run(&["prime-end", "--system", "pants", "--theta", "1.5"]));
    for sys in ["cyclic", "trivial", "dense_punctures"] {
        round_trip::<TrueCrosscutReport>("true_crosscut", &run(&["true-crosscut", "--system", sys, "--depth", "6"]));
    }
    round_trip::<LimitSetReport>("limit_set", &run(&["limit-set", "--system", "rank2", "--depth", "4"]));
    let c: CorrespondenceReport = round_trip("correspond", &run(&["correspond", "--annulus", "2", "--k", "3", "--p", "0,0.5"]));
    assert!(c.discrepancy < 1e-5);
    round_trip::<HarmonicEstimate>("harmonic", &run(&["harmonic", "--annulus", "2", "--z", "1,0"]));
    round_trip::<HarmonicEstimate>("harmonic", &run(&["harmonic", "--annulus", "2", "--z", "0.8,0.3", "--mc", "2000", "--seed", "4"]));
}

#[test]
fn fixture_systems_and_domain_documents_match_schemas() {
    for name in families::FIXTURE_NAMES {
        let sys = families::by_name(name, 6).unwrap();
        check_schema("system", &serde_json::to_value(sys.to_json()).unwrap());
    }
    for doc in [
        r#"{"kind":"annulus","r":2.0}"#,
        r#"{"kind":"punctured_disk"}"#,
        r#"{"kind":"fixture","name":"pants"}"#,
        r#"{"kind":"named","name":"fat_cantor","depth":5,"r":3.0}"#,
    ] {
        check_schema("domain", &serde_json::from_str(doc).unwrap());
    }
}

#[test]
fn outputs_are_deterministic() {
    let args = ["harmonic", "--annulus", "2", "--z", "1.3,0.2", "--mc", "5000", "--seed", "11"];
    let a = run(&args);
    let b = lab().args(args).env("BOUNDARY_LAB_THREADS", "1").assert().success().get_output().stdout.clone();
    assert_eq!(a.as_bytes(), b.as_slice());
    let c = run(&["harmonic", "--annulus", "2", "--z", "1.3,0.2", "--mc", "5000", "--seed", "12"]);
    assert_ne!(a, c);
    for args in [
        &["classify", "--system", "rank2", "--theta", "0..6", "--samples", "16"][..],
        &["cover", "--annulus", "2", "--theta", "1"][..],
        &["lift", "--punctured", "--curve", "core", "--k", "2"][..],
    ] {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn files_written_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("lambda.svg");
    lab().args(["limit-set", "--system", "cyclic", "--depth", "6", "--out"]).arg(&svg).assert().success();
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.matches("<g id=\"depth-").count() == 7);

    let csv = dir.path().join("arcs.csv");
    lab().args(["limit-set", "--system", "pants", "--depth", "2", "--out"]).arg(&csv).assert().success();
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("depth,start,end,length\n"));

    let domain = dir.path().join("reef.json");
    std::fs::write(&domain, r#"{"kind":"named","name":"reef_interval","depth":6}"#).unwrap();
    let out = dir.path().join("reef.svg");
    lab().args(["render", "--domain"]).arg(&domain).arg("--out").arg(&out).assert().success();
    assert!(std::fs::read_to_string(&out).unwrap().contains("#c0392b"));

    let sys = dir.path().join("pants.json");
    std::fs::write(&sys, serde_json::to_string(&families::pants().to_json()).unwrap()).unwrap();
    let from_file: ClassifyReport =
        serde_json::from_str(&run(&["classify", "--system", sys.to_str().unwrap(), "--theta", "1.5"])).unwrap();
    let from_fixture: ClassifyReport = serde_json::from_str(&run(&["classify", "--system", "pants", "--theta", "1.5"])).unwrap();
    assert_eq!(from_file.radial_type, from_fixture.radial_type);
}

#[test]
fn cover_csv_has_documented_columns() {
    let text = run(&["cover", "--punctured", "--theta", "pi", "--samples", "32"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,re,im"));
    let last: Vec<f64> = lines.last().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!(last[1].hypot(last[2]) < 1e-3);
    let lift = run(&["lift", "--annulus", "2", "--curve", "boundary", "--p", "2,0"]);
    assert!(lift.starts_with("s,curve_re,curve_im,lift_re,lift_im\n"));
}

#[test]
fn exit_codes() {
    lab().args(["classify", "--system", "cyclic"]).assert().code(2);
    lab().args(["classify", "--system", "cyclic", "--theta", "banana"]).assert().code(2);
    lab().args(["classify", "--system", "/nonexistent.json", "--theta", "0"]).assert().code(1);
    lab().args(["prime-end", "--system", "cyclic", "--theta", "0"]).assert().code(1).stderr(predicates::str::contains("PrimeEndError"));
    lab().args(["harmonic", "--annulus", "0.5", "--z", "1,0"]).assert().code(1);
}
