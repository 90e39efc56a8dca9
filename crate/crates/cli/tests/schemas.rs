use std::path::Path;
use std::process::Command;

use jsonschema::JSONSchema;
use serde_json::Value;
use tempfile::TempDir;

fn subdiv(args: &[&str], cwd: &Path) -> std::process::Output {
    let o = Command::new(env!("CARGO_BIN_EXE_subdiv"))
        .args(args)
        .current_dir(cwd)
        .env_remove("SUBDIV_OUTPUT_DIR")
        .output()
        .expect("binary runs");
    assert!(o.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&o.stderr));
    o
}

fn schema(which: &str) -> JSONSchema {
    let o = subdiv(&["schema", which], Path::new("."));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    JSONSchema::compile(&v).expect("published schema compiles")
}

fn assert_valid(s: &JSONSchema, v: &Value, what: &str) {
    if let Err(errs) = s.validate(v) {
        let msgs: Vec<String> = errs.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{what} fails its schema: {msgs:#?}");
    }
}

const CONFIGS: &[&str] = &[
    r#"{"space": {"id": "euclidean", "dim": 2}, "scheme": {"id": "chaikin"}, "levels": 4,
        "data": {"generator": {"id": "random-walk", "seed": 3, "n": 9}},
        "analyses": [{"kind": "contractivity", "l_max": 2}, {"kind": "displacement"},
                     {"kind": "proximity1", "against": {"id": "lane-riesenfeld", "rounds": 1},
                      "scales": [1, 0.5, 0.25, 0.125]},
                     {"kind": "proximity2", "against": {"id": "lane-riesenfeld", "rounds": 1}, "blocks": 3},
                     {"kind": "cauchy", "samples": 129}, {"kind": "divided-diff", "samples": 129},
                     {"kind": "locality", "index": 4, "replace_with": 0}],
        "output": {"dump_levels": true}}"#,
    r#"{"space": {"id": "sphere", "dim": 3}, "scheme": {"id": "averaged", "omega": 0.5}, "levels": 3,
        "data": {"generator": {"id": "small-circle", "seed": 0, "n": 8, "height": 0.5}},
        "analyses": [{"kind": "approx-order", "curve": {"id": "small-circle", "height": 0.5},
                      "hs": [0.125, 0.0625], "proxy_levels": 4, "samples": 257},
                     {"kind": "proximity2", "against": {"id": "chaikin"}, "embedded": true, "blocks": 3},
                     {"kind": "cauchy", "samples": 129}]}"#,
    r#"{"space": {"id": "hermite", "dim": 3, "average": "naive"}, "scheme": {"id": "hermite-naive"}, "levels": 2,
        "data": {"generator": {"id": "helix", "seed": 0, "n": 6}},
        "analyses": [{"kind": "contractivity"}, {"kind": "cauchy", "samples": 65},
                     {"kind": "proximity1", "against": {"id": "elementary"}, "scales": [0.4, 0.2, 0.1, 0.05]}],
        "output": {"dump_levels": true}}"#,
    r#"{"space": {"id": "sets", "dim": 2}, "scheme": {"id": "elementary"}, "levels": 2,
        "data": {"generator": {"id": "point-cloud-tube", "seed": 9, "n": 5, "size": 3}},
        "analyses": [{"kind": "contractivity"}, {"kind": "cauchy", "samples": 65}, {"kind": "locality", "index": 2}],
        "output": {"dump_levels": true}}"#,
    r#"{"space": {"id": "wasserstein", "p": 2}, "scheme": {"id": "lane-riesenfeld", "rounds": 2}, "levels": 2,
        "data": {"generator": {"id": "gaussian-mixture", "seed": 4, "n": 7, "atoms": 3}},
        "analyses": [{"kind": "contractivity"}, {"kind": "displacement"}, {"kind": "cauchy", "samples": 65}],
        "output": {"dump_levels": true}}"#,
];

#[test]
fn bundles_and_reports_validate() {
    let (bundle_s, report_s, config_s, data_s) = (schema("bundle"), schema("report"), schema("config"), schema("data"));
    let tmp = TempDir::new().unwrap();
    for (i, text) in CONFIGS.iter().enumerate() {
        let cfg_path = tmp.path().join(format!("c{i}.json"));
        std::fs::write(&cfg_path, text).unwrap();
        assert_valid(&config_s, &serde_json::from_str(text).unwrap(), &format!("config {i}"));
        let out = format!("out{i}");
        subdiv(&["subdivide", "--config", cfg_path.to_str().unwrap(), "--output", &out], tmp.path());
        let b: Value =
            serde_json::from_str(&std::fs::read_to_string(tmp.path().join(&out).join("bundle.json")).unwrap()).unwrap();
        assert_valid(&bundle_s, &b, &format!("bundle {i}"));
        let reports = b["reports"].as_array().unwrap();
        assert!(!reports.is_empty());
        for (k, r) in reports.iter().enumerate() {
            assert_valid(&report_s, r, &format!("config {i} report {k}"));
        }
        for d in b["dumps"].as_array().into_iter().flatten() {
            assert_valid(&data_s, &d["data"], &format!("config {i} dump"));
        }
    }
}

#[test]
fn generated_files_validate() {
    let (gen_s, data_s) = (schema("generated"), schema("data"));
    let tmp = TempDir::new().unwrap();
    for (id, extra) in [
        ("circle", "n=5"),
        ("helix", "n=5"),
        ("random-walk", "n=5"),
        ("point-cloud-tube", "n=5"),
        ("gaussian-mixture", "n=5"),
        ("great-circle", "n=5"),
        ("small-circle", "height=0.3"),
        ("sphere-walk", "n=5"),
        ("hermite-turning", "n=5"),
        ("hermite-unit-gaps", "n=5"),
    ] {
        let mut args = vec!["generate", id, "--seed", "8", "-p", extra];
        if id == "small-circle" {
            args.extend(["-p", "n=6"]);
        }
        let o = subdiv(&args, tmp.path());
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_valid(&gen_s, &v, id);
        assert_valid(&data_s, &v, id);
    }
}

#[test]
fn mask_output_validates() {
    let s = schema("mask");
    let o = subdiv(&["masks", "lane-riesenfeld", "--rounds", "3"], Path::new("."));
    assert_valid(&s, &serde_json::from_slice(&o.stdout).unwrap(), "mask");
}

#[test]
fn schema_all_lists_every_schema() {
    let o = subdiv(&["schema"], Path::new("."));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["bundle", "config", "data", "generated", "generator", "mask", "report"]);
}
