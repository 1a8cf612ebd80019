use std::io::Write;
use std::process::{Command, Output};

fn minlen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minlen"))
        .args(args)
        .output()
        .expect("spawn minlen")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_values(text: &str) -> Vec<(String, f64)> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records()
        .map(|rec| {
            let rec = rec.unwrap();
            (rec[0].to_string(), rec[1].parse().unwrap())
        })
        .collect()
}

fn json_rows(text: &str) -> Vec<serde_json::Value> {
    serde_json::from_str::<serde_json::Value>(text)
        .unwrap()
        .as_array()
        .unwrap()
        .clone()
}

fn value_of(rows: &[serde_json::Value], label: &str) -> f64 {
    rows.iter()
        .find(|r| r["label"] == label)
        .unwrap_or_else(|| panic!("no row {label}"))["value"]
        .as_f64()
        .unwrap()
}

#[test]
fn default_stark_table() {
    let o = minlen(&["stark"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for want in [
        "-4.397e-27",
        "2.544e-22",
        "-1.284e-39",
        "-6.191e-36",
        "7.024e-29",
    ] {
        assert!(text.contains(want), "missing {want} in\n{text}");
    }
}

#[test]
fn csv_and_json_agree() {
    let csv = stdout(&minlen(&["report", "--format", "csv"]));
    assert!(csv.starts_with("label,value,unit,kind,provenance\n"));
    let json = json_rows(&stdout(&minlen(&["report", "--format", "json"])));
    let csv = csv_values(&csv);
    assert_eq!(csv.len(), json.len());
    for ((label, v), row) in csv.iter().zip(&json) {
        assert_eq!(row["label"], label.as_str());
        assert_eq!(row["value"].as_f64().unwrap(), *v);
    }
}

#[test]
fn units_convert() {
    let j = json_rows(&stdout(&minlen(&["levels", "--format", "json"])));
    let ev = json_rows(&stdout(&minlen(&[
        "levels", "--format", "json", "--unit", "eV",
    ])));
    let h = json_rows(&stdout(&minlen(&[
        "levels", "--format", "json", "--unit", "hartree",
    ])));
    assert!((value_of(&ev, "E_1") + 13.605693122994).abs() < 1e-9);
    assert!((value_of(&h, "E_1") + 0.5).abs() < 1e-14);
    assert!((value_of(&j, "E_1") + 2.1798723611035e-18).abs() < 1e-29);
}

#[test]
fn invalid_eta_names_the_field() {
    let o = minlen(&["--eta", "0.2", "stark"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("eta"));
    assert!(o.stdout.is_empty());
}

#[test]
fn negative_field_is_rejected() {
    let o = minlen(&["stark", "--field=-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("field_v_per_m"));
}

#[test]
fn config_file_with_flag_override() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"field_v_per_m": 1e6, "eta": 0.5, "format": "json"}}"#
    )
    .unwrap();
    let path = f.path().to_str().unwrap();
    let from_file = json_rows(&stdout(&minlen(&["stark", "--config", path])));
    let overridden = json_rows(&stdout(&minlen(&[
        "stark", "--config", path, "--field", "1e7",
    ])));
    let bound_file = value_of(&from_file, "n1 quadratic bound");
    let bound_flag = value_of(&overridden, "n1 quadratic bound");
    assert!((bound_flag / bound_file - 100.0).abs() < 1e-9);
    assert_ne!(value_of(&overridden, "sigma"), 0.0);
}

#[test]
fn bad_config_key_is_reported() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"feild_v_per_m": 1e6}}"#).unwrap();
    let o = minlen(&["stark", "--config", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("config"));
}

#[test]
fn eta_scan_starts_at_zero_sigma() {
    let o = minlen(&[
        "scan",
        "--scan-param",
        "eta",
        "--start",
        "1/3",
        "--stop",
        "1",
        "--steps",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json_rows(&stdout(&o));
    let sigma: Vec<f64> = rows
        .iter()
        .filter(|r| r["label"] == "sigma")
        .map(|r| r["value"].as_f64().unwrap())
        .collect();
    assert_eq!(sigma.len(), 3);
    assert_eq!(sigma[0], 0.0);
    assert!(sigma[1] < 0.0 && sigma[2] < sigma[1]);
    assert!(rows.iter().all(|r| r["scan_param"] == "eta"));
}

#[test]
fn field_scan_scales() {
    let o = minlen(&[
        "scan",
        "--scan-param",
        "field",
        "--start",
        "1e6",
        "--stop",
        "1e7",
        "--steps",
        "2",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    assert!(text.starts_with("step,scan_param,scan_value,label,value,unit,kind,provenance\n"));
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let get = |recs: &[csv::StringRecord], step: &str, label: &str| -> f64 {
        recs.iter()
            .find(|x| &x[0] == step && &x[3] == label)
            .unwrap()[4]
            .parse()
            .unwrap()
    };
    let recs: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    let q = get(&recs, "1", "n1 quadratic bound") / get(&recs, "0", "n1 quadratic bound");
    let l = get(&recs, "1", "n2 linear[0]") / get(&recs, "0", "n2 linear[0]");
    assert!((q - 100.0).abs() < 1e-9);
    assert!((l - 10.0).abs() < 1e-10);
}

#[test]
fn incomplete_scan_is_rejected() {
    let o = minlen(&["scan", "--scan-param", "eta", "--start", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("stop"));
}

#[test]
fn zero_field_zeroes_stark_rows() {
    let rows = json_rows(&stdout(&minlen(&[
        "stark", "--field", "0", "--format", "json",
    ])));
    for label in [
        "n1 quadratic bound",
        "n2 linear[0]",
        "n2 linear[3]",
        "sigma",
        "chi",
    ] {
        assert_eq!(value_of(&rows, label), 0.0, "{label}");
    }
}

#[test]
fn undeformed_levels_have_no_shift() {
    let rows = json_rows(&stdout(&minlen(&[
        "levels",
        "--delta-x",
        "0",
        "--format",
        "json",
    ])));
    for label in ["dE_1s", "dE_2s", "dE_2p"] {
        assert_eq!(value_of(&rows, label), 0.0, "{label}");
    }
    assert!(value_of(&rows, "E_1") < 0.0);
}

#[test]
fn eta_one_third_marks_limit() {
    let rows = json_rows(&stdout(&minlen(&[
        "levels", "--eta", "1/3", "--format", "json",
    ])));
    let p = rows.iter().find(|r| r["label"] == "dE_1s").unwrap()["provenance"]
        .as_str()
        .unwrap()
        .to_string();
    assert!(p.contains("limit"), "{p}");
}

#[test]
fn sequential_matches_parallel() {
    let args = [
        "scan",
        "--scan-param",
        "delta_x",
        "--start",
        "1e-18",
        "--stop",
        "3e-17",
        "--steps",
        "5",
        "--format",
        "csv",
    ];
    let par = stdout(&minlen(&args));
    let mut seq_args = args.to_vec();
    seq_args.push("--sequential");
    assert_eq!(par, stdout(&minlen(&seq_args)));
}

fn failing_ids(o: &Output) -> Vec<String> {
    let rows = json_rows(&stdout(o));
    rows.iter()
        .filter(|r| r["passed"] == false)
        .map(|r| r["id"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn verify_fast_reports_only_the_stark_element_correction() {
    let o = minlen(&["verify", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let failed = failing_ids(&o);
    assert!(!failed.is_empty());
    assert!(
        failed
            .iter()
            .all(|id| id.starts_with("Stark element correction")),
        "{failed:?}"
    );
}

#[test]
fn fault_injection_is_caught() {
    let clean = failing_ids(&minlen(&["verify", "--format", "json"])).len();
    let o = minlen(&["verify", "--format", "json", "--fault-injection", "0.999"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(failing_ids(&o).len() > clean);
}

#[test]
fn verify_table_summary() {
    let text = stdout(&minlen(&["verify"]));
    let last = text.lines().last().unwrap();
    assert!(last.ends_with("failed"), "{last}");
    assert!(text.lines().any(|l| l.starts_with("PASS")));
}
