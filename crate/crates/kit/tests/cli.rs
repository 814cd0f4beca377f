use std::collections::BTreeMap;
use std::io::Write;
use std::process::{Command, Output};

use daehee_core::Rational;
use daehee_kit::output::{parse_rational, rational_string};
use serde_json::Value;

const ENV_VARS: &[&str] = &[
    "DAEHEE_CONFIG",
    "DAEHEE_FORMAT",
    "DAEHEE_N_MAX",
    "DAEHEE_K",
    "DAEHEE_K_MAX",
    "DAEHEE_IDS",
    "DAEHEE_X_SAMPLES",
    "DAEHEE_JOBS",
    "DAEHEE_BUDGET",
];

fn kit(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_daehee-kit"));
    for var in ENV_VARS {
        cmd.env_remove(var);
    }
    cmd.args(args).envs(env.iter().copied());
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn values(doc: &Value) -> Vec<String> {
    doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["value"].as_str().unwrap().to_owned())
        .collect()
}

#[test]
fn table_examples() {
    let out = kit(&["table", "daehee1", "--n-max", "3", "--k", "1", "--format", "csv"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let cells: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(cells, ["1", "-1/2", "2/3", "-3/2"]);

    let doc = json(&kit(&["table", "daehee2", "--n-max", "2", "--k", "1"], &[]));
    assert_eq!(values(&doc), ["1", "-1/2", "-1/3"]);
    assert_eq!(doc["artifact"], "daehee-kit");
    assert_eq!(doc["schema_version"], 1);

    let doc = json(&kit(&["table", "stirling1", "--n-max", "0"], &[]));
    assert_eq!(values(&doc), ["1"]);
}

#[test]
fn poly_examples() {
    let coeffs = |args: &[&str]| -> Vec<String> {
        let doc = json(&kit(args, &[]));
        doc["entries"][0]["coefficients"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_str().unwrap().to_owned())
            .collect()
    };
    assert_eq!(coeffs(&["poly", "daehee1", "--n", "1", "--k", "1"]), ["-1/2", "1"]);
    assert_eq!(coeffs(&["poly", "bernoulli", "--n", "0", "--k", "3"]), ["1"]);
    assert_eq!(coeffs(&["poly", "daehee2", "--n", "1", "--k", "1"]), ["-1/2", "-1"]);
}

#[test]
fn exit_codes() {
    assert_eq!(kit(&["verify", "--ids", "T1", "--n-max", "2", "--k-max", "1"], &[]).status.code(), Some(0));
    let bad = kit(&["verify", "--ids", "BOGUS"], &[]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("T1"));
    assert_eq!(kit(&["table", "catalan"], &[]).status.code(), Some(2));
    assert_eq!(kit(&["volkenborn", "--n", "1", "--p", "4", "--depths", "1..2"], &[]).status.code(), Some(2));
    let budget = kit(&["volkenborn", "--n", "1", "--p", "5", "--depths", "1..12"], &[]);
    assert_eq!(budget.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&budget.stderr).contains("--closed-form"));
    assert_eq!(kit(&["--help"], &[]).status.code(), Some(0));
}

#[test]
fn volkenborn_examples() {
    let doc = json(&kit(&["volkenborn", "--n", "1", "--p", "3", "--depths", "1..3"], &[]));
    let vals: Vec<i64> = doc["entries"].as_array().unwrap().iter().map(|e| e["valuation"].as_i64().unwrap()).collect();
    assert_eq!(vals, [1, 2, 3]);

    let doc = json(&kit(&["volkenborn", "--n", "2", "--p", "5", "--depths", "1..4"], &[]));
    assert_eq!(doc["params"]["exact"], "2/3");
    let vals: Vec<i64> = doc["entries"].as_array().unwrap().iter().map(|e| e["valuation"].as_i64().unwrap()).collect();
    assert_eq!(vals, [1, 2, 3, 4]);

    let doc = json(&kit(&["volkenborn", "--n", "0", "--p", "2", "--depths", "1..2"], &[]));
    assert!(doc["entries"].as_array().unwrap().iter().all(|e| e["valuation"] == "inf"));

    let closed = json(&kit(&["volkenborn", "--n", "3", "--p", "5", "--depths", "1..12", "--closed-form"], &[]));
    assert_eq!(closed["entries"].as_array().unwrap().len(), 12);
}

#[test]
fn rationals_round_trip_through_json() {
    let doc = json(&kit(&["table", "bernoulli", "--n-max", "14", "--k", "2"], &[]));
    for text in values(&doc) {
        let r: Rational = parse_rational(&text).unwrap();
        assert_eq!(rational_string(&r), text);
    }
}

#[test]
fn csv_and_json_carry_the_same_values() {
    for seq in ["daehee1", "daehee2", "bernoulli", "stirling1", "stirling2"] {
        let args = ["table", seq, "--n-max", "7", "--k", "3"];
        let mut from_json = values(&json(&kit(&args, &[])));
        let csv_out = kit(&[&args[..], &["--format", "csv"]].concat(), &[]);
        let mut reader = csv::Reader::from_reader(csv_out.stdout.as_slice());
        let col = reader.headers().unwrap().iter().position(|h| h == "value").unwrap();
        let mut from_csv: Vec<String> = reader.records().map(|r| r.unwrap()[col].to_owned()).collect();
        from_json.sort();
        from_csv.sort();
        assert_eq!(from_json, from_csv, "{seq}");
    }
}

#[test]
fn verify_csv_matches_json_statuses() {
    let args = ["verify", "--ids", "all", "--n-max", "5", "--k-max", "2"];
    let doc = json(&kit(&args, &[]));
    let from_json: BTreeMap<String, String> = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["id"].as_str().unwrap().to_owned(), e["status"].as_str().unwrap().to_owned()))
        .collect();
    let out = kit(&[&args[..], &["--format", "csv"]].concat(), &[]);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let from_csv: BTreeMap<String, String> =
        reader.records().map(|r| r.unwrap()).map(|r| (r[0].to_owned(), r[1].to_owned())).collect();
    assert_eq!(from_json.len(), 18);
    assert_eq!(from_json, from_csv);
}

#[test]
fn precedence_flag_env_file_default() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "n_max = 4\nk = 2\nformat = \"csv\"").unwrap();
    let path = file.path().to_str().unwrap().to_owned();
    let path = path.as_str();
    let rows = |out: &Output| stdout(out).lines().count() - 1;

    let defaults = kit(&["table", "daehee1", "--format", "csv"], &[]);
    assert_eq!(rows(&defaults), 11);

    let from_file = kit(&["--config", path, "table", "daehee1"], &[]);
    assert_eq!(rows(&from_file), 5);
    assert!(stdout(&from_file).starts_with("n,"));

    let from_env_config = kit(&["table", "daehee1"], &[("DAEHEE_CONFIG", path)]);
    assert_eq!(stdout(&from_env_config), stdout(&from_file));

    let env_over_file = kit(&["--config", path, "table", "daehee1"], &[("DAEHEE_N_MAX", "2")]);
    assert_eq!(rows(&env_over_file), 3);

    let flag_over_env = kit(&["--config", path, "table", "daehee1", "--n-max", "6"], &[("DAEHEE_N_MAX", "2")]);
    assert_eq!(rows(&flag_over_env), 7);

    writeln!(file, "colour = \"red\"").unwrap();
    assert_eq!(kit(&["--config", path, "table", "daehee1"], &[]).status.code(), Some(2));
}

#[test]
fn verify_timings_are_opt_in() {
    let args = ["verify", "--ids", "T1,E4", "--n-max", "4", "--k-max", "2"];
    let plain = json(&kit(&args, &[]));
    assert!(plain["entries"][0].get("elapsed_ms").is_none());
    let timed = json(&kit(&[&args[..], &["--timings"]].concat(), &[]));
    assert!(timed["entries"][0]["elapsed_ms"].is_number());
}
