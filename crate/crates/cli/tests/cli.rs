use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_congruence-lab"))
        .args(args)
        .env_remove("CONGRUENCE_LAB_CACHE")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn small_run_passes_and_reports_counts() {
    let out = lab(&["verify", "--primes", "11..31", "--checks", "C01,C05", "--precision", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["meta"]["p_range"], serde_json::json!([11, 31]));
    assert_eq!(v["meta"]["K"], 2);
    assert!(v["meta"]["version"].is_string());
    let c01 = &v["summary"]["checks"]["C01"];
    assert!(c01["pass"].as_u64().unwrap() > 0);
    assert_eq!(c01["fail"], 0);
    for r in v["records"].as_array().unwrap() {
        assert!(r["lhs"].is_string() && r["rhs"].is_string());
        assert_eq!(r["status"], "pass");
    }
}

#[test]
fn csv_and_json_carry_the_same_records() {
    let args = ["verify", "--primes", "11..23", "--checks", "C01,C02,C09,C36"];
    let j = json(&lab(&args));
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let out = lab(&csv_args);
    let text = String::from_utf8(out.stdout).unwrap();
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let mut rdr = csv::Reader::from_reader(body.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    let records = j["records"].as_array().unwrap();
    assert_eq!(rows.len(), records.len());
    for (row, rec) in rows.iter().zip(records) {
        assert_eq!(&row[0], rec["id"].as_str().unwrap());
        let p = rec["p"].as_u64().map(|p| p.to_string()).unwrap_or_default();
        assert_eq!(&row[1], p);
        assert_eq!(&row[3], rec["modulus"].as_str().unwrap());
        assert_eq!(&row[4], rec["lhs"].as_str().unwrap());
        assert_eq!(&row[5], rec["rhs"].as_str().unwrap());
        assert_eq!(&row[6], rec["status"].as_str().unwrap());
    }
}

#[test]
fn reversed_window_is_a_usage_error() {
    let out = lab(&["verify", "--primes", "7..5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(lab(&["verify", "--precision", "0"]).status.code(), Some(2));
    assert_eq!(lab(&["verify", "--checks", "C99"]).status.code(), Some(2));
}

#[test]
fn exploratory_failures_do_not_fail_the_run() {
    let out = lab(&["verify", "--primes", "11..41", "--checks", "C49"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let recs = v["records"].as_array().unwrap();
    assert!(!recs.is_empty());
    assert!(recs.iter().all(|r| r["status"] == "exploratory"));
}

#[test]
fn thirty_seven_is_irregular_at_thirty_two() {
    let v = json(&lab(&["verify", "--primes", "37", "--checks", "C02"]));
    let recs = v["records"].as_array().unwrap();
    let hit: Vec<&Value> = recs.iter().filter(|r| r["rhs"] == "irregular").collect();
    assert_eq!(hit.len(), 1);
    assert_eq!(hit[0]["params"]["t"], 32);
    assert_eq!(hit[0]["lhs"], "0");
    assert_eq!(hit[0]["status"], "pass");
}

#[test]
fn output_is_independent_of_worker_count() {
    let base = ["verify", "--primes", "11..43", "--checks", "C01,C11,C21,C40", "--format", "text"];
    let one = lab(&[&base[..], &["--workers", "1"]].concat());
    let four = lab(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let out = lab(&["verify", "--primes", "11", "--checks", "C01", "--out", "/nonexistent-dir/report.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cache_round_trip_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let flag = dir.path().join("flag.cache");
    let env = dir.path().join("env.cache");
    let args = ["verify", "--primes", "11..13", "--checks", "C01", "--cache", flag.to_str().unwrap()];
    let out = Command::new(env!("CARGO_BIN_EXE_congruence-lab"))
        .args(args)
        .env("CONGRUENCE_LAB_CACHE", &env)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(env.exists() && !flag.exists());
    let dump = std::fs::read_to_string(&env).unwrap();
    assert!(dump.lines().any(|l| l == "1 -1/2"));
    assert!(dump.lines().any(|l| l == "12 -691/2730"));

    let again = lab(&args);
    assert_eq!(again.status.code(), Some(0));
    assert!(flag.exists());
    assert_eq!(again.stdout, out.stdout);
}

#[test]
fn corrupt_cache_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cache");
    std::fs::write(&path, "0 1/1\n2 x/y\n").unwrap();
    let out = lab(&["verify", "--primes", "11", "--checks", "C01", "--cache", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn report_file_and_headers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = lab(&["verify", "--primes", "11..17", "--checks", "C09,C34", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(Path::new(&path)).unwrap()).unwrap();
    assert_eq!(v["meta"]["gessel_start"], "4");
    assert!(v["meta"]["c34_rows"].is_string());
}

#[test]
fn tables_and_bernoulli_subcommands() {
    let out = lab(&["tables", "--prime", "7", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["wilson_quotient"], "103");
    assert_eq!(v["fermat_quotients"][1], "9");
    assert_eq!(v["stirling"].as_array().unwrap().len(), 8);
    assert_eq!(v["stirling"][1], "720");
    assert_eq!(lab(&["tables", "--prime", "9"]).status.code(), Some(2));

    let out = lab(&["bernoulli", "--max", "12", "--even"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "1 -1/2 -1/2"));
    assert!(text.lines().any(|l| l == "12 -691/2730 -691/32760"));
    assert!(!text.lines().any(|l| l.starts_with("3 ")));
}
