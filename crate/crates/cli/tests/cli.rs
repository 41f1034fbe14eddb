use std::process::{Command, Output};

use serde_json::Value;

fn hesse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hesse"))
        .args(args)
        .env_remove("HESSE_PRECISION")
        .output()
        .expect("run hesse")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = hesse(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn verify_passes_with_named_checks() {
    let v = json(&["verify"]);
    assert_eq!(v["schema"], "hesse.verify/1");
    assert_eq!(v["passed"], true);
    assert!(v["check_count"].as_u64().unwrap() >= 6);
}

#[test]
fn verify_names_first_failure_on_corrupted_map() {
    let out = hesse(&["verify", "--corrupt-constant", "6913"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("h_of_j_identity"), "{err}");
}

#[test]
fn periodic_one_has_four_records() {
    let v = json(&["periodic", "--n", "1"]);
    let orbits = v["orbits"].as_array().unwrap();
    assert_eq!(orbits.len(), 4);
    assert_eq!(orbits[0]["points"][0], "inf");
    assert_eq!(orbits[0]["multiplier"]["re"], "-27");
    assert!(orbits.iter().all(|o| o["classification"] == "repelling"));
}

#[test]
fn periodic_two_has_nine_points() {
    let v = json(&["periodic", "--n", "2"]);
    let finite: Vec<&Value> = v["orbits"].as_array().unwrap().iter().skip(1).collect();
    let points: usize = finite.iter().map(|o| o["points"].as_array().unwrap().len()).sum();
    assert_eq!(points, 9);
    assert_eq!(finite.iter().filter(|o| o["exact_period"] == 2).count(), 3);
}

#[test]
fn periodic_cap_is_a_usage_error() {
    let out = hesse(&["periodic", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precision_below_64_is_rejected() {
    let out = hesse(&["periodic", "--n", "1", "--precision", "32"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precision_env_var_is_the_default() {
    let out = Command::new(env!("CARGO_BIN_EXE_hesse"))
        .args(["periodic", "--n", "1", "--format", "json"])
        .env("HESSE_PRECISION", "128")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["precision_bits"], 128);
}

#[test]
fn orbits_table() {
    let out = hesse(&["orbits", "--max", "6", "--format", "csv"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "n,count\n1,3\n2,3\n3,8\n4,18\n5,48\n6,116\n");
    let a = json(&["orbits", "--max", "30"]);
    let b = json(&["orbits", "--max", "30", "--method", "recursive"]);
    assert_eq!(a["entries"], b["entries"]);
}

#[test]
fn pencil_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.txt");
    std::fs::write(&path, "t^6 - 20*t^3 - 8\n").unwrap();
    let v = json(&["pencil", "--minpoly", path.to_str().unwrap()]);
    assert_eq!(v["schema"], "hesse.pencil/1");
    assert_eq!(v["orbit_length"], 2);

    std::fs::write(&path, "t^^2").unwrap();
    let out = hesse(&["pencil", "--minpoly", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn padic_fixed_point_and_errors() {
    let v = json(&["padic", "--j0", "1728", "--p", "5", "--n", "10"]);
    let d = v["difference_valuations"].as_array().unwrap();
    assert_eq!(d.len(), 10);
    assert!(d.iter().all(|x| x == "+inf"));
    assert!(v["valuations"].as_array().unwrap().iter().all(|x| x == 0));

    assert_eq!(hesse(&["padic", "--j0", "2", "--p", "9", "--n", "3"]).status.code(), Some(2));
    assert_eq!(hesse(&["padic", "--j0", "0", "--p", "3", "--n", "3"]).status.code(), Some(2));
    let blowup = hesse(&["padic", "--j0", "2", "--p", "3", "--n", "30", "--cap-bits", "1000"]);
    assert_eq!(blowup.status.code(), Some(3));
}

#[test]
fn stats_is_deterministic_and_conserves_counts() {
    let args = ["stats", "--runs", "3", "--n", "500", "--precision", "256", "--seed", "7"];
    let a = json(&args);
    let b = json(&args);
    assert_eq!(a, b);
    for row in a["rows"].as_array().unwrap() {
        let s = &row["stats"];
        let c = &s["counts"];
        let total: u64 = ["l_outer", "l_inner", "m_low", "m_high", "r_near", "r_far"]
            .iter()
            .map(|k| c[k].as_u64().unwrap())
            .sum::<u64>()
            + s["boundary_hits"].as_u64().unwrap();
        assert_eq!(total, 500);
    }
    let csv = hesse(&["stats", "--runs", "2", "--n", "100", "--format", "csv"]);
    let text = String::from_utf8_lossy(&csv.stdout);
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("run,seed,j0,n,precision_bits,l_outer"));
}

#[test]
fn stats_single_negative_seed() {
    let v = json(&["stats", "--j0", "-7/3", "--n", "300"]);
    assert_eq!(v["schema"], "hesse.stats.single/1");
    assert_eq!(v["n"], 300);
}

#[test]
fn output_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("o.json");
    let out = hesse(&["orbits", "--max", "3", "--format", "json", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], "hesse.orbits/1");
}
