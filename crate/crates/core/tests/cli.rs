use std::process::{Command, Output};

use qgen_core::families::{compute_numbers, FamilyId, FamilyTable};
use qgen_core::poly::{BiPoly, MonomialRecord};
use qgen_core::qarith::{parse_scalar, ratio, QContext};
use serde_json::Value;

fn qgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgen"))
        .args(args)
        .env_remove("QGEN_DEFAULT_Q")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn genocchi_numbers_json() {
    let out = qgen(&[
        "numbers", "--family", "genocchi", "--order", "1", "--q", "1/2", "--max-n", "2",
    ]);
    let doc = json(&out);
    assert_eq!(doc["meta"]["command"], "numbers");
    assert_eq!(doc["meta"]["params"]["q"], "1/2");
    assert_eq!(strings(&doc["data"]), ["0", "1", "-3/4"]);
}

#[test]
fn bernoulli_numbers_at_one() {
    let out = qgen(&[
        "numbers",
        "--family",
        "bernoulli",
        "--order",
        "1",
        "--q",
        "1",
        "--max-n",
        "2",
    ]);
    assert_eq!(strings(&json(&out)["data"]), ["1", "-1/2", "1/6"]);
}

#[test]
fn default_q_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qgen"))
        .args(["numbers", "--family", "genocchi", "--max-n", "2"])
        .env("QGEN_DEFAULT_Q", "1/3")
        .output()
        .unwrap();
    let doc = json(&out);
    assert_eq!(doc["meta"]["params"]["q"], "1/3");
    let ctx = QContext::new(ratio(1, 3)).unwrap();
    let expected: Vec<String> = compute_numbers(FamilyId::genocchi(1), &ctx, 2)
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(strings(&doc["data"]), expected);
}

#[test]
fn bad_q_is_rejected() {
    for q in ["0", "-1/2", "abc", "1/0"] {
        let out = qgen(&["numbers", "--family", "genocchi", "--q", q]);
        assert!(!out.status.success());
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).contains("--q"), "{q}");
    }
}

#[test]
fn numbers_csv() {
    let out = qgen(&[
        "numbers", "--family", "genocchi", "--q", "1/2", "--max-n", "2", "--format", "csv",
    ]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n,value\n0,0\n1,1\n2,-3/4\n"
    );
}

#[test]
fn poly_order_zero_is_power_of_x_at_y_zero() {
    let out = qgen(&[
        "poly", "--family", "genocchi", "--order", "0", "--max-n", "3",
    ]);
    let doc = json(&out);
    for (n, wire) in doc["data"].as_array().unwrap().iter().enumerate() {
        let records: Vec<MonomialRecord> = serde_json::from_value(wire.clone()).unwrap();
        let p = BiPoly::from_wire(&records).unwrap();
        let at_y0 = p.specialize(qgen_core::Var::Y, &ratio(0, 1));
        assert_eq!(at_y0, BiPoly::monomial(n as u32, 0, ratio(1, 1)));
    }
}

#[test]
fn poly_round_trips_against_library() {
    let out = qgen(&[
        "poly",
        "--family",
        "bernoulli",
        "--order",
        "2",
        "--q",
        "2/3",
        "--max-n",
        "5",
    ]);
    let doc = json(&out);
    let ctx = QContext::new(ratio(2, 3)).unwrap();
    let table = FamilyTable::with_polys(FamilyId::bernoulli(2), &ctx, 5);
    let read: Vec<BiPoly> = doc["data"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| {
            BiPoly::from_wire(&serde_json::from_value::<Vec<MonomialRecord>>(w.clone()).unwrap())
                .unwrap()
        })
        .collect();
    assert_eq!(read.len(), 6);
    for (n, p) in read.iter().enumerate() {
        assert_eq!(p, table.poly(n));
    }
}

#[test]
fn poly_csv_parses_back() {
    let out = qgen(&[
        "poly", "--family", "genocchi", "--order", "1", "--max-n", "4", "--format", "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let ctx = QContext::new(ratio(1, 2)).unwrap();
    let table = FamilyTable::with_polys(FamilyId::genocchi(1), &ctx, 4);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,poly"));
    for (n, line) in lines.enumerate() {
        let (idx, poly) = line.split_once(',').unwrap();
        assert_eq!(idx.parse::<usize>().unwrap(), n);
        assert_eq!(&poly.parse::<BiPoly>().unwrap(), table.poly(n));
    }
}

#[test]
fn poly_at_origin_reproduces_numbers() {
    let numbers = json(&qgen(&[
        "numbers", "--family", "genocchi", "--order", "2", "--max-n", "6",
    ]));
    let at = json(&qgen(&[
        "poly", "--family", "genocchi", "--order", "2", "--max-n", "6", "--at", "x=0,y=0",
    ]));
    assert_eq!(numbers["data"], at["data"]);
    let one = json(&qgen(&[
        "poly",
        "--family",
        "genocchi",
        "--order",
        "1",
        "--max-n",
        "1",
        "--at",
        "y=0,x=5/7",
    ]));
    assert_eq!(strings(&one["data"]), ["0", "1"]);
}

#[test]
fn malformed_point_is_rejected() {
    for at in ["x=0", "x=1,z=2", "x=1,x=2,y=0", "x0,y=1", "x=1/0,y=0"] {
        let out = qgen(&["poly", "--family", "genocchi", "--at", at]);
        assert!(!out.status.success(), "{at}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("--at"));
    }
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let out = qgen(&[
        "numbers",
        "--family",
        "genocchi",
        "--max-n",
        "3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let parsed: Vec<_> = strings(&doc["data"])
        .iter()
        .map(|s| parse_scalar(s).unwrap())
        .collect();
    let ctx = QContext::new(ratio(1, 2)).unwrap();
    assert_eq!(parsed, compute_numbers(FamilyId::genocchi(1), &ctx, 3));
}

#[test]
fn verify_property3_small() {
    let out = qgen(&["verify", "--suite", "property3", "--n-max", "1"]);
    let doc = json(&out);
    let reports = doc["data"].as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["identity_id"], "property3");
    assert_eq!(reports[0]["status"], "pass");
    assert!(reports[0]["checked_count"].as_u64().unwrap() >= 1);
}

#[test]
fn verify_unknown_suite_fails_before_work() {
    let out = qgen(&["verify", "--suite", "property1,nosuch"]);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--suite") && err.contains("nosuch"));
}

#[test]
fn verify_bad_grid_flags() {
    for args in [["--qs", "1/2,0"], ["--ms", "0"], ["--workers", "0"]] {
        let mut full = vec!["verify"];
        full.extend(args);
        let out = qgen(&full);
        assert!(!out.status.success(), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(args[0]));
    }
}

#[test]
fn verify_errata_do_not_fail_exit_status() {
    let out = qgen(&[
        "verify",
        "--suite",
        "theorem_sp1,corollaries",
        "--n-max",
        "3",
        "--qs",
        "1/2",
        "--alphas",
        "1",
    ]);
    let doc = json(&out);
    let reports = doc["data"].as_array().unwrap();
    let failing: Vec<&str> = reports
        .iter()
        .filter(|r| r["status"] == "fail")
        .map(|r| r["identity_id"].as_str().unwrap())
        .collect();
    assert_eq!(
        failing,
        ["theorem_sp1/as_printed", "corollaries/c4_as_printed"]
    );
    assert!(reports
        .iter()
        .filter(|r| r["status"] == "fail")
        .all(|r| r["erratum_candidate"] == true));
}

#[test]
fn verify_report_ignores_worker_count() {
    let base = ["verify", "--suite", "all", "--n-max", "4", "--qs", "1/2,1"];
    let one = qgen(&[&base[..], &["--workers", "1"]].concat());
    let three = qgen(&[&base[..], &["--workers", "3"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, three.stdout);
}
