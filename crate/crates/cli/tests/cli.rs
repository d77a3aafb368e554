use std::process::Command as Process;
use std::sync::Arc;
use std::time::Duration;

use proptest::prelude::*;
use zeta_workbench::constants::STRUCTURE_CHECKS;
use zeta_workbench::identities::catalog_ids;
use zeta_workbench::Error;
use zwb_cli::{
    main_with_args, run_with_checks, Check, Command, OutputFormat, Outcome, RunConfig, Suite, EXIT_FAIL, EXIT_PASS,
    EXIT_USAGE,
};

fn zwb(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with_args(std::iter::once("zwb").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn single_identity_passes() {
    let (code, out, _) = zwb(&["verify", "--suite", "EQ_3_13", "--tol", "1e-10", "--output", "json"]);
    assert_eq!(code, EXIT_PASS);
    let v = json(&out);
    assert_eq!(v["results"].as_array().unwrap().len(), 1);
    assert_eq!(v["results"][0]["pass"], true);
}

#[test]
fn zeta_second_derivative_routes_agree() {
    let (code, out, _) = zwb(&["compute", "zeta-deriv0", "--n", "2", "--route", "all", "--output", "json"]);
    assert_eq!(code, EXIT_PASS);
    let rows = json(&out)["rows"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 6);
    let values: Vec<f64> = rows.iter().map(|r| r["value"].as_str().unwrap().parse().unwrap()).collect();
    for a in &values {
        for b in &values {
            assert!((a - b).abs() < 1e-6);
        }
    }
}

#[test]
fn stieltjes_table_lists_route_and_error() {
    let (code, out, _) = zwb(&["compute", "γ", "--n", "0..5", "--output", "csv"]);
    assert_eq!(code, EXIT_PASS);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("index,route,value,err_estimate"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn full_suite_json_schema_and_determinism() {
    let args = ["verify", "--suite", "all", "--output", "json", "--no-timing"];
    let (code, first, _) = zwb(&[&args[..], &["--parallelism", "1"]].concat());
    assert_eq!(code, EXIT_PASS);
    let (_, second, _) = zwb(&[&args[..], &["--parallelism", "4"]].concat());
    assert_eq!(first, second);

    let v = json(&first);
    let total = catalog_ids().len() + STRUCTURE_CHECKS.len();
    assert_eq!(v["summary"]["total"], total);
    assert_eq!(v["summary"]["failed"], 0);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["suite", "tolerance", "precision_digits", "results", "summary"] {
        assert!(keys.contains(&k), "{k}");
    }
    let ids: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted);
    assert!(v["results"][0]["lhs"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(zwb(&["verify", "--suite", "EQ_0_0"]).0, EXIT_USAGE);
    assert_eq!(zwb(&["verify", "--tol", "1e-40"]).0, EXIT_USAGE);
    assert_eq!(zwb(&["verify", "--digits", "10"]).0, EXIT_USAGE);
    assert_eq!(zwb(&["verify", "--parallelism", "0"]).0, EXIT_USAGE);
    assert_eq!(zwb(&["compute", "nope"]).0, EXIT_USAGE);
    assert_eq!(zwb(&["compute", "eta", "--route", "oracle"]).0, EXIT_USAGE);
    assert_eq!(zwb(&["compute", "zeta-deriv0", "--n", "9", "--route", "integral_1_8"]).0, EXIT_USAGE);
    assert_eq!(zwb(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(zwb(&["--help"]).0, EXIT_PASS);
}

fn failing_check() -> Check {
    Check {
        id: "SYNTHETIC_FAIL".into(),
        description: "1 = 2".into(),
        eval: Arc::new(|wb, tol| {
            let cfg = wb.config();
            Ok(Outcome {
                lhs: cfg.num(1),
                rhs: cfg.num(2),
                abs_err: cfg.num(1),
                rel_err: cfg.ratio(1, 2),
                tol,
                pass: false,
            })
        }),
    }
}

fn config(ids: &[&str], report: bool) -> RunConfig {
    let suite = Suite::parse(&ids.join(",")).unwrap();
    let mut cfg = RunConfig::new(if report { Command::Report(suite) } else { Command::Verify(suite) });
    cfg.output = OutputFormat::Json;
    cfg.parallelism = 2;
    cfg
}

const CHEAP: [&str; 8] = [
    "EQ_1_5_6", "EQ_2_2", "EQ_3_13", "EQ_4_7", "EQ_4_19", "ETA_1", "STRUCT_B_SIGN", "STRUCT_ETA_SIGN",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn exit_status_reflects_failures(mask in 1u8..=255, inject in any::<bool>(), report in any::<bool>()) {
        let ids: Vec<&str> = CHEAP.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, id)| *id).collect();
        let extra = if inject { vec![failing_check()] } else { Vec::new() };
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with_checks(&config(&ids, report), extra, &mut out, &mut err);
        let expected = if inject && !report { EXIT_FAIL } else { EXIT_PASS };
        prop_assert_eq!(code, expected);
        let v = json(std::str::from_utf8(&out).unwrap());
        prop_assert_eq!(v["summary"]["total"].as_u64().unwrap() as usize, ids.len() + inject as usize);
        prop_assert_eq!(v["summary"]["failed"].as_u64().unwrap(), inject as u64);
    }
}

#[test]
fn runaway_and_erroring_checks_become_failed_rows() {
    let slow = Check {
        id: "SYNTHETIC_SLOW".into(),
        description: "never finishes in time".into(),
        eval: Arc::new(|wb, _| {
            std::thread::sleep(Duration::from_secs(5));
            Ok(Outcome {
                lhs: wb.config().zero(),
                rhs: wb.config().zero(),
                abs_err: wb.config().zero(),
                rel_err: wb.config().zero(),
                tol: 1.0,
                pass: true,
            })
        }),
    };
    let erroring = Check {
        id: "SYNTHETIC_ERROR".into(),
        description: "does not converge".into(),
        eval: Arc::new(|_, _| Err(Error::NotConverged { estimate: "1e-3".into(), tol: "1e-28".into() })),
    };
    let panicking = Check {
        id: "SYNTHETIC_PANIC".into(),
        description: "panics".into(),
        eval: Arc::new(|_, _| panic!("boom")),
    };
    let mut cfg = config(&["EQ_2_2"], false);
    cfg.timeout = Duration::from_millis(300);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with_checks(&cfg, vec![slow, erroring, panicking], &mut out, &mut err);
    assert_eq!(code, EXIT_FAIL);
    let v = json(std::str::from_utf8(&out).unwrap());
    assert_eq!(v["summary"]["failed"], 3);
    assert_eq!(v["summary"]["passed"], 1);
    let err = String::from_utf8(err).unwrap();
    assert!(err.contains("SYNTHETIC_SLOW: timed out"));
    assert!(err.contains("SYNTHETIC_ERROR: quadrature did not converge"));
    assert!(err.contains("SYNTHETIC_PANIC: panicked"));
}

#[test]
fn duplicate_injected_id_is_a_usage_error() {
    let mut dup = failing_check();
    dup.id = "EQ_2_2".into();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run_with_checks(&config(&["EQ_2_2"], false), vec![dup], &mut out, &mut err), EXIT_USAGE);
}

#[test]
fn binary_reads_digits_from_environment() {
    let out = Process::new(env!("CARGO_BIN_EXE_zwb"))
        .args(["report", "--suite", "EQ_2_2"])
        .env("ZETA_DIGITS", "45")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(v["precision_digits"], 45);

    let bad = Process::new(env!("CARGO_BIN_EXE_zwb"))
        .args(["verify", "--suite", "EQ_2_2"])
        .env("ZETA_DIGITS", "12")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
