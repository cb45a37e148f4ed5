use std::path::PathBuf;
use std::process::Command;

use repdim_cli::{exit_code_for, run, EXIT_CAP, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;

fn argv(cmd: &str) -> Vec<String> {
    std::iter::once("repdim".to_string()).chain(cmd.split_whitespace().map(String::from)).collect()
}

/// Exit code and the report without timing.
fn report(cmd: &str) -> (i32, Value) {
    let exec = run(argv(cmd));
    let r = exec.report.unwrap_or_else(|| panic!("no report for `{cmd}`: {}", exec.rendered));
    (exec.exit_code, serde_json::from_str(&r.to_json(false)).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("repdim-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn bounds_hecke_a_wild() {
    let (code, r) = report("bounds --family heckeA --n 7 --ell 3");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["payload"]["lower"], 3);
    assert_eq!(r["payload"]["upper"], 4);
    assert_eq!(r["payload"]["class"], "wild");
    assert!(!r["citations"].as_array().unwrap().is_empty());
}

#[test]
fn bounds_hecke_d_even_rank() {
    let (code, r) = report("bounds --family heckeD --n 6 --ell 3");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["status"], "partial");
    assert_eq!(r["payload"]["lower"], 3);
    assert!(r["payload"]["upper"].is_null());
    assert_eq!(r["payload"]["upper_absent_reason"], "n even");
}

#[test]
fn bounds_type_b_and_ariki_koike() {
    let (_, r) = report("bounds --family heckeB --n 2 --ell 2 --Q 2");
    assert_eq!((r["payload"]["lower"].as_u64(), r["payload"]["upper"].as_u64()), (Some(2), Some(2)));
    let (_, r) = report("bounds --family heckeB --n 2 --ell 2 --Q 1");
    assert_eq!(r["payload"]["upper_absent_reason"], "f_n(Q,q) = 0");
    let (code, r) = report("bounds --family arikiKoike --n 7 --ell 3 --params 1,1+z");
    assert_eq!(code, EXIT_USAGE, "{r}");
    let (code, r) = report("bounds --family arikiKoike --n 7 --ell 3 --params 1,z");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["payload"]["lower"], 3);
    assert_eq!(r["status"], "partial");
}

#[test]
fn witness_hecke_json() {
    let exec = run(argv("witness --family heckeA --n 3 --ell 2 --format json"));
    assert_eq!(exec.exit_code, EXIT_PASS);
    let r: Value = serde_json::from_str(&exec.rendered).unwrap();
    assert_eq!(r["status"], "pass");
    assert_eq!(r["payload"]["gldim"]["value"], 2);
    assert_eq!(r["payload"]["induced_dim"], 9);
    assert!(r["timing"]["elapsed_ms"].is_u64());
}

#[test]
fn witness_artifacts_written() {
    let dir = scratch("artifacts");
    let (code, r) = report(&format!("witness --family group --n 2 --p 2 --artifacts {}", dir.display()));
    assert_eq!(code, EXIT_PASS);
    let names = r["payload"]["artifacts"].as_array().unwrap();
    assert_eq!(names.len(), 4);
    for n in names {
        assert!(dir.join(n.as_str().unwrap()).is_file());
    }
}

#[test]
fn verify_examples() {
    let (code, r) = report("verify --suite mackey --n 4 --p 3");
    assert_eq!((code, r["status"].as_str()), (EXIT_PASS, Some("pass")));
    let (code, r) = report("verify --suite trace --family group --n 3 --p 2 --seed 7");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["payload"]["samples"], 20);
    assert_eq!(r["payload"]["seed"], 7);
    let (code, r) = report("verify --suite ext-injectivity --family heckeA --n 3 --ell 2");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["payload"]["nonzero_kernels"], 0);
    assert!(r["payload"]["pairs"].as_array().unwrap().iter().all(|p| p["kernel"] == 0));
}

#[test]
fn verify_casimir_group_orders() {
    for (cmd, order) in
        [("--family cyclic --n 2", 2), ("--family cyclic --n 3", 3), ("--family group --n 3 --sub scalar", 6)]
    {
        let (code, r) = report(&format!("verify --suite casimir {cmd}"));
        assert_eq!(code, EXIT_PASS);
        assert_eq!(r["payload"]["mu_equals_group_order"], true);
        assert_eq!(r["payload"]["mu"][0], order.to_string());
    }
    let (_, r) = report("verify --suite casimir --family group --n 3 --p 2");
    assert_eq!(r["payload"]["mu_invertible"], true);
    let (_, r) = report("verify --suite casimir --family group --n 3 --p 2 --sub scalar");
    assert_eq!(r["status"], "pass");
    assert_eq!(r["payload"]["mu_invertible"], false);
}

#[test]
fn verify_xi_and_gldim_comparison() {
    let (code, r) = report("verify --suite xi");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["payload"]["product"]["value"], 4);
    let (code, r) = report("verify --suite gldim-comparison --family heckeA --n 3 --ell 2");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["payload"]["holds"], true);
}

#[test]
fn algebra_dump_round_trips() {
    let path = scratch("heckeB.alg");
    let (code, r) = report(&format!("algebra --family heckeB --n 2 --ell 2 --Q 2 --file {}", path.display()));
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r["payload"]["algebra"]["dim"], 8);
    assert_eq!(r["payload"]["roundtrip"], true);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(repdim::algebra::Algebra::from_text(&text).unwrap().to_text(), text);
    let (_, r) = report(&format!("algebra --family group --n 3 --p 2 --file {}", scratch("s3.alg").display()));
    assert_eq!(r["payload"]["algebra"]["dim"], 6);
}

#[test]
fn algebra_dump_uses_output_dir_env() {
    let dir = scratch("envdir");
    std::env::set_var(repdim_cli::commands::OUT_DIR_ENV, &dir);
    let (code, r) = report("algebra --family truncated --n 3");
    std::env::remove_var(repdim_cli::commands::OUT_DIR_ENV);
    assert_eq!(code, EXIT_PASS);
    let file = PathBuf::from(r["payload"]["file"].as_str().unwrap());
    assert!(file.starts_with(&dir) && file.is_file());
}

#[test]
fn indecomposables_of_truncated_polynomials() {
    let (_, r) = report("indecomposables --family truncated --n 3");
    assert_eq!(r["payload"]["count"], 3);
    assert_eq!(r["payload"]["repdim"], 2);
    let (_, r) = report("indecomposables --family truncated --n 1");
    assert_eq!(r["payload"]["repdim"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(run(argv("bounds --family heckeA")).exit_code, EXIT_USAGE);
    assert_eq!(run(argv("bounds --family nonsense --n 3")).exit_code, EXIT_USAGE);
    assert!(run(argv("bounds --family nonsense --n 3")).report.is_none());
    assert_eq!(run(argv("bounds --family group --n 9 --p 3")).exit_code, EXIT_USAGE);
    assert_eq!(run(argv("bounds --family group --n 5 --p 4")).exit_code, EXIT_USAGE);
    assert_eq!(run(argv("witness --family heckeA --n 3 --ell 2 --cap 0")).exit_code, EXIT_CAP);
    assert_eq!(run(argv("witness --family group --n 8 --p 3 --max-order 1000")).exit_code, EXIT_CAP);
    assert_eq!(run(argv("indecomposables --family group --n 4 --p 2")).exit_code, EXIT_USAGE);
}

#[test]
fn check_failures_map_to_exit_one() {
    use repdim::Error;
    let stage = Error::StageFailure { stage: "gldim".into(), detail: "exceeds bound".into() };
    assert_eq!(exit_code_for(&stage), EXIT_FAIL);
    let cert = Error::CertificationFailure { clause: "complement".into(), detail: String::new() };
    assert_eq!(exit_code_for(&cert), EXIT_FAIL);
    assert_eq!(exit_code_for(&Error::LinearityFailure("x".into())), EXIT_FAIL);
    assert_eq!(exit_code_for(&Error::CapExceeded("x".into())), EXIT_CAP);
    assert_eq!(exit_code_for(&Error::InvalidParameter("x".into())), EXIT_USAGE);
}

#[test]
fn text_is_projection_of_json() {
    let exec = run(argv("bounds --family heckeA --n 7 --ell 3"));
    let text = exec.rendered;
    let r = exec.report.unwrap();
    assert!(text.contains("payload.lower: 3\n"));
    assert!(text.contains("payload.class: wild\n"));
    assert!(text.contains("status: pass\n"));
    assert_eq!(text.lines().count(), r.to_text().lines().count());
}

#[test]
fn reports_deterministic_without_timing() {
    for cmd in [
        "bounds --family heckeD --n 5 --ell 3 --format json",
        "verify --suite trace --family group --n 3 --p 2 --seed 7",
        "witness --family heckeA --n 3 --ell 2",
    ] {
        assert_eq!(report(cmd).1, report(cmd).1, "{cmd}");
        let a = run(argv(cmd)).report.unwrap().to_json(false);
        let b = run(argv(cmd)).report.unwrap().to_json(false);
        assert_eq!(a, b);
    }
}

#[test]
fn binary_exit_codes_and_output_file() {
    let bin = env!("CARGO_BIN_EXE_repdim");
    let st = Command::new(bin).args(argv("bounds --family heckeA --n 7 --ell 3")[1..].iter()).output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_PASS));
    assert!(String::from_utf8_lossy(&st.stdout).contains("payload.upper: 4"));
    let st = Command::new(bin).args(["bounds", "--family"]).output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_USAGE));
    let out = scratch("report.json");
    let st = Command::new(bin)
        .args(["bounds", "--family", "group", "--n", "5", "--p", "3", "--format", "json", "--output"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(EXIT_PASS));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["payload"]["upper"], 2);
}
