use osp_core::radcrystal::appendix::{verify_appendix, AppendixCase};

fn run(case: AppendixCase, max: u32) {
    let rep = verify_appendix(case, max).unwrap();
    assert!(rep.checks.len() > 10, "{case}: only {} checks", rep.checks.len());
    let bad: Vec<String> = rep.failures().map(|c| c.to_string()).collect();
    assert!(bad.is_empty(), "{} failures:\n{}", bad.len(), bad.join("\n"));
}

#[test]
fn b_equal() {
    run(AppendixCase::BEqual, 4);
}

#[test]
fn b_greater() {
    run(AppendixCase::BGreater, 4);
}

#[test]
fn d_greater() {
    run(AppendixCase::DGreater, 4);
}

#[test]
fn less() {
    run(AppendixCase::Less, 4);
}

#[test]
fn case_names_round_trip() {
    for c in AppendixCase::ALL {
        assert_eq!(c.name().parse::<AppendixCase>().unwrap(), c);
    }
    assert!("b:i<m".parse::<AppendixCase>().is_err());
}
