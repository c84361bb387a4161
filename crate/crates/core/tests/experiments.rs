use proofbench::experiments::{
    agreement_sweep, count_up_to, counterexample_report, growth_report, semi_subformula_violation_demo, Family,
    ImplicationalFormulas, SweepConfig,
};
use proofbench::parse;

#[test]
fn reports_are_deterministic() {
    let a = serde_json::to_string(&counterexample_report()).unwrap();
    let b = serde_json::to_string(&counterexample_report()).unwrap();
    assert_eq!(a, b);
    let a = serde_json::to_string(&semi_subformula_violation_demo()).unwrap();
    let b = serde_json::to_string(&semi_subformula_violation_demo()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn counterexample_parts() {
    let r = counterexample_report();
    assert!(r.pass, "{}", r.to_text());
    let m = r.countermodel.unwrap();
    assert_eq!(m.values.get("p"), Some(&false));
    assert_eq!(m.values.get("r"), Some(&true));
    assert!(r.explosion_note.contains("Kripke"), "{}", r.explosion_note);
    let json: serde_json::Value = serde_json::to_value(counterexample_report()).unwrap();
    assert!(json["provenance"]["rule_table_hash"].as_str().is_some_and(|h| h.len() == 64));
}

#[test]
fn sweep_over_one_atom() {
    let cfg = SweepConfig { max_connectives: 3, atoms: vec!["p".into()], ..SweepConfig::default() };
    let r = agreement_sweep(&cfg);
    assert!(r.passed(), "{}", r.to_text());
    assert_eq!(r.undecided, 0);
    assert_eq!(r.formulas, count_up_to(3, 2));
    assert_eq!(r.oracles.sc_proved + r.oracles.sc_unprovable, r.formulas);
}

#[test]
fn sweep_covers_the_encoded_counterexample() {
    let target = parse("((p -> q -> bot) -> bot) -> p").unwrap();
    assert!(ImplicationalFormulas::new(vec![parse("p").unwrap(), parse("q").unwrap(), parse("bot").unwrap()], 5).any(|g| g == target));
    let cfg = SweepConfig { max_connectives: 4, ..SweepConfig::default() };
    let r = agreement_sweep(&cfg);
    assert!(r.passed(), "{}", r.to_text());
    assert_eq!(r.formulas, 3873);
}

#[test]
fn growth_csv_has_every_row() {
    let r = growth_report(Family::ReuseHeavy, 5);
    assert_eq!(r.to_csv().lines().count(), 6);
    assert!(r.truncated.is_none());
    let single = growth_report(Family::ReuseHeavy, 1);
    assert!(single.slopes.l1.is_none());
}
