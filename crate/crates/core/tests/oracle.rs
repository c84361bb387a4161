mod common;

use common::{f, implicational, propositional};
use proofbench::classical::{classical_valid, ClassicalVerdict};
use proofbench::oracle::{kripke_countermodel, naive_prove, KripkeOutcome, Logic, NaiveOutcome};
use proptest::prelude::*;

#[test]
fn excluded_middle() {
    let g = f("p | (p -> bot)");
    assert!(classical_valid(&g, false).unwrap().is_valid());
    let KripkeOutcome::Refuted { model, world } = kripke_countermodel(&g, 3, Logic::Intuitionistic) else { panic!() };
    assert_eq!(model.worlds(), 2);
    assert!(!model.forces(world, &g));
}

#[test]
fn minimal_rejects_explosion() {
    let g = f("bot -> p");
    assert!(matches!(kripke_countermodel(&g, 2, Logic::Minimal), KripkeOutcome::Refuted { .. }));
    assert!(matches!(kripke_countermodel(&g, 4, Logic::Intuitionistic), KripkeOutcome::Unknown));
    assert!(matches!(naive_prove(&[], &g, Logic::Intuitionistic, 10_000), NaiveOutcome::Provable(_)));
    assert!(!matches!(naive_prove(&[], &g, Logic::Minimal, 10_000), NaiveOutcome::Provable(_)));
}

#[test]
fn countermodel_serializes() {
    let KripkeOutcome::Refuted { model, .. } = kripke_countermodel(&f("((p -> q) -> p) -> p"), 3, Logic::Minimal) else {
        panic!()
    };
    let v = serde_json::to_value(&model).unwrap();
    assert!(v.get("worlds").is_some(), "{v}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn countermodels_refute(g in propositional(3)) {
        for logic in [Logic::Minimal, Logic::Intuitionistic] {
            if let KripkeOutcome::Refuted { model, world } = kripke_countermodel(&g, 3, logic) {
                prop_assert!(!model.forces(world, &g));
                prop_assert!(!matches!(naive_prove(&[], &g, logic, 200_000), NaiveOutcome::Provable(_)));
            }
        }
        if let ClassicalVerdict::Countermodel { assignment } = classical_valid(&g, false).unwrap() {
            prop_assert!(!assignment.eval(&g));
            let one_world = matches!(kripke_countermodel(&g, 1, Logic::Intuitionistic), KripkeOutcome::Refuted { .. });
            prop_assert!(one_world);
        }
    }

    #[test]
    fn naive_witnesses_check(g in implicational(4)) {
        if let NaiveOutcome::Provable(w) = naive_prove(&[], &g, Logic::Minimal, 200_000) {
            prop_assert!(w.check(Logic::Minimal));
            prop_assert!(classical_valid(&g, true).unwrap().is_valid());
        }
    }
}
