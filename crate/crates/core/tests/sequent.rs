mod common;

use common::{f, implicational, propositional};
use proofbench::classical::classical_valid;
use proofbench::formula::fresh_atom;
use proofbench::oracle::{kripke_countermodel, naive_prove, KripkeOutcome, Logic, NaiveOutcome};
use proofbench::sequent::{
    check_sc, prove_sc, rule_ge_imp_or, semi_subformula_audit, CalculusProfile, DepthBudget, ProveOutcome, RuleId,
    ScDerivation, ScVerdict, Sequent, DEFAULT_DEPTH_FACTOR,
};
use proptest::prelude::*;

fn lm(g: &proofbench::Formula) -> ProveOutcome {
    prove_sc(&Sequent::goal(g.clone()), CalculusProfile::LmImp, DepthBudget::Unbounded)
}

#[test]
fn peirce_is_not_minimal() {
    assert_eq!(lm(&f("((p -> q) -> p) -> p")), ProveOutcome::Unprovable);
    assert!(lm(&f("(p -> q) -> (q -> r) -> p -> r")).derivation().is_some());
}

#[test]
fn explosion_only_in_lg_int() {
    let g = f("bot -> p");
    let int = prove_sc(&Sequent::goal(g.clone()), CalculusProfile::LgInt, CalculusProfile::LgInt.default_budget());
    assert!(int.derivation().is_some_and(|d| d.uses_rule(RuleId::AxBot)));
    let min = prove_sc(&Sequent::goal(g), CalculusProfile::LgMin, CalculusProfile::LgMin.default_budget());
    assert_eq!(min, ProveOutcome::Unprovable);
}

#[test]
fn tampered_derivation_is_rejected() {
    let d = lm(&f("p -> q -> p")).derivation().cloned().unwrap();
    let mut bad = d.clone();
    bad.premises[0].conclusion = Sequent::new(vec![f("q")], f("q -> p"));
    let v = check_sc(&bad, CalculusProfile::LmImp).unwrap();
    assert!(matches!(v, ScVerdict::Invalid { ref path, .. } if path.is_empty()), "{v:?}");

    let mut renamed = d;
    renamed.rule = RuleId::GI2Imp;
    assert!(!check_sc(&renamed, CalculusProfile::LmImp).unwrap().is_valid());
}

#[test]
fn disabled_rule_is_rejected() {
    let d = prove_sc(&Sequent::goal(f("(p & q) -> p")), CalculusProfile::LgMin, CalculusProfile::LgMin.default_budget());
    let d = d.derivation().unwrap();
    assert!(!check_sc(d, CalculusProfile::LmImp).unwrap().is_valid());
}

#[test]
fn fresh_atom_rule_introduces_new_atom() {
    let s = Sequent::new(vec![f("(p | q) -> r")], f("r"));
    let premises = rule_ge_imp_or(&s).unwrap();
    assert_eq!(premises.len(), 1);
    let atoms: Vec<String> = premises[0].formulas().flat_map(|g| g.atoms()).collect();
    assert!(atoms.iter().any(|a| a.starts_with("_f")), "{atoms:?}");
}

#[test]
fn derivation_json_shape() {
    let d = lm(&f("p -> p")).derivation().cloned().unwrap();
    let v: serde_json::Value = serde_json::to_value(&d).unwrap();
    assert_eq!(v["conclusion"]["consequent"], "p -> p");
    assert_eq!(v["rule"], "GI1imp");
    assert_eq!(v["premises"][0]["conclusion"]["antecedents"][0], "p");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lm_imp_decides_like_the_oracles(g in implicational(4)) {
        let out = lm(&g);
        let naive = naive_prove(&[], &g, Logic::Minimal, 2_000_000);
        let model = kripke_countermodel(&g, 5, Logic::Minimal);
        match &out {
            ProveOutcome::Proved(d) => {
                prop_assert!(check_sc(d, CalculusProfile::LmImp).unwrap().is_valid());
                prop_assert!(d.height() <= DEFAULT_DEPTH_FACTOR * g.len());
                prop_assert!(semi_subformula_audit(d, &g).holds());
                prop_assert!(matches!(naive, NaiveOutcome::Provable(_)));
                prop_assert!(matches!(model, KripkeOutcome::Unknown));
                let swapped = g.atomize_bot(&fresh_atom([&g])).unwrap();
                prop_assert!(classical_valid(&swapped, true).unwrap().is_valid());
            }
            ProveOutcome::Unprovable => {
                prop_assert!(!matches!(naive, NaiveOutcome::Provable(_)));
            }
            ProveOutcome::BudgetExhausted => prop_assert!(false, "unbounded search gave up"),
        }
    }

    #[test]
    fn derivations_round_trip_through_json(g in implicational(4)) {
        if let ProveOutcome::Proved(d) = lm(&g) {
            let json = serde_json::to_string(&d).unwrap();
            let back: ScDerivation = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
            prop_assert_eq!(back, d);
        }
    }

    #[test]
    fn lg_proofs_are_sound(g in propositional(3)) {
        for profile in [CalculusProfile::LgMin, CalculusProfile::LgInt] {
            if let ProveOutcome::Proved(d) = prove_sc(&Sequent::goal(g.clone()), profile, profile.default_budget()) {
                prop_assert!(check_sc(&d, profile).unwrap().is_valid());
                prop_assert!(matches!(kripke_countermodel(&g, 4, profile.logic()), KripkeOutcome::Unknown));
                if profile == CalculusProfile::LgMin {
                    let swapped = g.atomize_bot(&fresh_atom([&g])).unwrap();
                    prop_assert!(classical_valid(&swapped, true).unwrap().is_valid());
                }
            }
        }
    }

    #[test]
    fn lg_min_agrees_with_lm_imp(g in implicational(4)) {
        let a = matches!(lm(&g), ProveOutcome::Proved(_));
        let b = prove_sc(&Sequent::goal(g.clone()), CalculusProfile::LgMin, CalculusProfile::LgMin.default_budget());
        prop_assert_ne!(&b, &ProveOutcome::BudgetExhausted);
        prop_assert_eq!(a, matches!(b, ProveOutcome::Proved(_)));
    }
}
