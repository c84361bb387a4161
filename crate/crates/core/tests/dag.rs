mod common;

use common::{f, implicational};
use proofbench::dag::{check_dag, compress, dag_metrics, unfold, DagDeduction, DagVerdict, Level};
use proofbench::experiments::Family;
use proofbench::nd::{nd_metrics, NdDerivation, NdProfile, NdRule};
use proofbench::sequent::{prove_sc, CalculusProfile, DepthBudget, ProveOutcome, Sequent};
use proofbench::translate::translate;
use proptest::prelude::*;

fn tree(g: &proofbench::Formula) -> Option<NdDerivation> {
    match prove_sc(&Sequent::goal(g.clone()), CalculusProfile::LmImp, DepthBudget::Unbounded) {
        ProveOutcome::Proved(d) => Some(translate(&d).unwrap()),
        _ => None,
    }
}

#[test]
fn repeated_subproofs_are_shared() {
    let t = tree(&Family::ReuseHeavy.instance(4)).unwrap();
    let g = compress(&t, Level::L1).unwrap();
    assert!(g.shared() > 0);
    assert!(dag_metrics(&g).size < t.size());
    assert_eq!(unfold(&g).unwrap(), t);
}

#[test]
fn l2_merges_different_proofs_of_the_same_formula() {
    let via_left = NdDerivation::infer(NdRule::AndEL, f("p"), vec![NdDerivation::leaf(f("p & p"))]);
    let via_right = NdDerivation::infer(NdRule::AndER, f("p"), vec![NdDerivation::leaf(f("p & p"))]);
    let t = NdDerivation::infer(NdRule::AndI, f("p & p"), vec![via_left, via_right]);
    let l1 = dag_metrics(&compress(&t, Level::L1).unwrap()).size;
    let l2 = compress(&t, Level::L2).unwrap();
    assert_eq!(l1, 4);
    // the root concludes `p & p` from `p & p`, which the bare assumption already does
    assert_eq!(dag_metrics(&l2).size, 1);
    assert!(check_dag(&l2, NdProfile::Full).is_valid());
    assert_eq!(unfold(&l2).unwrap(), NdDerivation::leaf(f("p & p")));
}

#[test]
fn corrupted_dags_are_rejected() {
    let t = tree(&f("p -> (p -> q) -> q")).unwrap();
    let mut g = compress(&t, Level::L1).unwrap();
    let root = g.root;
    g.nodes[root].children.push(root);
    assert!(matches!(check_dag(&g, NdProfile::Imp), DagVerdict::Invalid { .. }));

    let mut g = compress(&t, Level::L1).unwrap();
    g.nodes[0].formula = f("r");
    assert!(!check_dag(&g, NdProfile::Imp).is_valid());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn compression_invariants(g in implicational(4)) {
        if let Some(t) = tree(&g) {
            let l1 = compress(&t, Level::L1).unwrap();
            let l2 = compress(&t, Level::L2).unwrap();
            prop_assert!(check_dag(&l1, NdProfile::Imp).is_valid());
            prop_assert!(check_dag(&l2, NdProfile::Imp).is_valid());
            prop_assert_eq!(unfold(&l1).unwrap(), t.clone());
            let back2 = unfold(&l2).unwrap();
            prop_assert_eq!(back2.formula(), &g);
            let (m1, m2, mt) = (dag_metrics(&l1), dag_metrics(&l2), nd_metrics(&t));
            prop_assert!(m2.size <= m1.size && m1.size <= mt.size);
            prop_assert_eq!(m1.height, mt.height);
            prop_assert_eq!(m1.foundation, mt.foundation);
            prop_assert!(m2.foundation <= m1.foundation);
            let json = serde_json::to_string(&l2).unwrap();
            let back: DagDeduction = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
            prop_assert_eq!(compress(&t, Level::L1).unwrap(), l1);
        }
    }
}
