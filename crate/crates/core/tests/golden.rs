//! Byte-stable fixtures under `corpus/`. Set `PROOFBENCH_BLESS=1` to rewrite them.

use std::path::PathBuf;

use proofbench::dag::{check_dag, compress, unfold, DagDeduction, Level};
use proofbench::nd::{canonicalize, check_nd, NdDerivation, NdProfile, NdRule, NdVerdict};
use proofbench::sequent::rules::inst;
use proofbench::sequent::{check_sc, prove_sc, CalculusProfile, DepthBudget, RuleId, ScDerivation, Sequent};
use proofbench::translate::translate;
use proofbench::{parse, Formula};

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).unwrap() + "\n"
}

/// Compares against the stored file, or writes it when blessing.
fn golden<T: serde::Serialize>(name: &str, v: &T) -> String {
    let text = to_json(v);
    let path = corpus(name);
    if std::env::var_os("PROOFBENCH_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &text).unwrap();
    }
    let stored = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(stored, text, "{name} drifted");
    stored
}

fn conjunction_chain() -> NdDerivation {
    let pq = NdDerivation::infer(NdRule::AndI, f("p & q"), vec![NdDerivation::marked(f("p"), 1), NdDerivation::marked(f("q"), 2)]);
    let r = NdDerivation::infer(NdRule::AndEL, f("r"), vec![NdDerivation::marked(f("r & s"), 3)]);
    let body = NdDerivation::infer(NdRule::AndI, f("(p & q) & r"), vec![pq, r]);
    let i1 = NdDerivation::bind(NdRule::ImpI, f("p -> (p & q) & r"), 1, vec![body]);
    let i2 = NdDerivation::bind(NdRule::ImpI, f("q -> p -> (p & q) & r"), 2, vec![i1]);
    NdDerivation::bind(NdRule::ImpI, f("(r & s) -> q -> p -> (p & q) & r"), 3, vec![i2])
}

fn conjunction_from_open() -> NdDerivation {
    let pq = NdDerivation::infer(NdRule::AndI, f("p & q"), vec![NdDerivation::leaf(f("p")), NdDerivation::leaf(f("q"))]);
    let r = NdDerivation::infer(NdRule::AndEL, f("r"), vec![NdDerivation::leaf(f("r & s"))]);
    NdDerivation::infer(NdRule::AndI, f("(p & q) & r"), vec![pq, r])
}

fn projection() -> NdDerivation {
    let p = NdDerivation::infer(NdRule::AndEL, f("p"), vec![NdDerivation::marked(f("p & q"), 1)]);
    NdDerivation::bind(NdRule::ImpI, f("(p & q) -> p"), 1, vec![p])
}

fn weakening() -> ScDerivation {
    let (p, q) = (f("p"), f("q"));
    let ax = ScDerivation {
        conclusion: Sequent::new(vec![p.clone(), q.clone()], p.clone()),
        rule: RuleId::AxId,
        instantiation: inst(&[("p", &p)]),
        premises: vec![],
    };
    let inner = ScDerivation {
        conclusion: Sequent::new(vec![p.clone()], f("q -> p")),
        rule: RuleId::GI1Imp,
        instantiation: inst(&[("A", &q), ("B", &p)]),
        premises: vec![ax],
    };
    ScDerivation {
        conclusion: Sequent::goal(f("p -> q -> p")),
        rule: RuleId::GI1Imp,
        instantiation: inst(&[("A", &p), ("B", &f("q -> p"))]),
        premises: vec![inner],
    }
}

#[test]
fn conjunction_chain_fixture() {
    let d = conjunction_chain();
    assert_eq!(check_nd(&d, NdProfile::Full), NdVerdict::Valid { open_assumptions: vec![] });
    assert_eq!(canonicalize(&d).unwrap(), d);
    let text = golden("nd_conjunction_chain.json", &d);
    let back: NdDerivation = serde_json::from_str(&text).unwrap();
    assert_eq!(back, d);
    assert_eq!(to_json(&back), text);
}

#[test]
fn conjunction_from_open_fixture() {
    let d = conjunction_from_open();
    let NdVerdict::Valid { open_assumptions } = check_nd(&d, NdProfile::Full) else { panic!("invalid") };
    assert_eq!(open_assumptions, vec![f("p"), f("q"), f("r & s")]);
    let text = golden("nd_conjunction_open.json", &d);
    assert_eq!(serde_json::from_str::<NdDerivation>(&text).unwrap(), d);
}

#[test]
fn weakening_fixture() {
    let d = weakening();
    assert!(check_sc(&d, CalculusProfile::LmImp).unwrap().is_valid());
    let found = prove_sc(&d.conclusion, CalculusProfile::LmImp, DepthBudget::Unbounded);
    assert_eq!(found.derivation(), Some(&d));
    let text = golden("sc_weakening.json", &d);
    let back: ScDerivation = serde_json::from_str(&text).unwrap();
    assert_eq!(back, d);
    assert_eq!(to_json(&back), text);
}

#[test]
fn projection_fixture() {
    let d = projection();
    assert_eq!(check_nd(&d, NdProfile::Full), NdVerdict::Valid { open_assumptions: vec![] });
    let text = golden("nd_projection.json", &d);
    assert_eq!(serde_json::from_str::<NdDerivation>(&text).unwrap(), d);

    let sc = prove_sc(&Sequent::goal(f("(p & q) -> p")), CalculusProfile::LgMin, CalculusProfile::LgMin.default_budget());
    let translated = translate(sc.derivation().unwrap()).unwrap();
    assert!(check_nd(&translated, NdProfile::Full).is_valid());
    assert_eq!(translated.formula(), d.formula());
}

#[test]
fn conjunction_chain_dag_fixture() {
    let g = compress(&conjunction_chain(), Level::L1).unwrap();
    assert!(check_dag(&g, NdProfile::Full).is_valid());
    assert_eq!(g.nodes.len(), 9);
    let text = golden("dag_conjunction_chain.json", &g);
    let back: DagDeduction = serde_json::from_str(&text).unwrap();
    assert_eq!(to_json(&back), text);
    assert_eq!(unfold(&back).unwrap(), conjunction_chain());
}
