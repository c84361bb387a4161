//! Scripted experiments: the conjunction counterexample, the agreement
//! sweep, the fresh-atom audit and proof-size growth.

pub mod enumerate;
mod growth;
mod sweep;

use std::fmt::Write as _;

use serde::Serialize;

pub use enumerate::{count_up_to, ImplicationalFormulas};
pub use growth::{growth_report, Family, GrowthReport, GrowthRow, Slopes};
pub use sweep::{agreement_sweep, agreement_sweep_with_progress, Issue, IssueKind, SweepConfig, SweepReport};

use crate::classical::{classical_valid, Assignment, ClassicalVerdict};
use crate::formula::{EncodingTable, Formula};
use crate::nd::{check_nd, NdDerivation, NdProfile};
use crate::oracle::{kripke_countermodel, naive_prove, KripkeBudget, KripkeOutcome, Logic, NaiveOutcome};
use crate::parse::parse;
use crate::sequent::{
    check_sc, prove_sc, rule_table_hash, semi_subformula_audit, AuditViolation, CalculusProfile, DepthBudget,
    ProveOutcome, RuleId, ScDerivation, Sequent, DEFAULT_DEPTH_FACTOR,
};
use crate::translate::translate;

/// Versions and budgets stamped into every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub version: &'static str,
    pub rule_table_hash: String,
    pub depth_factor: usize,
    pub kripke_max_worlds: usize,
    pub naive_max_steps: u64,
}

impl Provenance {
    pub fn current() -> Provenance {
        Provenance {
            version: env!("CARGO_PKG_VERSION"),
            rule_table_hash: rule_table_hash(),
            depth_factor: DEFAULT_DEPTH_FACTOR,
            kripke_max_worlds: KripkeBudget::default().max_worlds,
            naive_max_steps: crate::oracle::naive::DEFAULT_MAX_STEPS,
        }
    }
}

fn formula(s: &str) -> Formula {
    parse(s).expect("built-in formula parses")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Part {
    pub id: &'static str,
    pub title: &'static str,
    pub pass: bool,
    pub detail: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub provenance: Provenance,
    pub parts: Vec<Part>,
    /// What explosion changes for the encoded formula.
    pub explosion_note: String,
    pub sc_derivation: Option<ScDerivation>,
    pub nd_derivation: Option<NdDerivation>,
    pub countermodel: Option<Assignment>,
    pub pass: bool,
}

impl CounterexampleReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "counterexample: {}", if self.pass { "PASS" } else { "FAIL" });
        let _ = writeln!(s, "  rule table {}", self.provenance.rule_table_hash);
        for p in &self.parts {
            let _ = writeln!(s, "  ({}) {}: {}", p.id, p.title, if p.pass { "PASS" } else { "FAIL" });
            for d in &p.detail {
                let _ = writeln!(s, "      {d}");
            }
        }
        let _ = writeln!(s, "  note: {}", self.explosion_note);
        s
    }
}

/// `(p∧q)→p` holds in minimal logic, but its implicational encoding
/// `((p→(q→⊥))→⊥)→p` has no LM-IMP proof, and with `⊥` read as an atom it
/// is not even classically valid.
pub fn counterexample_report() -> CounterexampleReport {
    let conj = formula("(p & q) -> p");
    let encoded = formula("((p -> (q -> bot)) -> bot) -> p");
    let swapped = formula("((p -> (q -> r)) -> r) -> p");
    let mut parts = Vec::new();

    let mut a = Vec::new();
    let lg = prove_sc(&Sequent::goal(conj.clone()), CalculusProfile::LgMin, CalculusProfile::LgMin.default_budget());
    let sc = lg.derivation().cloned();
    let mut nd = None;
    let mut a_ok = false;
    if let Some(d) = &sc {
        let sc_ok = check_sc(d, CalculusProfile::LgMin).is_ok_and(|v| v.is_valid());
        a.push(format!("LG-MIN derivation: height {}, size {}, check_sc {}", d.height(), d.size(), ok(sc_ok)));
        if let Ok(t) = translate(d) {
            let v = check_nd(&t, NdProfile::Full);
            let closed = matches!(&v, crate::nd::NdVerdict::Valid { open_assumptions } if open_assumptions.is_empty());
            a.push(format!("NM-full derivation: height {}, size {}, check_nd {}", t.height(), t.size(), ok(closed)));
            a_ok = sc_ok && closed && t.formula() == &conj;
            nd = Some(t);
        }
    } else {
        a.push(format!("LG-MIN search: {}", lg.name()));
    }
    parts.push(Part { id: "a", title: "(p & q) -> p is a theorem of minimal logic", pass: a_ok, detail: a });

    let mut b = Vec::new();
    let lm = prove_sc(&Sequent::goal(encoded.clone()), CalculusProfile::LmImp, DepthBudget::Unbounded);
    let naive = naive_prove(&[], &encoded, Logic::Minimal, crate::oracle::naive::DEFAULT_MAX_STEPS);
    b.push(format!("LM-IMP exhaustive search on {encoded}: {}", lm.name()));
    b.push(format!("naive minimal prover: {}", naive_name(&naive)));
    let b_ok = lm == ProveOutcome::Unprovable && matches!(naive, NaiveOutcome::Exhausted);
    parts.push(Part { id: "b", title: "the encoded formula has no LM-IMP proof", pass: b_ok, detail: b });

    let mut c = Vec::new();
    let verdict = classical_valid(&swapped, true);
    let countermodel = match verdict {
        Ok(ClassicalVerdict::Countermodel { assignment }) => Some(assignment),
        _ => None,
    };
    let c_ok = countermodel.as_ref().is_some_and(|m| {
        c.push(format!("countermodel of {swapped}: {}", render_assignment(m)));
        m.values.get("p") == Some(&false) && m.values.get("r") == Some(&true) && !m.eval(&swapped)
    });
    if countermodel.is_none() {
        c.push(format!("{swapped} came out classically valid"));
    }
    parts.push(Part { id: "c", title: "with bot as an atom the formula is classically invalid", pass: c_ok, detail: c });

    let mut d = Vec::new();
    let enc_ok = conj.imp_encode(&EncodingTable::default()) == encoded;
    d.push(format!("implicational encoding of {conj} is {encoded}: {}", ok(enc_ok)));
    let swap_ok = encoded.atomize_bot("r").as_ref() == Ok(&swapped);
    d.push(format!("replacing bot by the fresh atom r gives {swapped}: {}", ok(swap_ok)));
    let lm_swapped = prove_sc(&Sequent::goal(swapped.clone()), CalculusProfile::LmImp, DepthBudget::Unbounded);
    let same = (lm == ProveOutcome::Unprovable) == (lm_swapped == ProveOutcome::Unprovable);
    d.push(format!("LM-IMP on the swapped formula: {} (same verdict: {})", lm_swapped.name(), ok(same)));
    let lm_conj = prove_sc(&Sequent::goal(conj.clone()), CalculusProfile::LmImp, DepthBudget::Unbounded);
    d.push(format!("LM-IMP on {conj} itself: {}", lm_conj.name()));
    let d_ok = enc_ok && swap_ok && same && lm_swapped == ProveOutcome::Unprovable && a_ok && c_ok
        && lm_conj == ProveOutcome::Unprovable;
    d.push(format!(
        "a minimal theorem whose encoding LM-IMP cannot tell from a classically invalid formula: {}",
        ok(d_ok)
    ));
    parts.push(Part { id: "d", title: "atom-swap equivalence ties (a)-(c) together", pass: d_ok, detail: d });

    let lg_int = prove_sc(&Sequent::goal(encoded.clone()), CalculusProfile::LgInt, CalculusProfile::LgInt.default_budget());
    let int_model = kripke_countermodel(&encoded, KripkeBudget::default().max_worlds, Logic::Intuitionistic);
    let explosion_note = match (&lg_int, &int_model) {
        (ProveOutcome::Proved(_), _) => "LG-INT proves the encoded formula once explosion is available".to_string(),
        (other, KripkeOutcome::Refuted { model, .. }) => format!(
            "LG-INT: {}; explosion does not rescue the encoding, a {}-world intuitionistic Kripke model refutes it",
            other.name(),
            model.worlds()
        ),
        (other, KripkeOutcome::Unknown) => format!("LG-INT: {}", other.name()),
    };

    let pass = parts.iter().all(|p| p.pass);
    CounterexampleReport { provenance: Provenance::current(), parts, explosion_note, sc_derivation: sc, nd_derivation: nd, countermodel, pass }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn naive_name(o: &NaiveOutcome) -> &'static str {
    match o {
        NaiveOutcome::Provable(_) => "provable",
        NaiveOutcome::Exhausted => "search space exhausted",
        NaiveOutcome::Unknown => "step budget spent",
    }
}

fn render_assignment(a: &Assignment) -> String {
    let mut parts: Vec<String> = a.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
    if let Some(b) = a.bot_value {
        parts.push(format!("bot={b}"));
    }
    parts.join(", ")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SemisubReport {
    pub provenance: Provenance,
    pub formula: Formula,
    pub derivation: Option<ScDerivation>,
    pub used_ge_imp_or: bool,
    pub violations: Vec<AuditViolation>,
    pub control_formula: Formula,
    pub control_holds: bool,
    pub pass: bool,
}

impl SemisubReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "semi-subformula audit: {}", if self.pass { "PASS" } else { "FAIL" });
        let _ = writeln!(s, "  LG-MIN derivation of {} uses GEimpOr: {}", self.formula, self.used_ge_imp_or);
        for v in &self.violations {
            let _ = writeln!(s, "    outside the closure: {}  (first at {:?})", v.formula, v.path);
        }
        let _ = writeln!(s, "  control, LM-IMP derivation of {}: closure holds = {}", self.control_formula, self.control_holds);
        if let Some(d) = &self.derivation {
            for line in d.render().lines() {
                let _ = writeln!(s, "    {line}");
            }
        }
        s
    }
}

/// Proves `((p∨q)→r)→(p→r)` in LG-MIN and lists the formulas of the
/// derivation outside the semi-subformula closure of the goal.
pub fn semi_subformula_violation_demo() -> SemisubReport {
    let f = formula("((p | q) -> r) -> (p -> r)");
    let control = formula("((p -> q) -> r) -> q -> r");
    let d = prove_sc(&Sequent::goal(f.clone()), CalculusProfile::LgMin, CalculusProfile::LgMin.default_budget())
        .derivation()
        .cloned();
    let used = d.as_ref().is_some_and(|d| d.uses_rule(RuleId::GEImpOr));
    let violations = d.as_ref().map(|d| semi_subformula_audit(d, &f).violations).unwrap_or_default();
    let control_holds = prove_sc(&Sequent::goal(control.clone()), CalculusProfile::LmImp, DepthBudget::Unbounded)
        .derivation()
        .is_some_and(|c| semi_subformula_audit(c, &control).holds());
    let fresh = |v: &AuditViolation| v.formula.atoms().iter().any(|a| a.starts_with(crate::formula::FRESH_PREFIX));
    let pass = used && !violations.is_empty() && violations.iter().all(fresh) && control_holds;
    SemisubReport {
        provenance: Provenance::current(),
        formula: f,
        derivation: d,
        used_ge_imp_or: used,
        violations,
        control_formula: control,
        control_holds,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_passes() {
        let r = counterexample_report();
        assert!(r.pass, "{}", r.to_text());
        assert_eq!(r.parts.len(), 4);
        assert!(r.explosion_note.contains("LG-INT"));
    }

    #[test]
    fn semisub_demo_finds_fresh_atoms() {
        let r = semi_subformula_violation_demo();
        assert!(r.pass, "{}", r.to_text());
        let names: Vec<String> = r.violations.iter().map(|v| v.formula.to_string()).collect();
        assert!(names.contains(&"_f0".to_string()));
        assert!(names.contains(&"_f0 -> r".to_string()));
    }

    #[test]
    fn tiny_sweep_is_clean() {
        let cfg = SweepConfig { max_connectives: 3, atoms: vec!["p".into()], ..SweepConfig::default() };
        let r = agreement_sweep(&cfg);
        assert_eq!(r.formulas, count_up_to(3, 2));
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.undecided, 0);
    }
}
