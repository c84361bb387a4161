use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::rules::{self, inst, Instantiation, RuleId};
use super::{CalculusProfile, ScDerivation, Sequent};
use crate::error::SequentError;
use crate::formula::{fresh_atom, Formula, Node};

pub const DEFAULT_DEPTH_FACTOR: usize = 4;

/// Height limit for backward search, relative to the length of the root
/// sequent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DepthBudget {
    Unbounded,
    Linear(usize),
}

impl DepthBudget {
    pub fn limit(self, s: &Sequent) -> Option<usize> {
        match self {
            DepthBudget::Unbounded => None,
            DepthBudget::Linear(c) => Some(c * s.len()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProveOutcome {
    Proved(ScDerivation),
    Unprovable,
    BudgetExhausted,
}

impl ProveOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            ProveOutcome::Proved(_) => "proved",
            ProveOutcome::Unprovable => "unprovable",
            ProveOutcome::BudgetExhausted => "budget_exhausted",
        }
    }

    pub fn derivation(&self) -> Option<&ScDerivation> {
        match self {
            ProveOutcome::Proved(d) => Some(d),
            _ => None,
        }
    }
}

/// Root-first search: axioms, then the first invertible rule, then each
/// branching choice ordered by total premise length.
pub fn prove_sc(s: &Sequent, profile: CalculusProfile, budget: DepthBudget) -> ProveOutcome {
    let mut prover = Prover { profile, memo: HashMap::new() };
    match prover.search(s, budget.limit(s)) {
        Res::Proved(d, _) => ProveOutcome::Proved(d),
        Res::Failed { cut: false } => ProveOutcome::Unprovable,
        Res::Failed { cut: true } => ProveOutcome::BudgetExhausted,
    }
}

/// Backward application of GE→∨ to the first antecedent of shape
/// `(A∨B)→C`, with the smallest fresh `_fN` as the new atom.
pub fn rule_ge_imp_or(target: &Sequent) -> Result<Vec<Sequent>, SequentError> {
    let principal = target
        .antecedents
        .iter()
        .find(|f| matches!(f.as_imp(), Some((a, _)) if a.as_or().is_some()))
        .ok_or_else(|| SequentError::NotApplicable {
            rule: RuleId::GEImpOr.ident(),
            reason: "no antecedent of shape (A | B) -> C".into(),
        })?;
    let step = ge_imp_or_step(target, principal);
    rules::premises(RuleId::GEImpOr, target, &step).map_err(|reason| SequentError::NotApplicable {
        rule: RuleId::GEImpOr.ident(),
        reason,
    })
}

fn ge_imp_or_step(s: &Sequent, principal: &Formula) -> Instantiation {
    let (ab, c) = principal.as_imp().expect("implication");
    let (a, b) = ab.as_or().expect("disjunction");
    let p = Formula::atom(&fresh_atom(s.formulas()));
    inst(&[("A", a), ("B", b), ("C", c), ("D", &s.consequent), ("p", &p)])
}

enum Res {
    Proved(ScDerivation, usize),
    Failed { cut: bool },
}

enum Memo {
    Proved(ScDerivation, usize),
    Refuted,
    /// Failed with this much height left, hitting the limit somewhere.
    FailedWithin(usize),
}

struct Step {
    rule: RuleId,
    inst: Instantiation,
    premises: Vec<Sequent>,
}

struct Prover {
    profile: CalculusProfile,
    memo: HashMap<Sequent, Memo>,
}

impl Prover {
    fn step(&self, s: &Sequent, rule: RuleId, inst: Instantiation) -> Option<Step> {
        if !self.profile.allows(rule) {
            return None;
        }
        let premises = rules::premises(rule, s, &inst).ok()?;
        Some(Step { rule, inst, premises })
    }

    fn axiom(&self, s: &Sequent) -> Option<ScDerivation> {
        let goal = &s.consequent;
        if !goal.is_atomic() {
            return None;
        }
        let rule = if s.contains(goal) {
            RuleId::AxId
        } else if self.profile.allows(RuleId::AxBot) && s.contains(&Formula::bot()) {
            RuleId::AxBot
        } else {
            return None;
        };
        Some(ScDerivation { conclusion: s.clone(), rule, instantiation: inst(&[("p", goal)]), premises: vec![] })
    }

    fn invertible(&self, s: &Sequent) -> Option<Step> {
        let d = &s.consequent;
        for f in &s.antecedents {
            if let Some((a, b)) = f.as_and() {
                if let Some(st) = self.step(s, RuleId::GEAnd, inst(&[("A", a), ("B", b), ("D", d)])) {
                    return Some(st);
                }
            }
        }
        for f in &s.antecedents {
            let Some((a, c)) = f.as_imp() else { continue };
            let found = match a.node() {
                Node::Atom(_) | Node::Bot if s.contains(a) => {
                    self.step(s, RuleId::GEImpP, inst(&[("p", a), ("B", c), ("D", d)]))
                }
                _ => None,
            };
            if found.is_some() {
                return found;
            }
        }
        for f in &s.antecedents {
            if let Some((ab, c)) = f.as_imp() {
                if let Some((a, b)) = ab.as_and() {
                    if let Some(st) = self.step(s, RuleId::GEImpAnd, inst(&[("A", a), ("B", b), ("C", c), ("D", d)])) {
                        return Some(st);
                    }
                }
            }
        }
        for f in &s.antecedents {
            if matches!(f.as_imp(), Some((a, _)) if a.as_or().is_some()) {
                if let Some(st) = self.step(s, RuleId::GEImpOr, ge_imp_or_step(s, f)) {
                    return Some(st);
                }
            }
        }
        if let Some((a, b)) = d.as_imp() {
            let rule = if s.contains(a) { RuleId::GI2Imp } else { RuleId::GI1Imp };
            if let Some(st) = self.step(s, rule, inst(&[("A", a), ("B", b)])) {
                return Some(st);
            }
        }
        if let Some((a, b)) = d.as_and() {
            let rule = if s.contains(a) { RuleId::GI2And } else { RuleId::GI1And };
            if let Some(st) = self.step(s, rule, inst(&[("A", a), ("B", b)])) {
                return Some(st);
            }
        }
        for f in &s.antecedents {
            if let Some((a, b)) = f.as_or() {
                if let Some(st) = self.step(s, RuleId::GEOr, inst(&[("A", a), ("B", b), ("D", d)])) {
                    return Some(st);
                }
            }
        }
        None
    }

    fn choices(&self, s: &Sequent) -> Vec<Step> {
        let d = &s.consequent;
        let mut out = Vec::new();
        if let Some((a, b)) = d.as_or() {
            out.extend(self.step(s, RuleId::GI1Or, inst(&[("A", a), ("B", b)])));
            out.extend(self.step(s, RuleId::GI2Or, inst(&[("A", a), ("B", b)])));
        }
        let mut prev: Option<&Formula> = None;
        for f in &s.antecedents {
            if prev == Some(f) {
                continue;
            }
            prev = Some(f);
            if let Some((ab, c)) = f.as_imp() {
                if let Some((a, b)) = ab.as_imp() {
                    out.extend(self.step(s, RuleId::GEImpImp, inst(&[("A", a), ("B", b), ("C", c), ("D", d)])));
                }
            }
        }
        out.sort_by_cached_key(|st| {
            let total: usize = st.premises.iter().map(Sequent::len).sum();
            (total, st.rule, st.inst.clone())
        });
        out
    }

    fn search(&mut self, s: &Sequent, rem: Option<usize>) -> Res {
        match self.memo.get(s) {
            Some(Memo::Proved(d, h)) if rem.map_or(true, |r| *h <= r) => return Res::Proved(d.clone(), *h),
            Some(Memo::Refuted) => return Res::Failed { cut: false },
            Some(Memo::FailedWithin(r0)) if rem.is_some_and(|r| r <= *r0) => return Res::Failed { cut: true },
            _ => {}
        }
        let res = self.search_uncached(s, rem);
        let entry = match &res {
            Res::Proved(d, h) => Memo::Proved(d.clone(), *h),
            Res::Failed { cut: false } => Memo::Refuted,
            Res::Failed { cut: true } => Memo::FailedWithin(rem.unwrap_or(usize::MAX)),
        };
        self.memo.insert(s.clone(), entry);
        res
    }

    fn search_uncached(&mut self, s: &Sequent, rem: Option<usize>) -> Res {
        if let Some(ax) = self.axiom(s) {
            return Res::Proved(ax, 0);
        }
        let (steps, invertible) = match self.invertible(s) {
            Some(st) => (vec![st], true),
            None => (self.choices(s), false),
        };
        if steps.is_empty() {
            return Res::Failed { cut: false };
        }
        if rem == Some(0) {
            return Res::Failed { cut: true };
        }
        let child_rem = rem.map(|r| r - 1);
        let mut cut = false;
        for st in steps {
            match self.all(&st.premises, child_rem) {
                Ok((premises, h)) => {
                    let d = ScDerivation { conclusion: s.clone(), rule: st.rule, instantiation: st.inst, premises };
                    return Res::Proved(d, h + 1);
                }
                Err(c) => cut |= c,
            }
            if invertible {
                break;
            }
        }
        Res::Failed { cut }
    }

    fn all(&mut self, premises: &[Sequent], rem: Option<usize>) -> Result<(Vec<ScDerivation>, usize), bool> {
        let mut out = Vec::with_capacity(premises.len());
        let mut height = 0;
        for p in premises {
            match self.search(p, rem) {
                Res::Proved(d, h) => {
                    height = height.max(h);
                    out.push(d);
                }
                Res::Failed { cut } => return Err(cut),
            }
        }
        Ok((out, height))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::sequent::{check_sc, sc_metrics};

    fn goal(s: &str) -> Sequent {
        Sequent::goal(parse(s).unwrap())
    }

    fn proves(s: &str, profile: CalculusProfile) -> bool {
        match prove_sc(&goal(s), profile, profile.default_budget()) {
            ProveOutcome::Proved(d) => {
                assert!(check_sc(&d, profile).unwrap().is_valid(), "{s}");
                true
            }
            ProveOutcome::Unprovable => false,
            ProveOutcome::BudgetExhausted => panic!("budget exhausted on {s}"),
        }
    }

    #[test]
    fn k_combinator_has_height_two() {
        let ProveOutcome::Proved(d) = prove_sc(&goal("p -> q -> p"), CalculusProfile::LmImp, DepthBudget::Unbounded) else {
            panic!()
        };
        let m = sc_metrics(&d);
        assert_eq!((m.height, m.size, m.foundation), (2, 3, 4));
    }

    #[test]
    fn conjunction_projection_in_minimal() {
        assert!(proves("(p & q) -> p", CalculusProfile::LgMin));
        assert!(!proves("(p & q) -> p", CalculusProfile::LmImp));
    }

    #[test]
    fn encoded_counterexample_is_unprovable() {
        assert!(!proves("((p -> (q -> bot)) -> bot) -> p", CalculusProfile::LmImp));
        assert!(!proves("((p -> (q -> bot)) -> bot) -> p", CalculusProfile::LgMin));
        assert!(!proves("((p -> (q -> bot)) -> bot) -> p", CalculusProfile::LgInt));
    }

    #[test]
    fn intuitionistic_vs_minimal() {
        assert!(proves("bot -> p", CalculusProfile::LgInt));
        assert!(!proves("bot -> p", CalculusProfile::LgMin));
        assert!(proves("(((p -> bot) -> bot) -> bot) -> p -> bot", CalculusProfile::LmImp));
        assert!(!proves("((p -> q) -> p) -> p", CalculusProfile::LgInt));
        assert!(!proves("p | (p -> bot)", CalculusProfile::LgInt));
        assert!(proves("((p | (p -> bot)) -> bot) -> bot", CalculusProfile::LgMin));
    }

    #[test]
    fn disjunction_and_conjunction_theorems() {
        for s in [
            "p | q -> q | p",
            "(p & q) -> (q & p)",
            "((p | q) -> r) -> (p -> r)",
            "(p -> r) -> (q -> r) -> (p | q) -> r",
            "(p & (q | r)) -> ((p & q) | (p & r))",
            "((p & q) -> r) -> p -> q -> r",
            "p -> p & p",
        ] {
            assert!(proves(s, CalculusProfile::LgMin), "{s}");
        }
    }

    #[test]
    fn ge_imp_or_backward() {
        let s = Sequent::new(vec![parse("(p | q) -> r").unwrap()], parse("p -> r").unwrap());
        let prem = rule_ge_imp_or(&s).unwrap();
        assert_eq!(prem.len(), 1);
        let want = Sequent::new(
            vec![parse("p -> _f0").unwrap(), parse("q -> _f0").unwrap(), parse("_f0 -> r").unwrap()],
            parse("p -> r").unwrap(),
        );
        assert_eq!(prem[0], want);
        assert!(rule_ge_imp_or(&goal("p")).is_err());
    }

    #[test]
    fn ge_imp_or_keeps_other_antecedents() {
        let s = Sequent::new(
            vec![parse("x").unwrap(), parse("(a | b) -> c").unwrap(), parse("x").unwrap(), parse("(a | b) -> c").unwrap()],
            parse("c").unwrap(),
        );
        let prem = rule_ge_imp_or(&s).unwrap().remove(0);
        assert_eq!(prem.width(), 6);
        assert_eq!(prem.antecedents.iter().filter(|f| **f == parse("x").unwrap()).count(), 2);
        assert_eq!(prem.antecedents.iter().filter(|f| **f == parse("(a | b) -> c").unwrap()).count(), 1);
    }

    #[test]
    fn tiny_budget_is_reported() {
        let out = prove_sc(&goal("p -> q -> p"), CalculusProfile::LgInt, DepthBudget::Linear(0));
        assert_eq!(out, ProveOutcome::BudgetExhausted);
    }
}
