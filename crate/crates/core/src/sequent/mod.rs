//! Sequents, calculus profiles and derivations of the contraction-free
//! calculus, with a checker and a backward-search prover.

mod check;
mod metrics;
mod prove;
pub mod rules;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use check::{check_sc, ScVerdict};
pub use metrics::{sc_metrics, semi_subformula_audit, AuditReport, AuditViolation, ScMetrics};
pub use prove::{prove_sc, rule_ge_imp_or, DepthBudget, ProveOutcome, DEFAULT_DEPTH_FACTOR};
pub use rules::{rule_table_hash, Instantiation, RuleId};

use crate::error::SequentError;
use crate::formula::Formula;
use crate::oracle::Logic;

/// `Γ ⇒ C` with `Γ` a multiset, stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "SequentRepr")]
pub struct Sequent {
    pub antecedents: Vec<Formula>,
    pub consequent: Formula,
}

#[derive(Deserialize)]
struct SequentRepr {
    antecedents: Vec<Formula>,
    consequent: Formula,
}

impl From<SequentRepr> for Sequent {
    fn from(r: SequentRepr) -> Self {
        Sequent::new(r.antecedents, r.consequent)
    }
}

impl Sequent {
    pub fn new(mut antecedents: Vec<Formula>, consequent: Formula) -> Sequent {
        antecedents.sort();
        Sequent { antecedents, consequent }
    }

    pub fn goal(consequent: Formula) -> Sequent {
        Sequent { antecedents: Vec::new(), consequent }
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.antecedents.binary_search(f).is_ok()
    }

    /// Removes one occurrence of `f`, if any.
    pub fn without(&self, f: &Formula) -> Sequent {
        let mut antecedents = self.antecedents.clone();
        if let Ok(i) = antecedents.binary_search(f) {
            antecedents.remove(i);
        }
        Sequent { antecedents, consequent: self.consequent.clone() }
    }

    pub fn with(mut self, f: Formula) -> Sequent {
        let i = self.antecedents.partition_point(|g| g < &f);
        self.antecedents.insert(i, f);
        self
    }

    pub fn replace_goal(mut self, consequent: Formula) -> Sequent {
        self.consequent = consequent;
        self
    }

    /// Antecedents followed by the consequent.
    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.antecedents.iter().chain(std::iter::once(&self.consequent))
    }

    /// Total length of all formula occurrences.
    pub fn len(&self) -> usize {
        self.formulas().map(Formula::len).sum()
    }

    pub fn width(&self) -> usize {
        self.antecedents.len()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.antecedents.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        if self.antecedents.is_empty() {
            write!(f, "=> {}", self.consequent)
        } else {
            write!(f, " => {}", self.consequent)
        }
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CalculusProfile {
    #[serde(rename = "LG-INT")]
    LgInt,
    #[serde(rename = "LG-MIN")]
    LgMin,
    #[serde(rename = "LM-IMP")]
    LmImp,
}

impl CalculusProfile {
    pub const ALL: [CalculusProfile; 3] = [CalculusProfile::LgInt, CalculusProfile::LgMin, CalculusProfile::LmImp];

    pub fn name(self) -> &'static str {
        match self {
            CalculusProfile::LgInt => "LG-INT",
            CalculusProfile::LgMin => "LG-MIN",
            CalculusProfile::LmImp => "LM-IMP",
        }
    }

    pub fn allows(self, rule: RuleId) -> bool {
        match self {
            CalculusProfile::LgInt => true,
            CalculusProfile::LgMin => rule != RuleId::AxBot,
            CalculusProfile::LmImp => matches!(
                rule,
                RuleId::AxId | RuleId::GI1Imp | RuleId::GI2Imp | RuleId::GEImpP | RuleId::GEImpImp
            ),
        }
    }

    pub fn enabled_rules(self) -> Vec<RuleId> {
        RuleId::ALL.into_iter().filter(|r| self.allows(*r)).collect()
    }

    pub fn logic(self) -> Logic {
        match self {
            CalculusProfile::LgInt => Logic::Intuitionistic,
            _ => Logic::Minimal,
        }
    }

    pub fn default_budget(self) -> DepthBudget {
        match self {
            CalculusProfile::LmImp => DepthBudget::Unbounded,
            _ => DepthBudget::Linear(DEFAULT_DEPTH_FACTOR),
        }
    }
}

impl fmt::Display for CalculusProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CalculusProfile {
    type Err = SequentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().replace('_', "-").as_str() {
            "LG-INT" => Ok(CalculusProfile::LgInt),
            "LG-MIN" => Ok(CalculusProfile::LgMin),
            "LM-IMP" => Ok(CalculusProfile::LmImp),
            _ => Err(SequentError::UnknownCalculus(s.to_string())),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScDerivation {
    pub conclusion: Sequent,
    pub rule: RuleId,
    pub instantiation: Instantiation,
    pub premises: Vec<ScDerivation>,
}

impl ScDerivation {
    pub fn height(&self) -> usize {
        self.premises.iter().map(|p| p.height() + 1).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ScDerivation::size).sum::<usize>()
    }

    /// Preorder walk with the child-index path of each node.
    pub fn walk(&self, visit: &mut impl FnMut(&[usize], &ScDerivation)) {
        fn go(d: &ScDerivation, path: &mut Vec<usize>, visit: &mut impl FnMut(&[usize], &ScDerivation)) {
            visit(path, d);
            for (i, p) in d.premises.iter().enumerate() {
                path.push(i);
                go(p, path, visit);
                path.pop();
            }
        }
        go(self, &mut Vec::new(), visit);
    }

    pub fn uses_rule(&self, rule: RuleId) -> bool {
        self.rule == rule || self.premises.iter().any(|p| p.uses_rule(rule))
    }

    /// Indented text rendering, conclusion first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.walk(&mut |path, d| {
            out.push_str(&"  ".repeat(path.len()));
            out.push_str(&format!("{}   [{}]\n", d.conclusion, d.rule.ident()));
        });
        out
    }
}

impl fmt::Debug for ScDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn multiset_operations() {
        let p = parse("p").unwrap();
        let s = Sequent::new(vec![p.clone(), parse("q").unwrap(), p.clone()], p.clone());
        assert_eq!(s.width(), 3);
        assert_eq!(s.without(&p).width(), 2);
        assert!(s.without(&p).contains(&p));
        assert!(!s.without(&p).without(&p).contains(&p));
        assert_eq!(s.clone().with(parse("a").unwrap()).antecedents[0], parse("a").unwrap());
        assert_eq!(s.to_string(), "p, p, q => p");
    }

    #[test]
    fn profile_rule_sets() {
        assert_eq!(CalculusProfile::LgInt.enabled_rules().len(), 14);
        assert_eq!(CalculusProfile::LgMin.enabled_rules().len(), 13);
        assert_eq!(CalculusProfile::LmImp.enabled_rules().len(), 5);
        assert_eq!("lg-min".parse::<CalculusProfile>().unwrap(), CalculusProfile::LgMin);
        assert!("lk".parse::<CalculusProfile>().is_err());
    }

    #[test]
    fn json_schema() {
        let d = prove_sc(&Sequent::goal(parse("p -> q -> p").unwrap()), CalculusProfile::LmImp, DepthBudget::Unbounded);
        let ProveOutcome::Proved(d) = d else { panic!() };
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["rule"], "GI1imp");
        assert_eq!(v["conclusion"]["consequent"], "p -> q -> p");
        assert_eq!(v["conclusion"]["antecedents"], serde_json::json!([]));
        assert_eq!(v["instantiation"]["A"], "p");
        let back: ScDerivation = serde_json::from_value(v).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn deserialization_normalizes_antecedent_order() {
        let s: Sequent = serde_json::from_str(r#"{"antecedents":["q","p"],"consequent":"p"}"#).unwrap();
        assert_eq!(s.antecedents, vec![parse("p").unwrap(), parse("q").unwrap()]);
    }
}
