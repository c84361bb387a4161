//! The rule table of the contraction-free calculus.
//!
//! Every rule is read backwards: given a conclusion and an instantiation of
//! its schematic letters, [`premises`] produces the premises or says why the
//! rule does not apply. The checker and the prover both go through it, so the
//! schemas live here and nowhere else.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::Sequent;
use crate::formula::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleId {
    AxId,
    AxBot,
    #[serde(rename = "GI1and")]
    GI1And,
    #[serde(rename = "GI2and")]
    GI2And,
    #[serde(rename = "GI1or")]
    GI1Or,
    #[serde(rename = "GI2or")]
    GI2Or,
    #[serde(rename = "GI1imp")]
    GI1Imp,
    #[serde(rename = "GI2imp")]
    GI2Imp,
    #[serde(rename = "GEand")]
    GEAnd,
    #[serde(rename = "GEor")]
    GEOr,
    #[serde(rename = "GEimpP")]
    GEImpP,
    #[serde(rename = "GEimpAnd")]
    GEImpAnd,
    #[serde(rename = "GEimpOr")]
    GEImpOr,
    #[serde(rename = "GEimpImp")]
    GEImpImp,
}

pub struct RuleInfo {
    pub id: RuleId,
    /// Stable ASCII identifier used in files and on the command line.
    pub ident: &'static str,
    pub name: &'static str,
    pub arity: usize,
    pub premises: &'static str,
    pub conclusion: &'static str,
    pub note: &'static str,
}

pub const RULES: [RuleInfo; 14] = [
    RuleInfo {
        id: RuleId::AxId,
        ident: "AxId",
        name: "Ax",
        arity: 0,
        premises: "",
        conclusion: "Γ, p ⇒ p   (p an atom or ⊥)",
        note: "identity axiom on atoms",
    },
    RuleInfo {
        id: RuleId::AxBot,
        ident: "AxBot",
        name: "Ax⊥",
        arity: 0,
        premises: "",
        conclusion: "Γ, ⊥ ⇒ p   (p an atom or ⊥)",
        note: "explosion axiom; absent from minimal profiles",
    },
    RuleInfo {
        id: RuleId::GI1And,
        ident: "GI1and",
        name: "GI1∧",
        arity: 2,
        premises: "Γ ⇒ A ;  Γ ⇒ B",
        conclusion: "Γ ⇒ A∧B",
        note: "standard right conjunction",
    },
    RuleInfo {
        id: RuleId::GI2And,
        ident: "GI2and",
        name: "GI2∧",
        arity: 1,
        premises: "Γ, A ⇒ B",
        conclusion: "Γ, A ⇒ A∧B",
        note: "right conjunction when the left conjunct is already present",
    },
    RuleInfo {
        id: RuleId::GI1Or,
        ident: "GI1or",
        name: "GI1∨",
        arity: 1,
        premises: "Γ ⇒ A",
        conclusion: "Γ ⇒ A∨B",
        note: "left disjunct",
    },
    RuleInfo {
        id: RuleId::GI2Or,
        ident: "GI2or",
        name: "GI2∨",
        arity: 1,
        premises: "Γ ⇒ B",
        conclusion: "Γ ⇒ A∨B",
        note: "right disjunct",
    },
    RuleInfo {
        id: RuleId::GI1Imp,
        ident: "GI1imp",
        name: "GI1→",
        arity: 1,
        premises: "Γ, A ⇒ B",
        conclusion: "Γ ⇒ A→B   (A ∉ Γ)",
        note: "right implication adding the antecedent",
    },
    RuleInfo {
        id: RuleId::GI2Imp,
        ident: "GI2imp",
        name: "GI2→",
        arity: 1,
        premises: "Γ, A ⇒ B",
        conclusion: "Γ, A ⇒ A→B",
        note: "right implication when the antecedent is already present",
    },
    RuleInfo {
        id: RuleId::GEAnd,
        ident: "GEand",
        name: "GE∧",
        arity: 1,
        premises: "Γ, A, B ⇒ D",
        conclusion: "Γ, A∧B ⇒ D",
        note: "left conjunction",
    },
    RuleInfo {
        id: RuleId::GEOr,
        ident: "GEor",
        name: "GE∨",
        arity: 2,
        premises: "Γ, A ⇒ D ;  Γ, B ⇒ D",
        conclusion: "Γ, A∨B ⇒ D",
        note: "left disjunction",
    },
    RuleInfo {
        id: RuleId::GEImpP,
        ident: "GEimpP",
        name: "GE→P",
        arity: 1,
        premises: "Γ, p, B ⇒ D",
        conclusion: "Γ, p, p→B ⇒ D   (p an atom or ⊥)",
        note: "contraction-free atomic modus ponens",
    },
    RuleInfo {
        id: RuleId::GEImpAnd,
        ident: "GEimpAnd",
        name: "GE→∧",
        arity: 1,
        premises: "Γ, A→(B→C) ⇒ D",
        conclusion: "Γ, (A∧B)→C ⇒ D",
        note: "currying",
    },
    RuleInfo {
        id: RuleId::GEImpOr,
        ident: "GEimpOr",
        name: "GE→∨",
        arity: 1,
        premises: "Γ, A→p, B→p, p→C ⇒ D",
        conclusion: "Γ, (A∨B)→C ⇒ D   (p a fresh atom)",
        note: "fresh-variable form with p not occurring in Γ, A, B, C, D",
    },
    RuleInfo {
        id: RuleId::GEImpImp,
        ident: "GEimpImp",
        name: "GE→→",
        arity: 2,
        premises: "Γ, B→C ⇒ A→B ;  Γ, C ⇒ D",
        conclusion: "Γ, (A→B)→C ⇒ D",
        note: "left premise keeps B→C, the shape the semi-subformula closure allows",
    },
];

impl RuleId {
    pub const ALL: [RuleId; 14] = [
        RuleId::AxId,
        RuleId::AxBot,
        RuleId::GI1And,
        RuleId::GI2And,
        RuleId::GI1Or,
        RuleId::GI2Or,
        RuleId::GI1Imp,
        RuleId::GI2Imp,
        RuleId::GEAnd,
        RuleId::GEOr,
        RuleId::GEImpP,
        RuleId::GEImpAnd,
        RuleId::GEImpOr,
        RuleId::GEImpImp,
    ];

    pub fn info(self) -> &'static RuleInfo {
        RULES.iter().find(|r| r.id == self).expect("every rule has a table entry")
    }

    pub fn ident(self) -> &'static str {
        self.info().ident
    }

    pub fn arity(self) -> usize {
        self.info().arity
    }

    pub fn is_axiom(self) -> bool {
        matches!(self, RuleId::AxId | RuleId::AxBot)
    }

    pub fn from_ident(s: &str) -> Option<RuleId> {
        RULES.iter().find(|r| r.ident == s).map(|r| r.id)
    }

    /// Letters that must be present in an instantiation record.
    pub fn letters(self) -> &'static [&'static str] {
        match self {
            RuleId::AxId | RuleId::AxBot => &["p"],
            RuleId::GI1And | RuleId::GI2And | RuleId::GI1Or | RuleId::GI2Or => &["A", "B"],
            RuleId::GI1Imp | RuleId::GI2Imp => &["A", "B"],
            RuleId::GEAnd | RuleId::GEOr => &["A", "B", "D"],
            RuleId::GEImpP => &["p", "B", "D"],
            RuleId::GEImpAnd | RuleId::GEImpImp => &["A", "B", "C", "D"],
            RuleId::GEImpOr => &["A", "B", "C", "D", "p"],
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.info().name)
    }
}

/// Schematic letters matched by one rule application.
pub type Instantiation = BTreeMap<String, Formula>;

pub fn inst(pairs: &[(&str, &Formula)]) -> Instantiation {
    pairs.iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect()
}

/// SHA-256 over the printed rule table; embedded in reports.
pub fn rule_table_hash() -> String {
    let mut h = Sha256::new();
    for r in &RULES {
        h.update(format!("{}|{}|{}|{}|{}\n", r.ident, r.name, r.arity, r.premises, r.conclusion));
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Renders the table with a note per rule, one rule per line.
pub fn describe_rules() -> String {
    let mut out = String::new();
    for r in &RULES {
        let prem = if r.premises.is_empty() { "-" } else { r.premises };
        out.push_str(&format!("{:<8} {:<6} {prem}  /  {}   [{}]\n", r.ident, r.name, r.conclusion, r.note));
    }
    out
}

fn get<'a>(inst: &'a Instantiation, letter: &str) -> Result<&'a Formula, String> {
    inst.get(letter).ok_or_else(|| format!("missing letter {letter}"))
}

/// Backward application: the premises of `rule` at `conclusion` under `inst`.
pub fn premises(rule: RuleId, conclusion: &Sequent, inst: &Instantiation) -> Result<Vec<Sequent>, String> {
    let ante = &conclusion.antecedents;
    let goal = &conclusion.consequent;
    let need_present = |f: &Formula| -> Result<(), String> {
        if conclusion.contains(f) {
            Ok(())
        } else {
            Err(format!("`{f}` is not an antecedent"))
        }
    };
    let need_goal = |f: &Formula| -> Result<(), String> {
        if goal == f {
            Ok(())
        } else {
            Err(format!("consequent is `{goal}`, rule needs `{f}`"))
        }
    };
    let need_atomic = |f: &Formula| -> Result<(), String> {
        if f.is_atomic() {
            Ok(())
        } else {
            Err(format!("`{f}` is not an atom or ⊥"))
        }
    };
    match rule {
        RuleId::AxId => {
            let p = get(inst, "p")?;
            need_atomic(p)?;
            need_present(p)?;
            need_goal(p)?;
            Ok(vec![])
        }
        RuleId::AxBot => {
            let p = get(inst, "p")?;
            need_atomic(p)?;
            need_goal(p)?;
            need_present(&Formula::bot())?;
            Ok(vec![])
        }
        RuleId::GI1And | RuleId::GI2And | RuleId::GI1Or | RuleId::GI2Or | RuleId::GI1Imp | RuleId::GI2Imp => {
            let a = get(inst, "A")?;
            let b = get(inst, "B")?;
            let shape = match rule {
                RuleId::GI1And | RuleId::GI2And => Formula::and(a.clone(), b.clone()),
                RuleId::GI1Or | RuleId::GI2Or => Formula::or(a.clone(), b.clone()),
                _ => Formula::imp(a.clone(), b.clone()),
            };
            need_goal(&shape)?;
            let same = |g: &Formula| Sequent { antecedents: ante.clone(), consequent: g.clone() };
            match rule {
                RuleId::GI1And => Ok(vec![same(a), same(b)]),
                RuleId::GI2And => {
                    need_present(a)?;
                    Ok(vec![same(b)])
                }
                RuleId::GI1Or => Ok(vec![same(a)]),
                RuleId::GI2Or => Ok(vec![same(b)]),
                RuleId::GI1Imp => {
                    if conclusion.contains(a) {
                        return Err(format!("`{a}` already present; GI2imp applies"));
                    }
                    Ok(vec![conclusion.clone().with(a.clone()).replace_goal(b.clone())])
                }
                _ => {
                    need_present(a)?;
                    Ok(vec![same(b)])
                }
            }
        }
        RuleId::GEAnd | RuleId::GEOr => {
            let a = get(inst, "A")?;
            let b = get(inst, "B")?;
            need_goal(get(inst, "D")?)?;
            let principal = if rule == RuleId::GEAnd {
                Formula::and(a.clone(), b.clone())
            } else {
                Formula::or(a.clone(), b.clone())
            };
            need_present(&principal)?;
            let rest = conclusion.without(&principal);
            if rule == RuleId::GEAnd {
                Ok(vec![rest.with(a.clone()).with(b.clone())])
            } else {
                Ok(vec![rest.clone().with(a.clone()), rest.with(b.clone())])
            }
        }
        RuleId::GEImpP => {
            let p = get(inst, "p")?;
            let b = get(inst, "B")?;
            need_goal(get(inst, "D")?)?;
            need_atomic(p)?;
            need_present(p)?;
            let principal = Formula::imp(p.clone(), b.clone());
            need_present(&principal)?;
            Ok(vec![conclusion.without(&principal).with(b.clone())])
        }
        RuleId::GEImpAnd => {
            let (a, b, c) = (get(inst, "A")?, get(inst, "B")?, get(inst, "C")?);
            need_goal(get(inst, "D")?)?;
            let principal = Formula::imp(Formula::and(a.clone(), b.clone()), c.clone());
            need_present(&principal)?;
            let curried = Formula::imp(a.clone(), Formula::imp(b.clone(), c.clone()));
            Ok(vec![conclusion.without(&principal).with(curried)])
        }
        RuleId::GEImpOr => {
            let (a, b, c) = (get(inst, "A")?, get(inst, "B")?, get(inst, "C")?);
            need_goal(get(inst, "D")?)?;
            let p = get(inst, "p")?;
            let Some(name) = p.atom_name() else {
                return Err(format!("`{p}` is not an atom"));
            };
            if conclusion.formulas().any(|f| f.contains_atom(name)) {
                return Err(format!("`{p}` is not fresh"));
            }
            let principal = Formula::imp(Formula::or(a.clone(), b.clone()), c.clone());
            need_present(&principal)?;
            Ok(vec![conclusion
                .without(&principal)
                .with(Formula::imp(a.clone(), p.clone()))
                .with(Formula::imp(b.clone(), p.clone()))
                .with(Formula::imp(p.clone(), c.clone()))])
        }
        RuleId::GEImpImp => {
            let (a, b, c) = (get(inst, "A")?, get(inst, "B")?, get(inst, "C")?);
            need_goal(get(inst, "D")?)?;
            let ab = Formula::imp(a.clone(), b.clone());
            let principal = Formula::imp(ab.clone(), c.clone());
            need_present(&principal)?;
            let rest = conclusion.without(&principal);
            Ok(vec![
                rest.clone().with(Formula::imp(b.clone(), c.clone())).replace_goal(ab),
                rest.with(c.clone()),
            ])
        }
    }
}
