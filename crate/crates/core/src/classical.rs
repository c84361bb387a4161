//! Exhaustive two-valued truth tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::FormulaError;
use crate::formula::{Formula, Node};

pub const DEFAULT_ATOM_LIMIT: usize = 20;

/// A total valuation of a formula's atoms. With `bot_as_atom`, `bot_value`
/// gives `⊥` its own truth value; otherwise `⊥` is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub values: BTreeMap<String, bool>,
    pub bot_as_atom: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bot_value: Option<bool>,
}

impl Assignment {
    pub fn eval(&self, f: &Formula) -> bool {
        match f.node() {
            Node::Atom(name) => self.values.get(&**name).copied().unwrap_or(false),
            Node::Bot => self.bot_as_atom && self.bot_value.unwrap_or(false),
            Node::Imp(a, b) => !self.eval(a) || self.eval(b),
            Node::And(a, b) => self.eval(a) && self.eval(b),
            Node::Or(a, b) => self.eval(a) || self.eval(b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ClassicalVerdict {
    Valid,
    Countermodel { assignment: Assignment },
}

impl ClassicalVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, ClassicalVerdict::Valid)
    }
}

pub fn classical_valid(f: &Formula, bot_as_atom: bool) -> Result<ClassicalVerdict, FormulaError> {
    classical_valid_with_limit(f, bot_as_atom, DEFAULT_ATOM_LIMIT)
}

/// Enumerates assignments in binary counting order over the sorted atom
/// names (`⊥` last, when valued) and returns the first falsifying one.
pub fn classical_valid_with_limit(
    f: &Formula,
    bot_as_atom: bool,
    limit: usize,
) -> Result<ClassicalVerdict, FormulaError> {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    let with_bot = bot_as_atom && f.contains_bot();
    let count = atoms.len() + usize::from(with_bot);
    if count > limit {
        return Err(FormulaError::TooManyAtoms { count, limit });
    }
    for bits in 0u64..(1u64 << count) {
        let values = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), bits >> i & 1 == 1))
            .collect();
        let assignment = Assignment {
            values,
            bot_as_atom,
            bot_value: with_bot.then(|| bits >> atoms.len() & 1 == 1),
        };
        if !assignment.eval(f) {
            return Ok(ClassicalVerdict::Countermodel { assignment });
        }
    }
    Ok(ClassicalVerdict::Valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn atom_swapped_counterexample_is_refuted() {
        let f = parse("((p -> (q -> r)) -> r) -> p").unwrap();
        let ClassicalVerdict::Countermodel { assignment } = classical_valid(&f, true).unwrap() else {
            panic!("expected a countermodel");
        };
        assert_eq!(assignment.values["p"], false);
        assert_eq!(assignment.values["r"], true);
        assert!(!assignment.eval(&f));
    }

    #[test]
    fn tautologies() {
        assert!(classical_valid(&parse("p -> p").unwrap(), false).unwrap().is_valid());
        assert!(classical_valid(&parse("(p & q) -> p").unwrap(), false).unwrap().is_valid());
        assert!(classical_valid(&parse("p | (p -> bot)").unwrap(), false).unwrap().is_valid());
        // double negation elimination fails once bot is free
        assert!(classical_valid(&parse("((p -> bot) -> bot) -> p").unwrap(), false).unwrap().is_valid());
        assert!(!classical_valid(&parse("((p -> bot) -> bot) -> p").unwrap(), true).unwrap().is_valid());
    }

    #[test]
    fn bot_as_atom_invariant_under_atomization() {
        for s in ["bot -> p", "((p -> bot) -> bot) -> p", "(p -> bot) -> p -> q", "bot -> bot"] {
            let f = parse(s).unwrap();
            let g = f.atomize_bot("_f0").unwrap();
            assert_eq!(
                classical_valid(&f, true).unwrap().is_valid(),
                classical_valid(&g, true).unwrap().is_valid(),
                "{s}"
            );
        }
    }

    #[test]
    fn limit_is_enforced() {
        let f = parse("a -> b -> c").unwrap();
        assert_eq!(
            classical_valid_with_limit(&f, false, 2),
            Err(FormulaError::TooManyAtoms { count: 3, limit: 2 })
        );
    }
}
