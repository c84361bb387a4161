//! Natural deduction with labelled discharge.
//!
//! A labelled assumption leaf is closed by the nearest ancestor binder
//! (`→I` or `∨E`) carrying the same label; unlabelled leaves are open.
//! Canonical labels are binder ranks: a binder that discharges something is
//! numbered one above the largest label below it, and a vacuous binder has
//! no label. Labels are therefore distinct along every path, and equal
//! subderivations get equal labels wherever they sit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::NdError;
use crate::formula::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NdRule {
    AndI,
    #[serde(rename = "AndE-left")]
    AndEL,
    #[serde(rename = "AndE-right")]
    AndER,
    #[serde(rename = "OrI-left")]
    OrIL,
    #[serde(rename = "OrI-right")]
    OrIR,
    OrE,
    ImpI,
    ImpE,
    BotI,
    Rep,
}

impl NdRule {
    pub const ALL: [NdRule; 10] = [
        NdRule::AndI,
        NdRule::AndEL,
        NdRule::AndER,
        NdRule::OrIL,
        NdRule::OrIR,
        NdRule::OrE,
        NdRule::ImpI,
        NdRule::ImpE,
        NdRule::BotI,
        NdRule::Rep,
    ];

    pub fn arity(self) -> usize {
        match self {
            NdRule::AndI | NdRule::ImpE => 2,
            NdRule::OrE => 3,
            _ => 1,
        }
    }

    pub fn is_binder(self) -> bool {
        matches!(self, NdRule::ImpI | NdRule::OrE)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            NdRule::AndI => "∧I",
            NdRule::AndEL => "∧E₁",
            NdRule::AndER => "∧E₂",
            NdRule::OrIL => "∨I₁",
            NdRule::OrIR => "∨I₂",
            NdRule::OrE => "∨E",
            NdRule::ImpI => "→I",
            NdRule::ImpE => "→E",
            NdRule::BotI => "⊥I",
            NdRule::Rep => "Rep",
        }
    }
}

impl fmt::Display for NdRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NdProfile {
    #[serde(rename = "NM-full")]
    Full,
    #[serde(rename = "NM-INT")]
    Int,
    #[serde(rename = "NM-IMP")]
    Imp,
}

impl NdProfile {
    pub fn name(self) -> &'static str {
        match self {
            NdProfile::Full => "NM-full",
            NdProfile::Int => "NM-INT",
            NdProfile::Imp => "NM-IMP",
        }
    }

    pub fn allows(self, rule: NdRule) -> bool {
        match self {
            NdProfile::Int => true,
            NdProfile::Full => rule != NdRule::BotI,
            NdProfile::Imp => matches!(rule, NdRule::ImpI | NdRule::ImpE | NdRule::Rep),
        }
    }
}

impl fmt::Display for NdProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NdProfile {
    type Err = NdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "nm-full" | "full" => Ok(NdProfile::Full),
            "nm-int" | "int" => Ok(NdProfile::Int),
            "nm-imp" | "imp" => Ok(NdProfile::Imp),
            _ => Err(NdError::UnknownProfile(s.to_string())),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NdDerivation {
    Assumption {
        formula: Formula,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<u32>,
    },
    Inference {
        formula: Formula,
        rule: NdRule,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<u32>,
        children: Vec<NdDerivation>,
    },
}

impl NdDerivation {
    pub fn leaf(formula: Formula) -> NdDerivation {
        NdDerivation::Assumption { formula, label: None }
    }

    pub fn marked(formula: Formula, label: u32) -> NdDerivation {
        NdDerivation::Assumption { formula, label: Some(label) }
    }

    pub fn infer(rule: NdRule, formula: Formula, children: Vec<NdDerivation>) -> NdDerivation {
        NdDerivation::Inference { formula, rule, label: None, children }
    }

    pub fn bind(rule: NdRule, formula: Formula, label: u32, children: Vec<NdDerivation>) -> NdDerivation {
        NdDerivation::Inference { formula, rule, label: Some(label), children }
    }

    pub fn formula(&self) -> &Formula {
        match self {
            NdDerivation::Assumption { formula, .. } | NdDerivation::Inference { formula, .. } => formula,
        }
    }

    pub fn label(&self) -> Option<u32> {
        match self {
            NdDerivation::Assumption { label, .. } | NdDerivation::Inference { label, .. } => *label,
        }
    }

    pub fn rule(&self) -> Option<NdRule> {
        match self {
            NdDerivation::Assumption { .. } => None,
            NdDerivation::Inference { rule, .. } => Some(*rule),
        }
    }

    pub fn children(&self) -> &[NdDerivation] {
        match self {
            NdDerivation::Assumption { .. } => &[],
            NdDerivation::Inference { children, .. } => children,
        }
    }

    pub fn height(&self) -> usize {
        self.children().iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(NdDerivation::size).sum::<usize>()
    }

    pub fn max_label(&self) -> u32 {
        let own = self.label().unwrap_or(0);
        self.children().iter().map(NdDerivation::max_label).fold(own, u32::max)
    }

    /// Unlabelled leaves, with multiplicity, sorted.
    pub fn open_assumptions(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        self.visit(&mut |d| {
            if let NdDerivation::Assumption { formula, label: None } = d {
                out.push(formula.clone());
            }
        });
        out.sort();
        out
    }

    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a NdDerivation)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    pub fn uses_rule(&self, rule: NdRule) -> bool {
        self.rule() == Some(rule) || self.children().iter().any(|c| c.uses_rule(rule))
    }

    /// Marks every open leaf of `formula` with `label`.
    pub fn label_open(&self, formula: &Formula, label: u32) -> NdDerivation {
        match self {
            NdDerivation::Assumption { formula: f, label: None } if f == formula => NdDerivation::marked(f.clone(), label),
            NdDerivation::Assumption { .. } => self.clone(),
            NdDerivation::Inference { formula: f, rule, label: l, children } => NdDerivation::Inference {
                formula: f.clone(),
                rule: *rule,
                label: *l,
                children: children.iter().map(|c| c.label_open(formula, label)).collect(),
            },
        }
    }

    /// Replaces every open leaf of `formula` by `plug`, without relabelling.
    /// Labels inside `plug` resolve to their nearest binder, so grafting
    /// never captures; [`canonicalize`] restores path-distinct labels.
    pub fn graft(&self, formula: &Formula, plug: &NdDerivation) -> NdDerivation {
        match self {
            NdDerivation::Assumption { formula: f, label: None } if f == formula => plug.clone(),
            NdDerivation::Assumption { .. } => self.clone(),
            NdDerivation::Inference { formula: f, rule, label, children } => NdDerivation::Inference {
                formula: f.clone(),
                rule: *rule,
                label: *label,
                children: children.iter().map(|c| c.graft(formula, plug)).collect(),
            },
        }
    }

    /// Applies `map` to every formula in the tree.
    pub fn map_formulas(&self, map: &mut impl FnMut(&Formula) -> Formula) -> NdDerivation {
        match self {
            NdDerivation::Assumption { formula, label } => NdDerivation::Assumption { formula: map(formula), label: *label },
            NdDerivation::Inference { formula, rule, label, children } => NdDerivation::Inference {
                formula: map(formula),
                rule: *rule,
                label: *label,
                children: children.iter().map(|c| c.map_formulas(map)).collect(),
            },
        }
    }

    /// Indented text rendering, conclusion first.
    pub fn render(&self) -> String {
        fn go(d: &NdDerivation, depth: usize, out: &mut String) {
            out.push_str(&"  ".repeat(depth));
            match d {
                NdDerivation::Assumption { formula, label } => {
                    out.push_str(&format!("[{formula}]"));
                    if let Some(l) = label {
                        out.push_str(&format!("^{l}"));
                    }
                }
                NdDerivation::Inference { formula, rule, label, .. } => {
                    out.push_str(&format!("{formula}   ({rule}"));
                    if let Some(l) = label {
                        out.push_str(&format!(" {l}"));
                    }
                    out.push(')');
                }
            }
            out.push('\n');
            for c in d.children() {
                go(c, depth + 1, out);
            }
        }
        let mut out = String::new();
        go(self, 0, &mut out);
        out
    }
}

impl fmt::Debug for NdDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Relabels with binder ranks. Leaf labels resolve to the nearest binder
/// with that label; a leaf with no such binder is an error.
pub fn canonicalize(d: &NdDerivation) -> Result<NdDerivation, NdError> {
    struct Pass {
        ranks: Vec<Option<u32>>,
    }
    impl Pass {
        // leaves and binders get temporary ids; returns (tree, max rank)
        fn go(&mut self, d: &NdDerivation, scope: &mut Vec<(u32, usize)>) -> Result<(NdDerivation, u32), NdError> {
            match d {
                NdDerivation::Assumption { formula, label: None } => Ok((NdDerivation::leaf(formula.clone()), 0)),
                NdDerivation::Assumption { formula, label: Some(l) } => {
                    let Some(&(_, tmp)) = scope.iter().rev().find(|(old, _)| old == l) else {
                        return Err(NdError::Malformed(format!("label {l} on `{formula}` has no binder")));
                    };
                    self.ranks[tmp] = Some(0);
                    Ok((NdDerivation::marked(formula.clone(), tmp as u32), 0))
                }
                NdDerivation::Inference { formula, rule, label, children } => {
                    let tmp = label.map(|l| {
                        self.ranks.push(None);
                        (l, self.ranks.len() - 1)
                    });
                    let mut out = Vec::with_capacity(children.len());
                    let mut below = 0;
                    for (i, c) in children.iter().enumerate() {
                        // the major premise of ∨E is outside the binder's scope
                        let scoped = tmp.is_some() && !(*rule == NdRule::OrE && i == 0);
                        if scoped {
                            scope.push(tmp.unwrap());
                        }
                        let (t, r) = self.go(c, scope)?;
                        if scoped {
                            scope.pop();
                        }
                        below = below.max(r);
                        out.push(t);
                    }
                    let mut rank = below;
                    let new_label = match tmp {
                        Some((_, t)) if self.ranks[t].is_some() => {
                            rank = below + 1;
                            self.ranks[t] = Some(rank);
                            Some(t as u32)
                        }
                        _ => None,
                    };
                    Ok((NdDerivation::Inference { formula: formula.clone(), rule: *rule, label: new_label, children: out }, rank))
                }
            }
        }
    }
    fn finish(d: &NdDerivation, ranks: &[Option<u32>]) -> NdDerivation {
        let map = |l: Option<u32>| l.and_then(|t| ranks[t as usize]);
        match d {
            NdDerivation::Assumption { formula, label } => NdDerivation::Assumption { formula: formula.clone(), label: map(*label) },
            NdDerivation::Inference { formula, rule, label, children } => NdDerivation::Inference {
                formula: formula.clone(),
                rule: *rule,
                label: map(*label),
                children: children.iter().map(|c| finish(c, ranks)).collect(),
            },
        }
    }
    let mut pass = Pass { ranks: Vec::new() };
    let (tmp, _) = pass.go(d, &mut Vec::new())?;
    Ok(finish(&tmp, &pass.ranks))
}

/// Grafts `plug` onto every open leaf of `assumption`, then relabels.
pub fn substitute_derivation(d: &NdDerivation, assumption: &Formula, plug: &NdDerivation) -> Result<NdDerivation, NdError> {
    if plug.formula() != assumption {
        return Err(NdError::RootMismatch { expected: assumption.to_string(), found: plug.formula().to_string() });
    }
    if let Some(l) = free_labels(plug).into_iter().next() {
        return Err(NdError::LabelCapture(l));
    }
    canonicalize(&d.graft(assumption, plug))
}

/// Labels on leaves that no binder inside `d` closes.
pub fn free_labels(d: &NdDerivation) -> BTreeSet<u32> {
    fn go(d: &NdDerivation, scope: &mut Vec<u32>, out: &mut BTreeSet<u32>) {
        match d {
            NdDerivation::Assumption { label: Some(l), .. } if !scope.contains(l) => {
                out.insert(*l);
            }
            NdDerivation::Assumption { .. } => {}
            NdDerivation::Inference { rule, label, children, .. } => {
                for (i, c) in children.iter().enumerate() {
                    let scoped = label.is_some() && !(*rule == NdRule::OrE && i == 0);
                    if scoped {
                        scope.push(label.unwrap());
                    }
                    go(c, scope, out);
                    if scoped {
                        scope.pop();
                    }
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    go(d, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NdVerdict {
    Valid { open_assumptions: Vec<Formula> },
    Invalid { path: Vec<usize>, reason: String },
}

impl NdVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, NdVerdict::Valid { .. })
    }
}

/// What a binder discharges in child `i`, if anything.
pub(crate) fn discharged(rule: NdRule, formula: &Formula, children: &[&Formula], i: usize) -> Option<Formula> {
    match rule {
        NdRule::ImpI => formula.as_imp().map(|(a, _)| a.clone()),
        NdRule::OrE if i > 0 => children.first()?.as_or().map(|(a, b)| if i == 1 { a.clone() } else { b.clone() }),
        _ => None,
    }
}

/// Checks one inference against its schema, given the children's formulas.
pub(crate) fn check_schema(rule: NdRule, formula: &Formula, children: &[&Formula], profile: NdProfile) -> Result<(), String> {
    if !profile.allows(rule) {
        return Err(format!("{rule} is not a rule of {profile}"));
    }
    if children.len() != rule.arity() {
        return Err(format!("{rule} takes {} premises, found {}", rule.arity(), children.len()));
    }
    let c = children;
    let ok = match rule {
        NdRule::AndI => formula.as_and() == Some((c[0], c[1])),
        NdRule::AndEL => c[0].as_and().is_some_and(|(a, _)| a == formula),
        NdRule::AndER => c[0].as_and().is_some_and(|(_, b)| b == formula),
        NdRule::OrIL => formula.as_or().is_some_and(|(a, _)| a == c[0]),
        NdRule::OrIR => formula.as_or().is_some_and(|(_, b)| b == c[0]),
        NdRule::OrE => c[0].as_or().is_some() && c[1] == formula && c[2] == formula,
        NdRule::ImpI => formula.as_imp().is_some_and(|(_, b)| b == c[0]),
        NdRule::ImpE => c[1].as_imp() == Some((c[0], formula)),
        NdRule::BotI => c[0].is_bot(),
        NdRule::Rep => c[0] == formula,
    };
    if ok {
        Ok(())
    } else {
        let premises: Vec<String> = c.iter().map(|f| format!("`{f}`")).collect();
        Err(format!("{rule} does not give `{formula}` from {}", premises.join(", ")))
    }
}

/// Checks schemas and discharges; reports the open assumptions.
pub fn check_nd(d: &NdDerivation, profile: NdProfile) -> NdVerdict {
    fn go(d: &NdDerivation, profile: NdProfile, scope: &mut Vec<(u32, Formula)>, path: &mut Vec<usize>) -> Result<(), String> {
        match d {
            NdDerivation::Assumption { label: None, .. } => Ok(()),
            NdDerivation::Assumption { formula, label: Some(l) } => {
                let mut binders = scope.iter().filter(|(m, _)| m == l);
                match (binders.next(), binders.next()) {
                    (None, _) => Err(format!("label {l} on `{formula}` has no binder")),
                    (Some(_), Some(_)) => Err(format!("label {l} is bound twice on this path")),
                    (Some((_, f)), None) if f != formula => Err(format!("label {l} discharges `{f}`, not `{formula}`")),
                    _ => Ok(()),
                }
            }
            NdDerivation::Inference { formula, rule, label, children } => {
                let forms: Vec<&Formula> = children.iter().map(NdDerivation::formula).collect();
                check_schema(*rule, formula, &forms, profile)?;
                if label.is_some() && !rule.is_binder() {
                    return Err(format!("{rule} discharges nothing but carries a label"));
                }
                for (i, c) in children.iter().enumerate() {
                    let bound = label.and_then(|l| discharged(*rule, formula, &forms, i).map(|f| (l, f)));
                    let pushed = bound.is_some();
                    if let Some(b) = bound {
                        scope.push(b);
                    }
                    path.push(i);
                    go(c, profile, scope, path)?;
                    path.pop();
                    if pushed {
                        scope.pop();
                    }
                }
                Ok(())
            }
        }
    }
    let mut path = Vec::new();
    match go(d, profile, &mut Vec::new(), &mut path) {
        Ok(()) => NdVerdict::Valid { open_assumptions: d.open_assumptions() },
        Err(reason) => NdVerdict::Invalid { path, reason },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NdMetrics {
    pub height: usize,
    pub size: usize,
    pub foundation: usize,
    pub open_assumptions: Vec<Formula>,
}

pub fn nd_metrics(d: &NdDerivation) -> NdMetrics {
    let mut formulas = BTreeSet::new();
    d.visit(&mut |n| {
        formulas.insert(n.formula().clone());
    });
    NdMetrics { height: d.height(), size: d.size(), foundation: formulas.len(), open_assumptions: d.open_assumptions() }
}

/// Counts of each rule, for reports.
pub fn rule_histogram(d: &NdDerivation) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    d.visit(&mut |n| {
        let key = n.rule().map_or("assumption".to_string(), |r| r.symbol().to_string());
        *out.entry(key).or_insert(0) += 1;
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    /// (r∧s)→(q→(p→((p∧q)∧r))) with discharges 1, 2, 3.
    pub(crate) fn full_example() -> NdDerivation {
        let pq = NdDerivation::infer(NdRule::AndI, f("p & q"), vec![NdDerivation::marked(f("p"), 1), NdDerivation::marked(f("q"), 2)]);
        let r = NdDerivation::infer(NdRule::AndEL, f("r"), vec![NdDerivation::marked(f("r & s"), 3)]);
        let body = NdDerivation::infer(NdRule::AndI, f("(p & q) & r"), vec![pq, r]);
        let i1 = NdDerivation::bind(NdRule::ImpI, f("p -> (p & q) & r"), 1, vec![body]);
        let i2 = NdDerivation::bind(NdRule::ImpI, f("q -> p -> (p & q) & r"), 2, vec![i1]);
        NdDerivation::bind(NdRule::ImpI, f("(r & s) -> q -> p -> (p & q) & r"), 3, vec![i2])
    }

    fn projection() -> NdDerivation {
        NdDerivation::bind(
            NdRule::ImpI,
            f("(p & q) -> p"),
            1,
            vec![NdDerivation::infer(NdRule::AndEL, f("p"), vec![NdDerivation::marked(f("p & q"), 1)])],
        )
    }

    #[test]
    fn full_example_is_closed() {
        let d = full_example();
        assert_eq!(check_nd(&d, NdProfile::Full), NdVerdict::Valid { open_assumptions: vec![] });
        assert_eq!(nd_metrics(&d).size, 9);
        assert_eq!(canonicalize(&d).unwrap(), d);
    }

    #[test]
    fn projection_metrics() {
        let d = projection();
        assert!(check_nd(&d, NdProfile::Full).is_valid());
        let m = nd_metrics(&d);
        assert_eq!((m.height, m.size, m.foundation), (2, 3, 3));
        assert!(!check_nd(&d, NdProfile::Imp).is_valid());
    }

    #[test]
    fn open_leaf() {
        let d = NdDerivation::leaf(f("p"));
        assert_eq!(check_nd(&d, NdProfile::Imp), NdVerdict::Valid { open_assumptions: vec![f("p")] });
        let m = nd_metrics(&d);
        assert_eq!((m.height, m.size, m.foundation), (0, 1, 1));
    }

    #[test]
    fn discharge_errors() {
        let dangling = NdDerivation::bind(NdRule::ImpI, f("q -> p"), 1, vec![NdDerivation::marked(f("p"), 2)]);
        assert!(!check_nd(&dangling, NdProfile::Full).is_valid());
        let wrong = NdDerivation::bind(NdRule::ImpI, f("q -> p"), 1, vec![NdDerivation::marked(f("p"), 1)]);
        let NdVerdict::Invalid { path, .. } = check_nd(&wrong, NdProfile::Full) else { panic!() };
        assert_eq!(path, vec![0]);
    }

    #[test]
    fn explosion_only_in_int() {
        let d = NdDerivation::bind(
            NdRule::ImpI,
            f("bot -> p"),
            1,
            vec![NdDerivation::infer(NdRule::BotI, f("p"), vec![NdDerivation::marked(f("bot"), 1)])],
        );
        assert!(check_nd(&d, NdProfile::Int).is_valid());
        assert!(!check_nd(&d, NdProfile::Full).is_valid());
        assert!(!check_nd(&d, NdProfile::Imp).is_valid());
    }

    #[test]
    fn or_elimination_discharges_per_branch() {
        // (p ∨ q) → (q ∨ p)
        let d = NdDerivation::bind(
            NdRule::ImpI,
            f("p | q -> q | p"),
            2,
            vec![NdDerivation::bind(
                NdRule::OrE,
                f("q | p"),
                1,
                vec![
                    NdDerivation::marked(f("p | q"), 2),
                    NdDerivation::infer(NdRule::OrIR, f("q | p"), vec![NdDerivation::marked(f("p"), 1)]),
                    NdDerivation::infer(NdRule::OrIL, f("q | p"), vec![NdDerivation::marked(f("q"), 1)]),
                ],
            )],
        );
        assert_eq!(check_nd(&d, NdProfile::Full), NdVerdict::Valid { open_assumptions: vec![] });
        assert_eq!(canonicalize(&d).unwrap(), d);
    }

    #[test]
    fn substitution_opens_plug_assumptions() {
        let d = NdDerivation::leaf(f("p"));
        let plug = NdDerivation::infer(NdRule::ImpE, f("p"), vec![NdDerivation::leaf(f("q")), NdDerivation::leaf(f("q -> p"))]);
        let out = substitute_derivation(&d, &f("p"), &plug).unwrap();
        assert_eq!(out.open_assumptions(), vec![f("q"), f("q -> p")]);
        assert!(matches!(substitute_derivation(&d, &f("q"), &plug), Err(NdError::RootMismatch { .. })));
    }

    #[test]
    fn substitution_keeps_labels_apart() {
        // plug p ∧ q with its own binder-free derivation into the full example's open version
        let open = NdDerivation::infer(
            NdRule::AndI,
            f("(p & q) & r"),
            vec![NdDerivation::leaf(f("p & q")), NdDerivation::leaf(f("r"))],
        );
        let plug = NdDerivation::infer(NdRule::AndI, f("p & q"), vec![NdDerivation::leaf(f("p")), NdDerivation::leaf(f("q"))]);
        let grafted = substitute_derivation(&open, &f("p & q"), &plug).unwrap();
        assert!(check_nd(&grafted, NdProfile::Full).is_valid());
        // a closed plug with a binder labelled like an enclosing binder
        let outer = NdDerivation::bind(NdRule::ImpI, f("q -> (p -> p)"), 1, vec![NdDerivation::leaf(f("p -> p"))]);
        let inner = NdDerivation::bind(NdRule::ImpI, f("p -> p"), 1, vec![NdDerivation::marked(f("p"), 1)]);
        let out = substitute_derivation(&outer, &f("p -> p"), &inner).unwrap();
        assert_eq!(check_nd(&out, NdProfile::Imp), NdVerdict::Valid { open_assumptions: vec![] });
        let bad = NdDerivation::marked(f("p -> p"), 7);
        assert_eq!(substitute_derivation(&outer, &f("p -> p"), &bad), Err(NdError::LabelCapture(7)));
    }

    #[test]
    fn canonical_labels_are_ranks() {
        let d = NdDerivation::bind(
            NdRule::ImpI,
            f("p -> q -> p"),
            40,
            vec![NdDerivation::bind(NdRule::ImpI, f("q -> p"), 7, vec![NdDerivation::marked(f("p"), 40)])],
        );
        let c = canonicalize(&d).unwrap();
        assert_eq!(c.label(), Some(1));
        assert_eq!(c.children()[0].label(), None);
        assert!(check_nd(&c, NdProfile::Imp).is_valid());
    }

    #[test]
    fn json_roundtrip() {
        let d = full_example();
        let text = serde_json::to_string(&d).unwrap();
        assert!(text.contains("\"kind\":\"inference\""));
        assert!(text.contains("\"rule\":\"AndE-left\""));
        let back: NdDerivation = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
    }
}
