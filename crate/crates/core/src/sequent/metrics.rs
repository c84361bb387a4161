use std::collections::BTreeSet;

use serde::Serialize;

use super::ScDerivation;
use crate::formula::{semi_subformula_closure, Formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScMetrics {
    pub height: usize,
    pub size: usize,
    /// Distinct formulas over all sequents.
    pub foundation: usize,
    pub max_width: usize,
}

pub fn sc_metrics(d: &ScDerivation) -> ScMetrics {
    let mut formulas = BTreeSet::new();
    let mut size = 0;
    let mut max_width = 0;
    d.walk(&mut |_, n| {
        size += 1;
        max_width = max_width.max(n.conclusion.width());
        formulas.extend(n.conclusion.formulas().cloned());
    });
    ScMetrics { height: d.height(), size, foundation: formulas.len(), max_width }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditViolation {
    pub formula: Formula,
    /// First node, in preorder, where the formula occurs.
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub violations: Vec<AuditViolation>,
}

impl AuditReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every distinct formula of `d` outside the semi-subformula closure of
/// `rho`, with the first place it shows up.
pub fn semi_subformula_audit(d: &ScDerivation, rho: &Formula) -> AuditReport {
    let closure = semi_subformula_closure([rho]);
    let mut seen = BTreeSet::new();
    let mut violations = Vec::new();
    d.walk(&mut |path, n| {
        for f in n.conclusion.formulas() {
            if !closure.contains(f) && seen.insert(f.clone()) {
                violations.push(AuditViolation { formula: f.clone(), path: path.to_vec() });
            }
        }
    });
    AuditReport { violations }
}
