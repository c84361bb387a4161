use serde::Serialize;

use super::rules::{self, RuleId};
use super::{CalculusProfile, ScDerivation};
use crate::error::SequentError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ScVerdict {
    Valid,
    Invalid { path: Vec<usize>, rule: RuleId, reason: String },
}

impl ScVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, ScVerdict::Valid)
    }
}

/// Checks every node against its rule schema, preorder, reporting the first
/// violation. A missing or surplus schematic letter is an error rather than
/// a violation.
pub fn check_sc(d: &ScDerivation, profile: CalculusProfile) -> Result<ScVerdict, SequentError> {
    let mut path = Vec::new();
    check_node(d, profile, &mut path)
}

fn check_node(d: &ScDerivation, profile: CalculusProfile, path: &mut Vec<usize>) -> Result<ScVerdict, SequentError> {
    let letters = d.rule.letters();
    for l in letters {
        if !d.instantiation.contains_key(*l) {
            return Err(SequentError::MalformedInstantiation {
                path: path.clone(),
                reason: format!("{} needs letter {l}", d.rule.ident()),
            });
        }
    }
    if let Some(extra) = d.instantiation.keys().find(|k| !letters.contains(&k.as_str())) {
        return Err(SequentError::MalformedInstantiation {
            path: path.clone(),
            reason: format!("{} has no letter {extra}", d.rule.ident()),
        });
    }
    let invalid = |reason: String| ScVerdict::Invalid { path: path.clone(), rule: d.rule, reason };
    if !profile.allows(d.rule) {
        return Ok(invalid(format!("{} is not a rule of {profile}", d.rule.ident())));
    }
    let expected = match rules::premises(d.rule, &d.conclusion, &d.instantiation) {
        Ok(e) => e,
        Err(reason) => return Ok(invalid(reason)),
    };
    if expected.len() != d.premises.len() {
        return Ok(invalid(format!("{} premises, rule has {}", d.premises.len(), expected.len())));
    }
    for (i, (want, got)) in expected.iter().zip(&d.premises).enumerate() {
        if want != &got.conclusion {
            return Ok(invalid(format!("premise {i} is `{}`, schema gives `{want}`", got.conclusion)));
        }
    }
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        let v = check_node(p, profile, path)?;
        path.pop();
        if !v.is_valid() {
            return Ok(v);
        }
    }
    Ok(ScVerdict::Valid)
}
