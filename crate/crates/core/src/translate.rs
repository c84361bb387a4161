//! Sequent derivations to natural deduction.
//!
//! Right rules become introductions. Left rules graft an elimination
//! pattern onto the open leaves of the principal's components, except
//! GE→→, whose right premise is discharged under a `→I` and applied to the
//! derived `C`; that keeps the height additive rather than multiplicative.

use serde::Serialize;

use crate::error::TranslateError;
use crate::formula::Formula;
use crate::nd::{canonicalize, NdDerivation, NdProfile, NdRule};
use crate::sequent::{CalculusProfile, RuleId, ScDerivation};

/// The natural-deduction profile a calculus translates into.
pub fn nd_profile_for(profile: CalculusProfile) -> NdProfile {
    match profile {
        CalculusProfile::LmImp => NdProfile::Imp,
        CalculusProfile::LgMin => NdProfile::Full,
        CalculusProfile::LgInt => NdProfile::Int,
    }
}

pub fn translate(d: &ScDerivation) -> Result<NdDerivation, TranslateError> {
    let raw = go(d)?;
    canonicalize(&raw).map_err(|e| TranslateError::InvalidInput(e.to_string()))
}

fn letter<'a>(d: &'a ScDerivation, l: &str) -> Result<&'a Formula, TranslateError> {
    d.instantiation
        .get(l)
        .ok_or_else(|| TranslateError::InvalidInput(format!("{} lacks letter {l}", d.rule.ident())))
}

fn premise(d: &ScDerivation, i: usize) -> Result<NdDerivation, TranslateError> {
    let p = d
        .premises
        .get(i)
        .ok_or_else(|| TranslateError::InvalidInput(format!("{} lacks premise {i}", d.rule.ident())))?;
    go(p)
}

fn fresh_label(ds: &[&NdDerivation]) -> u32 {
    ds.iter().map(|d| d.max_label()).max().unwrap_or(0) + 1
}

fn go(d: &ScDerivation) -> Result<NdDerivation, TranslateError> {
    use NdDerivation as N;
    let goal = d.conclusion.consequent.clone();
    Ok(match d.rule {
        RuleId::AxId => N::leaf(goal),
        RuleId::AxBot if goal.is_bot() => N::leaf(goal),
        RuleId::AxBot => N::infer(NdRule::BotI, goal, vec![N::leaf(Formula::bot())]),
        RuleId::GI1Imp => {
            let a = letter(d, "A")?;
            let t = premise(d, 0)?;
            let l = fresh_label(&[&t]);
            N::bind(NdRule::ImpI, goal, l, vec![t.label_open(a, l)])
        }
        RuleId::GI2Imp => N::infer(NdRule::ImpI, goal, vec![premise(d, 0)?]),
        RuleId::GI1And => N::infer(NdRule::AndI, goal, vec![premise(d, 0)?, premise(d, 1)?]),
        RuleId::GI2And => N::infer(NdRule::AndI, goal, vec![N::leaf(letter(d, "A")?.clone()), premise(d, 0)?]),
        RuleId::GI1Or => N::infer(NdRule::OrIL, goal, vec![premise(d, 0)?]),
        RuleId::GI2Or => N::infer(NdRule::OrIR, goal, vec![premise(d, 0)?]),
        RuleId::GEAnd => {
            let (a, b) = (letter(d, "A")?, letter(d, "B")?);
            let ab = Formula::and(a.clone(), b.clone());
            let left = N::infer(NdRule::AndEL, a.clone(), vec![N::leaf(ab.clone())]);
            let right = N::infer(NdRule::AndER, b.clone(), vec![N::leaf(ab)]);
            premise(d, 0)?.graft(a, &left).graft(b, &right)
        }
        RuleId::GEOr => {
            let (a, b) = (letter(d, "A")?, letter(d, "B")?);
            let (t1, t2) = (premise(d, 0)?, premise(d, 1)?);
            let l = fresh_label(&[&t1, &t2]);
            N::bind(
                NdRule::OrE,
                goal,
                l,
                vec![N::leaf(Formula::or(a.clone(), b.clone())), t1.label_open(a, l), t2.label_open(b, l)],
            )
        }
        RuleId::GEImpP => {
            let (p, b) = (letter(d, "p")?, letter(d, "B")?);
            let plug = N::infer(NdRule::ImpE, b.clone(), vec![N::leaf(p.clone()), N::leaf(Formula::imp(p.clone(), b.clone()))]);
            premise(d, 0)?.graft(b, &plug)
        }
        RuleId::GEImpAnd => {
            let (a, b, c) = (letter(d, "A")?, letter(d, "B")?, letter(d, "C")?);
            let ab = Formula::and(a.clone(), b.clone());
            let bc = Formula::imp(b.clone(), c.clone());
            let curried = Formula::imp(a.clone(), bc.clone());
            let applied = N::infer(
                NdRule::ImpE,
                c.clone(),
                vec![
                    N::infer(NdRule::AndI, ab.clone(), vec![N::marked(a.clone(), 2), N::marked(b.clone(), 1)]),
                    N::leaf(Formula::imp(ab, c.clone())),
                ],
            );
            let plug = N::bind(NdRule::ImpI, curried.clone(), 2, vec![N::bind(NdRule::ImpI, bc, 1, vec![applied])]);
            premise(d, 0)?.graft(&curried, &plug)
        }
        RuleId::GEImpOr => {
            let (a, b, p) = (letter(d, "A")?, letter(d, "B")?, letter(d, "p")?);
            let name = p
                .atom_name()
                .ok_or_else(|| TranslateError::InvalidInput(format!("GEimpOr letter p is `{p}`")))?;
            let ab = Formula::or(a.clone(), b.clone());
            let t = premise(d, 0)?.map_formulas(&mut |f| f.substitute_atom(name, &ab));
            let inject = |side: &Formula, rule: NdRule| {
                N::bind(NdRule::ImpI, Formula::imp(side.clone(), ab.clone()), 1, vec![N::infer(rule, ab.clone(), vec![N::marked(side.clone(), 1)])])
            };
            t.graft(&Formula::imp(a.clone(), ab.clone()), &inject(a, NdRule::OrIL))
                .graft(&Formula::imp(b.clone(), ab.clone()), &inject(b, NdRule::OrIR))
        }
        RuleId::GEImpImp => {
            let (a, b, c) = (letter(d, "A")?, letter(d, "B")?, letter(d, "C")?);
            let ab = Formula::imp(a.clone(), b.clone());
            let principal = Formula::imp(ab.clone(), c.clone());
            let bc = Formula::imp(b.clone(), c.clone());
            // B→C from (A→B)→C: assume B, weaken to A→B, apply
            let bc_plug = N::bind(
                NdRule::ImpI,
                bc.clone(),
                1,
                vec![N::infer(
                    NdRule::ImpE,
                    c.clone(),
                    vec![N::infer(NdRule::ImpI, ab.clone(), vec![N::marked(b.clone(), 1)]), N::leaf(principal.clone())],
                )],
            );
            let t1 = premise(d, 0)?.graft(&bc, &bc_plug);
            let c_deriv = N::infer(NdRule::ImpE, c.clone(), vec![t1, N::leaf(principal)]);
            let t2 = premise(d, 1)?;
            let l = fresh_label(&[&t2]);
            let lam = N::bind(NdRule::ImpI, Formula::imp(c.clone(), goal.clone()), l, vec![t2.label_open(c, l)]);
            N::infer(NdRule::ImpE, goal, vec![c_deriv, lam])
        }
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeightRow {
    pub sc_height: usize,
    pub nd_height: usize,
    pub formula_length: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeightReport {
    pub rows: Vec<HeightRow>,
    /// Least-squares slope of log(nd height) against log(sc height), over
    /// rows with both heights positive.
    pub exponent: Option<f64>,
    pub max_ratio: f64,
}

/// Pairs sequent and natural-deduction heights for each sample, sorted by
/// sequent height.
pub fn height_relation_report(samples: &[ScDerivation]) -> Result<HeightReport, TranslateError> {
    let mut rows = Vec::with_capacity(samples.len());
    for s in samples {
        let nd = translate(s)?;
        rows.push(HeightRow {
            sc_height: s.height(),
            nd_height: nd.height(),
            formula_length: s.conclusion.consequent.len(),
        });
    }
    rows.sort_by_key(|r| (r.sc_height, r.nd_height, r.formula_length));
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.sc_height > 0 && r.nd_height > 0)
        .map(|r| (r.sc_height as f64, r.nd_height as f64))
        .collect();
    let max_ratio = rows
        .iter()
        .filter(|r| r.sc_height > 0)
        .map(|r| r.nd_height as f64 / (r.sc_height * r.sc_height) as f64)
        .fold(0.0, f64::max);
    Ok(HeightReport { exponent: loglog_slope(&points), rows, max_ratio })
}

/// Least-squares slope of `ln y` against `ln x`; `None` when the x values
/// do not vary.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return None;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx < 1e-12 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}
