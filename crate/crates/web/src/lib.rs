//! Browser bindings: prove a formula, search for a countermodel, compress a proof.
//!
//! Each export returns a JSON string. The `*_json` functions do the work and
//! run natively too.

use proofbench::dag::{compress, dag_metrics, Level};
use proofbench::nd::nd_metrics;
use proofbench::oracle::{kripke_countermodel, KripkeOutcome, Logic};
use proofbench::sequent::{prove_sc, CalculusProfile, DepthBudget, ProveOutcome, Sequent};
use proofbench::translate::translate;
use proofbench::{parse, pretty, Formula};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest number of worlds the page may ask for.
pub const MAX_WORLDS: usize = 5;

fn formula(text: &str) -> Result<Formula, String> {
    parse(text).map_err(|e| e.to_string())
}

fn budget(profile: CalculusProfile) -> DepthBudget {
    match profile {
        CalculusProfile::LmImp => DepthBudget::Unbounded,
        p => p.default_budget(),
    }
}

pub fn prove_json(text: &str, calculus: &str) -> Result<Value, String> {
    let f = formula(text)?;
    let profile: CalculusProfile = calculus.parse().map_err(|e: proofbench::error::SequentError| e.to_string())?;
    let out = prove_sc(&Sequent::goal(f.clone()), profile, budget(profile));
    let mut v = json!({ "formula": f.to_string(), "pretty": pretty(&f), "calculus": profile.name(), "verdict": out.name() });
    if let ProveOutcome::Proved(d) = out {
        v["height"] = json!(d.height());
        v["size"] = json!(d.size());
        v["rendered"] = json!(d.render());
        v["derivation"] = serde_json::to_value(&d).map_err(|e| e.to_string())?;
    }
    Ok(v)
}

pub fn countermodel_json(text: &str, logic: &str, max_worlds: usize) -> Result<Value, String> {
    let f = formula(text)?;
    let logic = match logic {
        "minimal" => Logic::Minimal,
        "intuitionistic" => Logic::Intuitionistic,
        other => return Err(format!("unknown logic `{other}`")),
    };
    let worlds = max_worlds.clamp(1, MAX_WORLDS);
    Ok(match kripke_countermodel(&f, worlds, logic) {
        KripkeOutcome::Refuted { model, world } => {
            let forced: Vec<Vec<String>> = (0..model.worlds())
                .map(|w| f.subformulas().into_iter().filter(|g| model.forces(w, g)).map(|g| g.to_string()).collect())
                .collect();
            json!({ "formula": f.to_string(), "refuted": true, "world": world, "model": model, "forced": forced })
        }
        KripkeOutcome::Unknown => json!({ "formula": f.to_string(), "refuted": false, "max_worlds": worlds }),
    })
}

/// Proves in the smallest calculus that covers the formula's connectives,
/// translates, and compresses at both levels.
pub fn compress_json(text: &str) -> Result<Value, String> {
    let f = formula(text)?;
    let profile = if f.is_implicational() { CalculusProfile::LmImp } else { CalculusProfile::LgMin };
    let d = match prove_sc(&Sequent::goal(f.clone()), profile, budget(profile)) {
        ProveOutcome::Proved(d) => d,
        other => return Err(format!("{}: {}", profile.name(), other.name())),
    };
    let t = translate(&d).map_err(|e| e.to_string())?;
    let l1 = compress(&t, Level::L1).map_err(|e| e.to_string())?;
    let l2 = compress(&t, Level::L2).map_err(|e| e.to_string())?;
    let m = nd_metrics(&t);
    let (m1, m2) = (dag_metrics(&l1), dag_metrics(&l2));
    Ok(json!({
        "formula": f.to_string(),
        "calculus": profile.name(),
        "tree": { "size": m.size, "height": m.height, "foundation": m.foundation, "rendered": t.render() },
        "l1": { "size": m1.size, "height": m1.height, "shared": l1.shared(), "dag": l1 },
        "l2": { "size": m2.size, "height": m2.height, "shared": l2.shared(), "dag": l2 },
    }))
}

fn finish(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn prove(formula: &str, calculus: &str) -> Result<String, JsValue> {
    finish(prove_json(formula, calculus))
}

#[wasm_bindgen]
pub fn countermodel(formula: &str, logic: &str, max_worlds: usize) -> Result<String, JsValue> {
    finish(countermodel_json(formula, logic, max_worlds))
}

#[wasm_bindgen(js_name = compressProof)]
pub fn compress_proof(formula: &str) -> Result<String, JsValue> {
    finish(compress_json(formula))
}

#[wasm_bindgen]
pub fn grammar() -> String {
    proofbench::parse::GRAMMAR.to_string()
}
