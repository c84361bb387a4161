//! Acceptance criteria 1-8, one PASS/FAIL line each.
//!
//! Runs the full agreement sweep (formulas over {p, q, bot} with up to seven
//! connectives), so expect a few minutes on one core.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proofbench::dag::{check_dag, unfold, DagDeduction};
use proofbench::experiments::{
    agreement_sweep, counterexample_report, growth_report, semi_subformula_violation_demo, Family, IssueKind, SweepConfig,
    SweepReport,
};
use proofbench::formula::fresh_atom;
use proofbench::nd::{check_nd, NdDerivation, NdProfile, NdVerdict};
use proofbench::sequent::{check_sc, prove_sc, CalculusProfile, DepthBudget, ProveOutcome, ScDerivation};
use proofbench::Formula;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn counterexample() -> Outcome {
    let t = Instant::now();
    let r = counterexample_report();
    let took = t.elapsed();
    let failed: Vec<&str> = r.parts.iter().filter(|p| !p.pass).map(|p| p.id).collect();
    let pass = r.pass && r.parts.len() == 4 && took < Duration::from_secs(10);
    outcome(pass, format!("parts a-d {}, {:.2?}", if failed.is_empty() { "ok".into() } else { format!("failed {failed:?}") }, took))
}

fn corpus(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn stable<T: serde::Serialize>(text: &str, v: &T) -> bool {
    serde_json::to_string_pretty(v).unwrap() + "\n" == text
}

fn fixtures() -> Outcome {
    let mut bad = Vec::new();
    for (name, open) in [
        ("nd_conjunction_chain.json", 0),
        ("nd_conjunction_open.json", 3),
        ("nd_projection.json", 0),
    ] {
        let text = corpus(name);
        let ok = serde_json::from_str::<NdDerivation>(&text).is_ok_and(|d| {
            let valid = matches!(check_nd(&d, NdProfile::Full), NdVerdict::Valid { open_assumptions } if open_assumptions.len() == open);
            valid && stable(&text, &d)
        });
        if !ok {
            bad.push(name);
        }
    }
    let text = corpus("sc_weakening.json");
    let ok = serde_json::from_str::<ScDerivation>(&text).is_ok_and(|d| {
        check_sc(&d, CalculusProfile::LmImp).is_ok_and(|v| v.is_valid())
            && d.conclusion.consequent.to_string() == "p -> q -> p"
            && stable(&text, &d)
    });
    if !ok {
        bad.push("sc_weakening.json");
    }
    let text = corpus("dag_conjunction_chain.json");
    let ok = serde_json::from_str::<DagDeduction>(&text).is_ok_and(|g| {
        check_dag(&g, NdProfile::Full).is_valid() && unfold(&g).is_ok() && stable(&text, &g)
    });
    if !ok {
        bad.push("dag_conjunction_chain.json");
    }
    outcome(bad.is_empty(), if bad.is_empty() { "5 fixtures valid and byte-stable".into() } else { format!("bad: {bad:?}") })
}

fn sweep_line(r: &SweepReport, kinds: &[IssueKind]) -> (bool, String) {
    let found: Vec<String> = kinds.iter().filter(|k| r.issues(**k) > 0).map(|k| format!("{k:?}={}", r.issues(*k))).collect();
    (found.is_empty(), if found.is_empty() { "no issues".into() } else { found.join(", ") })
}

fn agreement(r: &SweepReport, took: Duration) -> Outcome {
    let (clean, issues) = sweep_line(r, &[IssueKind::NaiveDisagrees, IssueKind::KripkeDisagrees, IssueKind::NaiveWitnessInvalid, IssueKind::Undecided]);
    let pass = clean && r.undecided == 0 && r.formulas == 3_137_844 && took < Duration::from_secs(600);
    outcome(
        pass,
        format!(
            "{} formulas, {} proved, {} refuted, {} undecided, {issues}, {:.1?}",
            r.formulas, r.oracles.sc_proved, r.oracles.kripke_refuted, r.undecided, took
        ),
    )
}

fn random_formula(rng: &mut ChaCha8Rng, connectives: usize) -> Formula {
    if connectives == 0 {
        return match rng.gen_range(0..4) {
            0 => Formula::bot(),
            1 => Formula::atom("p"),
            2 => Formula::atom("q"),
            _ => Formula::atom("r"),
        };
    }
    let left = rng.gen_range(0..connectives);
    let a = random_formula(rng, left);
    let b = random_formula(rng, connectives - 1 - left);
    Formula::imp(a, b)
}

fn atom_swap() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_b07);
    let (mut n, mut proved, mut mismatched) = (0, 0, Vec::new());
    while n < 1000 {
        let size = rng.gen_range(1..=9);
        let f = random_formula(&mut rng, size);
        if !f.contains_bot() {
            continue;
        }
        n += 1;
        let g = f.atomize_bot(&fresh_atom([&f])).unwrap();
        let before = matches!(prove_sc(&proofbench::sequent::Sequent::goal(f.clone()), CalculusProfile::LmImp, DepthBudget::Unbounded), ProveOutcome::Proved(_));
        let after = matches!(prove_sc(&proofbench::sequent::Sequent::goal(g), CalculusProfile::LmImp, DepthBudget::Unbounded), ProveOutcome::Proved(_));
        proved += before as usize;
        if before != after {
            mismatched.push(f.to_string());
        }
    }
    outcome(mismatched.is_empty(), format!("{n} formulas with bot, {proved} provable, {} mismatches", mismatched.len()))
}

fn semisub(r: &SweepReport) -> Outcome {
    let (clean, issues) = sweep_line(r, &[IssueKind::SemiSubformula]);
    let demo = semi_subformula_violation_demo();
    outcome(
        clean && demo.pass,
        format!(
            "{} LM-IMP derivations audited, {issues}; LG-MIN demo: {} violations via GEimpOr",
            r.oracles.sc_proved,
            demo.violations.len()
        ),
    )
}

fn translation(r: &SweepReport) -> Outcome {
    let (clean, issues) = sweep_line(r, &[IssueKind::Translation, IssueKind::HeightEnvelope]);
    outcome(
        clean,
        format!(
            "{} translations, max nd/sc^2 = {:.3} (K = {}), {issues}",
            r.oracles.sc_proved, r.max_height_ratio, r.config.envelope_k
        ),
    )
}

fn compression(r: &SweepReport) -> Outcome {
    let (clean, issues) = sweep_line(r, &[IssueKind::DagCheck, IssueKind::L1RoundTrip, IssueKind::SizeMonotonicity]);
    let t = Instant::now();
    let reports: Vec<_> = Family::ALL.iter().map(|f| growth_report(*f, f.default_max_index())).collect();
    let took = t.elapsed();
    let tables = reports.iter().all(|g| g.rows.len() >= 2 && g.slopes.l1.is_some() && !g.to_csv().is_empty());
    let fits: Vec<String> = reports
        .iter()
        .map(|g| format!("{} l1 slope {:.2}", g.family.name(), g.slopes.l1.unwrap_or(f64::NAN)))
        .collect();
    outcome(
        clean && tables && took < Duration::from_secs(300),
        format!(
            "tree {} / L1 {} / L2 {} nodes, {issues}; growth {} in {:.2?}",
            r.compression.tree_nodes,
            r.compression.l1_nodes,
            r.compression.l2_nodes,
            fits.join(", "),
            took
        ),
    )
}

fn soundness(r: &SweepReport) -> Outcome {
    let (clean, issues) = sweep_line(r, &[IssueKind::ClassicallyInvalid, IssueKind::ScCheckFailed]);
    outcome(clean, format!("LM-IMP and LG-MIN proofs all classically valid after atomization, {issues}"))
}

fn main() -> ExitCode {
    let mut results: Vec<(u8, &str, Outcome)> = Vec::new();
    results.push((1, "counterexample reproduction", counterexample()));
    results.push((2, "golden fixtures", fixtures()));
    let t = Instant::now();
    let sweep = agreement_sweep(&SweepConfig::default());
    let took = t.elapsed();
    results.push((3, "oracle agreement sweep", agreement(&sweep, took)));
    results.push((4, "atom-swap invariance", atom_swap()));
    results.push((5, "semi-subformula property", semisub(&sweep)));
    results.push((6, "translation contract", translation(&sweep)));
    results.push((7, "compression properties", compression(&sweep)));
    results.push((8, "soundness guard", soundness(&sweep)));

    let mut all = true;
    for (n, name, o) in &results {
        all &= o.pass;
        println!("{} criterion {n} ({name}): {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if !sweep.passed() {
        print!("{}", sweep.to_text());
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
