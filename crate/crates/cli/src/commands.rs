use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use proofbench::classical::{classical_valid, ClassicalVerdict};
use proofbench::dag::{check_dag, compress, dag_metrics, DagDeduction, DagVerdict};
use proofbench::experiments::{
    agreement_sweep_with_progress, counterexample_report, growth_report, semi_subformula_violation_demo, Family,
    IssueKind, SweepConfig,
};
use proofbench::nd::{check_nd, nd_metrics, NdDerivation, NdProfile, NdVerdict};
use proofbench::oracle::{decide, KripkeBudget, Logic, OracleVerdict, Refutation};
use proofbench::sequent::{check_sc, prove_sc, CalculusProfile, DepthBudget, ProveOutcome, ScDerivation, ScVerdict};
use proofbench::translate::{nd_profile_for, translate};
use proofbench::{parse, pretty, Formula};
use serde::Serialize;

use crate::{Command, Experiment, GrowthArgs, SweepArgs};

pub const OK: u8 = 0;
pub const NEGATIVE: u8 = 1;
pub const UNKNOWN: u8 = 2;
pub const USAGE: u8 = 3;
pub const IO: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
    pub notes: Vec<String>,
}

fn fail(code: u8, kind: &'static str, message: impl Into<String>) -> Failure {
    Failure { code, kind, message: message.into(), notes: Vec::new() }
}

type Outcome = Result<u8, Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Parse { formula } => parse_cmd(&formula),
        Command::Prove { calculus, formula, emit, depth_factor } => prove_cmd(calculus.into(), &formula, emit, depth_factor),
        Command::CheckSc { file, calculus } => check_sc_cmd(&file, calculus.into()),
        Command::CheckNd { file, profile } => check_nd_cmd(&file, profile.into()),
        Command::Translate { file, out } => translate_cmd(&file, out),
        Command::Compress { file, level, out } => {
            let t: NdDerivation = read_json(&file)?;
            let g = compress(&t, level.into()).map_err(|e| fail(NEGATIVE, "invalid", e.to_string()))?;
            let m = dag_metrics(&g);
            eprintln!("tree {} nodes, dag {} nodes, height {}, {} shared", t.size(), m.size, m.height, g.shared());
            emit_json(out.as_deref(), &g)?;
            Ok(OK)
        }
        Command::Oracle { formula, max_worlds, logic } => oracle_cmd(&formula, max_worlds, logic.into()),
        Command::Experiment(e) => experiment(e),
    }
}

fn formula_arg(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| {
        let mut f = fail(USAGE, "syntax", e.to_string());
        f.notes = vec![format!("  {text}"), format!("  {}^", " ".repeat(e.offset))];
        f
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| fail(IO, "io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| fail(IO, "format", format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| fail(IO, "io", format!("{}: {e}", path.display())))
}

/// Writes to `out`, or to stdout without one.
fn emit_json<T: Serialize>(out: Option<&Path>, v: &T) -> Result<(), Failure> {
    let text = to_json(v);
    match out {
        Some(p) => write_file(p, &text),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| fail(IO, "io", e.to_string())),
    }
}

fn parse_cmd(text: &str) -> Outcome {
    let f = formula_arg(text)?;
    println!("{f}");
    println!("pretty: {}", pretty(&f));
    println!("length {}, connectives {}, depth {}", f.len(), f.connective_count(), f.depth());
    println!("atoms: {}", f.atoms().into_iter().collect::<Vec<_>>().join(", "));
    Ok(OK)
}

fn prove_cmd(profile: CalculusProfile, text: &str, emit: Option<PathBuf>, depth_factor: Option<usize>) -> Outcome {
    let f = formula_arg(text)?;
    let budget = match depth_factor {
        None => profile.default_budget(),
        Some(0) => DepthBudget::Unbounded,
        Some(c) => DepthBudget::Linear(c),
    };
    let goal = proofbench::sequent::Sequent::goal(f);
    match prove_sc(&goal, profile, budget) {
        ProveOutcome::Proved(d) => {
            println!("provable in {} (height {}, size {})", profile.name(), d.height(), d.size());
            print!("{}", d.render());
            if let Some(path) = emit {
                write_file(&path, &to_json(&d))?;
            }
            Ok(OK)
        }
        ProveOutcome::Unprovable => {
            println!("unprovable in {}: search space exhausted", profile.name());
            Ok(NEGATIVE)
        }
        ProveOutcome::BudgetExhausted => {
            println!("unknown in {}: depth budget spent", profile.name());
            Ok(UNKNOWN)
        }
    }
}

fn check_sc_cmd(file: &Path, profile: CalculusProfile) -> Outcome {
    let d: ScDerivation = read_json(file)?;
    match check_sc(&d, profile) {
        Ok(ScVerdict::Valid) => {
            println!("valid {} derivation of {}", profile.name(), d.conclusion);
            Ok(OK)
        }
        Ok(ScVerdict::Invalid { path, rule, reason }) => {
            Err(fail(NEGATIVE, "invalid", format!("node {path:?} ({}): {reason}", rule.ident())))
        }
        Err(e) => Err(fail(NEGATIVE, "invalid", e.to_string())),
    }
}

fn check_nd_cmd(file: &Path, profile: NdProfile) -> Outcome {
    let value: serde_json::Value = read_json(file)?;
    let is_dag = value.get("nodes").is_some();
    let bad_format = |e: serde_json::Error| fail(IO, "format", format!("{}: {e}", file.display()));
    if is_dag {
        let g: DagDeduction = serde_json::from_value(value).map_err(bad_format)?;
        return match check_dag(&g, profile) {
            DagVerdict::Valid => {
                let root = g.root_node();
                println!("valid {} dag of {} ({} nodes)", profile.name(), root.formula, g.nodes.len());
                print_open(&root.fingerprint);
                Ok(OK)
            }
            DagVerdict::Invalid { node, reason } => Err(fail(NEGATIVE, "invalid", format!("node {node:?}: {reason}"))),
        };
    }
    let d: NdDerivation = serde_json::from_value(value).map_err(bad_format)?;
    match check_nd(&d, profile) {
        NdVerdict::Valid { open_assumptions } => {
            println!("valid {} derivation of {} ({} nodes)", profile.name(), d.formula(), d.size());
            print_open(&open_assumptions);
            Ok(OK)
        }
        NdVerdict::Invalid { path, reason } => Err(fail(NEGATIVE, "invalid", format!("node {path:?}: {reason}"))),
    }
}

fn print_open(open: &[Formula]) {
    if open.is_empty() {
        println!("no open assumptions");
    } else {
        let list: Vec<String> = open.iter().map(|f| f.to_string()).collect();
        println!("open assumptions: {}", list.join(", "));
    }
}

fn translate_cmd(file: &Path, out: Option<PathBuf>) -> Outcome {
    let d: ScDerivation = read_json(file)?;
    let profile = [CalculusProfile::LmImp, CalculusProfile::LgMin, CalculusProfile::LgInt]
        .into_iter()
        .find(|p| check_sc(&d, *p).is_ok_and(|v| v.is_valid()))
        .map(nd_profile_for)
        .ok_or_else(|| fail(NEGATIVE, "invalid", format!("{}: not a valid derivation in any calculus", file.display())))?;
    let t = translate(&d).map_err(|e| fail(NEGATIVE, "invalid", e.to_string()))?;
    let m = nd_metrics(&t);
    eprintln!(
        "{} derivation: sequent height {}, tree height {}, size {}",
        profile.name(),
        d.height(),
        m.height,
        m.size
    );
    emit_json(out.as_deref(), &t)?;
    Ok(OK)
}

fn oracle_cmd(text: &str, max_worlds: usize, logic: Logic) -> Outcome {
    let f = formula_arg(text)?;
    let classical = classical_valid(&f, false).map_err(|e| fail(USAGE, "usage", e.to_string()))?;
    match &classical {
        ClassicalVerdict::Valid => println!("classical: valid"),
        ClassicalVerdict::Countermodel { assignment } => {
            println!("classical: countermodel {}", serde_json::to_string(&assignment.values).expect("map serializes"))
        }
    }
    let budget = KripkeBudget { max_worlds, ..KripkeBudget::default() };
    let name = match logic {
        Logic::Minimal => "minimal",
        Logic::Intuitionistic => "intuitionistic",
    };
    match decide(&f, logic, budget) {
        OracleVerdict::Provable(w) => {
            println!("{name}: provable (naive proof of size {})", w.size());
            Ok(OK)
        }
        OracleVerdict::Refuted(Refutation::Countermodel { model, world }) => {
            println!("{name}: refuted at world {world} of a {}-world Kripke model", model.worlds());
            println!("{}", serde_json::to_string(&model).expect("model serializes"));
            Ok(NEGATIVE)
        }
        OracleVerdict::Refuted(Refutation::NoProof) => {
            println!("{name}: unprovable (search space exhausted, no countermodel within {max_worlds} worlds)");
            Ok(NEGATIVE)
        }
        OracleVerdict::Unknown => {
            println!("{name}: unknown within {max_worlds} worlds and the step budget");
            Ok(UNKNOWN)
        }
    }
}

fn save_report<T: Serialize>(path: Option<&Path>, report: &T) -> Result<(), Failure> {
    match path {
        Some(p) => write_file(p, &to_json(report)),
        None => Ok(()),
    }
}

fn experiment(e: Experiment) -> Outcome {
    match e {
        Experiment::Counterexample(out) => {
            let r = counterexample_report();
            print!("{}", r.to_text());
            save_report(out.json.as_deref(), &r)?;
            Ok(if r.pass { OK } else { NEGATIVE })
        }
        Experiment::Semisub(out) => {
            let r = semi_subformula_violation_demo();
            print!("{}", r.to_text());
            save_report(out.json.as_deref(), &r)?;
            Ok(if r.pass { OK } else { NEGATIVE })
        }
        Experiment::Sweep(args) => sweep(args),
        Experiment::Growth(args) => growth(args),
    }
}

fn sweep(args: SweepArgs) -> Outcome {
    for a in &args.atoms {
        match parse(a) {
            Ok(f) if f.atom_name().is_some() => {}
            _ => return Err(fail(USAGE, "usage", format!("`{a}` is not an atom"))),
        }
    }
    let config = SweepConfig {
        max_connectives: args.max_connectives,
        atoms: args.atoms,
        include_bot: !args.no_bot,
        kripke_worlds: args.max_worlds,
        lg_min: !args.no_lg_min,
        ..SweepConfig::default()
    };
    let quiet = args.quiet;
    let mut last = 0;
    let report = agreement_sweep_with_progress(&config, |done, total| {
        if !quiet && (done - last >= total / 20 || done == total) {
            last = done;
            eprintln!("swept {done}/{total}");
        }
    });
    print!("{}", report.to_text());
    save_report(args.out.json.as_deref(), &report)?;
    if report.passed() {
        Ok(OK)
    } else if report.issue_counts.keys().all(|k| *k == IssueKind::Undecided) {
        Ok(UNKNOWN)
    } else {
        Ok(NEGATIVE)
    }
}

fn growth(args: GrowthArgs) -> Outcome {
    let families: Vec<Family> = if args.family.eq_ignore_ascii_case("all") {
        Family::ALL.to_vec()
    } else {
        vec![args.family.parse().map_err(|e: String| fail(USAGE, "usage", e))?]
    };
    let reports: Vec<_> = families
        .iter()
        .map(|f| growth_report(*f, args.max_index.unwrap_or_else(|| f.default_max_index())))
        .collect();
    for r in &reports {
        print!("{}", r.to_text());
        if let Some(csv) = &args.csv {
            let path = if reports.len() == 1 { csv.clone() } else { suffixed(csv, r.family.name()) };
            write_file(&path, &r.to_csv())?;
        }
    }
    save_report(args.out.json.as_deref(), &reports)?;
    Ok(OK)
}

fn suffixed(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}-{tag}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{tag}"),
    };
    path.with_file_name(name)
}
