use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::enumerate::{count_up_to, ImplicationalFormulas};
use super::Provenance;
use crate::classical::classical_valid;
use crate::dag::{check_dag, compress, dag_metrics, unfold, Level};
use crate::formula::{fresh_atom, Formula};
use crate::nd::{check_nd, nd_metrics, NdProfile};
use crate::oracle::{naive_prove, KripkeBudget, KripkeOutcome, KripkeSearcher, Logic, NaiveOutcome};
use crate::sequent::{check_sc, prove_sc, semi_subformula_audit, CalculusProfile, DepthBudget, ProveOutcome, Sequent};
use crate::translate::{loglog_slope, translate};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    pub max_connectives: usize,
    pub atoms: Vec<String>,
    pub include_bot: bool,
    pub kripke_worlds: usize,
    pub naive_steps: u64,
    /// `K` in the height envelope `nd ≤ K·sc²`.
    pub envelope_k: usize,
    /// `c` in the LM-IMP height check `h ≤ c·|s|` and the LG-MIN budget.
    pub depth_factor: usize,
    /// Also prove every formula in LG-MIN and compare.
    pub lg_min: bool,
    pub examples_per_kind: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_connectives: 7,
            atoms: vec!["p".into(), "q".into()],
            include_bot: true,
            kripke_worlds: 5,
            naive_steps: crate::oracle::naive::DEFAULT_MAX_STEPS,
            envelope_k: 8,
            depth_factor: crate::sequent::DEFAULT_DEPTH_FACTOR,
            lg_min: true,
            examples_per_kind: 5,
        }
    }
}

impl SweepConfig {
    pub fn leaves(&self) -> Vec<Formula> {
        let mut out: Vec<Formula> = self.atoms.iter().map(|a| Formula::atom(a)).collect();
        if self.include_bot {
            out.push(Formula::bot());
        }
        out
    }

    pub fn formula_count(&self) -> u64 {
        count_up_to(self.max_connectives, self.leaves().len())
    }
}

/// Everything a sweep can find wrong with one formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IssueKind {
    /// The sequent prover and the naive prover disagree.
    NaiveDisagrees,
    /// A Kripke countermodel for a formula the sequent prover proved.
    KripkeDisagrees,
    Undecided,
    ScCheckFailed,
    NaiveWitnessInvalid,
    AtomSwap,
    LgMinDisagrees,
    DepthBound,
    SemiSubformula,
    SemiSubformulaCount,
    Translation,
    HeightEnvelope,
    DagCheck,
    L1RoundTrip,
    SizeMonotonicity,
    Foundation,
    ClassicallyInvalid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub kind: IssueKind,
    pub formula: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    pub connectives: usize,
    pub formulas: u64,
    pub provable: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleCounts {
    pub sc_proved: u64,
    pub sc_unprovable: u64,
    pub naive_provable: u64,
    pub naive_exhausted: u64,
    pub naive_unknown: u64,
    pub kripke_refuted: u64,
    pub kripke_unknown: u64,
    pub lg_min_budget_exhausted: u64,
    pub with_bot: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CompressionTotals {
    pub tree_nodes: u64,
    pub l1_nodes: u64,
    pub l2_nodes: u64,
    pub l1_strictly_smaller: u64,
    pub l2_strictly_smaller: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub provenance: Provenance,
    pub config: SweepConfig,
    pub formulas: u64,
    pub levels: Vec<LevelStats>,
    pub oracles: OracleCounts,
    pub undecided: u64,
    pub issue_counts: BTreeMap<IssueKind, u64>,
    pub examples: Vec<Issue>,
    /// Largest natural-deduction height seen for each sequent height.
    pub height_table: BTreeMap<usize, usize>,
    pub height_exponent: Option<f64>,
    /// Largest `nd / sc²` over provable formulas with `sc > 0`.
    pub max_height_ratio: f64,
    pub compression: CompressionTotals,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.issue_counts.is_empty()
    }

    pub fn issues(&self, kind: IssueKind) -> u64 {
        self.issue_counts.get(&kind).copied().unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(s, "agreement sweep: {}", if self.passed() { "PASS" } else { "FAIL" });
        let _ = writeln!(
            s,
            "  implicational formulas over {{{}{}}} with <= {} connectives: {}",
            c.atoms.join(", "),
            if c.include_bot { ", bot" } else { "" },
            c.max_connectives,
            self.formulas
        );
        let _ = writeln!(s, "  kripke worlds <= {}, naive steps <= {}, K = {}, c = {}", c.kripke_worlds, c.naive_steps, c.envelope_k, c.depth_factor);
        let _ = writeln!(s, "  rule table {}", self.provenance.rule_table_hash);
        for l in &self.levels {
            let _ = writeln!(s, "  {:>2} connectives: {:>9} formulas, {:>8} provable", l.connectives, l.formulas, l.provable);
        }
        let o = &self.oracles;
        let _ = writeln!(s, "  LM-IMP: {} proved, {} unprovable", o.sc_proved, o.sc_unprovable);
        let _ = writeln!(s, "  naive: {} provable, {} exhausted, {} unknown", o.naive_provable, o.naive_exhausted, o.naive_unknown);
        let _ = writeln!(s, "  kripke: {} refuted, {} unknown", o.kripke_refuted, o.kripke_unknown);
        if c.lg_min {
            let _ = writeln!(s, "  LG-MIN budget exhausted: {}", o.lg_min_budget_exhausted);
        }
        let _ = writeln!(s, "  undecided: {}", self.undecided);
        let exponent = self.height_exponent.map_or("n/a".to_string(), |e| format!("{e:.3}"));
        let _ = writeln!(s, "  nd height vs sc height: max nd/sc^2 = {:.3}, log-log slope {exponent}", self.max_height_ratio);
        let row: Vec<String> = self.height_table.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        let _ = writeln!(s, "    sc:max nd  {}", row.join(" "));
        let t = &self.compression;
        let _ = writeln!(s, "  nodes: tree {}, L1 {}, L2 {}", t.tree_nodes, t.l1_nodes, t.l2_nodes);
        if self.issue_counts.is_empty() {
            let _ = writeln!(s, "  issues: none");
        }
        for (k, n) in &self.issue_counts {
            let _ = writeln!(s, "  issue {k:?}: {n}");
        }
        for e in &self.examples {
            let _ = writeln!(s, "    {:?} {}: {}", e.kind, e.formula, e.detail);
        }
        s
    }
}

/// What one formula contributed.
struct Record {
    level: usize,
    proved: bool,
    naive: u8,
    kripke_refuted: bool,
    lg_min_budget: bool,
    with_bot: bool,
    heights: Option<(usize, usize)>,
    sizes: Option<(usize, usize, usize)>,
    issues: Vec<(IssueKind, String)>,
}

struct Examiner<'a> {
    config: &'a SweepConfig,
    kripke: KripkeSearcher,
}

impl Examiner<'_> {
    fn examine(&mut self, f: &Formula) -> Record {
        let c = self.config;
        let mut issues = Vec::new();
        let goal = Sequent::goal(f.clone());
        let lm = prove_sc(&goal, CalculusProfile::LmImp, DepthBudget::Unbounded);
        let proved = matches!(lm, ProveOutcome::Proved(_));

        let naive = naive_prove(&[], f, Logic::Minimal, c.naive_steps);
        let naive_tag = match &naive {
            NaiveOutcome::Provable(w) => {
                if !w.check(Logic::Minimal) {
                    issues.push((IssueKind::NaiveWitnessInvalid, "witness does not check".into()));
                }
                0
            }
            NaiveOutcome::Exhausted => 1,
            NaiveOutcome::Unknown => 2,
        };
        if (naive_tag == 0 && !proved) || (naive_tag == 1 && proved) {
            issues.push((IssueKind::NaiveDisagrees, format!("LM-IMP {}, naive {}", lm.name(), ["provable", "exhausted"][naive_tag as usize])));
        }
        let kripke = self.kripke.search(f, Logic::Minimal);
        let kripke_refuted = matches!(kripke, KripkeOutcome::Refuted { .. });
        if kripke_refuted && proved {
            issues.push((IssueKind::KripkeDisagrees, "proved, yet a countermodel exists".into()));
        }
        if kripke_refuted && naive_tag == 0 {
            issues.push((IssueKind::KripkeDisagrees, "naive witness, yet a countermodel exists".into()));
        }

        let with_bot = f.contains_bot();
        if with_bot {
            let g = f.atomize_bot(&fresh_atom([f])).expect("fresh atom");
            let swapped = prove_sc(&Sequent::goal(g), CalculusProfile::LmImp, DepthBudget::Unbounded);
            if matches!(swapped, ProveOutcome::Proved(_)) != proved {
                issues.push((IssueKind::AtomSwap, format!("{} before atomization, {} after", lm.name(), swapped.name())));
            }
        }

        let mut lg_min_budget = false;
        if c.lg_min {
            match prove_sc(&goal, CalculusProfile::LgMin, DepthBudget::Linear(c.depth_factor)) {
                ProveOutcome::BudgetExhausted => lg_min_budget = true,
                other => {
                    let lg_proved = matches!(other, ProveOutcome::Proved(_));
                    if lg_proved != proved {
                        issues.push((IssueKind::LgMinDisagrees, format!("LM-IMP {}, LG-MIN {}", lm.name(), other.name())));
                    }
                    if let ProveOutcome::Proved(d) = &other {
                        if !check_sc(d, CalculusProfile::LgMin).is_ok_and(|v| v.is_valid()) {
                            issues.push((IssueKind::ScCheckFailed, "LG-MIN derivation rejected".into()));
                        }
                        if !classical_valid(&f.atomize_bot(&fresh_atom([f])).expect("fresh atom"), true).is_ok_and(|v| v.is_valid()) {
                            issues.push((IssueKind::ClassicallyInvalid, "LG-MIN proof of a classically invalid formula".into()));
                        }
                    }
                }
            }
        }

        let semi = f.semi_subformulas().len();
        if semi > f.len() * f.len() {
            issues.push((IssueKind::SemiSubformulaCount, format!("{semi} semi-subformulas, length {}", f.len())));
        }

        let mut heights = None;
        let mut sizes = None;
        if let ProveOutcome::Proved(d) = &lm {
            self.derived(f, &goal, d, &mut issues, &mut heights, &mut sizes);
        }

        Record {
            level: f.connective_count(),
            proved,
            naive: naive_tag,
            kripke_refuted,
            lg_min_budget,
            with_bot,
            heights,
            sizes,
            issues,
        }
    }

    fn derived(
        &self,
        f: &Formula,
        goal: &Sequent,
        d: &crate::sequent::ScDerivation,
        issues: &mut Vec<(IssueKind, String)>,
        heights: &mut Option<(usize, usize)>,
        sizes: &mut Option<(usize, usize, usize)>,
    ) {
        let c = self.config;
        match check_sc(d, CalculusProfile::LmImp) {
            Ok(v) if v.is_valid() => {}
            other => issues.push((IssueKind::ScCheckFailed, format!("{other:?}"))),
        }
        let sc_height = d.height();
        if sc_height > c.depth_factor * goal.len() {
            issues.push((IssueKind::DepthBound, format!("height {sc_height} > {}·{}", c.depth_factor, goal.len())));
        }
        let audit = semi_subformula_audit(d, f);
        if let Some(v) = audit.violations.first() {
            issues.push((IssueKind::SemiSubformula, format!("`{}` at {:?}", v.formula, v.path)));
        }
        match classical_valid(&f.atomize_bot(&fresh_atom([f])).expect("fresh atom"), true) {
            Ok(v) if v.is_valid() => {}
            _ => issues.push((IssueKind::ClassicallyInvalid, "LM-IMP proof of a classically invalid formula".into())),
        }
        let nd = match translate(d) {
            Ok(nd) => nd,
            Err(e) => {
                issues.push((IssueKind::Translation, e.to_string()));
                return;
            }
        };
        let verdict = check_nd(&nd, NdProfile::Imp);
        if !verdict.is_valid() || nd.formula() != f || !nd.open_assumptions().is_empty() {
            issues.push((IssueKind::Translation, format!("{verdict:?}")));
            return;
        }
        let nd_height = nd.height();
        *heights = Some((sc_height, nd_height));
        if nd_height > c.envelope_k * sc_height * sc_height {
            issues.push((IssueKind::HeightEnvelope, format!("nd {nd_height}, sc {sc_height}")));
        }
        let (l1, l2) = match (compress(&nd, Level::L1), compress(&nd, Level::L2)) {
            (Ok(a), Ok(b)) => (a, b),
            (a, b) => {
                issues.push((IssueKind::DagCheck, format!("{:?} {:?}", a.err(), b.err())));
                return;
            }
        };
        for (g, name) in [(&l1, "L1"), (&l2, "L2")] {
            if !check_dag(g, NdProfile::Imp).is_valid() {
                issues.push((IssueKind::DagCheck, format!("{name} rejected")));
            }
        }
        if unfold(&l1).as_ref() != Ok(&nd) {
            issues.push((IssueKind::L1RoundTrip, "unfolded L1 differs".into()));
        }
        let tree = nd_metrics(&nd);
        let (m1, m2) = (dag_metrics(&l1), dag_metrics(&l2));
        if !(m2.size <= m1.size && m1.size <= tree.size) {
            issues.push((IssueKind::SizeMonotonicity, format!("tree {}, L1 {}, L2 {}", tree.size, m1.size, m2.size)));
        }
        if m1.foundation != tree.foundation || m2.foundation > tree.foundation || m1.height != tree.height {
            issues.push((IssueKind::Foundation, format!("tree {:?}, L1 {:?}, L2 {:?}", tree, m1, m2)));
        }
        *sizes = Some((tree.size, m1.size, m2.size));
    }
}

const CHUNK: usize = 8192;

/// Runs the three oracles and the whole pipeline over every formula in the
/// configured space.
pub fn agreement_sweep(config: &SweepConfig) -> SweepReport {
    agreement_sweep_with_progress(config, |_, _| {})
}

/// As [`agreement_sweep`], calling `progress(done, total)` after each chunk.
pub fn agreement_sweep_with_progress(config: &SweepConfig, mut progress: impl FnMut(u64, u64)) -> SweepReport {
    let total = config.formula_count();
    let budget = KripkeBudget { max_worlds: config.kripke_worlds, ..KripkeBudget::default() };
    let mut formulas = ImplicationalFormulas::new(config.leaves(), config.max_connectives);
    let mut report = SweepReport {
        provenance: Provenance::current(),
        config: config.clone(),
        formulas: 0,
        levels: (0..=config.max_connectives).map(|n| LevelStats { connectives: n, ..Default::default() }).collect(),
        oracles: OracleCounts::default(),
        undecided: 0,
        issue_counts: BTreeMap::new(),
        examples: Vec::new(),
        height_table: BTreeMap::new(),
        height_exponent: None,
        max_height_ratio: 0.0,
        compression: CompressionTotals::default(),
    };
    #[cfg(not(feature = "parallel"))]
    let mut examiner = Examiner { config, kripke: KripkeSearcher::new(budget) };
    loop {
        let chunk: Vec<Formula> = formulas.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        #[cfg(feature = "parallel")]
        let records: Vec<(Formula, Record)> = {
            use rayon::prelude::*;
            chunk
                .into_par_iter()
                .map_init(
                    || Examiner { config, kripke: KripkeSearcher::new(budget) },
                    |ex, f| {
                        let r = ex.examine(&f);
                        (f, r)
                    },
                )
                .collect()
        };
        #[cfg(not(feature = "parallel"))]
        let records: Vec<(Formula, Record)> = chunk
            .into_iter()
            .map(|f| {
                let r = examiner.examine(&f);
                (f, r)
            })
            .collect();
        for (f, r) in records {
            fold(&mut report, &f, r);
        }
        progress(report.formulas, total);
    }
    let points: Vec<(f64, f64)> = report.height_table.iter().map(|(s, n)| (*s as f64, *n as f64)).collect();
    report.height_exponent = loglog_slope(&points);
    report
}

fn fold(report: &mut SweepReport, f: &Formula, r: Record) {
    report.formulas += 1;
    let level = &mut report.levels[r.level];
    level.formulas += 1;
    level.provable += u64::from(r.proved);
    let o = &mut report.oracles;
    if r.proved {
        o.sc_proved += 1;
    } else {
        o.sc_unprovable += 1;
    }
    match r.naive {
        0 => o.naive_provable += 1,
        1 => o.naive_exhausted += 1,
        _ => o.naive_unknown += 1,
    }
    if r.kripke_refuted {
        o.kripke_refuted += 1;
    } else {
        o.kripke_unknown += 1;
    }
    o.lg_min_budget_exhausted += u64::from(r.lg_min_budget);
    o.with_bot += u64::from(r.with_bot);
    // the sequent prover always answers, so count formulas that neither
    // independent oracle settles
    let mut issues = r.issues;
    if r.naive == 2 && !r.kripke_refuted {
        report.undecided += 1;
        issues.push((IssueKind::Undecided, "naive budget spent, no countermodel".into()));
    }
    if let Some((sc, nd)) = r.heights {
        let e = report.height_table.entry(sc).or_insert(0);
        *e = (*e).max(nd);
        if sc > 0 {
            report.max_height_ratio = report.max_height_ratio.max(nd as f64 / (sc * sc) as f64);
        }
    }
    if let Some((tree, l1, l2)) = r.sizes {
        let t = &mut report.compression;
        t.tree_nodes += tree as u64;
        t.l1_nodes += l1 as u64;
        t.l2_nodes += l2 as u64;
        t.l1_strictly_smaller += u64::from(l1 < tree);
        t.l2_strictly_smaller += u64::from(l2 < l1);
    }
    for (kind, detail) in issues {
        let n = report.issue_counts.entry(kind).or_insert(0);
        *n += 1;
        if *n <= report.config.examples_per_kind as u64 {
            report.examples.push(Issue { kind, formula: f.to_string(), detail });
        }
    }
}
