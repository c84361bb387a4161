use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::Provenance;
use crate::dag::{compress, dag_metrics, Level};
use crate::formula::Formula;
use crate::nd::nd_metrics;
use crate::sequent::{prove_sc, sc_metrics, CalculusProfile, ProveOutcome, Sequent};
use crate::translate::{loglog_slope, translate};

/// Tree derivations past this many nodes stop the table.
pub const TREE_SIZE_CAP: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// `a1 → a2 → … → an → a1`
    #[serde(rename = "nested-K")]
    NestedK,
    /// `p → (p→q1) → (q1→q1→q2) → … → (q(n-1)→q(n-1)→qn) → qn`.
    /// Each `qi` is needed twice to reach `q(i+1)`, so the tree derivation
    /// repeats the derivation of `qi` at every step.
    #[serde(rename = "reuse-heavy")]
    ReuseHeavy,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::NestedK, Family::ReuseHeavy];

    pub fn name(self) -> &'static str {
        match self {
            Family::NestedK => "nested-K",
            Family::ReuseHeavy => "reuse-heavy",
        }
    }

    pub fn default_max_index(self) -> usize {
        match self {
            Family::NestedK => 40,
            Family::ReuseHeavy => 16,
        }
    }

    /// Instance `n`, for `n ≥ 1`.
    pub fn instance(self, n: usize) -> Formula {
        let n = n.max(1);
        match self {
            Family::NestedK => {
                let mut f = Formula::atom("a1");
                for i in (1..=n).rev() {
                    f = Formula::imp(Formula::atom(&format!("a{i}")), f);
                }
                f
            }
            Family::ReuseHeavy => {
                let q = |i: usize| Formula::atom(&format!("q{i}"));
                let mut f = q(n);
                for i in (2..=n).rev() {
                    let step = Formula::imp(q(i - 1), Formula::imp(q(i - 1), q(i)));
                    f = Formula::imp(step, f);
                }
                let p = Formula::atom("p");
                Formula::imp(p.clone(), Formula::imp(Formula::imp(p, q(1)), f))
            }
        }
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Family, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family '{s}' (expected nested-K or reuse-heavy)"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub index: usize,
    pub formula_length: usize,
    pub sc_height: usize,
    pub sc_size: usize,
    pub tree_size: usize,
    pub tree_height: usize,
    pub tree_foundation: usize,
    pub l1_size: usize,
    pub l1_height: usize,
    pub l2_size: usize,
    pub l2_height: usize,
}

/// Log-log slopes of size against formula length; `None` when fewer than
/// two distinct lengths were measured.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Slopes {
    pub tree: Option<f64>,
    pub l1: Option<f64>,
    pub l2: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub provenance: Provenance,
    pub family: Family,
    pub max_index: usize,
    pub rows: Vec<GrowthRow>,
    pub slopes: Slopes,
    /// Set when the table stops before `max_index`.
    pub truncated: Option<String>,
}

pub fn growth_report(family: Family, max_index: usize) -> GrowthReport {
    let mut rows = Vec::new();
    let mut truncated = None;
    for n in 1..=max_index {
        if let Some(last) = rows.last().map(|r: &GrowthRow| r.tree_size) {
            if last > TREE_SIZE_CAP / 2 {
                truncated = Some(format!("stopped before index {n}: tree size {last} near the cap of {TREE_SIZE_CAP}"));
                break;
            }
        }
        let f = family.instance(n);
        let outcome = prove_sc(&Sequent::goal(f.clone()), CalculusProfile::LmImp, CalculusProfile::LmImp.default_budget());
        let d = match outcome {
            ProveOutcome::Proved(d) => d,
            other => {
                truncated = Some(format!("stopped at index {n}: LM-IMP search {}", other.name()));
                break;
            }
        };
        let step = translate(&d).map_err(|e| e.to_string()).and_then(|t| {
            let l1 = compress(&t, Level::L1).map_err(|e| e.to_string())?;
            let l2 = compress(&t, Level::L2).map_err(|e| e.to_string())?;
            Ok((t, l1, l2))
        });
        let (t, l1, l2) = match step {
            Ok(x) => x,
            Err(e) => {
                truncated = Some(format!("stopped at index {n}: {e}"));
                break;
            }
        };
        let (sc, nd, m1, m2) = (sc_metrics(&d), nd_metrics(&t), dag_metrics(&l1), dag_metrics(&l2));
        rows.push(GrowthRow {
            index: n,
            formula_length: f.len(),
            sc_height: sc.height,
            sc_size: sc.size,
            tree_size: nd.size,
            tree_height: nd.height,
            tree_foundation: nd.foundation,
            l1_size: m1.size,
            l1_height: m1.height,
            l2_size: m2.size,
            l2_height: m2.height,
        });
    }
    let slope = |pick: fn(&GrowthRow) -> usize| {
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.formula_length as f64, pick(r) as f64)).collect();
        loglog_slope(&pts)
    };
    let slopes = Slopes { tree: slope(|r| r.tree_size), l1: slope(|r| r.l1_size), l2: slope(|r| r.l2_size) };
    GrowthReport { provenance: Provenance::current(), family, max_index, rows, slopes, truncated }
}

fn fmt_slope(s: Option<f64>) -> String {
    s.map_or_else(|| "n/a".to_string(), |v| format!("{v:.3}"))
}

impl GrowthReport {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).expect("in-memory csv write");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv is utf-8")
    }

    /// First index from which the L1 dag stays strictly smaller than the tree.
    pub fn l1_sharing_from(&self) -> Option<usize> {
        let last_equal = self.rows.iter().rposition(|r| r.l1_size >= r.tree_size);
        match last_equal {
            None => self.rows.first().map(|r| r.index),
            Some(i) => self.rows.get(i + 1).map(|r| r.index),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "growth: family {}, indices 1..={}", self.family.name(), self.max_index);
        let _ = writeln!(s, "{:>5} {:>6} {:>9} {:>9} {:>9} {:>9} {:>7} {:>7}", "n", "|rho|", "tree", "l1", "l2", "sc", "h_tree", "h_l1");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:>5} {:>6} {:>9} {:>9} {:>9} {:>9} {:>7} {:>7}",
                r.index, r.formula_length, r.tree_size, r.l1_size, r.l2_size, r.sc_size, r.tree_height, r.l1_height
            );
        }
        let _ = writeln!(
            s,
            "log-log slope vs |rho|: tree {}, l1 {}, l2 {}",
            fmt_slope(self.slopes.tree),
            fmt_slope(self.slopes.l1),
            fmt_slope(self.slopes.l2)
        );
        match self.l1_sharing_from() {
            Some(i) => {
                let _ = writeln!(s, "l1 strictly below tree from index {i}");
            }
            None => {
                let _ = writeln!(s, "l1 never strictly below tree at the last index");
            }
        }
        if let Some(t) = &self.truncated {
            let _ = writeln!(s, "note: {t}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    #[test]
    fn instances() {
        assert_eq!(Family::NestedK.instance(1), parse("a1 -> a1").unwrap());
        assert_eq!(Family::NestedK.instance(3), parse("a1 -> a2 -> a3 -> a1").unwrap());
        assert_eq!(Family::ReuseHeavy.instance(1), parse("p -> (p -> q1) -> q1").unwrap());
        assert_eq!(
            Family::ReuseHeavy.instance(2),
            parse("p -> (p -> q1) -> (q1 -> q1 -> q2) -> q2").unwrap()
        );
        assert_eq!("Nested-K".parse::<Family>(), Ok(Family::NestedK));
    }

    #[test]
    fn single_index_has_no_slope() {
        let r = growth_report(Family::NestedK, 1);
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.slopes.tree, None);
        assert!(r.to_text().contains("n/a"));
    }

    #[test]
    fn nested_k_is_linear() {
        let r = growth_report(Family::NestedK, 12);
        assert_eq!(r.rows.len(), 12);
        let slope = r.slopes.tree.unwrap();
        assert!((0.8..1.2).contains(&slope), "{slope}");
        let steps: Vec<usize> = r.rows.windows(2).map(|w| w[1].tree_size - w[0].tree_size).collect();
        assert!(steps.windows(2).all(|w| w[0] == w[1]), "{steps:?}");
    }

    #[test]
    fn reuse_heavy_shares() {
        let r = growth_report(Family::ReuseHeavy, 8);
        assert!(r.l1_sharing_from().is_some(), "{}", r.to_text());
        let last = r.rows.last().unwrap();
        assert!(last.l1_size < last.tree_size);
        assert!(r.to_csv().starts_with("index,formula_length,"));
    }
}
