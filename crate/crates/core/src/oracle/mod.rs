//! Provability and refutation oracles that share no code with the sequent
//! engine, used to cross-check it.

pub mod kripke;
pub mod naive;

use serde::{Deserialize, Serialize};

use crate::formula::Formula;
pub use kripke::{kripke_countermodel, KripkeBudget, KripkeModel, KripkeOutcome, KripkeSearcher};
pub use naive::{naive_prove, NaiveOutcome, NaiveProof, NaiveRule};

/// Which logic an oracle decides. In the minimal logic `⊥` is an ordinary atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Logic {
    Minimal,
    Intuitionistic,
}

/// Combined verdict of an oracle run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    Provable(NaiveProof),
    Refuted(Refutation),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    Countermodel { model: KripkeModel, world: usize },
    /// The naive prover closed its whole search space; there is no model.
    NoProof,
}

impl OracleVerdict {
    pub fn is_provable(&self) -> bool {
        matches!(self, OracleVerdict::Provable(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, OracleVerdict::Refuted(_))
    }
}

impl From<NaiveOutcome> for OracleVerdict {
    fn from(o: NaiveOutcome) -> Self {
        match o {
            NaiveOutcome::Provable(p) => OracleVerdict::Provable(p),
            NaiveOutcome::Exhausted => OracleVerdict::Refuted(Refutation::NoProof),
            NaiveOutcome::Unknown => OracleVerdict::Unknown,
        }
    }
}

impl From<KripkeOutcome> for OracleVerdict {
    fn from(o: KripkeOutcome) -> Self {
        match o {
            KripkeOutcome::Refuted { model, world } => OracleVerdict::Refuted(Refutation::Countermodel { model, world }),
            KripkeOutcome::Unknown => OracleVerdict::Unknown,
        }
    }
}

/// Runs the naive prover first and falls back to a countermodel search.
pub fn decide(f: &Formula, logic: Logic, budget: KripkeBudget) -> OracleVerdict {
    match naive_prove(&[], f, logic, naive::DEFAULT_MAX_STEPS) {
        NaiveOutcome::Provable(p) => OracleVerdict::Provable(p),
        other => match KripkeSearcher::new(budget).search(f, logic) {
            KripkeOutcome::Refuted { model, world } => {
                OracleVerdict::Refuted(Refutation::Countermodel { model, world })
            }
            KripkeOutcome::Unknown => other.into(),
        },
    }
}
