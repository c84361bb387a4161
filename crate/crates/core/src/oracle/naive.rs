//! Root-first search in a set-based G3i-style calculus with a loop check.
//!
//! Left rules keep their principal formula, so contexts only grow and every
//! sequent is built from subformulas of the input. A branch that revisits a
//! sequent already on its path is closed as failed.

use std::collections::HashMap;

use serde::Serialize;

use super::Logic;
use crate::formula::{Formula, Node};

const MAX_SUBFORMULAS: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NaiveRule {
    Axiom,
    BotLeft,
    ImpRight,
    AndRight,
    OrRight1,
    OrRight2,
    AndLeft,
    OrLeft,
    ImpLeft,
}

/// A derivation found by the naive prover. Contexts are sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaiveProof {
    pub antecedents: Vec<Formula>,
    pub consequent: Formula,
    pub rule: NaiveRule,
    /// Principal formula of a left rule.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub principal: Option<Formula>,
    pub premises: Vec<NaiveProof>,
}

impl NaiveProof {
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(NaiveProof::size).sum::<usize>()
    }

    /// Re-checks every step against the G3i rules under `logic`.
    pub fn check(&self, logic: Logic) -> bool {
        let ctx = &self.antecedents;
        let has = |f: &Formula| ctx.contains(f);
        let with = |extra: &[&Formula]| {
            let mut v = ctx.clone();
            for f in extra {
                if !v.contains(f) {
                    v.push((*f).clone());
                }
            }
            v.sort();
            v
        };
        let prem_is = |i: usize, ante: &[Formula], goal: &Formula| {
            let p = &self.premises[i];
            let mut a = p.antecedents.clone();
            a.sort();
            a.dedup();
            a == ante && p.consequent == *goal
        };
        let mut sorted = ctx.clone();
        sorted.sort();
        sorted.dedup();
        let local = match self.rule {
            NaiveRule::Axiom => self.premises.is_empty() && has(&self.consequent),
            NaiveRule::BotLeft => {
                logic == Logic::Intuitionistic && self.premises.is_empty() && has(&Formula::bot())
            }
            NaiveRule::ImpRight => match self.consequent.as_imp() {
                Some((a, b)) => self.premises.len() == 1 && prem_is(0, &with(&[a]), b),
                None => false,
            },
            NaiveRule::AndRight => match self.consequent.as_and() {
                Some((a, b)) => self.premises.len() == 2 && prem_is(0, &sorted, a) && prem_is(1, &sorted, b),
                None => false,
            },
            NaiveRule::OrRight1 | NaiveRule::OrRight2 => match self.consequent.as_or() {
                Some((a, b)) => {
                    let pick = if self.rule == NaiveRule::OrRight1 { a } else { b };
                    self.premises.len() == 1 && prem_is(0, &sorted, pick)
                }
                None => false,
            },
            NaiveRule::AndLeft | NaiveRule::OrLeft | NaiveRule::ImpLeft => {
                let Some(principal) = self.principal.as_ref().filter(|p| has(p)) else {
                    return false;
                };
                match (self.rule, principal.node()) {
                    (NaiveRule::AndLeft, Node::And(a, b)) => {
                        self.premises.len() == 1 && prem_is(0, &with(&[a, b]), &self.consequent)
                    }
                    (NaiveRule::OrLeft, Node::Or(a, b)) => {
                        self.premises.len() == 2
                            && prem_is(0, &with(&[a]), &self.consequent)
                            && prem_is(1, &with(&[b]), &self.consequent)
                    }
                    (NaiveRule::ImpLeft, Node::Imp(a, b)) => {
                        self.premises.len() == 2
                            && prem_is(0, &sorted, a)
                            && prem_is(1, &with(&[b]), &self.consequent)
                    }
                    _ => false,
                }
            }
        };
        local && self.premises.iter().all(|p| p.check(logic))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NaiveOutcome {
    Provable(NaiveProof),
    /// The whole loop-checked search space was closed without a proof.
    Exhausted,
    /// Step budget ran out, or the input is too large for the bitset encoding.
    Unknown,
}

#[derive(Clone, Copy)]
enum Kind {
    Atomic,
    Imp(usize, usize),
    And(usize, usize),
    Or(usize, usize),
}

type Mask = u128;

enum Res {
    Proved(usize),
    /// Shallowest path index a loop check hit, `usize::MAX` if none.
    Failed(usize),
    OutOfSteps,
}

struct ProofStep {
    mask: Mask,
    goal: usize,
    rule: NaiveRule,
    principal: Option<usize>,
    premises: Vec<usize>,
}

struct Search {
    table: Vec<Formula>,
    kinds: Vec<Kind>,
    bot: Option<usize>,
    logic: Logic,
    steps: u64,
    max_steps: u64,
    path: HashMap<(Mask, usize), usize>,
    depth: usize,
    proved: HashMap<(Mask, usize), usize>,
    failed: HashMap<(Mask, usize), ()>,
    arena: Vec<ProofStep>,
}

fn index_of(table: &mut Vec<Formula>, kinds: &mut Vec<Kind>, map: &mut HashMap<Formula, usize>, f: &Formula) -> usize {
    if let Some(&i) = map.get(f) {
        return i;
    }
    let kind = match f.node() {
        Node::Atom(_) | Node::Bot => Kind::Atomic,
        Node::Imp(a, b) => Kind::Imp(index_of(table, kinds, map, a), index_of(table, kinds, map, b)),
        Node::And(a, b) => Kind::And(index_of(table, kinds, map, a), index_of(table, kinds, map, b)),
        Node::Or(a, b) => Kind::Or(index_of(table, kinds, map, a), index_of(table, kinds, map, b)),
    };
    table.push(f.clone());
    kinds.push(kind);
    map.insert(f.clone(), table.len() - 1);
    table.len() - 1
}

impl Search {
    fn has(mask: Mask, i: usize) -> bool {
        mask >> i & 1 == 1
    }

    fn leaf(&mut self, mask: Mask, goal: usize, rule: NaiveRule) -> Res {
        self.arena.push(ProofStep { mask, goal, rule, principal: None, premises: vec![] });
        Res::Proved(self.arena.len() - 1)
    }

    fn node(&mut self, mask: Mask, goal: usize, rule: NaiveRule, principal: Option<usize>, premises: Vec<usize>) -> usize {
        self.arena.push(ProofStep { mask, goal, rule, principal, premises });
        self.arena.len() - 1
    }

    /// All premises must be proved; returns their arena ids.
    fn all(&mut self, premises: &[(Mask, usize)]) -> Result<Vec<usize>, Res> {
        let mut ids = Vec::with_capacity(premises.len());
        for &(m, g) in premises {
            match self.prove(m, g) {
                Res::Proved(id) => ids.push(id),
                other => return Err(other),
            }
        }
        Ok(ids)
    }

    fn prove(&mut self, mask: Mask, goal: usize) -> Res {
        self.steps += 1;
        if self.steps > self.max_steps {
            return Res::OutOfSteps;
        }
        let key = (mask, goal);
        if let Some(&id) = self.proved.get(&key) {
            return Res::Proved(id);
        }
        if self.failed.contains_key(&key) {
            return Res::Failed(usize::MAX);
        }
        if let Some(&d) = self.path.get(&key) {
            return Res::Failed(d);
        }
        if Self::has(mask, goal) {
            return self.leaf(mask, goal, NaiveRule::Axiom);
        }
        if self.logic == Logic::Intuitionistic && self.bot.is_some_and(|b| Self::has(mask, b)) {
            return self.leaf(mask, goal, NaiveRule::BotLeft);
        }
        let depth = self.depth;
        self.path.insert(key, depth);
        self.depth += 1;
        let res = self.expand(mask, goal);
        self.depth -= 1;
        self.path.remove(&key);
        match res {
            Res::Proved(id) => {
                self.proved.insert(key, id);
                Res::Proved(id)
            }
            Res::Failed(d) if d >= depth => {
                self.failed.insert(key, ());
                Res::Failed(usize::MAX)
            }
            other => other,
        }
    }

    fn expand(&mut self, mask: Mask, goal: usize) -> Res {
        // invertible rules first
        match self.kinds[goal] {
            Kind::Imp(a, b) => {
                return match self.all(&[(mask | 1 << a, b)]) {
                    Ok(p) => Res::Proved(self.node(mask, goal, NaiveRule::ImpRight, None, p)),
                    Err(r) => r,
                };
            }
            Kind::And(a, b) => {
                return match self.all(&[(mask, a), (mask, b)]) {
                    Ok(p) => Res::Proved(self.node(mask, goal, NaiveRule::AndRight, None, p)),
                    Err(r) => r,
                };
            }
            _ => {}
        }
        for i in 0..self.table.len() {
            if !Self::has(mask, i) {
                continue;
            }
            match self.kinds[i] {
                Kind::And(a, b) if !Self::has(mask, a) || !Self::has(mask, b) => {
                    return match self.all(&[(mask | 1 << a | 1 << b, goal)]) {
                        Ok(p) => Res::Proved(self.node(mask, goal, NaiveRule::AndLeft, Some(i), p)),
                        Err(r) => r,
                    };
                }
                Kind::Or(a, b) if !Self::has(mask, a) && !Self::has(mask, b) => {
                    return match self.all(&[(mask | 1 << a, goal), (mask | 1 << b, goal)]) {
                        Ok(p) => Res::Proved(self.node(mask, goal, NaiveRule::OrLeft, Some(i), p)),
                        Err(r) => r,
                    };
                }
                _ => {}
            }
        }
        // choice points
        let mut shallowest = usize::MAX;
        let mut out_of_steps = false;
        let note = |r: Res, shallowest: &mut usize, out: &mut bool| match r {
            Res::Failed(d) => *shallowest = (*shallowest).min(d),
            Res::OutOfSteps => *out = true,
            Res::Proved(_) => unreachable!(),
        };
        if let Kind::Or(a, b) = self.kinds[goal] {
            for (pick, rule) in [(a, NaiveRule::OrRight1), (b, NaiveRule::OrRight2)] {
                match self.all(&[(mask, pick)]) {
                    Ok(p) => return Res::Proved(self.node(mask, goal, rule, None, p)),
                    Err(r) => note(r, &mut shallowest, &mut out_of_steps),
                }
                if out_of_steps {
                    return Res::OutOfSteps;
                }
            }
        }
        for i in 0..self.table.len() {
            if !Self::has(mask, i) {
                continue;
            }
            if let Kind::Imp(a, b) = self.kinds[i] {
                if Self::has(mask, b) {
                    continue;
                }
                match self.all(&[(mask, a), (mask | 1 << b, goal)]) {
                    Ok(p) => return Res::Proved(self.node(mask, goal, NaiveRule::ImpLeft, Some(i), p)),
                    Err(r) => note(r, &mut shallowest, &mut out_of_steps),
                }
                if out_of_steps {
                    return Res::OutOfSteps;
                }
            }
        }
        Res::Failed(shallowest)
    }

    fn build(&self, id: usize) -> NaiveProof {
        let step = &self.arena[id];
        NaiveProof {
            antecedents: (0..self.table.len())
                .filter(|&i| Self::has(step.mask, i))
                .map(|i| self.table[i].clone())
                .collect(),
            consequent: self.table[step.goal].clone(),
            rule: step.rule,
            principal: step.principal.map(|i| self.table[i].clone()),
            premises: step.premises.iter().map(|&p| self.build(p)).collect(),
        }
    }
}

pub const DEFAULT_MAX_STEPS: u64 = 2_000_000;

/// Decides `antecedents ⇒ consequent` by exhaustive loop-checked search.
pub fn naive_prove(antecedents: &[Formula], consequent: &Formula, logic: Logic, max_steps: u64) -> NaiveOutcome {
    let mut table = Vec::new();
    let mut kinds = Vec::new();
    let mut map = HashMap::new();
    let ante: Vec<usize> = antecedents
        .iter()
        .map(|f| index_of(&mut table, &mut kinds, &mut map, f))
        .collect();
    let goal = index_of(&mut table, &mut kinds, &mut map, consequent);
    let bot = map.get(&Formula::bot()).copied();
    if table.len() > MAX_SUBFORMULAS {
        return NaiveOutcome::Unknown;
    }
    let mask = ante.iter().fold(0 as Mask, |m, &i| m | 1 << i);
    let mut search = Search {
        table,
        kinds,
        bot,
        logic,
        steps: 0,
        max_steps,
        path: HashMap::new(),
        depth: 0,
        proved: HashMap::new(),
        failed: HashMap::new(),
        arena: Vec::new(),
    };
    match search.prove(mask, goal) {
        Res::Proved(id) => NaiveOutcome::Provable(search.build(id)),
        Res::Failed(_) => NaiveOutcome::Exhausted,
        Res::OutOfSteps => NaiveOutcome::Unknown,
    }
}
