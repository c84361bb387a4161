//! Finite Kripke countermodels.
//!
//! Search runs over rooted posets (up to isomorphism, smallest first) and, for
//! each, over every persistent valuation of the formula's atoms. Valuations
//! are evaluated 64 at a time: every subformula gets one `u64` per world whose
//! bit `j` says whether it is forced there under valuation `base + j`.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::Logic;
use crate::formula::{Formula, Node};

/// Hard ceiling on worlds; orders are stored as `u32` masks and poset
/// enumeration is factorial in the world count.
pub const MAX_WORLDS: usize = 6;

/// Marker used for `⊥` in minimal-logic valuations.
pub const BOT_ATOM: &str = "bot";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    /// `up[w]`: bitmask of worlds `v` with `w ≤ v` (reflexive, transitive).
    up: Vec<u32>,
    valuation: Vec<BTreeSet<String>>,
    logic: Logic,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("world {0} out of range")]
    WorldOutOfRange(usize),
    #[error("order is not antisymmetric between worlds {0} and {1}")]
    NotAntisymmetric(usize, usize),
    #[error("valuation not persistent: `{atom}` holds at {from} but not at {to}")]
    NotPersistent { atom: String, from: usize, to: usize },
    #[error("intuitionistic models cannot force bot")]
    ForcedBot,
    #[error("at most {MAX_WORLDS} worlds are supported")]
    TooManyWorlds,
}

impl KripkeModel {
    /// Builds a model from order pairs `(w, v)` meaning `w ≤ v`; the
    /// reflexive-transitive closure is taken, and antisymmetry and persistence
    /// are checked.
    pub fn new(
        worlds: usize,
        order: &[(usize, usize)],
        valuation: Vec<BTreeSet<String>>,
        logic: Logic,
    ) -> Result<KripkeModel, ModelError> {
        if worlds > 32 {
            return Err(ModelError::TooManyWorlds);
        }
        if valuation.len() != worlds {
            return Err(ModelError::WorldOutOfRange(valuation.len()));
        }
        let mut up: Vec<u32> = (0..worlds).map(|w| 1 << w).collect();
        for &(a, b) in order {
            if a >= worlds || b >= worlds {
                return Err(ModelError::WorldOutOfRange(a.max(b)));
            }
            up[a] |= 1 << b;
        }
        // Warshall closure
        for k in 0..worlds {
            for w in 0..worlds {
                if up[w] >> k & 1 == 1 {
                    up[w] |= up[k];
                }
            }
        }
        for a in 0..worlds {
            for b in a + 1..worlds {
                if up[a] >> b & 1 == 1 && up[b] >> a & 1 == 1 {
                    return Err(ModelError::NotAntisymmetric(a, b));
                }
            }
        }
        for (w, atoms) in valuation.iter().enumerate() {
            if logic == Logic::Intuitionistic && atoms.contains(BOT_ATOM) {
                return Err(ModelError::ForcedBot);
            }
            for v in 0..worlds {
                if up[w] >> v & 1 == 1 {
                    if let Some(atom) = atoms.iter().find(|a| !valuation[v].contains(*a)) {
                        return Err(ModelError::NotPersistent { atom: atom.clone(), from: w, to: v });
                    }
                }
            }
        }
        Ok(KripkeModel { up, valuation, logic })
    }

    pub fn worlds(&self) -> usize {
        self.up.len()
    }

    pub fn logic(&self) -> Logic {
        self.logic
    }

    pub fn leq(&self, w: usize, v: usize) -> bool {
        self.up[w] >> v & 1 == 1
    }

    /// All pairs `(w, v)` with `w ≤ v`, reflexive ones included.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.worlds();
        (0..n)
            .flat_map(|w| (0..n).filter(move |&v| self.leq(w, v)).map(move |v| (w, v)))
            .collect()
    }

    pub fn valuation(&self, w: usize) -> &BTreeSet<String> {
        &self.valuation[w]
    }

    fn successors(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.worlds()).filter(move |&v| self.leq(w, v))
    }

    pub fn forces(&self, w: usize, f: &Formula) -> bool {
        match f.node() {
            Node::Atom(name) => self.valuation[w].contains(&**name),
            Node::Bot => self.logic == Logic::Minimal && self.valuation[w].contains(BOT_ATOM),
            Node::And(a, b) => self.forces(w, a) && self.forces(w, b),
            Node::Or(a, b) => self.forces(w, a) || self.forces(w, b),
            Node::Imp(a, b) => self
                .successors(w)
                .all(|v| !self.forces(v, a) || self.forces(v, b)),
        }
    }
}

/// JSON form: `{logic, worlds, order: [[w, v]...], valuation: [[atom...]...]}`.
#[derive(Serialize, Deserialize)]
struct ModelRepr {
    logic: Logic,
    worlds: Vec<usize>,
    order: Vec<(usize, usize)>,
    valuation: Vec<BTreeSet<String>>,
}

impl Serialize for KripkeModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ModelRepr {
            logic: self.logic,
            worlds: (0..self.worlds()).collect(),
            order: self.order_pairs(),
            valuation: self.valuation.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KripkeModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ModelRepr::deserialize(d)?;
        KripkeModel::new(repr.worlds.len(), &repr.order, repr.valuation, repr.logic)
            .map_err(serde::de::Error::custom)
    }
}

/// Outcome of a bounded countermodel search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KripkeOutcome {
    Refuted { model: KripkeModel, world: usize },
    /// No countermodel within the bound. Not a verdict.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KripkeBudget {
    pub max_worlds: usize,
    /// Posets whose valuation space exceeds this are skipped, which makes a
    /// negative result `Unknown` for a weaker reason but never wrong.
    pub max_valuations: u64,
}

impl Default for KripkeBudget {
    fn default() -> Self {
        KripkeBudget { max_worlds: 5, max_valuations: 1 << 24 }
    }
}

/// A rooted finite poset with root 0, labels forming a linear extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    pub up: Vec<u32>,
}

impl Poset {
    pub fn size(&self) -> usize {
        self.up.len()
    }

    /// Every upward-closed set of worlds, as bitmasks, in increasing order.
    pub fn up_sets(&self) -> Vec<u32> {
        let n = self.size();
        (0u32..1 << n)
            .filter(|&m| (0..n).all(|w| m >> w & 1 == 0 || self.up[w] & !m == 0))
            .collect()
    }

    fn canonical_key(&self) -> Vec<u32> {
        let n = self.size();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<u32>> = None;
        permutations(&mut perm, 0, &mut |p| {
            // p[old] = new label
            let mut key = vec![0u32; n];
            for old in 0..n {
                let mut m = 0u32;
                for v in 0..n {
                    if self.up[old] >> v & 1 == 1 {
                        m |= 1 << p[v];
                    }
                }
                key[p[old]] = m;
            }
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        });
        best.unwrap()
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Rooted posets with `n` elements, one per isomorphism class.
pub fn rooted_posets(n: usize) -> Vec<Poset> {
    assert!((1..=MAX_WORLDS).contains(&n), "poset size out of range");
    let mut layer = vec![Poset { up: vec![1] }];
    for k in 1..n {
        let mut seen = HashMap::new();
        let mut next = Vec::new();
        for p in &layer {
            // new world k sits strictly above a nonempty down-set of p
            for down in down_sets(p).into_iter().filter(|&d| d != 0) {
                let mut up = p.up.clone();
                for (w, m) in up.iter_mut().enumerate() {
                    if down >> w & 1 == 1 {
                        *m |= 1 << k;
                    }
                }
                up.push(1 << k);
                let q = Poset { up };
                let key = q.canonical_key();
                if seen.insert(key, ()).is_none() {
                    next.push(q);
                }
            }
        }
        layer = next;
    }
    layer.sort_by_cached_key(|p| p.canonical_key());
    layer
}

fn down_sets(p: &Poset) -> Vec<u32> {
    let n = p.size();
    let all = (1u32 << n) - 1;
    p.up_sets().into_iter().map(|u| all & !u).collect()
}

/// All rooted posets with at most `max_worlds` elements, smallest first.
pub fn posets_up_to(max_worlds: usize) -> &'static [Poset] {
    static CACHE: OnceLock<Vec<Poset>> = OnceLock::new();
    let all = CACHE.get_or_init(|| (1..=MAX_WORLDS).flat_map(rooted_posets).collect());
    let end = all.iter().position(|p| p.size() > max_worlds).unwrap_or(all.len());
    &all[..end]
}

#[derive(Clone, Copy)]
enum Op {
    Slot(usize),
    False,
    Imp(usize, usize),
    And(usize, usize),
    Or(usize, usize),
}

/// A formula flattened into distinct subformulas in dependency order.
struct Program {
    ops: Vec<Op>,
    slots: Vec<String>,
}

impl Program {
    fn compile(f: &Formula, logic: Logic) -> Program {
        let mut slots: Vec<String> = f.atoms().into_iter().collect();
        let bot_slot = (logic == Logic::Minimal && f.contains_bot()).then(|| {
            slots.push(BOT_ATOM.to_string());
            slots.len() - 1
        });
        let mut index = HashMap::new();
        let mut ops = Vec::new();
        fn go(
            f: &Formula,
            slots: &[String],
            bot_slot: Option<usize>,
            index: &mut HashMap<Formula, usize>,
            ops: &mut Vec<Op>,
        ) -> usize {
            if let Some(&i) = index.get(f) {
                return i;
            }
            let op = match f.node() {
                Node::Atom(name) => Op::Slot(slots.iter().position(|s| **s == **name).unwrap()),
                Node::Bot => bot_slot.map_or(Op::False, Op::Slot),
                Node::Imp(a, b) => Op::Imp(go(a, slots, bot_slot, index, ops), go(b, slots, bot_slot, index, ops)),
                Node::And(a, b) => Op::And(go(a, slots, bot_slot, index, ops), go(b, slots, bot_slot, index, ops)),
                Node::Or(a, b) => Op::Or(go(a, slots, bot_slot, index, ops), go(b, slots, bot_slot, index, ops)),
            };
            ops.push(op);
            index.insert(f.clone(), ops.len() - 1);
            ops.len() - 1
        }
        go(f, &slots, bot_slot, &mut index, &mut ops);
        Program { ops, slots }
    }
}

/// Per-poset valuation masks: `[block][slot][world]`.
struct BlockTable {
    up_sets: Vec<u32>,
    combos: u64,
    masks: Vec<u64>,
}

impl BlockTable {
    fn build(poset: &Poset, slots: usize) -> BlockTable {
        let n = poset.size();
        let up_sets = poset.up_sets();
        let u = up_sets.len() as u64;
        let combos = u.pow(slots as u32);
        let blocks = combos.div_ceil(64) as usize;
        let mut masks = vec![0u64; blocks * slots * n];
        let mut digits = vec![0usize; slots];
        for idx in 0..combos {
            let (block, bit) = ((idx / 64) as usize, idx % 64);
            for (s, &d) in digits.iter().enumerate() {
                let set = up_sets[d];
                for w in 0..n {
                    if set >> w & 1 == 1 {
                        masks[(block * slots + s) * n + w] |= 1 << bit;
                    }
                }
            }
            // odometer, slot 0 fastest
            for d in digits.iter_mut() {
                *d += 1;
                if *d < u as usize {
                    break;
                }
                *d = 0;
            }
        }
        BlockTable { up_sets, combos, masks }
    }

    fn digits(&self, mut idx: u64, slots: usize) -> Vec<usize> {
        let u = self.up_sets.len() as u64;
        (0..slots)
            .map(|_| {
                let d = (idx % u) as usize;
                idx /= u;
                d
            })
            .collect()
    }
}

/// Reusable countermodel searcher; caches valuation tables across calls.
pub struct KripkeSearcher {
    budget: KripkeBudget,
    tables: HashMap<(usize, usize), BlockTable>,
    scratch: Vec<u64>,
}

impl KripkeSearcher {
    pub fn new(budget: KripkeBudget) -> KripkeSearcher {
        assert!(budget.max_worlds <= MAX_WORLDS, "at most {MAX_WORLDS} worlds");
        KripkeSearcher { budget, tables: HashMap::new(), scratch: Vec::new() }
    }

    pub fn budget(&self) -> KripkeBudget {
        self.budget
    }

    pub fn search(&mut self, f: &Formula, logic: Logic) -> KripkeOutcome {
        let program = Program::compile(f, logic);
        let k = program.slots.len();
        let root = program.ops.len() - 1;
        for (pi, poset) in posets_up_to(self.budget.max_worlds).iter().enumerate() {
            let n = poset.size();
            let u = poset.up_sets().len() as u64;
            if u.checked_pow(k as u32).map_or(true, |c| c > self.budget.max_valuations) {
                continue;
            }
            let table = self.tables.entry((pi, k)).or_insert_with(|| BlockTable::build(poset, k));
            let blocks = table.combos.div_ceil(64) as usize;
            self.scratch.resize(program.ops.len() * n, 0);
            let vals = &mut self.scratch;
            for block in 0..blocks {
                let valid = if (block as u64 + 1) * 64 <= table.combos {
                    u64::MAX
                } else {
                    (1u64 << (table.combos % 64)) - 1
                };
                let masks = &table.masks[block * k * n..(block + 1) * k * n];
                for (i, op) in program.ops.iter().enumerate() {
                    match *op {
                        Op::Slot(s) => vals[i * n..(i + 1) * n].copy_from_slice(&masks[s * n..(s + 1) * n]),
                        Op::False => vals[i * n..(i + 1) * n].fill(0),
                        Op::And(a, b) => {
                            for w in 0..n {
                                vals[i * n + w] = vals[a * n + w] & vals[b * n + w];
                            }
                        }
                        Op::Or(a, b) => {
                            for w in 0..n {
                                vals[i * n + w] = vals[a * n + w] | vals[b * n + w];
                            }
                        }
                        Op::Imp(a, b) => {
                            let mut local = [0u64; MAX_WORLDS];
                            for v in 0..n {
                                local[v] = !vals[a * n + v] | vals[b * n + v];
                            }
                            for w in 0..n {
                                let mut acc = u64::MAX;
                                let mut m = poset.up[w];
                                while m != 0 {
                                    acc &= local[m.trailing_zeros() as usize];
                                    m &= m - 1;
                                }
                                vals[i * n + w] = acc;
                            }
                        }
                    }
                }
                let failing = !vals[root * n] & valid;
                if failing != 0 {
                    let idx = block as u64 * 64 + failing.trailing_zeros() as u64;
                    let digits = table.digits(idx, k);
                    let valuation = (0..n)
                        .map(|w| {
                            digits
                                .iter()
                                .enumerate()
                                .filter(|&(_, &d)| table.up_sets[d] >> w & 1 == 1)
                                .map(|(s, _)| program.slots[s].clone())
                                .collect()
                        })
                        .collect();
                    let order: Vec<(usize, usize)> = (0..n)
                        .flat_map(|w| (0..n).filter(move |&v| poset.up[w] >> v & 1 == 1).map(move |v| (w, v)))
                        .collect();
                    let model = KripkeModel::new(n, &order, valuation, logic)
                        .expect("enumerated valuations are persistent");
                    return KripkeOutcome::Refuted { model, world: 0 };
                }
            }
        }
        KripkeOutcome::Unknown
    }
}

/// One-shot countermodel search.
pub fn kripke_countermodel(f: &Formula, max_worlds: usize, logic: Logic) -> KripkeOutcome {
    let budget = KripkeBudget { max_worlds, ..KripkeBudget::default() };
    KripkeSearcher::new(budget).search(f, logic)
}
