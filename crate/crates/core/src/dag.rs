//! Tree-to-DAG compression of natural-deduction derivations.
//!
//! `L1` shares structurally identical subderivations after canonical
//! relabelling and is lossless. `L2` also merges any two nodes with the same
//! formula, the same open assumptions and the same free discharge labels;
//! the first one met in post-order stands for all of them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::DagError;
use crate::formula::Formula;
use crate::nd::{canonicalize, check_schema, discharged, NdDerivation, NdProfile, NdRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    L1,
    L2,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::L1 => "l1",
            Level::L2 => "l2",
        })
    }
}

impl FromStr for Level {
    type Err = DagError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "l1" | "l1-share" => Ok(Level::L1),
            "l2" | "l2-merge" => Ok(Level::L2),
            _ => Err(DagError::Malformed(format!("unknown compression level `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DagNode {
    pub formula: Formula,
    /// `None` for an assumption leaf.
    pub rule: Option<NdRule>,
    pub children: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<u32>,
    /// Open assumption formulas below this node, sorted, without repeats.
    pub fingerprint: Vec<Formula>,
    /// Labelled leaves below this node whose binder lies above it.
    pub free: Vec<(u32, Formula)>,
}

/// Nodes in post-order from the root, so every child id is smaller than its
/// parent's and the root is last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "DagRepr", try_from = "DagRepr")]
pub struct DagDeduction {
    pub nodes: Vec<DagNode>,
    pub root: usize,
}

#[derive(Serialize, Deserialize)]
struct DagRepr {
    root: usize,
    nodes: BTreeMap<usize, DagNode>,
}

impl From<DagDeduction> for DagRepr {
    fn from(g: DagDeduction) -> Self {
        DagRepr { root: g.root, nodes: g.nodes.into_iter().enumerate().collect() }
    }
}

impl TryFrom<DagRepr> for DagDeduction {
    type Error = DagError;

    fn try_from(r: DagRepr) -> Result<Self, Self::Error> {
        if r.nodes.keys().enumerate().any(|(i, k)| i != *k) {
            return Err(DagError::Malformed("node ids must be 0..n".into()));
        }
        if r.root >= r.nodes.len() {
            return Err(DagError::Malformed(format!("root {} is not a node", r.root)));
        }
        Ok(DagDeduction { nodes: r.nodes.into_values().collect(), root: r.root })
    }
}

type Context = (Vec<Formula>, Vec<(u32, Formula)>);

/// Open assumptions and free labels of a node from those of its children.
/// Fails when a binder's label reaches a leaf of the wrong formula.
fn context(
    formula: &Formula,
    rule: Option<NdRule>,
    label: Option<u32>,
    children: &[(&Formula, &[Formula], &[(u32, Formula)])],
) -> Result<Context, String> {
    let Some(rule) = rule else {
        return Ok(match label {
            None => (vec![formula.clone()], vec![]),
            Some(l) => (vec![], vec![(l, formula.clone())]),
        });
    };
    let forms: Vec<&Formula> = children.iter().map(|c| c.0).collect();
    let mut fp = BTreeSet::new();
    let mut free = BTreeSet::new();
    for (i, (_, cfp, cfree)) in children.iter().enumerate() {
        fp.extend(cfp.iter().cloned());
        let bound = label.and_then(|l| discharged(rule, formula, &forms, i).map(|f| (l, f)));
        for (l, f) in cfree.iter() {
            match &bound {
                Some((bl, bf)) if bl == l => {
                    if bf != f {
                        return Err(format!("label {l} discharges `{bf}` but reaches `{f}`"));
                    }
                }
                _ => {
                    free.insert((*l, f.clone()));
                }
            }
        }
    }
    Ok((fp.into_iter().collect(), free.into_iter().collect()))
}

#[derive(PartialEq, Eq, Hash)]
enum Key {
    Shape(Formula, Option<NdRule>, Option<u32>, Vec<usize>),
    Context(Formula, Vec<Formula>, Vec<(u32, Formula)>),
}

struct Builder {
    level: Level,
    nodes: Vec<DagNode>,
    index: HashMap<Key, usize>,
}

impl Builder {
    fn build(&mut self, t: &NdDerivation) -> usize {
        let children: Vec<usize> = t.children().iter().map(|c| self.build(c)).collect();
        let kids: Vec<(&Formula, &[Formula], &[(u32, Formula)])> = children
            .iter()
            .map(|&c| (&self.nodes[c].formula, self.nodes[c].fingerprint.as_slice(), self.nodes[c].free.as_slice()))
            .collect();
        let (fingerprint, free) =
            context(t.formula(), t.rule(), t.label(), &kids).expect("canonical input has well-scoped labels");
        let key = match self.level {
            Level::L1 => Key::Shape(t.formula().clone(), t.rule(), t.label(), children.clone()),
            Level::L2 => Key::Context(t.formula().clone(), fingerprint.clone(), free.clone()),
        };
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(DagNode {
            formula: t.formula().clone(),
            rule: t.rule(),
            children,
            label: t.label(),
            fingerprint,
            free,
        });
        self.index.insert(key, id);
        id
    }
}

/// Keeps the nodes reachable from `root`, renumbered in post-order.
fn prune(nodes: &[DagNode], root: usize) -> DagDeduction {
    fn go(nodes: &[DagNode], n: usize, map: &mut HashMap<usize, usize>, out: &mut Vec<DagNode>) -> usize {
        if let Some(&m) = map.get(&n) {
            return m;
        }
        let children = nodes[n].children.iter().map(|&c| go(nodes, c, map, out)).collect();
        let id = out.len();
        out.push(DagNode { children, ..nodes[n].clone() });
        map.insert(n, id);
        id
    }
    let mut out = Vec::new();
    let root = go(nodes, root, &mut HashMap::new(), &mut out);
    DagDeduction { nodes: out, root }
}

pub fn compress(t: &NdDerivation, level: Level) -> Result<DagDeduction, DagError> {
    let canonical = canonicalize(t).map_err(|e| DagError::Malformed(e.to_string()))?;
    let mut b = Builder { level, nodes: Vec::new(), index: HashMap::new() };
    let root = b.build(&canonical);
    Ok(prune(&b.nodes, root))
}

/// Node ids in an order where children come first, or the node closing a
/// cycle.
fn topological(g: &DagDeduction) -> Result<Vec<usize>, DagError> {
    let n = g.nodes.len();
    let mut state = vec![0u8; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        state[start] = 1;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if let Some(&c) = g.nodes[node].children.get(*next) {
                *next += 1;
                if c >= n {
                    return Err(DagError::MissingChild { node, child: c });
                }
                match state[c] {
                    0 => {
                        state[c] = 1;
                        stack.push((c, 0));
                    }
                    1 => return Err(DagError::Cycle(c)),
                    _ => {}
                }
            } else {
                state[node] = 2;
                order.push(node);
                stack.pop();
            }
        }
    }
    Ok(order)
}

pub fn unfold(g: &DagDeduction) -> Result<NdDerivation, DagError> {
    topological(g)?;
    if g.root >= g.nodes.len() {
        return Err(DagError::Malformed(format!("root {} is not a node", g.root)));
    }
    fn go(g: &DagDeduction, n: usize) -> NdDerivation {
        let node = &g.nodes[n];
        match node.rule {
            None => NdDerivation::Assumption { formula: node.formula.clone(), label: node.label },
            Some(rule) => NdDerivation::Inference {
                formula: node.formula.clone(),
                rule,
                label: node.label,
                children: node.children.iter().map(|&c| go(g, c)).collect(),
            },
        }
    }
    canonicalize(&go(g, g.root)).map_err(|e| DagError::Malformed(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DagVerdict {
    Valid,
    Invalid { node: Option<usize>, reason: String },
}

impl DagVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, DagVerdict::Valid)
    }
}

/// Local check of every node: acyclicity, reachability, rule schemas,
/// discharges, and the stored fingerprints against recomputed ones.
pub fn check_dag(g: &DagDeduction, profile: NdProfile) -> DagVerdict {
    let invalid = |node: Option<usize>, reason: String| DagVerdict::Invalid { node, reason };
    if g.root >= g.nodes.len() {
        return invalid(None, format!("root {} is not a node", g.root));
    }
    let order = match topological(g) {
        Ok(o) => o,
        Err(e) => return invalid(None, e.to_string()),
    };
    let mut reached = vec![false; g.nodes.len()];
    let mut stack = vec![g.root];
    while let Some(n) = stack.pop() {
        if !std::mem::replace(&mut reached[n], true) {
            stack.extend(&g.nodes[n].children);
        }
    }
    if let Some(n) = reached.iter().position(|r| !r) {
        return invalid(Some(n), "unreachable from the root".into());
    }
    for n in order {
        let node = &g.nodes[n];
        let kids: Vec<(&Formula, &[Formula], &[(u32, Formula)])> = node
            .children
            .iter()
            .map(|&c| (&g.nodes[c].formula, g.nodes[c].fingerprint.as_slice(), g.nodes[c].free.as_slice()))
            .collect();
        match node.rule {
            None if !node.children.is_empty() => return invalid(Some(n), "assumption with children".into()),
            None => {}
            Some(rule) => {
                let forms: Vec<&Formula> = kids.iter().map(|k| k.0).collect();
                if let Err(reason) = check_schema(rule, &node.formula, &forms, profile) {
                    return invalid(Some(n), reason);
                }
                if node.label.is_some() && !rule.is_binder() {
                    return invalid(Some(n), format!("{rule} carries a label"));
                }
            }
        }
        match context(&node.formula, node.rule, node.label, &kids) {
            Err(reason) => return invalid(Some(n), reason),
            Ok((fp, free)) => {
                if fp != node.fingerprint {
                    return invalid(Some(n), "stored fingerprint disagrees with the children".into());
                }
                if free != node.free {
                    return invalid(Some(n), "stored free labels disagree with the children".into());
                }
            }
        }
    }
    if let Some((l, f)) = g.nodes[g.root].free.first() {
        return invalid(Some(g.root), format!("label {l} on `{f}` has no binder"));
    }
    DagVerdict::Valid
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DagMetrics {
    pub size: usize,
    pub height: usize,
    pub foundation: usize,
}

pub fn dag_metrics(g: &DagDeduction) -> DagMetrics {
    let mut height = vec![0usize; g.nodes.len()];
    // ids are post-order, so children are done first
    for (i, n) in g.nodes.iter().enumerate() {
        height[i] = n.children.iter().map(|&c| height[c] + 1).max().unwrap_or(0);
    }
    let foundation = g.nodes.iter().map(|n| &n.formula).collect::<BTreeSet<_>>().len();
    DagMetrics { size: g.nodes.len(), height: height.get(g.root).copied().unwrap_or(0), foundation }
}

impl DagDeduction {
    pub fn root_node(&self) -> &DagNode {
        &self.nodes[self.root]
    }

    /// Nodes with more than one parent.
    pub fn shared(&self) -> usize {
        let mut parents = vec![0usize; self.nodes.len()];
        for n in &self.nodes {
            for &c in &n.children {
                parents[c] += 1;
            }
        }
        parents.iter().filter(|&&p| p > 1).count()
    }
}
