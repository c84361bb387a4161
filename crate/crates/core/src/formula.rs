//! Propositional formulas over atoms, `⊥`, `→`, `∧` and `∨`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::FormulaError;

/// Atom names starting with this prefix are reserved for generated atoms.
pub const FRESH_PREFIX: &str = "_f";

/// A propositional formula. Cloning is cheap: subtrees are shared.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Formula(Arc<Node>);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Atom(Arc<str>),
    Bot,
    Imp(Formula, Formula),
    And(Formula, Formula),
    Or(Formula, Formula),
}

/// Binary connectives, in the order used by rule tables and printers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connective {
    Imp,
    And,
    Or,
}

impl Connective {
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Imp => "->",
            Connective::And => "&",
            Connective::Or => "|",
        }
    }
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula(Arc::new(Node::Atom(Arc::from(name))))
    }

    pub fn bot() -> Formula {
        Formula(Arc::new(Node::Bot))
    }

    pub fn imp(left: Formula, right: Formula) -> Formula {
        Formula(Arc::new(Node::Imp(left, right)))
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula(Arc::new(Node::And(left, right)))
    }

    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula(Arc::new(Node::Or(left, right)))
    }

    pub fn binary(conn: Connective, left: Formula, right: Formula) -> Formula {
        match conn {
            Connective::Imp => Formula::imp(left, right),
            Connective::And => Formula::and(left, right),
            Connective::Or => Formula::or(left, right),
        }
    }

    /// `f -> bot`
    pub fn neg(f: Formula) -> Formula {
        Formula::imp(f, Formula::bot())
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn ptr_eq(&self, other: &Formula) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn is_atom(&self) -> bool {
        matches!(self.node(), Node::Atom(_))
    }

    pub fn is_bot(&self) -> bool {
        matches!(self.node(), Node::Bot)
    }

    /// Atoms and `⊥`: the formulas no rule decomposes.
    pub fn is_atomic(&self) -> bool {
        matches!(self.node(), Node::Atom(_) | Node::Bot)
    }

    pub fn atom_name(&self) -> Option<&str> {
        match self.node() {
            Node::Atom(name) => Some(name),
            _ => None,
        }
    }

    /// Splits a binary formula into its connective and operands.
    pub fn as_binary(&self) -> Option<(Connective, &Formula, &Formula)> {
        match self.node() {
            Node::Imp(a, b) => Some((Connective::Imp, a, b)),
            Node::And(a, b) => Some((Connective::And, a, b)),
            Node::Or(a, b) => Some((Connective::Or, a, b)),
            Node::Atom(_) | Node::Bot => None,
        }
    }

    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        match self.node() {
            Node::Imp(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_and(&self) -> Option<(&Formula, &Formula)> {
        match self.node() {
            Node::And(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_or(&self) -> Option<(&Formula, &Formula)> {
        match self.node() {
            Node::Or(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Node count of the parse tree: atom and `⊥` occurrences plus connectives.
    pub fn len(&self) -> usize {
        match self.as_binary() {
            Some((_, a, b)) => 1 + a.len() + b.len(),
            None => 1,
        }
    }

    pub fn connective_count(&self) -> usize {
        match self.as_binary() {
            Some((_, a, b)) => 1 + a.connective_count() + b.connective_count(),
            None => 0,
        }
    }

    pub fn depth(&self) -> usize {
        match self.as_binary() {
            Some((_, a, b)) => 1 + a.depth().max(b.depth()),
            None => 0,
        }
    }

    pub fn measure(&self) -> FormulaMeasure {
        FormulaMeasure {
            length: self.len(),
            connective_count: self.connective_count(),
            atom_set: self.atoms(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self.node() {
            Node::Atom(name) => {
                out.insert(name.to_string());
            }
            Node::Bot => {}
            Node::Imp(a, b) | Node::And(a, b) | Node::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn contains_bot(&self) -> bool {
        match self.node() {
            Node::Bot => true,
            Node::Atom(_) => false,
            Node::Imp(a, b) | Node::And(a, b) | Node::Or(a, b) => {
                a.contains_bot() || b.contains_bot()
            }
        }
    }

    pub fn contains_atom(&self, name: &str) -> bool {
        match self.node() {
            Node::Atom(n) => &**n == name,
            Node::Bot => false,
            Node::Imp(a, b) | Node::And(a, b) | Node::Or(a, b) => {
                a.contains_atom(name) || b.contains_atom(name)
            }
        }
    }

    /// True when only atoms, `⊥` and `→` occur.
    pub fn is_implicational(&self) -> bool {
        match self.node() {
            Node::Atom(_) | Node::Bot => true,
            Node::Imp(a, b) => a.is_implicational() && b.is_implicational(),
            Node::And(..) | Node::Or(..) => false,
        }
    }

    /// All subtrees, including the formula itself.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if out.insert(self.clone()) {
            if let Some((_, a, b)) = self.as_binary() {
                a.collect_subformulas(out);
                b.collect_subformulas(out);
            }
        }
    }

    /// Least superset of the subformulas closed under `(α→β)→γ ⟹ β→γ`.
    pub fn semi_subformulas(&self) -> BTreeSet<Formula> {
        semi_subformula_closure(std::iter::once(self))
    }

    /// Rebuilds the formula bottom-up, letting `leaf` rewrite atoms and `⊥`.
    pub fn map_atomic(&self, leaf: &mut impl FnMut(&Formula) -> Formula) -> Formula {
        match self.as_binary() {
            Some((conn, a, b)) => {
                let na = a.map_atomic(leaf);
                let nb = b.map_atomic(leaf);
                if na.ptr_eq(a) && nb.ptr_eq(b) {
                    self.clone()
                } else {
                    Formula::binary(conn, na, nb)
                }
            }
            None => leaf(self),
        }
    }

    /// Replaces every occurrence of the atom `name` by `replacement`.
    pub fn substitute_atom(&self, name: &str, replacement: &Formula) -> Formula {
        self.map_atomic(&mut |leaf| match leaf.atom_name() {
            Some(n) if n == name => replacement.clone(),
            _ => leaf.clone(),
        })
    }

    /// Replaces every `⊥` by the atom `fresh`.
    pub fn atomize_bot(&self, fresh: &str) -> Result<Formula, FormulaError> {
        if self.contains_atom(fresh) {
            return Err(FormulaError::FreshCollision(fresh.to_string()));
        }
        Ok(self.atomize_bot_unchecked(fresh))
    }

    fn atomize_bot_unchecked(&self, fresh: &str) -> Formula {
        let atom = Formula::atom(fresh);
        self.map_atomic(&mut |leaf| if leaf.is_bot() { atom.clone() } else { leaf.clone() })
    }

    /// Rewrites `∧` and `∨` into `{→, ⊥}` bottom-up using `table`.
    pub fn imp_encode(&self, table: &EncodingTable) -> Formula {
        match self.node() {
            Node::Atom(_) | Node::Bot => self.clone(),
            Node::Imp(a, b) => Formula::imp(a.imp_encode(table), b.imp_encode(table)),
            Node::And(a, b) => table.and.apply(&a.imp_encode(table), &b.imp_encode(table)),
            Node::Or(a, b) => table.or.apply(&a.imp_encode(table), &b.imp_encode(table)),
        }
    }

    /// Iterator over all subformula occurrences in preorder.
    pub fn preorder(&self) -> impl Iterator<Item = &Formula> {
        let mut stack = vec![self];
        std::iter::from_fn(move || {
            let f = stack.pop()?;
            if let Some((_, a, b)) = f.as_binary() {
                stack.push(b);
                stack.push(a);
            }
            Some(f)
        })
    }
}

/// Closure of the subformulas of `roots` under `(α→β)→γ ⟹ β→γ`.
///
/// Worklist fixpoint; the result is an ordered set so iteration is deterministic.
pub fn semi_subformula_closure<'a>(roots: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<Formula> {
    let mut set = BTreeSet::new();
    let mut work: Vec<Formula> = Vec::new();
    for root in roots {
        for f in root.subformulas() {
            if set.insert(f.clone()) {
                work.push(f);
            }
        }
    }
    while let Some(f) = work.pop() {
        if let Some((ab, c)) = f.as_imp() {
            if let Some((_, b)) = ab.as_imp() {
                let derived = Formula::imp(b.clone(), c.clone());
                if set.insert(derived.clone()) {
                    work.push(derived);
                }
            }
        }
    }
    set
}

/// Smallest `_fN` not occurring in any of `formulas`.
pub fn fresh_atom<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> String {
    let mut used = BTreeSet::new();
    for f in formulas {
        for name in f.atoms() {
            if let Some(n) = name.strip_prefix(FRESH_PREFIX).and_then(|d| d.parse::<u64>().ok()) {
                used.insert(n);
            }
        }
    }
    let n = (0..).find(|n| !used.contains(n)).unwrap();
    format!("{FRESH_PREFIX}{n}")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaMeasure {
    pub length: usize,
    pub connective_count: usize,
    pub atom_set: BTreeSet<String>,
}

/// How one binary connective is spelled in `{→, ⊥}`. `Template` is a formula
/// over the placeholder atoms `a` and `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoding {
    template: Formula,
}

impl Encoding {
    pub fn new(template: Formula) -> Result<Encoding, FormulaError> {
        let atoms = template.atoms();
        if !template.is_implicational() || atoms.iter().any(|a| a != "a" && a != "b") {
            return Err(FormulaError::BadEncoding(template.to_string()));
        }
        Ok(Encoding { template })
    }

    pub fn template(&self) -> &Formula {
        &self.template
    }

    pub fn apply(&self, a: &Formula, b: &Formula) -> Formula {
        self.template.map_atomic(&mut |leaf| match leaf.atom_name() {
            Some("a") => a.clone(),
            Some("b") => b.clone(),
            _ => leaf.clone(),
        })
    }
}

/// Encodings used by [`Formula::imp_encode`]: `∧` as `(a → (b → ⊥)) → ⊥`,
/// `∨` as `¬a → (¬b → ⊥)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingTable {
    pub and: Encoding,
    pub or: Encoding,
}

impl Default for EncodingTable {
    fn default() -> Self {
        let a = Formula::atom("a");
        let b = Formula::atom("b");
        let bot = Formula::bot();
        let and = Formula::imp(
            Formula::imp(a.clone(), Formula::imp(b.clone(), bot.clone())),
            bot.clone(),
        );
        let or = Formula::imp(
            Formula::neg(a),
            Formula::imp(Formula::neg(b), bot),
        );
        EncodingTable {
            and: Encoding { template: and },
            or: Encoding { template: or },
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn set(items: &[&str]) -> BTreeSet<Formula> {
        items.iter().map(|s| f(s)).collect()
    }

    #[test]
    fn lengths() {
        assert_eq!(f("p").measure().length, 1);
        assert_eq!(f("bot").measure().length, 1);
        assert_eq!(f("p -> q").measure().length, 3);
        assert_eq!(f("(p & q) -> p").measure().length, 5);
        assert_eq!(f("(p & q) -> p").measure().connective_count, 2);
    }

    #[test]
    fn subformula_sets() {
        assert_eq!(f("p").subformulas(), set(&["p"]));
        assert_eq!(f("p -> q").subformulas(), set(&["p", "q", "p -> q"]));
        assert_eq!(
            f("(p & q) -> p").subformulas(),
            set(&["p", "q", "p & q", "(p & q) -> p"])
        );
    }

    /// Saturates by repeatedly scanning the whole set until nothing changes.
    fn brute_semi(root: &Formula) -> BTreeSet<Formula> {
        let mut s = root.subformulas();
        loop {
            let mut added = Vec::new();
            for g in &s {
                if let Some((ab, c)) = g.as_imp() {
                    if let Some((_, b)) = ab.as_imp() {
                        let n = Formula::imp(b.clone(), c.clone());
                        if !s.contains(&n) {
                            added.push(n);
                        }
                    }
                }
            }
            if added.is_empty() {
                return s;
            }
            s.extend(added);
        }
    }

    #[test]
    fn semi_subformula_examples() {
        assert_eq!(f("p").semi_subformulas(), set(&["p"]));
        let g = f("(p -> q) -> r");
        let expected = set(&["p", "q", "r", "p -> q", "(p -> q) -> r", "q -> r"]);
        assert_eq!(brute_semi(&g), expected);
        assert_eq!(g.semi_subformulas(), expected);

        let h = f("((p -> q) -> r) -> s");
        let mut expected = h.subformulas();
        expected.insert(f("r -> s"));
        expected.insert(f("q -> r"));
        assert_eq!(brute_semi(&h), expected);
        assert_eq!(h.semi_subformulas(), expected);
    }

    #[test]
    fn encodes_conjunction() {
        let t = EncodingTable::default();
        assert_eq!(f("p & q").imp_encode(&t), f("(p -> (q -> bot)) -> bot"));
        assert_eq!(
            f("(p & q) -> p").imp_encode(&t),
            f("((p -> (q -> bot)) -> bot) -> p")
        );
        assert_eq!(f("p").imp_encode(&t), f("p"));
    }

    #[test]
    fn atomizes_bot() {
        assert_eq!(f("bot -> (p -> bot)").atomize_bot("q").unwrap(), f("q -> (p -> q)"));
        assert_eq!(
            f("((p -> (q -> bot)) -> bot) -> p").atomize_bot("r").unwrap(),
            f("((p -> (q -> r)) -> r) -> p")
        );
        assert_eq!(f("p -> q").atomize_bot("z").unwrap(), f("p -> q"));
        assert!(matches!(
            f("p -> bot").atomize_bot("p"),
            Err(FormulaError::FreshCollision(_))
        ));
    }

    #[test]
    fn fresh_names_skip_used_indices() {
        assert_eq!(fresh_atom([&f("p -> q")]), "_f0");
        assert_eq!(fresh_atom([&f("_f0 -> _f2")]), "_f1");
    }

    #[test]
    fn custom_encoding_rejects_connectives() {
        assert!(Encoding::new(f("a & b")).is_err());
        assert!(Encoding::new(f("a -> c")).is_err());
        assert!(Encoding::new(f("(a -> bot) -> b")).is_ok());
    }
}
