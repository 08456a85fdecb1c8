//! Formulas over propositions, falsity and implication, their classical
//! semantics, and the surface connectives that desugar into them.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Words the text syntax reserves for the constants; never valid atoms.
pub const RESERVED_WORDS: [&str; 2] = ["false", "true"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropIdError {
    #[error("proposition identifier is empty")]
    Empty,
    #[error("proposition identifier {0:?} must start with a letter or underscore")]
    BadStart(String),
    #[error("proposition identifier {0:?} contains {1:?}; only letters, digits and underscore are allowed")]
    BadChar(String, char),
    #[error("proposition identifier {0:?} is a reserved word")]
    Reserved(String),
}

/// Name of a proposition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PropId(String);

impl PropId {
    pub fn new(name: impl Into<String>) -> Result<Self, PropIdError> {
        let name = name.into();
        let mut chars = name.chars();
        match chars.next() {
            None => return Err(PropIdError::Empty),
            Some(c) if !(c.is_alphabetic() || c == '_') => return Err(PropIdError::BadStart(name)),
            Some(_) => {}
        }
        if let Some(bad) = chars.find(|c| !(c.is_alphanumeric() || *c == '_')) {
            return Err(PropIdError::BadChar(name, bad));
        }
        if RESERVED_WORDS.contains(&name.as_str()) {
            return Err(PropIdError::Reserved(name));
        }
        Ok(PropId(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True if `c` may appear after the first character of an identifier.
    pub fn is_continue_char(c: char) -> bool {
        c.is_alphanumeric() || c == '_'
    }

    /// True if `c` may start an identifier.
    pub fn is_start_char(c: char) -> bool {
        c.is_alphabetic() || c == '_'
    }
}

impl TryFrom<String> for PropId {
    type Error = PropIdError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        PropId::new(value)
    }
}

impl TryFrom<&str> for PropId {
    type Error = PropIdError;

    fn try_from(value: &str) -> Result<Self, Self::Error> {
        PropId::new(value)
    }
}

impl From<PropId> for String {
    fn from(id: PropId) -> String {
        id.0
    }
}

impl fmt::Display for PropId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The three-constructor core language the prover works on.
///
/// Subformulas sit behind `Arc` so the prover can move them between
/// sequent lists without deep copies.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoreFormula {
    Pro(PropId),
    Falsity,
    Imp(Arc<CoreFormula>, Arc<CoreFormula>),
}

impl CoreFormula {
    pub fn pro(id: PropId) -> Self {
        CoreFormula::Pro(id)
    }

    pub fn imp(antecedent: CoreFormula, consequent: CoreFormula) -> Self {
        CoreFormula::Imp(Arc::new(antecedent), Arc::new(consequent))
    }

    pub fn neg(f: CoreFormula) -> Self {
        CoreFormula::imp(f, CoreFormula::Falsity)
    }

    /// Number of constructors in the tree.
    pub fn size(&self) -> usize {
        match self {
            CoreFormula::Pro(_) | CoreFormula::Falsity => 1,
            CoreFormula::Imp(p, q) => 1 + p.size() + q.size(),
        }
    }

    /// Number of `Imp` nodes.
    pub fn connectives(&self) -> usize {
        match self {
            CoreFormula::Pro(_) | CoreFormula::Falsity => 0,
            CoreFormula::Imp(p, q) => 1 + p.connectives() + q.connectives(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<PropId> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<PropId>) {
        match self {
            CoreFormula::Pro(n) => {
                out.insert(n.clone());
            }
            CoreFormula::Falsity => {}
            CoreFormula::Imp(p, q) => {
                p.collect_atoms(out);
                q.collect_atoms(out);
            }
        }
    }

    /// View as a surface formula, for printing.
    pub fn to_ext(&self) -> ExtFormula {
        match self {
            CoreFormula::Pro(n) => ExtFormula::Atom(n.clone()),
            CoreFormula::Falsity => ExtFormula::Bottom,
            CoreFormula::Imp(p, q) => ExtFormula::implies(p.to_ext(), q.to_ext()),
        }
    }
}

pub fn size(f: &CoreFormula) -> usize {
    f.size()
}

pub fn atoms(f: &CoreFormula) -> BTreeSet<PropId> {
    f.atoms()
}

/// A truth-value assignment: the listed propositions are true, every other
/// proposition is false.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Interpretation {
    true_props: BTreeSet<PropId>,
}

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn holds(&self, id: &PropId) -> bool {
        self.true_props.contains(id)
    }

    pub fn set_true(&mut self, id: PropId) {
        self.true_props.insert(id);
    }

    pub fn true_props(&self) -> &BTreeSet<PropId> {
        &self.true_props
    }

    /// `name=true`/`name=false` for each of `over`, space separated.
    pub fn assignment_string<'a>(&self, over: impl IntoIterator<Item = &'a PropId>) -> String {
        over.into_iter()
            .map(|id| format!("{}={}", id, self.holds(id)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl FromIterator<PropId> for Interpretation {
    fn from_iter<T: IntoIterator<Item = PropId>>(iter: T) -> Self {
        Interpretation {
            true_props: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, id) in self.true_props.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{id}")?;
        }
        f.write_str("}")
    }
}

pub fn eval(i: &Interpretation, f: &CoreFormula) -> bool {
    match f {
        CoreFormula::Pro(n) => i.holds(n),
        CoreFormula::Falsity => false,
        CoreFormula::Imp(p, q) => !eval(i, p) || eval(i, q),
    }
}

/// Truth of the sequent `left ⊢ right` under `i`: if every formula on the
/// left holds then some formula on the right holds.
pub fn eval_sequent(left: &[CoreFormula], right: &[CoreFormula], i: &Interpretation) -> bool {
    !left.iter().all(|f| eval(i, f)) || right.iter().any(|g| eval(i, g))
}

/// Surface syntax. Everything beyond atoms, falsity and implication is
/// sugar, see [`desugar`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtFormula {
    Atom(PropId),
    Bottom,
    Top,
    Not(Box<ExtFormula>),
    And(Box<ExtFormula>, Box<ExtFormula>),
    Or(Box<ExtFormula>, Box<ExtFormula>),
    Implies(Box<ExtFormula>, Box<ExtFormula>),
    Iff(Box<ExtFormula>, Box<ExtFormula>),
}

impl ExtFormula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(e: ExtFormula) -> Self {
        ExtFormula::Not(Box::new(e))
    }

    pub fn and(l: ExtFormula, r: ExtFormula) -> Self {
        ExtFormula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: ExtFormula, r: ExtFormula) -> Self {
        ExtFormula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: ExtFormula, r: ExtFormula) -> Self {
        ExtFormula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: ExtFormula, r: ExtFormula) -> Self {
        ExtFormula::Iff(Box::new(l), Box::new(r))
    }

    pub fn atoms(&self) -> BTreeSet<PropId> {
        fn go(e: &ExtFormula, out: &mut BTreeSet<PropId>) {
            match e {
                ExtFormula::Atom(n) => {
                    out.insert(n.clone());
                }
                ExtFormula::Bottom | ExtFormula::Top => {}
                ExtFormula::Not(x) => go(x, out),
                ExtFormula::And(l, r)
                | ExtFormula::Or(l, r)
                | ExtFormula::Implies(l, r)
                | ExtFormula::Iff(l, r) => {
                    go(l, out);
                    go(r, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }

    /// Number of connective nodes (everything except atoms and constants).
    pub fn connectives(&self) -> usize {
        match self {
            ExtFormula::Atom(_) | ExtFormula::Bottom | ExtFormula::Top => 0,
            ExtFormula::Not(x) => 1 + x.connectives(),
            ExtFormula::And(l, r)
            | ExtFormula::Or(l, r)
            | ExtFormula::Implies(l, r)
            | ExtFormula::Iff(l, r) => 1 + l.connectives() + r.connectives(),
        }
    }

    /// `size(desugar(self))`, computed without building the core formula.
    ///
    /// `Iff` duplicates both operands, so nested biconditionals grow
    /// exponentially; the result saturates instead of overflowing.
    pub fn desugared_size(&self) -> u64 {
        match self {
            ExtFormula::Atom(_) | ExtFormula::Bottom => 1,
            ExtFormula::Top => 3,
            ExtFormula::Not(x) => x.desugared_size().saturating_add(2),
            // ((l -> (r -> F)) -> F)
            ExtFormula::And(l, r) => l.desugared_size().saturating_add(r.desugared_size()).saturating_add(5),
            // ((l -> F) -> r)
            ExtFormula::Or(l, r) => l.desugared_size().saturating_add(r.desugared_size()).saturating_add(3),
            ExtFormula::Implies(l, r) => l.desugared_size().saturating_add(r.desugared_size()).saturating_add(1),
            // and(l -> r, r -> l)
            ExtFormula::Iff(l, r) => l
                .desugared_size()
                .saturating_add(r.desugared_size())
                .saturating_add(1)
                .saturating_mul(2)
                .saturating_add(5),
        }
    }
}

/// Translate derived connectives into the implication/falsity core.
pub fn desugar(e: &ExtFormula) -> CoreFormula {
    match e {
        ExtFormula::Atom(n) => CoreFormula::Pro(n.clone()),
        ExtFormula::Bottom => CoreFormula::Falsity,
        ExtFormula::Top => CoreFormula::imp(CoreFormula::Falsity, CoreFormula::Falsity),
        ExtFormula::Not(p) => CoreFormula::neg(desugar(p)),
        ExtFormula::And(p, q) => core_and(desugar(p), desugar(q)),
        ExtFormula::Or(p, q) => CoreFormula::imp(CoreFormula::neg(desugar(p)), desugar(q)),
        ExtFormula::Implies(p, q) => CoreFormula::imp(desugar(p), desugar(q)),
        ExtFormula::Iff(p, q) => {
            // Both directions share the desugared operands.
            let p = Arc::new(desugar(p));
            let q = Arc::new(desugar(q));
            core_and(
                CoreFormula::Imp(p.clone(), q.clone()),
                CoreFormula::Imp(q, p),
            )
        }
    }
}

fn core_and(p: CoreFormula, q: CoreFormula) -> CoreFormula {
    CoreFormula::neg(CoreFormula::imp(p, CoreFormula::neg(q)))
}

pub fn eval_ext(i: &Interpretation, e: &ExtFormula) -> bool {
    match e {
        ExtFormula::Atom(n) => i.holds(n),
        ExtFormula::Bottom => false,
        ExtFormula::Top => true,
        ExtFormula::Not(p) => !eval_ext(i, p),
        ExtFormula::And(p, q) => eval_ext(i, p) && eval_ext(i, q),
        ExtFormula::Or(p, q) => eval_ext(i, p) || eval_ext(i, q),
        ExtFormula::Implies(p, q) => !eval_ext(i, p) || eval_ext(i, q),
        ExtFormula::Iff(p, q) => eval_ext(i, p) == eval_ext(i, q),
    }
}
