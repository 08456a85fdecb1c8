//! The micro prover: a sequent-calculus decision procedure for the
//! implication/falsity fragment.
//!
//! The prover state is a sequent `(a, b, c, d)` standing for
//! `map Pro a ++ c ⊢ map Pro b ++ d`. Each step applies the first matching
//! clause of the table below, where `x : xs` is a list with head `x`:
//!
//! | # | left `c`          | right `d`         | result                                  | rule            |
//! |---|-------------------|-------------------|-----------------------------------------|-----------------|
//! | 1 | `Pro n : c'`      | `[]`              | `mp (n : a) b c' []`                    | `LShiftPro`     |
//! | 2 | any               | `Pro n : d'`      | `mp a (n : b) c d'`                     | `RShiftPro`     |
//! | 3 | `Falsity : _`     | `[]`              | `true`                                  | `LFalsityAxiom` |
//! | 4 | any               | `Falsity : d'`    | `mp a b c d'`                           | `RFalsityDrop`  |
//! | 5 | `Imp p q : c'`    | `[]`              | `mp a b c' [p] && mp a b (q : c') []`   | `LImpBranch`    |
//! | 6 | any               | `Imp p q : d'`    | `mp a b (p : c) (q : d')`               | `RImpMove`      |
//! | 7 | `[]`              | `[]`              | `common a b`                            | `BasicAxiom`    |
//!
//! The right list is always decomposed before the left one. Every step
//! strictly decreases [`measure`], the summed size of `c` and `d`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::formula::{CoreFormula, Interpretation, PropId};
use crate::kernel::{Derivation, RuleName};
use crate::syntax::pretty_core;

/// Prover state `(a, b, c, d)`. Heads of the lists are at index 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sequent {
    pub a: Vec<PropId>,
    pub b: Vec<PropId>,
    pub c: Vec<CoreFormula>,
    pub d: Vec<CoreFormula>,
}

impl Sequent {
    pub fn new(a: Vec<PropId>, b: Vec<PropId>, c: Vec<CoreFormula>, d: Vec<CoreFormula>) -> Self {
        Sequent { a, b, c, d }
    }

    /// The sequent `⊢ goal` the prover starts from.
    pub fn goal(goal: CoreFormula) -> Self {
        Sequent {
            d: vec![goal],
            ..Sequent::default()
        }
    }

    /// Left-hand side as formulas: `map Pro a ++ c`.
    pub fn antecedents(&self) -> Vec<CoreFormula> {
        self.a.iter().cloned().map(CoreFormula::Pro).chain(self.c.iter().cloned()).collect()
    }

    /// Right-hand side as formulas: `map Pro b ++ d`.
    pub fn succedents(&self) -> Vec<CoreFormula> {
        self.b.iter().cloned().map(CoreFormula::Pro).chain(self.d.iter().cloned()).collect()
    }

    pub fn atoms(&self) -> std::collections::BTreeSet<PropId> {
        let mut out: std::collections::BTreeSet<PropId> =
            self.a.iter().chain(self.b.iter()).cloned().collect();
        for f in self.c.iter().chain(self.d.iter()) {
            f.collect_atoms(&mut out);
        }
        out
    }

    /// Interpretation making exactly the atoms of `a` true. At a failing
    /// basic leaf this falsifies the sequent.
    pub fn leaf_countermodel(&self) -> Interpretation {
        self.a.iter().cloned().collect()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list<T>(items: &[T], show: impl Fn(&T) -> String) -> String {
            items.iter().map(show).collect::<Vec<_>>().join(", ")
        }
        write!(
            f,
            "a=[{}] b=[{}] c=[{}] d=[{}]",
            list(&self.a, |n| n.to_string()),
            list(&self.b, |n| n.to_string()),
            list(&self.c, pretty_core),
            list(&self.d, pretty_core),
        )
    }
}

/// Outcome of [`prove_with_trace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Proved(Derivation),
    /// One interpretation per failing leaf, in left-to-right leaf order.
    Refuted(Vec<Interpretation>),
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved(_))
    }
}

pub fn member(x: &PropId, xs: &[PropId]) -> bool {
    match xs {
        [] => false,
        [n, rest @ ..] => x == n || member(x, rest),
    }
}

pub fn common(xs: &[PropId], ys: &[PropId]) -> bool {
    match ys {
        [] => false,
        [m, rest @ ..] => member(m, xs) || common(xs, rest),
    }
}

/// Summed size of the unprocessed formulas; atoms in `a` and `b` are free.
pub fn measure(s: &Sequent) -> usize {
    s.c.iter().chain(s.d.iter()).map(CoreFormula::size).sum()
}

/// Decide the sequent `s`.
pub fn mp(s: &Sequent) -> bool {
    search(State::from(s), &mut ()).is_ok()
}

/// True iff `f` is valid.
pub fn prove(f: &CoreFormula) -> bool {
    mp(&Sequent::goal(f.clone()))
}

/// A falsifying interpretation taken from the first failing leaf, or `None`
/// when `f` is valid.
pub fn countermodel(f: &CoreFormula) -> Option<Interpretation> {
    search(State::from(&Sequent::goal(f.clone())), &mut ())
        .err()
        .map(|leaf| leaf.a.iter().cloned().collect())
}

/// Run the prover recording one derivation node per clause application.
///
/// Both branches of `LImpBranch` are explored even after one fails, so a
/// refutation lists a countermodel for every failing leaf.
pub fn prove_with_trace(f: &CoreFormula) -> Verdict {
    let outcome = trace(&Sequent::goal(f.clone()));
    match outcome.derivation {
        Some(d) => Verdict::Proved(d),
        None => Verdict::Refuted(
            outcome
                .failing_leaves
                .iter()
                .map(Sequent::leaf_countermodel)
                .collect(),
        ),
    }
}

/// Full result of tracing a sequent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceOutcome {
    /// Present iff every leaf closed.
    pub derivation: Option<Derivation>,
    /// Basic leaves with no shared atom, left to right.
    pub failing_leaves: Vec<Sequent>,
}

pub fn trace(s: &Sequent) -> TraceOutcome {
    let mut failing_leaves = Vec::new();
    let derivation = derive(State::from(s), &mut failing_leaves);
    TraceOutcome {
        derivation,
        failing_leaves,
    }
}

/// Counts of recursion edges checked by [`prove_monitored`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MeasureReport {
    pub steps: u64,
    /// Edges where the measure failed to strictly decrease.
    pub violations: u64,
}

impl MeasureReport {
    pub fn merge(&mut self, other: MeasureReport) {
        self.steps += other.steps;
        self.violations += other.violations;
    }
}

/// [`mp`] with the termination measure recomputed on both sides of every
/// recursive call.
pub fn mp_monitored(s: &Sequent) -> (bool, MeasureReport) {
    let mut report = MeasureReport::default();
    let ok = search(State::from(s), &mut report).is_ok();
    (ok, report)
}

pub fn prove_monitored(f: &CoreFormula) -> (bool, MeasureReport) {
    mp_monitored(&Sequent::goal(f.clone()))
}

trait Observer {
    fn edge(&mut self, from: &State, to: &State);
}

impl Observer for () {
    #[inline]
    fn edge(&mut self, _: &State, _: &State) {}
}

impl Observer for MeasureReport {
    fn edge(&mut self, from: &State, to: &State) {
        self.steps += 1;
        if to.measure() >= from.measure() {
            self.violations += 1;
        }
    }
}

/// Persistent cons list; clones share their tails.
struct List<T>(Option<Arc<Cons<T>>>);

struct Cons<T> {
    head: T,
    tail: List<T>,
}

impl<T> Clone for List<T> {
    fn clone(&self) -> Self {
        List(self.0.clone())
    }
}

impl<T: Clone> List<T> {
    fn nil() -> Self {
        List(None)
    }

    fn cons(&self, head: T) -> Self {
        List(Some(Arc::new(Cons {
            head,
            tail: self.clone(),
        })))
    }

    fn head(&self) -> Option<&T> {
        self.0.as_deref().map(|c| &c.head)
    }

    fn tail(&self) -> List<T> {
        match &self.0 {
            Some(c) => c.tail.clone(),
            None => List::nil(),
        }
    }

    fn iter(&self) -> ListIter<'_, T> {
        ListIter(self.0.as_deref())
    }

    fn to_vec(&self) -> Vec<T> {
        self.iter().cloned().collect()
    }

    fn from_slice(items: &[T]) -> Self {
        items.iter().rev().fold(List::nil(), |acc, x| acc.cons(x.clone()))
    }
}

// Long lists would otherwise drop recursively.
impl<T> Drop for List<T> {
    fn drop(&mut self) {
        let mut next = self.0.take();
        while let Some(node) = next {
            match Arc::try_unwrap(node) {
                Ok(mut cons) => next = cons.tail.0.take(),
                Err(_) => break,
            }
        }
    }
}

struct ListIter<'a, T>(Option<&'a Cons<T>>);

impl<'a, T> Iterator for ListIter<'a, T> {
    type Item = &'a T;

    fn next(&mut self) -> Option<&'a T> {
        let cons = self.0?;
        self.0 = cons.tail.0.as_deref();
        Some(&cons.head)
    }
}

#[derive(Clone)]
struct State {
    a: List<PropId>,
    b: List<PropId>,
    c: List<CoreFormula>,
    d: List<CoreFormula>,
}

impl From<&Sequent> for State {
    fn from(s: &Sequent) -> Self {
        State {
            a: List::from_slice(&s.a),
            b: List::from_slice(&s.b),
            c: List::from_slice(&s.c),
            d: List::from_slice(&s.d),
        }
    }
}

impl State {
    fn to_sequent(&self) -> Sequent {
        Sequent {
            a: self.a.to_vec(),
            b: self.b.to_vec(),
            c: self.c.to_vec(),
            d: self.d.to_vec(),
        }
    }

    fn measure(&self) -> usize {
        self.c.iter().chain(self.d.iter()).map(CoreFormula::size).sum()
    }
}

enum Step {
    /// Clause 3, or clause 7 with a shared atom.
    Closed(RuleName),
    /// Clause 7 without a shared atom.
    Open,
    Unary(RuleName, State),
    /// Clause 5.
    Branch(State, State),
}

/// The clause table, checked top to bottom.
fn step(s: &State) -> Step {
    match (s.c.head(), s.d.head()) {
        (Some(CoreFormula::Pro(n)), None) => Step::Unary(
            RuleName::LShiftPro,
            State {
                a: s.a.cons(n.clone()),
                c: s.c.tail(),
                ..s.clone()
            },
        ),
        (_, Some(CoreFormula::Pro(n))) => Step::Unary(
            RuleName::RShiftPro,
            State {
                b: s.b.cons(n.clone()),
                d: s.d.tail(),
                ..s.clone()
            },
        ),
        (Some(CoreFormula::Falsity), None) => Step::Closed(RuleName::LFalsityAxiom),
        (_, Some(CoreFormula::Falsity)) => Step::Unary(
            RuleName::RFalsityDrop,
            State {
                d: s.d.tail(),
                ..s.clone()
            },
        ),
        (Some(CoreFormula::Imp(p, q)), None) => {
            let rest = s.c.tail();
            let left = State {
                c: rest.clone(),
                d: List::nil().cons((**p).clone()),
                ..s.clone()
            };
            let right = State {
                c: rest.cons((**q).clone()),
                d: List::nil(),
                ..s.clone()
            };
            Step::Branch(left, right)
        }
        (_, Some(CoreFormula::Imp(p, q))) => Step::Unary(
            RuleName::RImpMove,
            State {
                c: s.c.cons((**p).clone()),
                d: s.d.tail().cons((**q).clone()),
                ..s.clone()
            },
        ),
        (None, None) => {
            if s.b.iter().any(|m| s.a.iter().any(|n| n == m)) {
                Step::Closed(RuleName::BasicAxiom)
            } else {
                Step::Open
            }
        }
    }
}

/// Short-circuiting search; returns the first failing leaf.
fn search<O: Observer>(start: State, obs: &mut O) -> Result<(), State> {
    let mut pending = vec![start];
    while let Some(mut s) = pending.pop() {
        loop {
            match step(&s) {
                Step::Closed(_) => break,
                Step::Open => return Err(s),
                Step::Unary(_, next) => {
                    obs.edge(&s, &next);
                    s = next;
                }
                Step::Branch(left, right) => {
                    obs.edge(&s, &left);
                    obs.edge(&s, &right);
                    pending.push(right);
                    s = left;
                }
            }
        }
    }
    Ok(())
}

fn derive(s: State, failing: &mut Vec<Sequent>) -> Option<Derivation> {
    stacker::maybe_grow(64 * 1024, 4 * 1024 * 1024, || derive_node(s, failing))
}

fn derive_node(s: State, failing: &mut Vec<Sequent>) -> Option<Derivation> {
    let conclusion = s.to_sequent();
    match step(&s) {
        Step::Closed(rule) => Some(Derivation::new(conclusion, rule, Vec::new())),
        Step::Open => {
            failing.push(conclusion);
            None
        }
        Step::Unary(rule, next) => {
            drop(s);
            derive(next, failing).map(|p| Derivation::new(conclusion, rule, vec![p]))
        }
        Step::Branch(left, right) => {
            drop(s);
            let l = derive(left, failing);
            let r = derive(right, failing);
            Some(Derivation::new(conclusion, RuleName::LImpBranch, vec![l?, r?]))
        }
    }
}
