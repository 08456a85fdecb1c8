//! Derivation checker.
//!
//! A [`Derivation`] is a tree of rule instances, one rule per prover clause.
//! The checker validates every node against a declarative statement of its
//! rule: the shape the conclusion must have and the exact premise sequents
//! it requires. It never calls into the prover, so a derivation accepted
//! here is trusted independently of the search code that produced it.
//!
//! The rule names are local to this crate.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{CoreFormula, PropId};
use crate::prover::Sequent;

/// One rule per prover clause, in clause order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleName {
    /// `c = Pro n : c'`, `d = []`; premise `(n : a, b, c', [])`.
    LShiftPro,
    /// `d = Pro n : d'`; premise `(a, n : b, c, d')`.
    RShiftPro,
    /// `c = Falsity : _`, `d = []`; no premises.
    LFalsityAxiom,
    /// `d = Falsity : d'`; premise `(a, b, c, d')`.
    RFalsityDrop,
    /// `c = Imp p q : c'`, `d = []`; premises `(a, b, c', [p])` and `(a, b, q : c', [])`.
    LImpBranch,
    /// `d = Imp p q : d'`; premise `(a, b, p : c, q : d')`.
    RImpMove,
    /// `c = d = []` and `a`, `b` share an atom; no premises.
    BasicAxiom,
}

impl RuleName {
    pub const ALL: [RuleName; 7] = [
        RuleName::LShiftPro,
        RuleName::RShiftPro,
        RuleName::LFalsityAxiom,
        RuleName::RFalsityDrop,
        RuleName::LImpBranch,
        RuleName::RImpMove,
        RuleName::BasicAxiom,
    ];

    /// Prover clause number, 1 to 7.
    pub fn clause(self) -> u8 {
        match self {
            RuleName::LShiftPro => 1,
            RuleName::RShiftPro => 2,
            RuleName::LFalsityAxiom => 3,
            RuleName::RFalsityDrop => 4,
            RuleName::LImpBranch => 5,
            RuleName::RImpMove => 6,
            RuleName::BasicAxiom => 7,
        }
    }

    pub fn arity(self) -> usize {
        match self {
            RuleName::LFalsityAxiom | RuleName::BasicAxiom => 0,
            RuleName::LImpBranch => 2,
            RuleName::LShiftPro | RuleName::RShiftPro | RuleName::RFalsityDrop | RuleName::RImpMove => 1,
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Derivation {
    pub rule: RuleName,
    pub conclusion: Sequent,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn new(conclusion: Sequent, rule: RuleName, premises: Vec<Derivation>) -> Self {
        Derivation {
            rule,
            conclusion,
            premises,
        }
    }

    /// Nodes in pre-order (node, then premises left to right).
    pub fn nodes(&self) -> impl Iterator<Item = &Derivation> {
        let mut stack = vec![self];
        std::iter::from_fn(move || {
            let node = stack.pop()?;
            stack.extend(node.premises.iter().rev());
            Some(node)
        })
    }

    pub fn leaves(&self) -> impl Iterator<Item = &Derivation> {
        self.nodes().filter(|n| n.premises.is_empty())
    }

    pub fn node_count(&self) -> usize {
        self.nodes().count()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().count()
    }

    /// Rules in pre-order.
    pub fn rule_sequence(&self) -> Vec<RuleName> {
        self.nodes().map(|n| n.rule).collect()
    }

    /// Clause numbers in pre-order.
    pub fn clause_sequence(&self) -> Vec<u8> {
        self.nodes().map(|n| n.rule.clause()).collect()
    }

    pub fn depth(&self) -> usize {
        let mut best = 0;
        let mut stack = vec![(self, 1)];
        while let Some((node, depth)) = stack.pop() {
            best = best.max(depth);
            stack.extend(node.premises.iter().map(|p| (p, depth + 1)));
        }
        best
    }
}

// Deep derivations would otherwise drop recursively.
impl Drop for Derivation {
    fn drop(&mut self) {
        let mut stack = std::mem::take(&mut self.premises);
        while let Some(mut node) = stack.pop() {
            stack.append(&mut node.premises);
        }
    }
}

/// First violated condition found by the checker.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("{rule} takes {expected} premise(s), found {found}")]
    Arity {
        rule: RuleName,
        expected: usize,
        found: usize,
    },
    #[error("{rule} does not apply to {conclusion}: {reason}")]
    NotApplicable {
        rule: RuleName,
        conclusion: Sequent,
        reason: &'static str,
    },
    #[error("{rule} premise {index} should conclude {expected}, found {found}")]
    PremiseMismatch {
        rule: RuleName,
        index: usize,
        expected: Sequent,
        found: Sequent,
    },
    #[error("root concludes {found}, expected {expected}")]
    GoalMismatch { expected: Sequent, found: Sequent },
}

fn not_applicable(d: &Derivation, reason: &'static str) -> KernelError {
    KernelError::NotApplicable {
        rule: d.rule,
        conclusion: d.conclusion.clone(),
        reason,
    }
}

/// Premise conclusions the rule requires, or why it does not apply.
fn expected_premises(d: &Derivation) -> Result<Vec<Sequent>, KernelError> {
    let Sequent { a, b, c, d: right } = &d.conclusion;
    let with = |a: &[PropId], b: &[PropId], c: Vec<CoreFormula>, right: Vec<CoreFormula>| Sequent {
        a: a.to_vec(),
        b: b.to_vec(),
        c,
        d: right,
    };
    match d.rule {
        RuleName::LShiftPro => {
            if !right.is_empty() {
                return Err(not_applicable(d, "right formulas must be empty"));
            }
            match c.split_first() {
                Some((CoreFormula::Pro(n), rest)) => {
                    let mut a2 = Vec::with_capacity(a.len() + 1);
                    a2.push(n.clone());
                    a2.extend_from_slice(a);
                    Ok(vec![with(&a2, b, rest.to_vec(), Vec::new())])
                }
                _ => Err(not_applicable(d, "first left formula must be a proposition")),
            }
        }
        RuleName::RShiftPro => match right.split_first() {
            Some((CoreFormula::Pro(n), rest)) => {
                let mut b2 = Vec::with_capacity(b.len() + 1);
                b2.push(n.clone());
                b2.extend_from_slice(b);
                Ok(vec![with(a, &b2, c.clone(), rest.to_vec())])
            }
            _ => Err(not_applicable(d, "first right formula must be a proposition")),
        },
        RuleName::LFalsityAxiom => {
            if !right.is_empty() {
                return Err(not_applicable(d, "right formulas must be empty"));
            }
            match c.first() {
                Some(CoreFormula::Falsity) => Ok(Vec::new()),
                _ => Err(not_applicable(d, "first left formula must be falsity")),
            }
        }
        RuleName::RFalsityDrop => match right.split_first() {
            Some((CoreFormula::Falsity, rest)) => Ok(vec![with(a, b, c.clone(), rest.to_vec())]),
            _ => Err(not_applicable(d, "first right formula must be falsity")),
        },
        RuleName::LImpBranch => {
            if !right.is_empty() {
                return Err(not_applicable(d, "right formulas must be empty"));
            }
            match c.split_first() {
                Some((CoreFormula::Imp(p, q), rest)) => {
                    let mut c2 = Vec::with_capacity(rest.len() + 1);
                    c2.push((**q).clone());
                    c2.extend_from_slice(rest);
                    Ok(vec![
                        with(a, b, rest.to_vec(), vec![(**p).clone()]),
                        with(a, b, c2, Vec::new()),
                    ])
                }
                _ => Err(not_applicable(d, "first left formula must be an implication")),
            }
        }
        RuleName::RImpMove => match right.split_first() {
            Some((CoreFormula::Imp(p, q), rest)) => {
                let mut c2 = Vec::with_capacity(c.len() + 1);
                c2.push((**p).clone());
                c2.extend_from_slice(c);
                let mut d2 = Vec::with_capacity(rest.len() + 1);
                d2.push((**q).clone());
                d2.extend_from_slice(rest);
                Ok(vec![with(a, b, c2, d2)])
            }
            _ => Err(not_applicable(d, "first right formula must be an implication")),
        },
        RuleName::BasicAxiom => {
            if !c.is_empty() || !right.is_empty() {
                return Err(not_applicable(d, "both formula lists must be empty"));
            }
            let left: HashSet<&PropId> = a.iter().collect();
            if b.iter().any(|n| left.contains(n)) {
                Ok(Vec::new())
            } else {
                Err(not_applicable(d, "no atom occurs on both sides"))
            }
        }
    }
}

/// Check one node: arity, applicability and exact premise conclusions.
pub fn check_node_diagnostic(d: &Derivation) -> Result<(), KernelError> {
    if d.premises.len() != d.rule.arity() {
        return Err(KernelError::Arity {
            rule: d.rule,
            expected: d.rule.arity(),
            found: d.premises.len(),
        });
    }
    let expected = expected_premises(d)?;
    for (index, (want, got)) in expected.into_iter().zip(&d.premises).enumerate() {
        if want != got.conclusion {
            return Err(KernelError::PremiseMismatch {
                rule: d.rule,
                index,
                expected: want,
                found: got.conclusion.clone(),
            });
        }
    }
    Ok(())
}

pub fn check_node(d: &Derivation) -> bool {
    check_node_diagnostic(d).is_ok()
}

/// Check that `d` proves `⊢ goal`: the root concludes the goal sequent and
/// every node is a correct rule instance.
pub fn check_derivation_diagnostic(d: &Derivation, goal: &CoreFormula) -> Result<(), KernelError> {
    let expected = Sequent::goal(goal.clone());
    if d.conclusion != expected {
        return Err(KernelError::GoalMismatch {
            expected,
            found: d.conclusion.clone(),
        });
    }
    d.nodes().try_for_each(check_node_diagnostic)
}

pub fn check_derivation(d: &Derivation, goal: &CoreFormula) -> bool {
    check_derivation_diagnostic(d, goal).is_ok()
}
