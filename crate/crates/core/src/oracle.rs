//! Brute-force semantic referee: truth tables over the atoms of a formula,
//! and an exhaustive enumerator of small formulas for test corpora.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{eval, CoreFormula, Interpretation, PropId};

pub const MAX_ATOMS: usize = 20;
pub const MAX_ENUM_CONNECTIVES: usize = 6;
pub const MAX_ENUM_ATOMS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{found} atoms exceed the truth-table limit of {MAX_ATOMS}")]
    AtomLimitExceeded { found: usize },
    #[error(
        "enumeration of {connectives} connectives over {atoms} atoms exceeds the limit \
         ({MAX_ENUM_CONNECTIVES} connectives, {MAX_ENUM_ATOMS} atoms)"
    )]
    EnumerationLimitExceeded { connectives: usize, atoms: usize },
}

/// Every interpretation over `atom_set`.
///
/// Row `k` makes the `j`-th atom (in sorted order) true iff bit `j` of `k`
/// is set, so `{p, q}` yields `{}`, `{p}`, `{q}`, `{p, q}`.
pub fn valuations(atom_set: &BTreeSet<PropId>) -> Result<Vec<Interpretation>, OracleError> {
    let atoms: Vec<&PropId> = atom_set.iter().collect();
    if atoms.len() > MAX_ATOMS {
        return Err(OracleError::AtomLimitExceeded { found: atoms.len() });
    }
    Ok((0u32..1 << atoms.len())
        .map(|row| {
            atoms
                .iter()
                .enumerate()
                .filter(|(j, _)| row >> j & 1 == 1)
                .map(|(_, id)| (*id).clone())
                .collect()
        })
        .collect())
}

pub fn oracle_valid(f: &CoreFormula) -> Result<bool, OracleError> {
    Ok(oracle_countermodel(f)?.is_none())
}

/// First falsifying interpretation in [`valuations`] order.
pub fn oracle_countermodel(f: &CoreFormula) -> Result<Option<Interpretation>, OracleError> {
    Ok(valuations(&f.atoms())?.into_iter().find(|i| !eval(i, f)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthRow {
    #[serde(rename = "true")]
    pub interpretation: Interpretation,
    pub value: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthTable {
    pub atoms: Vec<PropId>,
    pub rows: Vec<TruthRow>,
}

impl TruthTable {
    pub fn is_tautology(&self) -> bool {
        self.rows.iter().all(|r| r.value)
    }
}

pub fn truth_table(f: &CoreFormula) -> Result<TruthTable, OracleError> {
    let atom_set = f.atoms();
    let rows = valuations(&atom_set)?
        .into_iter()
        .map(|interpretation| {
            let value = eval(&interpretation, f);
            TruthRow { interpretation, value }
        })
        .collect();
    Ok(TruthTable {
        atoms: atom_set.into_iter().collect(),
        rows,
    })
}

/// Every core formula with at most `max_connectives` implications over
/// `Pro a` (for `a` in `atom_set`) and `Falsity`, each exactly once.
///
/// Order: formulas with fewer implications first. Leaves are the atoms in
/// the given order followed by `Falsity`. A formula with `n > 0`
/// implications is `Imp l r`; these are ordered by the implication count of
/// `l` ascending, then by the position of `l`, then of `r`, within their own
/// counts.
pub fn enumerate_formulas(
    max_connectives: usize,
    atom_set: &[PropId],
) -> Result<impl Iterator<Item = CoreFormula>, OracleError> {
    if max_connectives > MAX_ENUM_CONNECTIVES || atom_set.len() > MAX_ENUM_ATOMS {
        return Err(OracleError::EnumerationLimitExceeded {
            connectives: max_connectives,
            atoms: atom_set.len(),
        });
    }
    let mut by_count: Vec<Vec<CoreFormula>> = Vec::with_capacity(max_connectives + 1);
    by_count.push(
        atom_set
            .iter()
            .cloned()
            .map(CoreFormula::Pro)
            .chain(std::iter::once(CoreFormula::Falsity))
            .collect(),
    );
    for n in 1..=max_connectives {
        let mut level = Vec::new();
        for left_count in 0..n {
            for l in &by_count[left_count] {
                for r in &by_count[n - 1 - left_count] {
                    level.push(CoreFormula::imp(l.clone(), r.clone()));
                }
            }
        }
        by_count.push(level);
    }
    Ok(by_count.into_iter().flatten())
}

/// Number of formulas with exactly `n` implications over `leaves` leaf
/// choices: `C(0) = leaves`, `C(n) = Σ C(i)·C(n-1-i)`.
pub fn formula_count(n: usize, leaves: u128) -> u128 {
    let mut counts = vec![leaves];
    for k in 1..=n {
        let c = (0..k).map(|i| counts[i] * counts[k - 1 - i]).sum();
        counts.push(c);
    }
    counts[n]
}
