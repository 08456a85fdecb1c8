#![allow(dead_code)]

use microlog::{CoreFormula, Derivation, ExtFormula, PropId, RuleName, Sequent};
use proptest::prelude::*;
use rand::Rng;

pub fn id(s: &str) -> PropId {
    PropId::new(s).unwrap()
}

pub fn pro(s: &str) -> CoreFormula {
    CoreFormula::Pro(id(s))
}

pub fn atom(s: &str) -> ExtFormula {
    ExtFormula::Atom(id(s))
}

pub const ATOM_NAMES: [&str; 5] = ["p", "q", "r", "s", "t"];

/// Random core formula with exactly `connectives` implications over the
/// first `atoms` names of [`ATOM_NAMES`] plus falsity.
pub fn random_core<R: Rng>(rng: &mut R, connectives: usize, atoms: usize) -> CoreFormula {
    if connectives == 0 {
        let k = rng.random_range(0..=atoms);
        return if k == atoms { CoreFormula::Falsity } else { pro(ATOM_NAMES[k]) };
    }
    let left = rng.random_range(0..connectives);
    CoreFormula::imp(
        random_core(rng, left, atoms),
        random_core(rng, connectives - 1 - left, atoms),
    )
}

/// Random surface formula with exactly `connectives` connective nodes.
pub fn random_ext<R: Rng>(rng: &mut R, connectives: usize, atoms: usize) -> ExtFormula {
    if connectives == 0 {
        return match rng.random_range(0..atoms + 2) {
            k if k < atoms => atom(ATOM_NAMES[k]),
            k if k == atoms => ExtFormula::Bottom,
            _ => ExtFormula::Top,
        };
    }
    let op = rng.random_range(0..5);
    if op == 0 {
        return ExtFormula::not(random_ext(rng, connectives - 1, atoms));
    }
    let left = rng.random_range(0..connectives);
    let l = random_ext(rng, left, atoms);
    let r = random_ext(rng, connectives - 1 - left, atoms);
    match op {
        1 => ExtFormula::and(l, r),
        2 => ExtFormula::or(l, r),
        3 => ExtFormula::implies(l, r),
        _ => ExtFormula::iff(l, r),
    }
}

pub fn arb_prop_id(atoms: usize) -> impl Strategy<Value = PropId> {
    (0..atoms).prop_map(|k| id(ATOM_NAMES[k]))
}

pub fn arb_core(atoms: usize, depth: u32, size: u32) -> BoxedStrategy<CoreFormula> {
    let leaf = prop_oneof![
        4 => arb_prop_id(atoms).prop_map(CoreFormula::Pro),
        1 => Just(CoreFormula::Falsity),
    ];
    leaf.prop_recursive(depth, size, 2, |inner| {
        (inner.clone(), inner).prop_map(|(p, q)| CoreFormula::imp(p, q))
    })
    .boxed()
}

pub fn arb_ext(atoms: usize, depth: u32, size: u32) -> impl Strategy<Value = ExtFormula> {
    let leaf = prop_oneof![
        6 => arb_prop_id(atoms).prop_map(ExtFormula::Atom),
        1 => Just(ExtFormula::Bottom),
        1 => Just(ExtFormula::Top),
    ];
    leaf.prop_recursive(depth, size, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(ExtFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| ExtFormula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| ExtFormula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| ExtFormula::implies(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| ExtFormula::iff(l, r)),
        ]
    })
}

pub fn arb_sequent(atoms: usize) -> impl Strategy<Value = Sequent> {
    // formulas of size <= 5 have at most two implications
    let small = arb_core(atoms, 2, 2).prop_filter("size <= 5", |f| f.size() <= 5).boxed();
    (
        prop::collection::vec(arb_prop_id(atoms), 0..=2),
        prop::collection::vec(arb_prop_id(atoms), 0..=2),
        prop::collection::vec(small.clone(), 0..=2),
        prop::collection::vec(small, 0..=2),
    )
        .prop_map(|(a, b, c, d)| Sequent::new(a, b, c, d))
}

/// Node `index` in pre-order.
pub fn node_mut(d: &mut Derivation, index: usize) -> &mut Derivation {
    fn go<'a>(d: &'a mut Derivation, index: &mut usize) -> Option<&'a mut Derivation> {
        if *index == 0 {
            return Some(d);
        }
        *index -= 1;
        for p in d.premises.iter_mut() {
            if let Some(found) = go(p, index) {
                return Some(found);
            }
        }
        None
    }
    let mut k = index;
    go(d, &mut k).expect("index within tree")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutationKind {
    RuleRename,
    PremiseDrop,
    SequentEdit,
}

/// Apply one random single-node mutation. Returns the kind applied.
pub fn mutate<R: Rng>(rng: &mut R, d: &mut Derivation) -> MutationKind {
    let nodes = d.node_count();
    let kind = match rng.random_range(0..3) {
        0 => MutationKind::RuleRename,
        1 if d.nodes().any(|n| !n.premises.is_empty()) => MutationKind::PremiseDrop,
        _ => MutationKind::SequentEdit,
    };
    match kind {
        MutationKind::RuleRename => {
            let node = node_mut(d, rng.random_range(0..nodes));
            let others: Vec<RuleName> = RuleName::ALL.into_iter().filter(|r| *r != node.rule).collect();
            node.rule = others[rng.random_range(0..others.len())];
        }
        MutationKind::PremiseDrop => {
            let inner: Vec<usize> = d
                .nodes()
                .enumerate()
                .filter(|(_, n)| !n.premises.is_empty())
                .map(|(k, _)| k)
                .collect();
            let node = node_mut(d, inner[rng.random_range(0..inner.len())]);
            let k = rng.random_range(0..node.premises.len());
            node.premises.remove(k);
        }
        MutationKind::SequentEdit => {
            let node = node_mut(d, rng.random_range(0..nodes));
            edit_sequent(rng, &mut node.conclusion);
        }
    }
    kind
}

fn edit_sequent<R: Rng>(rng: &mut R, s: &mut Sequent) {
    let fresh = id(ATOM_NAMES[rng.random_range(0..ATOM_NAMES.len())]);
    match rng.random_range(0..6) {
        0 => {
            let at = rng.random_range(0..=s.a.len());
            s.a.insert(at, fresh);
        }
        1 => {
            let at = rng.random_range(0..=s.b.len());
            s.b.insert(at, fresh);
        }
        2 => {
            let at = rng.random_range(0..=s.c.len());
            s.c.insert(at, CoreFormula::Pro(fresh));
        }
        3 => {
            let at = rng.random_range(0..=s.d.len());
            s.d.insert(at, CoreFormula::Falsity);
        }
        4 => {
            // drop one element from some non-empty list, else grow a
            let lens = [s.a.len(), s.b.len(), s.c.len(), s.d.len()];
            let candidates: Vec<usize> = (0..4).filter(|k| lens[*k] > 0).collect();
            match candidates.get(rng.random_range(0..candidates.len().max(1))) {
                Some(0) => drop(s.a.remove(rng.random_range(0..s.a.len()))),
                Some(1) => drop(s.b.remove(rng.random_range(0..s.b.len()))),
                Some(2) => drop(s.c.remove(rng.random_range(0..s.c.len()))),
                Some(3) => drop(s.d.remove(rng.random_range(0..s.d.len()))),
                _ => s.a.push(fresh),
            }
        }
        _ => {
            // swap a and b
            std::mem::swap(&mut s.a, &mut s.b);
        }
    }
}
