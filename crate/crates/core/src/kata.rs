//! Warm-up exercises: small recursive functions whose defining laws are
//! checked as properties.

use num_bigint::BigInt;

/// Natural number manipulated only through zero, successor and
/// predecessor.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Nat(u64);

impl Nat {
    pub const ZERO: Nat = Nat(0);

    pub fn new(n: u64) -> Nat {
        Nat(n)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// # Panics
    /// On `u64` overflow.
    pub fn succ(self) -> Nat {
        Nat(self.0.checked_add(1).expect("Nat overflow"))
    }

    /// `None` for zero.
    pub fn pred(self) -> Option<Nat> {
        self.0.checked_sub(1).map(Nat)
    }
}

/// `triple 0 = 0`, `triple (Suc n) = Suc (Suc (Suc (triple n)))`.
pub fn triple(n: Nat) -> Nat {
    match n.pred() {
        None => Nat::ZERO,
        Some(m) => triple(m).succ().succ().succ(),
    }
}

pub fn add42(xs: &[BigInt]) -> Vec<BigInt> {
    match xs {
        [] => Vec::new(),
        [x, rest @ ..] => {
            let mut out = vec![x + 42];
            out.extend(add42(rest));
            out
        }
    }
}

pub fn sub42(xs: &[BigInt]) -> Vec<BigInt> {
    match xs {
        [] => Vec::new(),
        [x, rest @ ..] => {
            let mut out = vec![x - 42];
            out.extend(sub42(rest));
            out
        }
    }
}
