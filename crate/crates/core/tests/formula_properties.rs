mod common;

use common::*;
use microlog::formula::{desugar, eval, eval_ext, ExtFormula, Interpretation};
use microlog::oracle::valuations;

/// Every surface formula with exactly `n` connectives over `leaves`.
fn ext_with(n: usize, leaves: &[ExtFormula], memo: &mut Vec<Vec<ExtFormula>>) -> Vec<ExtFormula> {
    if let Some(level) = memo.get(n) {
        return level.clone();
    }
    let out = if n == 0 {
        leaves.to_vec()
    } else {
        let mut out: Vec<ExtFormula> = ext_with(n - 1, leaves, memo)
            .into_iter()
            .map(ExtFormula::not)
            .collect();
        for left in 0..n {
            let ls = ext_with(left, leaves, memo);
            let rs = ext_with(n - 1 - left, leaves, memo);
            for l in &ls {
                for r in &rs {
                    out.push(ExtFormula::and(l.clone(), r.clone()));
                    out.push(ExtFormula::or(l.clone(), r.clone()));
                    out.push(ExtFormula::implies(l.clone(), r.clone()));
                    out.push(ExtFormula::iff(l.clone(), r.clone()));
                }
            }
        }
        out
    };
    assert_eq!(memo.len(), n);
    memo.push(out.clone());
    out
}

#[test]
fn desugaring_is_sound_exhaustively() {
    let leaves = [atom("p"), atom("q"), ExtFormula::Bottom, ExtFormula::Top];
    let mut memo = Vec::new();
    let mut total = 0;
    for n in 0..=3 {
        for e in ext_with(n, &leaves, &mut memo) {
            let core = desugar(&e);
            assert_eq!(core.atoms(), e.atoms(), "{e}");
            assert_eq!(core.size() as u64, e.desugared_size(), "{e}");
            for i in valuations(&core.atoms()).unwrap() {
                assert_eq!(eval_ext(&i, &e), eval(&i, &core), "{e} under {i}");
            }
            total += 1;
        }
    }
    // 4 + 68 + 2244 + 92548
    assert_eq!(total, 94_864);
}

#[test]
fn desugared_connectives_have_classical_tables() {
    let p = atom("p");
    let q = atom("q");
    let cases: [(ExtFormula, fn(bool, bool) -> bool); 4] = [
        (ExtFormula::and(p.clone(), q.clone()), |a, b| a && b),
        (ExtFormula::or(p.clone(), q.clone()), |a, b| a || b),
        (ExtFormula::implies(p.clone(), q.clone()), |a, b| !a || b),
        (ExtFormula::iff(p.clone(), q.clone()), |a, b| a == b),
    ];
    for (e, table) in cases {
        let core = desugar(&e);
        for (vp, vq) in [(false, false), (true, false), (false, true), (true, true)] {
            let mut i = Interpretation::new();
            if vp {
                i.set_true(id("p"));
            }
            if vq {
                i.set_true(id("q"));
            }
            assert_eq!(eval(&i, &core), table(vp, vq), "{e}");
        }
    }
}
