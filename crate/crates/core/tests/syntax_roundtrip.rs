mod common;

use common::*;
use microlog::prover::{prove_with_trace, trace, Verdict};
use microlog::syntax::{from_json, parse, pretty, to_json, to_json_pretty};
use microlog::{CoreFormula, Derivation, Sequent};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn parse_inverts_pretty(e in arb_ext(4, 8, 40)) {
        let text = pretty(&e);
        prop_assert_eq!(parse(&text).unwrap(), e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn parser_never_panics(text in ".{0,40}") {
        let _ = parse(&text);
    }

    #[test]
    fn parser_never_panics_on_formula_alphabet(text in "[pq ~&|()<>-]{0,30}|true|false") {
        if let Err(e) = parse(&text) {
            prop_assert!(e.position <= text.chars().count());
        }
    }

    #[test]
    fn json_formula_round_trip(f in arb_core(4, 6, 30)) {
        prop_assert_eq!(from_json::<CoreFormula>(&to_json(&f)).unwrap(), f.clone());
        prop_assert_eq!(from_json::<CoreFormula>(&to_json_pretty(&f)).unwrap(), f);
    }

    #[test]
    fn json_sequent_round_trip(s in arb_sequent(3)) {
        prop_assert_eq!(from_json::<Sequent>(&to_json(&s)).unwrap(), s);
    }

    #[test]
    fn json_verdict_and_derivation_round_trip(f in arb_core(3, 5, 16)) {
        let verdict = prove_with_trace(&f);
        prop_assert_eq!(from_json::<Verdict>(&to_json(&verdict)).unwrap(), verdict.clone());
        if let Verdict::Proved(d) = verdict {
            prop_assert_eq!(from_json::<Derivation>(&to_json(&d)).unwrap(), d);
        }
    }

    #[test]
    fn json_reader_never_panics(text in "[{}\\[\\]\":,a-z0-9 ]{0,40}") {
        let _ = from_json::<Verdict>(&text);
        let _ = from_json::<Derivation>(&text);
    }
}

#[test]
fn deep_derivation_round_trips() {
    // p1 -> (p2 -> ... -> (pn -> p1)) produces a derivation of depth ~2n.
    let n = 400;
    let mut f = pro("p1");
    for k in (1..=n).rev() {
        f = CoreFormula::imp(pro(&format!("p{k}")), f);
    }
    let outcome = trace(&Sequent::goal(f));
    let d = outcome.derivation.expect("valid");
    assert!(d.depth() > 2 * n);
    assert_eq!(from_json::<Derivation>(&to_json(&d)).unwrap(), d);
}

#[test]
fn schema_violations_are_parse_errors() {
    assert!(from_json::<CoreFormula>("{}").is_err());
    assert!(from_json::<CoreFormula>(r#"{"type":"imp","antecedent":{"type":"falsity"}}"#).is_err());
    assert!(from_json::<Sequent>(r#"{"a":[],"b":[],"c":[]}"#).is_err());
    assert!(from_json::<Derivation>(r#"{"rule":"Cut","conclusion":{"a":[],"b":[],"c":[],"d":[]},"premises":[]}"#).is_err());
    assert!(from_json::<Verdict>(r#"{"verdict":"maybe"}"#).is_err());
    let e = from_json::<CoreFormula>("not json").unwrap_err();
    assert_eq!(e.position, 1);
}
