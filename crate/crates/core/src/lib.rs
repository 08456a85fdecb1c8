//! Classical propositional logic over implication and falsity: a
//! sequent-calculus prover that emits checkable derivations or
//! countermodels, an independent derivation checker, and a truth-table
//! oracle to test both against.

pub mod cli;
pub mod formula;
pub mod kata;
pub mod kernel;
pub mod oracle;
pub mod prover;
pub mod syntax;

pub use formula::{desugar, eval, eval_ext, eval_sequent, CoreFormula, ExtFormula, Interpretation, PropId};
pub use kernel::{check_derivation, check_node, Derivation, KernelError, RuleName};
pub use oracle::{oracle_countermodel, oracle_valid, truth_table, OracleError, TruthTable};
pub use prover::{countermodel, measure, mp, prove, prove_with_trace, Sequent, Verdict};
pub use syntax::{from_json, parse, pretty, pretty_core, to_json, ParseError};
