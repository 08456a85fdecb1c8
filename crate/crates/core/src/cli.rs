//! Command-line front end.
//!
//! Exit codes: 0 success (for `prove`: valid), 1 `prove` found the formula
//! invalid, 2 syntax error, 3 resource limit, 64 usage error, 74 I/O error.
//! In batch mode the exit code is the largest code of any line.

use std::io::{BufRead, Write};

use clap::{Parser, Subcommand, ValueEnum};

use crate::formula::{desugar, ExtFormula};
use crate::kernel::Derivation;
use crate::oracle::{truth_table, TruthTable};
use crate::prover::{countermodel, prove, prove_with_trace, trace, Sequent};
use crate::syntax::{parse, pretty, pretty_core, to_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_SYNTAX: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

pub const DEFAULT_MEASURE_LIMIT: u64 = 100_000;
pub const MEASURE_LIMIT_ENV: &str = "MICROLOG_MEASURE_LIMIT";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Print "valid" (exit 0) or "invalid" (exit 1).
    Prove,
    /// Print a falsifying assignment, or "none".
    Countermodel,
    /// Print the derivation, or the failing leaves.
    Trace,
    /// Print the truth table.
    Table,
    /// Print the desugared core formula.
    Parse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub command: Command,
    /// `None` reads formulas from standard input, one per line.
    pub formula: Option<String>,
    pub json: bool,
    pub measure_limit: u64,
}

#[derive(Debug, Parser)]
#[command(name = "microlog", version, about = "Sequent-calculus prover for classical propositional logic")]
struct Args {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Decide validity: prints "valid" (exit 0) or "invalid" (exit 1)
    Prove(CommonArgs),
    /// Print a falsifying assignment such as "p=true q=false", or "none"
    Countermodel(CommonArgs),
    /// Print the derivation tree, or the failing leaves with countermodels
    Trace(CommonArgs),
    /// Print the truth table
    Table(CommonArgs),
    /// Print the desugared core formula
    Parse(CommonArgs),
}

#[derive(Debug, clap::Args)]
struct CommonArgs {
    /// Formula text; omit to read one formula per line from stdin
    formula: Option<String>,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Reject formulas whose initial measure exceeds N
    #[arg(
        long,
        value_name = "N",
        env = MEASURE_LIMIT_ENV,
        default_value_t = DEFAULT_MEASURE_LIMIT,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    measure_limit: u64,
    /// Read formulas from stdin, one per line
    #[arg(long, conflicts_with = "formula")]
    batch: bool,
}

impl CliConfig {
    /// Parse command-line arguments (without the program name's special
    /// meaning: the first element is skipped).
    pub fn from_args<I, T>(args: I) -> Result<CliConfig, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let args = Args::try_parse_from(args)?;
        let (command, common) = match args.command {
            Sub::Prove(c) => (Command::Prove, c),
            Sub::Countermodel(c) => (Command::Countermodel, c),
            Sub::Trace(c) => (Command::Trace, c),
            Sub::Table(c) => (Command::Table, c),
            Sub::Parse(c) => (Command::Parse, c),
        };
        Ok(CliConfig {
            command,
            formula: if common.batch { None } else { common.formula },
            json: common.json,
            measure_limit: common.measure_limit,
        })
    }
}

/// Parse `args` and run. Usage errors exit 64; `--help`/`--version` exit 0.
pub fn main_with_args<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match CliConfig::from_args(args) {
        Ok(config) => run(&config, input, out, err),
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            EXIT_OK
        }
        Err(e) => {
            let _ = write!(err, "{e}");
            EXIT_USAGE
        }
    }
}

pub fn run(config: &CliConfig, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &config.formula {
        Some(text) => process(config, text, None, out, err),
        None => run_batch(config, input, out, err),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "I/O error: {e}");
        EXIT_IO
    })
}

fn run_batch(
    config: &CliConfig,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let mut worst = EXIT_OK;
    for (k, line) in input.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let code = process(config, &line, Some(k + 1), out, err)?;
        worst = worst.max(code);
    }
    Ok(worst)
}

fn process(
    config: &CliConfig,
    text: &str,
    line: Option<usize>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let prefix = line.map(|n| format!("line {n}: ")).unwrap_or_default();
    let error_marker = if config.json { "null" } else { "error" };

    let ext = match parse(text) {
        Ok(e) => e,
        Err(e) => {
            writeln!(err, "{prefix}{}", e.render(text))?;
            if line.is_some() {
                writeln!(out, "{error_marker}")?;
            }
            return Ok(EXIT_SYNTAX);
        }
    };
    let measure = ext.desugared_size();
    if measure > config.measure_limit {
        writeln!(
            err,
            "{prefix}formula measure {measure} exceeds the limit of {}",
            config.measure_limit
        )?;
        if line.is_some() {
            writeln!(out, "{error_marker}")?;
        }
        return Ok(EXIT_LIMIT);
    }

    match config.command {
        Command::Prove => cmd_prove(config, &ext, out),
        Command::Countermodel => cmd_countermodel(config, &ext, out),
        Command::Trace => cmd_trace(config, &ext, line.is_some(), out),
        Command::Table => cmd_table(config, &ext, line.is_some(), &prefix, out, err),
        Command::Parse => {
            let core = desugar(&ext);
            if config.json {
                writeln!(out, "{}", to_json(&core))?;
            } else {
                writeln!(out, "{}", pretty_core(&core))?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn cmd_prove(config: &CliConfig, ext: &ExtFormula, out: &mut dyn Write) -> std::io::Result<i32> {
    let core = desugar(ext);
    let valid = if config.json {
        let verdict = prove_with_trace(&core);
        writeln!(out, "{}", to_json(&verdict))?;
        verdict.is_proved()
    } else {
        let valid = prove(&core);
        writeln!(out, "{}", if valid { "valid" } else { "invalid" })?;
        valid
    };
    Ok(if valid { EXIT_OK } else { EXIT_INVALID })
}

fn cmd_countermodel(config: &CliConfig, ext: &ExtFormula, out: &mut dyn Write) -> std::io::Result<i32> {
    let core = desugar(ext);
    let model = countermodel(&core);
    if config.json {
        writeln!(out, "{}", to_json(&model))?;
    } else {
        match model {
            None => writeln!(out, "none")?,
            Some(i) => {
                let atoms = core.atoms();
                if atoms.is_empty() {
                    writeln!(out, "(no atoms)")?;
                } else {
                    writeln!(out, "{}", i.assignment_string(&atoms))?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_trace(config: &CliConfig, ext: &ExtFormula, batch: bool, out: &mut dyn Write) -> std::io::Result<i32> {
    let core = desugar(ext);
    if config.json {
        writeln!(out, "{}", to_json(&prove_with_trace(&core)))?;
        return Ok(EXIT_OK);
    }
    let outcome = trace(&Sequent::goal(core.clone()));
    match &outcome.derivation {
        Some(d) => {
            writeln!(out, "valid")?;
            write_tree(d, out)?;
        }
        None => {
            writeln!(out, "invalid")?;
            let atoms = core.atoms();
            for leaf in &outcome.failing_leaves {
                let model = leaf.leaf_countermodel();
                writeln!(out, "failing leaf: {leaf}")?;
                if atoms.is_empty() {
                    writeln!(out, "  countermodel: (no atoms)")?;
                } else {
                    writeln!(out, "  countermodel: {}", model.assignment_string(&atoms))?;
                }
            }
        }
    }
    if batch {
        writeln!(out)?;
    }
    Ok(EXIT_OK)
}

fn write_tree(d: &Derivation, out: &mut dyn Write) -> std::io::Result<()> {
    let mut stack = vec![(d, 0usize)];
    while let Some((node, depth)) = stack.pop() {
        writeln!(out, "{}{} {}", "  ".repeat(depth), node.rule, node.conclusion)?;
        stack.extend(node.premises.iter().rev().map(|p| (p, depth + 1)));
    }
    Ok(())
}

fn cmd_table(
    config: &CliConfig,
    ext: &ExtFormula,
    batch: bool,
    prefix: &str,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let core = desugar(ext);
    let table = match truth_table(&core) {
        Ok(t) => t,
        Err(e) => {
            writeln!(err, "{prefix}{e}")?;
            if batch {
                writeln!(out, "{}", if config.json { "null" } else { "error" })?;
            }
            return Ok(EXIT_LIMIT);
        }
    };
    if config.json {
        writeln!(out, "{}", to_json(&table))?;
    } else {
        write_table(&table, &pretty(ext), out)?;
        if batch {
            writeln!(out)?;
        }
    }
    Ok(EXIT_OK)
}

fn write_table(table: &TruthTable, formula: &str, out: &mut dyn Write) -> std::io::Result<()> {
    let mark = |b: bool| if b { "T" } else { "F" };
    let header: Vec<&str> = table.atoms.iter().map(|a| a.as_str()).collect();
    if header.is_empty() {
        writeln!(out, "{formula}")?;
    } else {
        writeln!(out, "{} | {formula}", header.join(" "))?;
    }
    for row in &table.rows {
        let cells: Vec<String> = table
            .atoms
            .iter()
            .map(|a| format!("{:<width$}", mark(row.interpretation.holds(a)), width = a.as_str().chars().count()))
            .collect();
        if cells.is_empty() {
            writeln!(out, "{}", mark(row.value))?;
        } else {
            writeln!(out, "{} | {}", cells.join(" "), mark(row.value))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("microlog").chain(args.iter().copied());
        let code = main_with_args(argv, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn prove_examples() {
        assert_eq!(run_args(&["prove", "p -> p"], ""), (0, "valid\n".into(), String::new()));
        assert_eq!(run_args(&["prove", "p -> q"], ""), (1, "invalid\n".into(), String::new()));
    }

    #[test]
    fn countermodel_examples() {
        assert_eq!(run_args(&["countermodel", "p -> q"], "").1, "p=true q=false\n");
        assert_eq!(run_args(&["countermodel", "p -> p"], ""), (0, "none\n".into(), String::new()));
        assert_eq!(run_args(&["countermodel", "false"], "").1, "(no atoms)\n");
        assert_eq!(run_args(&["countermodel", "--json", "p -> q"], "").1, "[\"p\"]\n");
        assert_eq!(run_args(&["countermodel", "--json", "p -> p"], "").1, "null\n");
    }

    #[test]
    fn syntax_error_exit_code_and_caret() {
        let (code, out, err) = run_args(&["prove", "p -> "], "");
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("position 5"));
        assert!(err.ends_with("       ^\n"));
    }

    #[test]
    fn measure_limit_exit_code() {
        let (code, _, err) = run_args(&["prove", "--measure-limit", "2", "p -> p"], "");
        assert_eq!(code, 3);
        assert!(err.contains("measure 3 exceeds the limit of 2"));
        assert_eq!(run_args(&["prove", "--measure-limit", "3", "p -> p"], "").0, 0);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&[], "").0, 64);
        assert_eq!(run_args(&["frobnicate", "p"], "").0, 64);
        assert_eq!(run_args(&["prove", "--measure-limit", "0", "p"], "").0, 64);
        assert_eq!(run_args(&["prove", "--batch", "p"], "").0, 64);
        assert_eq!(run_args(&["--help"], "").0, 0);
    }

    #[test]
    fn batch_mode() {
        let input = "p -> p\n\n# comment\np -> q\n((p -> q) -> p) -> p\n";
        let (code, out, err) = run_args(&["prove", "--batch"], input);
        assert_eq!(code, 1);
        assert_eq!(out, "valid\ninvalid\nvalid\n");
        assert!(err.is_empty());

        let (code, out, err) = run_args(&["prove"], "p -> p\np ->\n");
        assert_eq!(code, 2);
        assert_eq!(out, "valid\nerror\n");
        assert!(err.starts_with("line 2: parse error at position 4"));
    }

    #[test]
    fn parse_command() {
        assert_eq!(run_args(&["parse", "~p | q"], "").1, "((p -> false) -> false) -> q\n");
        assert_eq!(
            run_args(&["parse", "--json", "~p"], "").1,
            "{\"type\":\"imp\",\"antecedent\":{\"type\":\"pro\",\"id\":\"p\"},\"consequent\":{\"type\":\"falsity\"}}\n"
        );
    }

    #[test]
    fn table_command() {
        let (code, out, _) = run_args(&["table", "p -> q"], "");
        assert_eq!(code, 0);
        assert_eq!(out, "p q | p -> q\nF F | T\nT F | F\nF T | T\nT T | T\n");
        assert_eq!(run_args(&["table", "true"], "").1, "true\nT\n");
        let (_, out, _) = run_args(&["table", "long_name"], "");
        assert_eq!(out, "long_name | long_name\nF         | F\nT         | T\n");
    }

    #[test]
    fn table_atom_limit() {
        let wide: Vec<String> = (0..21).map(|k| format!("x{k}")).collect();
        let (code, _, err) = run_args(&["table", &wide.join(" -> ")], "");
        assert_eq!(code, 3);
        assert!(err.contains("21 atoms"));
    }

    #[test]
    fn trace_command() {
        let (code, out, _) = run_args(&["trace", "p -> p"], "");
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "valid\n\
             RImpMove a=[] b=[] c=[] d=[p -> p]\n  \
             RShiftPro a=[] b=[] c=[p] d=[p]\n    \
             LShiftPro a=[] b=[p] c=[p] d=[]\n      \
             BasicAxiom a=[p] b=[p] c=[] d=[]\n"
        );
        let (_, out, _) = run_args(&["trace", "p -> q"], "");
        assert_eq!(
            out,
            "invalid\nfailing leaf: a=[p] b=[q] c=[] d=[]\n  countermodel: p=true q=false\n"
        );
    }
}
