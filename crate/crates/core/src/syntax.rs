//! Text syntax and JSON interchange.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! iff   := imp ("<->" imp)*        left-associative
//! imp   := or ("->" imp)?          right-associative
//! or    := and ("|" and)*          left-associative
//! and   := unary ("&" unary)*      left-associative
//! unary := "~" unary | "false" | "true" | ident | "(" iff ")"
//! ident := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! `¬ ∧ ∨ → ↔ ⊥ ⊤` are accepted as aliases of `~ & | -> <-> false true`.
//! Whitespace is ignored. Positions in [`ParseError`] count characters,
//! not bytes.
//!
//! The JSON schema is documented in `docs/json-schema.md` at the
//! repository root.

use std::fmt;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::formula::{CoreFormula, ExtFormula, Interpretation, PropId};
use crate::kernel::Derivation;
use crate::prover::Verdict;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 0-based character offset of the offending token.
    pub position: usize,
    pub expected: String,
    pub found: String,
}

impl ParseError {
    fn new(position: usize, expected: impl Into<String>, found: impl Into<String>) -> Self {
        ParseError {
            position,
            expected: expected.into(),
            found: found.into(),
        }
    }

    /// The message followed by the input with a caret under the error.
    pub fn render(&self, input: &str) -> String {
        let line: String = input.chars().map(|c| if c == '\t' { ' ' } else { c }).collect();
        format!("{self}\n  {line}\n  {}^", " ".repeat(self.position))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at position {}: expected {}, found {}",
            self.position, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    False,
    True,
    Not,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("identifier '{name}'"),
            Tok::False => "'false'".into(),
            Tok::True => "'true'".into(),
            Tok::Not => "'~'".into(),
            Tok::And => "'&'".into(),
            Tok::Or => "'|'".into(),
            Tok::Imp => "'->'".into(),
            Tok::Iff => "'<->'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let start = k;
        let tok = match c {
            c if c.is_whitespace() => {
                k += 1;
                continue;
            }
            '~' | '¬' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Imp,
            '↔' => Tok::Iff,
            '⊥' => Tok::False,
            '⊤' => Tok::True,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' => {
                if chars.get(k + 1) != Some(&'>') {
                    return Err(ParseError::new(k, "'->'", describe_char(&chars, k)));
                }
                k += 1;
                Tok::Imp
            }
            '<' => {
                if chars.get(k + 1..k + 3) != Some(&['-', '>'][..]) {
                    return Err(ParseError::new(k, "'<->'", describe_char(&chars, k)));
                }
                k += 2;
                Tok::Iff
            }
            c if PropId::is_start_char(c) => {
                while k + 1 < chars.len() && PropId::is_continue_char(chars[k + 1]) {
                    k += 1;
                }
                let word: String = chars[start..=k].iter().collect();
                match word.as_str() {
                    "false" => Tok::False,
                    "true" => Tok::True,
                    _ => Tok::Ident(word),
                }
            }
            _ => return Err(ParseError::new(k, "a formula", describe_char(&chars, k))),
        };
        out.push((start, tok));
        k += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

fn describe_char(chars: &[char], k: usize) -> String {
    let rest: String = chars[k..].iter().take(3).collect();
    format!("'{rest}'")
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn position(&self) -> usize {
        self.toks[self.at].0
    }

    fn advance(&mut self) {
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::new(self.position(), expected, self.peek().describe())
    }

    fn iff(&mut self) -> Result<ExtFormula, ParseError> {
        let mut left = self.imp()?;
        while *self.peek() == Tok::Iff {
            self.advance();
            let right = self.imp()?;
            left = ExtFormula::iff(left, right);
        }
        Ok(left)
    }

    fn imp(&mut self) -> Result<ExtFormula, ParseError> {
        let mut operands = vec![self.or()?];
        while *self.peek() == Tok::Imp {
            self.advance();
            operands.push(self.or()?);
        }
        let last = operands.pop().expect("at least one operand");
        Ok(operands
            .into_iter()
            .rev()
            .fold(last, |acc, l| ExtFormula::implies(l, acc)))
    }

    fn or(&mut self) -> Result<ExtFormula, ParseError> {
        let mut left = self.and()?;
        while *self.peek() == Tok::Or {
            self.advance();
            let right = self.and()?;
            left = ExtFormula::or(left, right);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<ExtFormula, ParseError> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::And {
            self.advance();
            let right = self.unary()?;
            left = ExtFormula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<ExtFormula, ParseError> {
        let mut negations = 0usize;
        while *self.peek() == Tok::Not {
            negations += 1;
            self.advance();
        }
        let mut e = match self.peek().clone() {
            Tok::False => ExtFormula::Bottom,
            Tok::True => ExtFormula::Top,
            Tok::Ident(name) => {
                ExtFormula::Atom(PropId::new(name).map_err(|e| self.error(&e.to_string()))?)
            }
            Tok::LParen => {
                self.advance();
                let inner = stacker::maybe_grow(64 * 1024, 1024 * 1024, || self.iff())?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("')'"));
                }
                inner
            }
            _ => return Err(self.error("a formula")),
        };
        self.advance();
        for _ in 0..negations {
            e = ExtFormula::not(e);
        }
        Ok(e)
    }
}

pub fn parse(text: &str) -> Result<ExtFormula, ParseError> {
    let mut parser = Parser { toks: lex(text)?, at: 0 };
    let e = parser.iff()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error("an operator or end of input"));
    }
    Ok(e)
}

// Binding strength, loosest first.
const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

fn level(e: &ExtFormula) -> u8 {
    match e {
        ExtFormula::Iff(..) => IFF,
        ExtFormula::Implies(..) => IMP,
        ExtFormula::Or(..) => OR,
        ExtFormula::And(..) => AND,
        _ => UNARY,
    }
}

/// Render with the fewest parentheses that parse back to the same tree.
pub fn pretty(e: &ExtFormula) -> String {
    let mut out = String::new();
    write_pretty(e, &mut out);
    out
}

pub fn pretty_core(f: &CoreFormula) -> String {
    pretty(&f.to_ext())
}

fn write_at(e: &ExtFormula, min_level: u8, out: &mut String) {
    if level(e) < min_level {
        out.push('(');
        write_pretty(e, out);
        out.push(')');
    } else {
        write_pretty(e, out);
    }
}

fn write_pretty(e: &ExtFormula, out: &mut String) {
    let (l, r, op, left_min, right_min) = match e {
        ExtFormula::Atom(n) => return out.push_str(n.as_str()),
        ExtFormula::Bottom => return out.push_str("false"),
        ExtFormula::Top => return out.push_str("true"),
        ExtFormula::Not(x) => {
            out.push('~');
            return write_at(x, UNARY, out);
        }
        ExtFormula::Iff(l, r) => (l, r, " <-> ", IFF, IMP),
        ExtFormula::Implies(l, r) => (l, r, " -> ", OR, IMP),
        ExtFormula::Or(l, r) => (l, r, " | ", OR, AND),
        ExtFormula::And(l, r) => (l, r, " & ", AND, UNARY),
    };
    write_at(l, left_min, out);
    out.push_str(op);
    write_at(r, right_min, out);
}

impl fmt::Display for ExtFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty(self))
    }
}

impl fmt::Display for CoreFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty_core(self))
    }
}

impl Serialize for CoreFormula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            CoreFormula::Pro(id) => {
                let mut s = serializer.serialize_struct("CoreFormula", 2)?;
                s.serialize_field("type", "pro")?;
                s.serialize_field("id", id)?;
                s.end()
            }
            CoreFormula::Falsity => {
                let mut s = serializer.serialize_struct("CoreFormula", 1)?;
                s.serialize_field("type", "falsity")?;
                s.end()
            }
            CoreFormula::Imp(p, q) => {
                let mut s = serializer.serialize_struct("CoreFormula", 3)?;
                s.serialize_field("type", "imp")?;
                s.serialize_field("antecedent", &**p)?;
                s.serialize_field("consequent", &**q)?;
                s.end()
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum FormulaTag {
    Pro,
    Falsity,
    Imp,
}

// Flat record rather than an internally tagged enum: serde buffers tagged
// enums into an intermediate tree, which recurses outside the stack guard.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FormulaRecord {
    #[serde(rename = "type")]
    tag: FormulaTag,
    id: Option<PropId>,
    antecedent: Option<Box<CoreFormula>>,
    consequent: Option<Box<CoreFormula>>,
}

impl<'de> Deserialize<'de> for CoreFormula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = FormulaRecord::deserialize(deserializer)?;
        match (r.tag, r.id, r.antecedent, r.consequent) {
            (FormulaTag::Pro, Some(id), None, None) => Ok(CoreFormula::Pro(id)),
            (FormulaTag::Pro, None, ..) => Err(D::Error::missing_field("id")),
            (FormulaTag::Falsity, None, None, None) => Ok(CoreFormula::Falsity),
            (FormulaTag::Imp, None, Some(p), Some(q)) => Ok(CoreFormula::Imp(Arc::from(p), Arc::from(q))),
            (FormulaTag::Imp, None, None, _) => Err(D::Error::missing_field("antecedent")),
            (FormulaTag::Imp, None, _, None) => Err(D::Error::missing_field("consequent")),
            _ => Err(D::Error::custom("field not allowed for this formula type")),
        }
    }
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum VerdictTag {
    Proved,
    Refuted,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VerdictRecord {
    verdict: VerdictTag,
    derivation: Option<Derivation>,
    countermodels: Option<Vec<Interpretation>>,
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Verdict::Proved(derivation) => {
                let mut s = serializer.serialize_struct("Verdict", 2)?;
                s.serialize_field("verdict", "proved")?;
                s.serialize_field("derivation", derivation)?;
                s.end()
            }
            Verdict::Refuted(countermodels) => {
                let mut s = serializer.serialize_struct("Verdict", 2)?;
                s.serialize_field("verdict", "refuted")?;
                s.serialize_field("countermodels", countermodels)?;
                s.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = VerdictRecord::deserialize(deserializer)?;
        match (r.verdict, r.derivation, r.countermodels) {
            (VerdictTag::Proved, Some(d), None) => Ok(Verdict::Proved(d)),
            (VerdictTag::Proved, None, _) => Err(D::Error::missing_field("derivation")),
            (VerdictTag::Refuted, None, Some(models)) if models.is_empty() => {
                Err(D::Error::invalid_length(0, &"at least one countermodel"))
            }
            (VerdictTag::Refuted, None, Some(models)) => Ok(Verdict::Refuted(models)),
            (VerdictTag::Refuted, _, None) => Err(D::Error::missing_field("countermodels")),
            _ => Err(D::Error::custom("field not allowed for this verdict")),
        }
    }
}

/// Compact JSON for any interchange type.
pub fn to_json<T: Serialize + ?Sized>(x: &T) -> String {
    serde_json::to_string(x).expect("interchange types always serialize")
}

pub fn to_json_pretty<T: Serialize + ?Sized>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("interchange types always serialize")
}

/// Parse JSON produced by [`to_json`]. Malformed JSON and schema violations
/// both yield a [`ParseError`] positioned where the decoder gave up.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, ParseError> {
    let mut de = serde_json::Deserializer::from_str(text);
    de.disable_recursion_limit();
    let value = T::deserialize(serde_stacker::Deserializer::new(&mut de))
        .and_then(|v| de.end().map(|_| v))
        .map_err(|e| json_error(text, &e))?;
    Ok(value)
}

fn json_error(text: &str, e: &serde_json::Error) -> ParseError {
    use serde_json::error::Category;
    let expected = match e.classify() {
        Category::Data => "a value matching the schema",
        _ => "well-formed JSON",
    };
    let position = if e.line() == 0 {
        0
    } else {
        // serde_json reports a 1-based line and a 1-based byte column.
        let line_start: usize = text
            .split_inclusive('\n')
            .take(e.line() - 1)
            .map(str::len)
            .sum();
        let mut byte = (line_start + e.column().saturating_sub(1)).min(text.len());
        while !text.is_char_boundary(byte) {
            byte -= 1;
        }
        text[..byte].chars().count()
    };
    ParseError::new(position, expected, e.to_string())
}
