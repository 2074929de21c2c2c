//! Reading and writing OPB files.
//!
//! Only linear constraints are supported. Equalities are split into two
//! `>=` constraints and negative coefficients are rewritten onto the
//! complementary literal at parse time, so every constraint handed to the
//! rest of the crate is a normalized `>=` constraint with non-negative
//! coefficients.
//!
//! Constraint IDs are implied by position: the first constraint produced by
//! the file has ID 1. An equality occupies two consecutive IDs.

use crate::pbcore::{Coeff, Constraint, Literal, Term};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt::Write as _;
use thiserror::Error;

/// A syntax error, located by 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// An ordered set of constraints.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Formula {
    pub constraints: Vec<Constraint>,
    pub declared_vars: usize,
    pub declared_constraints: usize,
}

impl Formula {
    /// Normalizes every constraint and records the actual counts as declared.
    pub fn new(constraints: Vec<Constraint>) -> Formula {
        let constraints: Vec<Constraint> = constraints.iter().map(Constraint::normalize).collect();
        let declared_vars = max_var_index(&constraints);
        Formula {
            declared_constraints: constraints.len(),
            constraints,
            declared_vars,
        }
    }

    /// Largest variable index occurring in any constraint.
    pub fn max_var(&self) -> usize {
        max_var_index(&self.constraints)
    }

    /// Number of variables: the declared count or the largest index used,
    /// whichever is greater.
    pub fn num_vars(&self) -> usize {
        self.declared_vars.max(self.max_var())
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }
}

fn max_var_index(constraints: &[Constraint]) -> usize {
    constraints
        .iter()
        .filter_map(Constraint::max_var)
        .map(|v| v.index() as usize)
        .max()
        .unwrap_or(0)
}

#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    /// Turn header count mismatches into errors.
    pub strict: bool,
}

#[derive(Clone, Debug)]
pub struct ParsedOpb {
    pub formula: Formula,
    pub warnings: Vec<String>,
}

/// Parses an OPB document, logging any warnings.
pub fn parse_opb(text: &str) -> Result<Formula, ParseError> {
    let parsed = parse_opb_with_options(text, &ParseOptions::default())?;
    for w in &parsed.warnings {
        log::warn!("{w}");
    }
    Ok(parsed.formula)
}

pub fn parse_opb_with_options(text: &str, opts: &ParseOptions) -> Result<ParsedOpb, ParseError> {
    let mut constraints = Vec::new();
    let mut warnings = Vec::new();
    let mut header: Option<(usize, Option<usize>, Option<usize>)> = None;
    let mut constraint_lines = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let trimmed = line.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('*') {
            if header.is_none() && comment.contains("#variable=") {
                header = Some((
                    line_no,
                    header_value(comment, "#variable="),
                    header_value(comment, "#constraint="),
                ));
            }
            continue;
        }
        let tokens = split_tokens(line);
        if let Some(first) = tokens.first() {
            if first.text.starts_with("min:") || first.text.starts_with("max:") {
                warnings.push(format!("line {line_no}: objective ignored"));
                continue;
            }
        }
        let (parsed, next) = parse_constraint(&tokens, 0, line_no, true)?;
        if let Some(extra) = tokens.get(next) {
            return Err(ParseError::new(
                line_no,
                extra.column,
                format!("unexpected token `{}` after `;`", extra.text),
            ));
        }
        constraint_lines += 1;
        constraints.extend(parsed);
    }

    let max_var = max_var_index(&constraints);
    let mut declared_vars = max_var;
    let mut declared_constraints = constraints.len();
    if let Some((line_no, vars, cons)) = header {
        if let Some(n) = vars {
            declared_vars = n;
            if max_var > n {
                warnings.push(format!(
                    "header declares {n} variables but x{max_var} is used"
                ));
            }
        }
        if let Some(m) = cons {
            declared_constraints = m;
            if m != constraint_lines {
                warnings.push(format!(
                    "header declares {m} constraints but {constraint_lines} were read"
                ));
            }
        }
        if opts.strict && !warnings.is_empty() {
            return Err(ParseError::new(line_no, 1, warnings.join("; ")));
        }
    }

    Ok(ParsedOpb {
        formula: Formula {
            constraints,
            declared_vars,
            declared_constraints,
        },
        warnings,
    })
}

fn header_value(comment: &str, key: &str) -> Option<usize> {
    let start = comment.find(key)? + key.len();
    comment[start..].split_whitespace().next()?.parse().ok()
}

/// A whitespace-separated token with its 1-based column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

/// Splits a line on whitespace. A `;` glued to the end of a token is split
/// off into its own token.
pub(crate) fn split_tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let bytes = line.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        let text = &line[start..i];
        if text.len() > 1 && text.ends_with(';') {
            out.push(Token {
                text: &text[..text.len() - 1],
                column: start + 1,
            });
            out.push(Token {
                text: ";",
                column: i,
            });
        } else {
            out.push(Token {
                text,
                column: start + 1,
            });
        }
    }
    out
}

/// Parses `⟨±int⟩ ⟨lit⟩ … ⟨op⟩ ⟨int⟩ ;` starting at `tokens[start]`.
///
/// Returns the normalized `>=` constraints (two for an equality) and the
/// index of the token after `;`.
pub(crate) fn parse_constraint(
    tokens: &[Token<'_>],
    start: usize,
    line: usize,
    allow_equality: bool,
) -> Result<(Vec<Constraint>, usize), ParseError> {
    let end_col = tokens.last().map_or(1, |t| t.column + t.text.len());
    let mut terms: Vec<(BigInt, Literal)> = Vec::new();
    let mut i = start;
    let equality = loop {
        let Some(tok) = tokens.get(i) else {
            return Err(ParseError::new(line, end_col, "missing relational operator"));
        };
        match tok.text {
            ">=" => break false,
            "=" if allow_equality => break true,
            "=" | "<=" | ">" | "<" => {
                return Err(ParseError::new(
                    line,
                    tok.column,
                    format!("unsupported relational operator `{}`", tok.text),
                ))
            }
            _ => {}
        }
        let coeff = parse_int(tok.text).ok_or_else(|| {
            ParseError::new(line, tok.column, format!("malformed coefficient `{}`", tok.text))
        })?;
        let Some(lit_tok) = tokens.get(i + 1) else {
            return Err(ParseError::new(line, end_col, "coefficient without literal"));
        };
        let lit = parse_literal(lit_tok, line)?;
        terms.push((coeff, lit));
        i += 2;
    };
    let rhs_tok = tokens
        .get(i + 1)
        .ok_or_else(|| ParseError::new(line, end_col, "missing degree"))?;
    let rhs = parse_int(rhs_tok.text).ok_or_else(|| {
        ParseError::new(line, rhs_tok.column, format!("malformed degree `{}`", rhs_tok.text))
    })?;
    match tokens.get(i + 2) {
        Some(t) if t.text == ";" => {}
        Some(t) => {
            return Err(ParseError::new(
                line,
                t.column,
                format!("expected `;`, found `{}`", t.text),
            ))
        }
        None => return Err(ParseError::new(line, end_col, "missing terminating `;`")),
    }

    let mut out = vec![to_geq(&terms, &rhs)];
    if equality {
        let flipped: Vec<(BigInt, Literal)> = terms.iter().map(|(a, l)| (-a, *l)).collect();
        out.push(to_geq(&flipped, &-rhs));
    }
    Ok((out, i + 3))
}

/// Rewrites `Σ aᵢ·ℓᵢ ≥ d` with signed integers into normalized form:
/// `−a·ℓ` becomes `a·¬ℓ` with `a` added to the degree.
fn to_geq(terms: &[(BigInt, Literal)], rhs: &BigInt) -> Constraint {
    let mut degree = rhs.clone();
    let mut out = Vec::with_capacity(terms.len());
    for (a, lit) in terms {
        if a.is_negative() {
            let mag = -a;
            degree += &mag;
            out.push(Term::new(Coeff::from_bigint(&mag).expect("positive"), !*lit));
        } else if !a.is_zero() {
            out.push(Term::new(Coeff::from_bigint(a).expect("positive"), *lit));
        }
    }
    let degree = Coeff::from_bigint(&degree).unwrap_or(Coeff::ZERO);
    Constraint::new(out, degree).normalize()
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('+').unwrap_or(s);
    let body = digits.strip_prefix('-').unwrap_or(digits);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn parse_literal(tok: &Token<'_>, line: usize) -> Result<Literal, ParseError> {
    Literal::parse(tok.text).ok_or_else(|| {
        let body = tok.text.trim_start_matches('~');
        let msg = if body.strip_prefix('x').is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b == b'0')) {
            "variable index 0 is not allowed".to_string()
        } else {
            format!("malformed literal `{}`", tok.text)
        };
        ParseError::new(line, tok.column, msg)
    })
}

/// Writes `F` as OPB: a count header, then one `>=` constraint per line.
pub fn serialize_opb(f: &Formula) -> String {
    serialize_opb_with_comments(f, &[])
}

/// Like [`serialize_opb`], with extra `*` comment lines after the header.
pub fn serialize_opb_with_comments(f: &Formula, comments: &[String]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "* #variable= {} #constraint= {}",
        f.num_vars(),
        f.constraints.len()
    );
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "* {line}");
        }
    }
    for c in &f.constraints {
        let _ = writeln!(out, "{c} ;");
    }
    out
}
