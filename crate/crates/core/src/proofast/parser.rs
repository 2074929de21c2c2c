use super::ast::*;
use super::tokenize::is_comment_or_blank;
use super::KERNEL_VERSION;
use crate::opb::{parse_constraint, split_tokens, ParseError, Token};
use crate::pbcore::{Coeff, Constraint, Image, Literal, Substitution};
use std::io::BufRead;

const HEADER_PREFIX: &str = "pseudo-Boolean proof version";
const MAX_DEPTH: usize = 256;

/// Parses a complete proof held in memory.
pub fn parse_proof(text: &str) -> Result<Proof, ParseError> {
    let mut reader = ProofReader::new(text.as_bytes())?;
    let steps = reader.by_ref().collect::<Result<Vec<_>, _>>()?;
    Ok(Proof {
        version: reader.version().to_string(),
        steps,
    })
}

/// Reads a proof one top-level step at a time.
///
/// Subproofs of `pbc`, `red` and `dom` are materialized as part of their
/// step; nothing else is retained once a step has been yielded. The iterator
/// yields an error for a missing trailer or any content after it.
pub struct ProofReader<R> {
    lines: Lines<R>,
    version: String,
    finished: bool,
}

impl<R: BufRead> ProofReader<R> {
    /// Consumes the header line.
    pub fn new(reader: R) -> Result<ProofReader<R>, ParseError> {
        let mut lines = Lines::new(reader);
        let Some((line, text)) = lines.next_content()? else {
            return Err(ParseError::new(1, 1, "empty proof: missing header"));
        };
        let version = match text.trim().strip_prefix(HEADER_PREFIX) {
            Some(rest) => rest.trim().to_string(),
            None => {
                return Err(ParseError::new(
                    line,
                    1,
                    format!("expected `{HEADER_PREFIX} {KERNEL_VERSION}`"),
                ))
            }
        };
        if version != KERNEL_VERSION {
            return Err(ParseError::new(
                line,
                1,
                format!("unsupported proof version `{version}`, only kernel format {KERNEL_VERSION} is accepted"),
            ));
        }
        Ok(ProofReader {
            lines,
            version,
            finished: false,
        })
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    fn next_step(&mut self) -> Result<Option<Located>, ParseError> {
        if self.finished {
            return match self.lines.next_content()? {
                Some((line, _)) => Err(ParseError::new(line, 1, "content after end of proof")),
                None => Ok(None),
            };
        }
        let Some((line, text)) = self.lines.next_content()? else {
            self.finished = true;
            return Err(ParseError::new(
                self.lines.line_no.max(1),
                1,
                "missing `end pseudo-Boolean proof`",
            ));
        };
        match parse_line(line, &text)? {
            Head::Trailer => {
                self.finished = true;
                self.next_step()
            }
            head => self.read_step(head, line, 0).map(Some),
        }
    }

    fn read_step(&mut self, head: Head, line: usize, depth: usize) -> Result<Located, ParseError> {
        if depth > MAX_DEPTH {
            return Err(ParseError::new(line, 1, "subproofs nested too deeply"));
        }
        let step = match head {
            Head::Step(step) => step,
            Head::PbcOpen(target) => ProofStep::Pbc {
                target,
                subproof: self.read_block(depth + 1, line)?,
            },
            Head::RedOpen {
                dominance,
                target,
                witness,
                has_block,
            } => {
                let goals = if has_block {
                    self.read_goals(depth + 1, line)?
                } else {
                    Vec::new()
                };
                if witness.is_empty() && !goals.is_empty() {
                    return Err(ParseError::new(line, 1, "proof goals given for an empty witness"));
                }
                let r = Redundance {
                    target,
                    witness,
                    goals,
                };
                if dominance {
                    ProofStep::Dom(r)
                } else {
                    ProofStep::Red(r)
                }
            }
            Head::Goal(_) => {
                return Err(ParseError::new(line, 1, "`goal` outside a red/dom block"))
            }
            Head::End => return Err(ParseError::new(line, 1, "unbalanced `end`")),
            Head::Trailer => {
                return Err(ParseError::new(line, 1, "proof trailer inside a subproof"))
            }
        };
        Ok(Located::new(line, step))
    }

    /// Reads subproof steps up to the matching `end`.
    fn read_block(&mut self, depth: usize, open_line: usize) -> Result<Vec<Located>, ParseError> {
        let mut steps = Vec::new();
        loop {
            let Some((line, text)) = self.lines.next_content()? else {
                return Err(ParseError::new(
                    open_line,
                    1,
                    "unterminated `begin`: missing `end`",
                ));
            };
            let head = parse_line(line, &text)?;
            match &head {
                Head::End => return Ok(steps),
                Head::Trailer => {
                    return Err(ParseError::new(
                        open_line,
                        1,
                        format!("unterminated `begin`: proof trailer at line {line} reached first"),
                    ))
                }
                Head::Step(s) if top_level_only(s) => {
                    return Err(ParseError::new(
                        line,
                        1,
                        format!("`{}` is not allowed inside a subproof", s.rule_name()),
                    ))
                }
                _ => {}
            }
            steps.push(self.read_step(head, line, depth)?);
        }
    }

    /// Reads `goal …` blocks up to the `end` closing a red/dom step.
    fn read_goals(&mut self, depth: usize, open_line: usize) -> Result<Vec<Goal>, ParseError> {
        let mut goals = Vec::new();
        loop {
            let Some((line, text)) = self.lines.next_content()? else {
                return Err(ParseError::new(
                    open_line,
                    1,
                    "unterminated `begin`: missing `end`",
                ));
            };
            match parse_line(line, &text)? {
                Head::End => return Ok(goals),
                Head::Trailer => {
                    return Err(ParseError::new(
                        open_line,
                        1,
                        format!("unterminated `begin`: proof trailer at line {line} reached first"),
                    ))
                }
                Head::Goal(id) => {
                    let steps = self.read_block(depth + 1, line)?;
                    goals.push(Goal { id, line, steps });
                }
                _ => {
                    return Err(ParseError::new(
                        line,
                        1,
                        "expected `goal` or `end` inside a red/dom block",
                    ))
                }
            }
        }
    }
}

impl<R: BufRead> Iterator for ProofReader<R> {
    type Item = Result<Located, ParseError>;

    fn next(&mut self) -> Option<Self::Item> {
        match self.next_step() {
            Ok(Some(step)) => Some(Ok(step)),
            Ok(None) => None,
            Err(e) => {
                // stop after the first error
                self.finished = true;
                self.lines.exhausted = true;
                Some(Err(e))
            }
        }
    }
}

fn top_level_only(step: &ProofStep) -> bool {
    matches!(
        step,
        ProofStep::LoadFormula(_)
            | ProofStep::Sol(_)
            | ProofStep::SolImplied(_)
            | ProofStep::Output
            | ProofStep::Conclusion { .. }
    )
}

struct Lines<R> {
    reader: R,
    line_no: usize,
    buf: Vec<u8>,
    exhausted: bool,
}

impl<R: BufRead> Lines<R> {
    fn new(reader: R) -> Lines<R> {
        Lines {
            reader,
            line_no: 0,
            buf: Vec::new(),
            exhausted: false,
        }
    }

    /// Next line that is neither blank nor a comment.
    fn next_content(&mut self) -> Result<Option<(usize, String)>, ParseError> {
        loop {
            if self.exhausted {
                return Ok(None);
            }
            self.buf.clear();
            let n = self
                .reader
                .read_until(b'\n', &mut self.buf)
                .map_err(|e| ParseError::new(self.line_no + 1, 1, format!("read error: {e}")))?;
            if n == 0 {
                self.exhausted = true;
                return Ok(None);
            }
            self.line_no += 1;
            let text = std::str::from_utf8(&self.buf)
                .map_err(|_| ParseError::new(self.line_no, 1, "invalid UTF-8"))?;
            let text = text.trim_end_matches(['\n', '\r']);
            if !is_comment_or_blank(text) {
                return Ok(Some((self.line_no, text.to_string())));
            }
        }
    }
}

enum Head {
    Step(ProofStep),
    PbcOpen(Constraint),
    RedOpen {
        dominance: bool,
        target: Constraint,
        witness: Substitution,
        has_block: bool,
    },
    Goal(GoalId),
    End,
    Trailer,
}

struct Cursor<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a str> {
        self.tokens.get(self.pos).map(|t| t.text)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_col, |t| t.column)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column(), msg)
    }

    fn bump(&mut self) -> Option<&'a str> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(format!("unsupported token `{t}`"))),
        }
    }

    fn expect(&mut self, text: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t == text => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected `{text}`, found `{t}`"))),
            None => Err(self.err(format!("expected `{text}`"))),
        }
    }

    fn constraint(&mut self) -> Result<Constraint, ParseError> {
        let (mut cs, next) = parse_constraint(&self.tokens, self.pos, self.line, false)?;
        self.pos = next;
        Ok(cs.pop().expect("one constraint for >="))
    }

    fn id(&mut self) -> Result<ConstraintId, ParseError> {
        let col = self.column();
        let t = self.bump().ok_or_else(|| self.err("expected a constraint id"))?;
        parse_id(t).ok_or_else(|| ParseError::new(self.line, col, format!("invalid constraint id `{t}`")))
    }

    fn ids(&mut self) -> Result<Vec<ConstraintId>, ParseError> {
        let mut out = Vec::new();
        while !self.at_end() {
            out.push(self.id()?);
        }
        Ok(out)
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let col = self.column();
        let t = self.bump().ok_or_else(|| self.err("expected a literal"))?;
        Literal::parse(t).ok_or_else(|| ParseError::new(self.line, col, format!("malformed literal `{t}`")))
    }

    fn literals(&mut self) -> Result<Vec<Literal>, ParseError> {
        let mut out = Vec::new();
        while !self.at_end() {
            out.push(self.literal()?);
        }
        Ok(out)
    }
}

fn parse_id(t: &str) -> Option<ConstraintId> {
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    t.parse().ok().filter(|&id| id >= 1)
}

/// A positive integer factor for `*` or `d`.
fn parse_factor(t: &str) -> Option<Coeff> {
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    t.parse::<Coeff>().ok().filter(|k| !k.is_zero())
}

fn parse_line(line: usize, text: &str) -> Result<Head, ParseError> {
    let tokens = split_tokens(text);
    let end_col = tokens.last().map_or(1, |t| t.column + t.text.len());
    let mut cur = Cursor {
        tokens,
        pos: 0,
        line,
        end_col,
    };
    let rule = cur.bump().expect("content lines have a token");
    let head = match rule {
        "f" => {
            let count = match cur.bump() {
                None => None,
                Some(t) => Some(t.parse::<usize>().map_err(|_| {
                    ParseError::new(line, cur.tokens[1].column, format!("invalid formula size `{t}`"))
                })?),
            };
            cur.expect_end()?;
            Head::Step(ProofStep::LoadFormula(count))
        }
        "pol" => Head::Step(ProofStep::Pol(parse_pol(&mut cur)?)),
        "rup" => {
            let target = cur.constraint()?;
            let hints = cur.ids()?;
            Head::Step(ProofStep::Rup {
                target,
                hinted: !hints.is_empty(),
                hints,
            })
        }
        "pbc" => {
            let target = cur.constraint()?;
            cur.expect("begin")?;
            cur.expect_end()?;
            Head::PbcOpen(target)
        }
        "red" | "dom" => {
            let target = cur.constraint()?;
            let witness = parse_witness(&mut cur)?;
            let has_block = if cur.peek() == Some(";") {
                cur.bump();
                cur.expect("begin")?;
                true
            } else {
                false
            };
            cur.expect_end()?;
            Head::RedOpen {
                dominance: rule == "dom",
                target,
                witness,
                has_block,
            }
        }
        "goal" | "proofgoal" => {
            let id = match cur.peek() {
                Some("#new") => {
                    cur.bump();
                    GoalId::NewConstraint
                }
                _ => GoalId::Existing(cur.id()?),
            };
            cur.expect_end()?;
            Head::Goal(id)
        }
        "del" => {
            cur.expect("id")?;
            Head::Step(ProofStep::Del(cur.ids()?))
        }
        "weaken" => {
            let id = cur.id()?;
            let lit = cur.literal()?;
            cur.expect_end()?;
            Head::Step(ProofStep::Weaken { id, var: lit.var() })
        }
        "sol" => Head::Step(ProofStep::Sol(cur.literals()?)),
        "soli" => Head::Step(ProofStep::SolImplied(cur.literals()?)),
        "output" => {
            cur.expect("NONE")?;
            cur.expect_end()?;
            Head::Step(ProofStep::Output)
        }
        "conclusion" => parse_conclusion(&mut cur)?,
        "end" => match cur.peek() {
            None => Head::End,
            Some("pseudo-Boolean") => {
                cur.bump();
                cur.expect("proof")?;
                cur.expect_end()?;
                Head::Trailer
            }
            Some(t) => return Err(cur.err(format!("unsupported token `{t}`"))),
        },
        other => {
            return Err(ParseError::new(
                line,
                1,
                format!("unsupported rule `{other}`"),
            ))
        }
    };
    Ok(head)
}

fn parse_pol(cur: &mut Cursor<'_>) -> Result<Vec<PolOp>, ParseError> {
    let mut ops = Vec::new();
    while let Some(t) = cur.peek() {
        let col = cur.column();
        let next = cur.tokens.get(cur.pos + 1).map(|t| t.text);
        match t {
            ";" if next.is_none() => {
                cur.bump();
                break;
            }
            "+" => ops.push(PolOp::Add),
            "s" => ops.push(PolOp::Saturate),
            "*" | "d" | "w" => {
                return Err(ParseError::new(cur.line, col, format!("`{t}` without an operand")))
            }
            _ if next == Some("*") || next == Some("d") => {
                let k = parse_factor(t).ok_or_else(|| {
                    ParseError::new(cur.line, col, format!("invalid factor `{t}`"))
                })?;
                ops.push(if next == Some("*") {
                    PolOp::Multiply(k)
                } else {
                    PolOp::Divide(k)
                });
                cur.bump();
            }
            _ if next == Some("w") => {
                let lit = Literal::parse(t).ok_or_else(|| {
                    ParseError::new(cur.line, col, format!("invalid weakening variable `{t}`"))
                })?;
                ops.push(PolOp::Weaken(lit.var()));
                cur.bump();
            }
            _ => {
                if let Some(id) = parse_id(t) {
                    ops.push(PolOp::Id(id));
                } else if let Some(lit) = Literal::parse(t) {
                    ops.push(PolOp::Axiom(lit));
                } else {
                    return Err(ParseError::new(cur.line, col, format!("unsupported token `{t}`")));
                }
            }
        }
        cur.bump();
    }
    if ops.is_empty() {
        return Err(cur.err("empty pol expression"));
    }
    let mut depth = 0usize;
    for op in &ops {
        let (needs, pushes) = match op {
            PolOp::Id(_) | PolOp::Axiom(_) => (0, 1),
            PolOp::Add => (2, 1),
            _ => (1, 1),
        };
        if depth < needs {
            return Err(cur.err(format!("`{op}` without an operand")));
        }
        depth = depth - needs + pushes;
    }
    if depth != 1 {
        return Err(cur.err(format!("pol expression leaves {depth} constraints on the stack")));
    }
    Ok(ops)
}

fn parse_witness(cur: &mut Cursor<'_>) -> Result<Substitution, ParseError> {
    let mut witness = Substitution::new();
    while let Some(t) = cur.peek() {
        if t == ";" {
            break;
        }
        let col = cur.column();
        let var = match Literal::parse(t) {
            Some(l) if l.is_positive() => l.var(),
            _ => {
                return Err(ParseError::new(
                    cur.line,
                    col,
                    format!("witness must map a variable, found `{t}`"),
                ))
            }
        };
        cur.bump();
        cur.expect("->")?;
        let img_col = cur.column();
        let img = cur.bump().ok_or_else(|| cur.err("missing witness image"))?;
        let image = match img {
            "0" | "false" => Image::Const(false),
            "1" | "true" => Image::Const(true),
            _ => Image::Lit(Literal::parse(img).ok_or_else(|| {
                ParseError::new(cur.line, img_col, format!("malformed witness image `{img}`"))
            })?),
        };
        if witness.insert(var, image).is_some() {
            return Err(ParseError::new(
                cur.line,
                col,
                format!("variable {var} mapped twice in witness"),
            ));
        }
    }
    Ok(witness)
}

fn parse_conclusion(cur: &mut Cursor<'_>) -> Result<Head, ParseError> {
    let kind = match cur.bump() {
        Some("UNSAT") => ConclusionKind::Unsat,
        Some("SAT") => ConclusionKind::Sat,
        Some("BOUNDS") => {
            // bounds are rejected by the checker; keep the rest of the line unparsed
            cur.pos = cur.tokens.len();
            ConclusionKind::Bounds
        }
        Some(t) => return Err(ParseError::new(cur.line, cur.tokens[1].column, format!("unsupported conclusion `{t}`"))),
        None => return Err(cur.err("missing conclusion kind")),
    };
    let reference = if kind == ConclusionKind::Unsat && cur.peek() == Some(":") {
        cur.bump();
        Some(cur.id()?)
    } else {
        None
    };
    cur.expect_end()?;
    Ok(Head::Step(ProofStep::Conclusion { kind, reference }))
}
