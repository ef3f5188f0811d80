//! Line-oriented proof files:
//!
//! ```text
//! # comment
//! step 1 rule=R12 premises=[] ctx={} concl=$c == $c
//! step 2 rule=R8 premises=[1] ctx={} concl=ex v0 . v0 == $c param.x=v0 param.z=v0 param.template=v0 == $c param.witness=$c
//! ```
//!
//! Context members are separated by `;`. A parameter value runs up to the
//! next whitespace-preceded `param.` or the end of the line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write};

use thiserror::Error;

use crate::syntax::{parse_formula, Formula, ParseError, SourceSpan};

use super::{Derivation, DerivationStep, Rule, Sequent};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ProofParseError {
    /// 1-based.
    pub line: usize,
    /// Byte range within the line.
    pub span: SourceSpan,
    pub message: String,
    pub source_line: String,
}

impl ProofParseError {
    /// The message with the offending line and a caret marker underneath.
    pub fn diagnostic(&self) -> String {
        let start = self.source_line[..self.span.start.min(self.source_line.len())].chars().count();
        let width = self
            .source_line
            .get(self.span.start..self.span.end)
            .map(|s| s.chars().count())
            .unwrap_or(1)
            .max(1);
        format!(
            "line {}: {}\n  {}\n  {}{}",
            self.line,
            self.message,
            self.source_line,
            " ".repeat(start),
            "^".repeat(width)
        )
    }
}

struct LineParser<'a> {
    line_no: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> LineParser<'a> {
    fn error(&self, start: usize, end: usize, message: impl Into<String>) -> ProofParseError {
        ProofParseError {
            line: self.line_no,
            span: SourceSpan::new(start, end.max(start + 1)),
            message: message.into(),
            source_line: self.text.to_string(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    /// Consumes `keyword`, which must be followed by whitespace or an end.
    fn expect_word(&mut self, keyword: &str) -> Result<(), ProofParseError> {
        self.skip_ws();
        if self.rest().starts_with(keyword) {
            self.pos += keyword.len();
            Ok(())
        } else {
            let end = self.pos + self.rest().find(char::is_whitespace).unwrap_or(self.rest().len());
            Err(self.error(self.pos, end, format!("expected `{keyword}`")))
        }
    }

    fn word(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().find(char::is_whitespace).unwrap_or(self.rest().len());
        self.pos += len;
        (start, &self.text[start..self.pos])
    }

    fn formula(&self, start: usize, text: &str) -> Result<Formula, ProofParseError> {
        let lead = text.len() - text.trim_start().len();
        parse_formula(text).map_err(|e: ParseError| {
            let s = start + e.span.start.max(lead);
            self.error(s, start + e.span.end, format!("bad formula `{}`: {}", text.trim(), e.kind))
        })
    }

    /// `{ f ; g }` with nested braces allowed inside formulas.
    fn context(&mut self) -> Result<BTreeSet<Formula>, ProofParseError> {
        self.expect_word("ctx=")?;
        let open = self.pos;
        if !self.rest().starts_with('{') {
            return Err(self.error(open, open + 1, "expected `{` after ctx="));
        }
        let mut depth = 0usize;
        let mut close = None;
        for (i, ch) in self.rest().char_indices() {
            match ch {
                '{' => depth += 1,
                '}' => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(self.pos + i);
                        break;
                    }
                }
                _ => {}
            }
        }
        let close = close.ok_or_else(|| self.error(open, open + 1, "unbalanced `{` in context"))?;
        let mut ctx = BTreeSet::new();
        let mut depth = 0usize;
        let mut item_start = open + 1;
        for (i, ch) in self.text[open + 1..=close].char_indices() {
            let at = open + 1 + i;
            match ch {
                '{' => depth += 1,
                '}' if depth > 0 => depth -= 1,
                ';' | '}' if depth == 0 => {
                    let item = &self.text[item_start..at];
                    if !item.trim().is_empty() {
                        ctx.insert(self.formula(item_start, item)?);
                    } else if ch == ';' {
                        return Err(self.error(item_start, at, "empty context entry"));
                    }
                    item_start = at + 1;
                }
                _ => {}
            }
        }
        self.pos = close + 1;
        Ok(ctx)
    }
}

/// Splits `text` (starting at byte `offset` of the line) at each
/// whitespace-preceded `param.`.
fn split_params(text: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut cuts = vec![0];
    let bytes = text.as_bytes();
    for (i, _) in text.match_indices("param.") {
        if i > 0 && bytes[i - 1].is_ascii_whitespace() {
            cuts.push(i);
        }
    }
    cuts.push(text.len());
    cuts.windows(2).map(|w| (offset + w[0], &text[w[0]..w[1]])).collect()
}

fn parse_step(line_no: usize, text: &str) -> Result<DerivationStep, ProofParseError> {
    let mut p = LineParser { line_no, text, pos: 0 };
    p.expect_word("step")?;
    let (start, id_text) = p.word();
    let id: u32 = id_text.parse().map_err(|_| p.error(start, start + id_text.len(), format!("bad step id `{id_text}`")))?;

    let (start, rule_text) = p.word();
    let rule: Rule = rule_text
        .strip_prefix("rule=")
        .ok_or_else(|| p.error(start, start + rule_text.len(), "expected `rule=<name>`"))?
        .parse()
        .expect("rule parsing is infallible");

    let (start, prem_text) = p.word();
    let inner = prem_text
        .strip_prefix("premises=[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| p.error(start, start + prem_text.len(), "expected `premises=[<id>,...]` without spaces"))?;
    let mut premises = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        premises.push(part.parse().map_err(|_| p.error(start, start + prem_text.len(), format!("bad premise id `{part}`")))?);
    }

    let ctx = p.context()?;

    p.expect_word("concl=")?;
    let rest_start = p.pos;
    let pieces = split_params(p.rest(), rest_start);
    let (concl_start, concl_text) = pieces[0];
    if concl_text.trim().is_empty() {
        return Err(p.error(concl_start, concl_start + 1, "missing conclusion"));
    }
    let concl = p.formula(concl_start, concl_text)?;

    let mut params = BTreeMap::new();
    for &(start, piece) in &pieces[1..] {
        let body = &piece["param.".len()..];
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| p.error(start, start + piece.trim_end().len(), "expected `param.<key>=<formula>`"))?;
        let value_start = start + "param.".len() + key.len() + 1;
        if params.insert(key.to_string(), p.formula(value_start, value)?).is_some() {
            return Err(p.error(start, start + piece.trim_end().len(), format!("param.{key} given twice")));
        }
    }

    Ok(DerivationStep { id, rule, premises, sequent: Sequent { ctx, concl }, params })
}

/// Parses a proof file. Blank lines and `#` comments are skipped.
pub fn parse_derivation(text: &str) -> Result<Derivation, ProofParseError> {
    let mut steps = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        steps.push(parse_step(i + 1, line)?);
    }
    Ok(Derivation { steps })
}

pub(super) fn render(d: &Derivation) -> String {
    let mut out = String::new();
    for s in &d.steps {
        write_step(&mut out, s).expect("writing to a String cannot fail");
        out.push('\n');
    }
    out
}

fn write_step(out: &mut String, s: &DerivationStep) -> fmt::Result {
    let premises: Vec<String> = s.premises.iter().map(u32::to_string).collect();
    write!(out, "step {} rule={} premises=[{}] ctx={{", s.id, s.rule, premises.join(","))?;
    for (i, f) in s.sequent.ctx.iter().enumerate() {
        out.push_str(if i == 0 { " " } else { " ; " });
        write!(out, "{f}")?;
    }
    if !s.sequent.ctx.is_empty() {
        out.push(' ');
    }
    write!(out, "}} concl={}", s.sequent.concl)?;
    for (k, v) in &s.params {
        write!(out, " param.{k}={v}")?;
    }
    Ok(())
}
