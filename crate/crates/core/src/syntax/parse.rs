//! Recursive-descent parser for the ASCII formula syntax.
//!
//! Binding strength, tightest first: postfix `:true`/`:false`, `/\`, `\/`,
//! `->` (right-associative sugar for `a :false \/ b`), then the
//! non-associative `==` and `<`. Quantifier bodies extend as far right as
//! possible. Inside `{ ... }` the parameter grammar applies: `~`, `&`, `|`,
//! `=>` (right-associative).

use std::fmt;

use thiserror::Error;

use super::{Formula, Prop, Var};

/// Byte offsets `[start, end)` into the parsed text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected `{found}`, expected one of: {}", expected.join(", "))]
    UnexpectedToken {
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("unexpected end of input, expected one of: {}", expected.join(", "))]
    UnexpectedEnd { expected: Vec<&'static str> },
    #[error("unbalanced `{delimiter}`")]
    Unbalanced { delimiter: char },
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("`{0}` is non-associative; add parentheses")]
    NonAssociative(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at {span}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
}

impl ParseError {
    /// Renders the error with a caret line under the offending input.
    pub fn diagnostic(&self, input: &str) -> String {
        let start = self.span.start.min(input.len());
        let width = self.span.end.saturating_sub(self.span.start).max(1);
        let col = input[..start].chars().count();
        format!("{}\n  {}\n  {}{}", self, input, " ".repeat(col), "^".repeat(width))
    }
}

const PRIMARY: &[&str] = &["variable", "constant", "{", "(", "ex", "all"];
const AFTER_FORMULA: &[&str] = &[":true", ":false", "/\\", "\\/", "->", "==", "<"];
const PROP_PRIMARY: &[&str] = &["atom", "~", "("];
const PROP_AFTER: &[&str] = &["&", "|", "=>"];

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text);
    let f = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.trailing(AFTER_FORMULA));
    }
    Ok(f)
}

/// Parses a bare parameter formula; one pair of enclosing braces is accepted
/// and stripped.
pub fn parse_prop(text: &str) -> Result<Prop, ParseError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let braced = p.peek() == Some('{');
    let open = p.pos;
    if braced {
        p.pos += 1;
    }
    let a = p.prop_imp()?;
    p.skip_ws();
    if braced {
        if p.peek() != Some('}') {
            return Err(p.unbalanced('{', open));
        }
        p.pos += 1;
        p.skip_ws();
    }
    if !p.at_end() {
        return Err(p.trailing(PROP_AFTER));
    }
    Ok(a)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    /// Consumes `tok` (after whitespace) if present.
    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    /// Like [`eat`](Self::eat) but `tok` must not run into an identifier.
    fn eat_word(&mut self, tok: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        if rest.starts_with(tok) && !rest[tok.len()..].starts_with(is_ident_char) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn peek_word(&mut self, tok: &str) -> bool {
        let save = self.pos;
        let hit = self.eat_word(tok);
        self.pos = save;
        hit
    }

    /// Text of the token starting at the cursor, for error messages.
    fn token_text(&self) -> &'a str {
        let rest = self.rest();
        for t in ["/\\", "\\/", "->", "==", "=>", ":true", ":false"] {
            if rest.starts_with(t) {
                return &rest[..t.len()];
            }
        }
        let Some(c) = rest.chars().next() else {
            return "";
        };
        if is_ident_char(c) || c == '$' || c == ':' {
            let len = c.len_utf8()
                + rest[c.len_utf8()..]
                    .find(|ch: char| !is_ident_char(ch))
                    .unwrap_or(rest.len() - c.len_utf8());
            &rest[..len]
        } else {
            &rest[..c.len_utf8()]
        }
    }

    fn span_here(&self) -> SourceSpan {
        SourceSpan::new(self.pos, self.pos + self.token_text().len())
    }

    fn expected(&self, expected: &[&'static str]) -> ParseError {
        if self.at_end() {
            return ParseError {
                kind: ParseErrorKind::UnexpectedEnd { expected: expected.to_vec() },
                span: SourceSpan::new(self.pos, self.pos),
            };
        }
        let found = self.token_text();
        let known = matches!(found.chars().next(), Some(c) if "(){}.<=-~&|/\\".contains(c))
            || [":true", ":false", "ex", "all"].contains(&found)
            || found.starts_with('$')
            || (found.starts_with(['v', 'p']) && found[1..].parse::<u32>().is_ok());
        let kind = if known {
            ParseErrorKind::UnexpectedToken { found: found.to_string(), expected: expected.to_vec() }
        } else {
            ParseErrorKind::UnknownToken(found.to_string())
        };
        ParseError { kind, span: self.span_here() }
    }

    fn trailing(&self, expected: &[&'static str]) -> ParseError {
        match self.peek() {
            Some(c @ (')' | '}')) => ParseError {
                kind: ParseErrorKind::Unbalanced { delimiter: c },
                span: SourceSpan::new(self.pos, self.pos + 1),
            },
            _ => self.expected(expected),
        }
    }

    fn unbalanced(&self, delimiter: char, open: usize) -> ParseError {
        ParseError {
            kind: ParseErrorKind::Unbalanced { delimiter },
            span: SourceSpan::new(open, open + 1),
        }
    }

    /// `v<N>`
    fn var(&mut self) -> Result<Var, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        if let Some(digits) = rest.strip_prefix('v') {
            let len = digits.find(|c: char| !c.is_ascii_digit()).unwrap_or(digits.len());
            if len > 0 && !digits[len..].starts_with(is_ident_char) {
                if let Ok(n) = digits[..len].parse::<u32>() {
                    self.pos += 1 + len;
                    return Ok(Var(n));
                }
            }
        }
        Err(self.expected(&["variable"]))
    }

    fn expr(&mut self) -> Result<Formula, ParseError> {
        self.skip_ws();
        if self.peek_word("ex") || self.peek_word("all") {
            return self.quantifier();
        }
        self.relation()
    }

    fn quantifier(&mut self) -> Result<Formula, ParseError> {
        let universal = if self.eat_word("ex") {
            false
        } else if self.eat_word("all") {
            true
        } else {
            return Err(self.expected(&["ex", "all"]));
        };
        let x = self.var()?;
        if !self.eat(".") {
            self.skip_ws();
            return Err(self.expected(&["."]));
        }
        let body = self.expr()?;
        Ok(if universal { Formula::forall(x, body) } else { Formula::exists(x, body) })
    }

    fn relation(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implication()?;
        let build: fn(Formula, Formula) -> Formula;
        let op;
        if self.eat("==") {
            build = Formula::ident;
            op = "==";
        } else if self.eat("<") {
            build = Formula::refers;
            op = "<";
        } else {
            return Ok(lhs);
        }
        let rhs = self.implication()?;
        self.skip_ws();
        if self.rest().starts_with("==") || self.rest().starts_with('<') {
            return Err(ParseError {
                kind: ParseErrorKind::NonAssociative(op),
                span: self.span_here(),
            });
        }
        Ok(build(lhs, rhs))
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat("->") {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat("\\/") {
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.postfix()?;
        while self.eat("/\\") {
            let rhs = self.postfix()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn postfix(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.primary()?;
        loop {
            if self.eat_word(":true") {
                f = Formula::truth(f);
            } else if self.eat_word(":false") {
                f = Formula::falsity(f);
            } else {
                return Ok(f);
            }
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                let open = self.pos;
                self.pos += 1;
                let f = self.expr()?;
                if !self.eat(")") {
                    self.skip_ws();
                    return Err(if self.at_end() {
                        self.unbalanced('(', open)
                    } else {
                        self.expected(&[")"])
                    });
                }
                Ok(f)
            }
            Some('{') => {
                let open = self.pos;
                self.pos += 1;
                let a = self.prop_imp()?;
                if !self.eat("}") {
                    self.skip_ws();
                    return Err(if self.at_end() {
                        self.unbalanced('{', open)
                    } else {
                        self.expected(&["}"])
                    });
                }
                Ok(Formula::Param(a))
            }
            Some('$') => {
                let name_len = self.rest()[1..]
                    .find(|c: char| !is_ident_char(c))
                    .unwrap_or(self.rest().len() - 1);
                let name = &self.rest()[1..1 + name_len];
                if name.is_empty() || name.starts_with(|c: char| c.is_ascii_digit()) {
                    return Err(ParseError {
                        kind: ParseErrorKind::UnknownToken(self.rest()[..1 + name_len].to_string()),
                        span: SourceSpan::new(self.pos, self.pos + 1 + name_len),
                    });
                }
                self.pos += 1 + name_len;
                Ok(Formula::Const(name.to_string()))
            }
            Some('v') if self.rest()[1..].starts_with(|c: char| c.is_ascii_digit()) => {
                Ok(Formula::Var(self.var()?))
            }
            _ if self.peek_word("ex") || self.peek_word("all") => self.quantifier(),
            _ => Err(self.expected(PRIMARY)),
        }
    }

    fn prop_imp(&mut self) -> Result<Prop, ParseError> {
        let lhs = self.prop_or()?;
        if self.eat("=>") {
            let rhs = self.prop_imp()?;
            return Ok(Prop::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn prop_or(&mut self) -> Result<Prop, ParseError> {
        let mut lhs = self.prop_and()?;
        while self.eat("|") {
            let rhs = self.prop_and()?;
            lhs = Prop::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn prop_and(&mut self) -> Result<Prop, ParseError> {
        let mut lhs = self.prop_not()?;
        while self.eat("&") {
            let rhs = self.prop_not()?;
            lhs = Prop::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn prop_not(&mut self) -> Result<Prop, ParseError> {
        if self.eat("~") {
            return Ok(Prop::not(self.prop_not()?));
        }
        self.prop_atom()
    }

    fn prop_atom(&mut self) -> Result<Prop, ParseError> {
        self.skip_ws();
        if self.peek() == Some('(') {
            let open = self.pos;
            self.pos += 1;
            let a = self.prop_imp()?;
            if !self.eat(")") {
                self.skip_ws();
                return Err(if self.at_end() {
                    self.unbalanced('(', open)
                } else {
                    self.expected(&[")"])
                });
            }
            return Ok(a);
        }
        let rest = self.rest();
        if let Some(digits) = rest.strip_prefix('p') {
            let len = digits.find(|c: char| !c.is_ascii_digit()).unwrap_or(digits.len());
            if len > 0 && !digits[len..].starts_with(is_ident_char) {
                if let Ok(n) = digits[..len].parse::<u32>() {
                    self.pos += 1 + len;
                    return Ok(Prop::Atom(n));
                }
            }
        }
        Err(self.expected(PROP_PRIMARY))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn postfix_truth() {
        assert_eq!(p("v0 :true"), Formula::truth(Formula::var(0)));
    }

    #[test]
    fn liar_equation() {
        let c = Formula::constant("c");
        assert_eq!(p("$c == ($c :false)"), Formula::ident(c.clone(), Formula::falsity(c)));
    }

    #[test]
    fn quantifier_scope_is_maximal() {
        let v0 = Formula::var(0);
        assert_eq!(p("ex v0 . v0 == v0"), Formula::exists(Var(0), Formula::ident(v0.clone(), v0.clone())));
        assert_eq!(
            p("v1 /\\ ex v0 . v0 \\/ v1"),
            Formula::and(Formula::var(1), Formula::exists(Var(0), Formula::or(v0, Formula::var(1))))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let (a, b, c) = (Formula::var(0), Formula::var(1), Formula::var(2));
        assert_eq!(p("v0 /\\ v1 \\/ v2"), Formula::or(Formula::and(a.clone(), b.clone()), c.clone()));
        assert_eq!(p("v0 \\/ v1 \\/ v2"), Formula::or(Formula::or(a.clone(), b.clone()), c.clone()));
        assert_eq!(
            p("v0 -> v1 -> v2"),
            Formula::implies(a.clone(), Formula::implies(b.clone(), c.clone()))
        );
        assert_eq!(p("v0 -> v1"), Formula::or(Formula::falsity(a.clone()), b.clone()));
        assert_eq!(p("v0 \\/ v1 == v2"), Formula::ident(Formula::or(a, b), c));
        assert_eq!(p("v0 :true :false"), Formula::falsity(Formula::truth(Formula::var(0))));
    }

    #[test]
    fn parameter_grammar() {
        let f = p("{~p0 | p1 & p2 => p3}");
        let expected = Prop::implies(
            Prop::or(Prop::not(Prop::atom(0)), Prop::and(Prop::atom(1), Prop::atom(2))),
            Prop::atom(3),
        );
        assert_eq!(f, Formula::Param(expected));
        assert_eq!(parse_prop("p0 => p1 => p2").unwrap(), Prop::implies(Prop::atom(0), Prop::implies(Prop::atom(1), Prop::atom(2))));
        assert_eq!(parse_prop("{ ~~p4 }").unwrap(), Prop::not(Prop::not(Prop::atom(4))));
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(p("  v0:true  "), p("v0 :true"));
        assert_eq!(p("ex v0.v0"), p("ex v0 . v0"));
        assert_eq!(p("{p0&p1}/\\$c"), p("{ p0 & p1 } /\\ $c"));
    }

    #[test]
    fn identity_is_non_associative() {
        let err = parse_formula("v0 == v1 == v2").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NonAssociative("=="));
        assert_eq!(err.span, SourceSpan::new(9, 11));
        assert!(parse_formula("v0 < v1 == v2").is_err());
    }

    #[test]
    fn unbalanced_delimiters() {
        let err = parse_formula("(v0 \\/ v1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Unbalanced { delimiter: '(' });
        assert_eq!(err.span.start, 0);
        let err = parse_formula("v0 )").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Unbalanced { delimiter: ')' });
        let err = parse_formula("{p0 & p1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Unbalanced { delimiter: '{' });
    }

    #[test]
    fn unknown_and_unexpected_tokens() {
        let err = parse_formula("v0 ? v1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownToken("?".into()));
        assert_eq!(err.span, SourceSpan::new(3, 4));

        let err = parse_formula("v0 \\/").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnexpectedEnd { .. }));

        let err = parse_formula("ex v0 v0").unwrap_err();
        match err.kind {
            ParseErrorKind::UnexpectedToken { found, expected } => {
                assert_eq!(found, "v0");
                assert_eq!(expected, vec!["."]);
            }
            other => panic!("unexpected {other:?}"),
        }

        let err = parse_formula("x0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownToken("x0".into()));
        assert!(parse_formula("exv0 . v0").is_err());
        assert!(parse_formula("$").is_err());
    }

    #[test]
    fn diagnostic_points_at_span() {
        let input = "v0 ? v1";
        let err = parse_formula(input).unwrap_err();
        let d = err.diagnostic(input);
        assert!(d.ends_with("     ^"), "{d}");
    }

    #[test]
    fn utf8_input_outside_tokens_is_rejected_cleanly() {
        let err = parse_formula("v0 ∨ v1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownToken("∨".into()));
        assert_eq!(err.span, SourceSpan::new(3, 3 + '∨'.len_utf8()));
    }
}
