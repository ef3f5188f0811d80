//! Text rendering with minimal parentheses under the parser's precedence.
//!
//! One stylistic exception: a postfix formula that is an operand of a
//! binary connective is always parenthesized (`$c == ($c :false)`).

use std::fmt::{self, Write};

use super::{Formula, Prop};

fn prop_prec(p: &Prop) -> u8 {
    match p {
        Prop::Implies(..) => 0,
        Prop::Or(..) => 1,
        Prop::And(..) => 2,
        Prop::Not(_) => 3,
        Prop::Atom(_) => 4,
    }
}

fn write_prop<W: Write>(p: &Prop, out: &mut W) -> fmt::Result {
    fn operand<W: Write>(q: &Prop, parens: bool, out: &mut W) -> fmt::Result {
        if parens {
            out.write_char('(')?;
            write_prop(q, out)?;
            out.write_char(')')
        } else {
            write_prop(q, out)
        }
    }
    match p {
        Prop::Atom(i) => write!(out, "p{i}"),
        Prop::Not(a) => {
            out.write_char('~')?;
            operand(a, prop_prec(a) < 3, out)
        }
        Prop::Implies(a, b) => {
            operand(a, prop_prec(a) == 0, out)?;
            out.write_str(" => ")?;
            operand(b, false, out)
        }
        Prop::Or(a, b) | Prop::And(a, b) => {
            let (level, sym) = if matches!(p, Prop::Or(..)) { (1, " | ") } else { (2, " & ") };
            operand(a, prop_prec(a) < level, out)?;
            out.write_str(sym)?;
            operand(b, prop_prec(b) <= level, out)
        }
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prop(self, f)
    }
}

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Exists(..) | Formula::Forall(..) => 0,
        Formula::Ident(..) | Formula::Refers(..) => 1,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::True(_) | Formula::False(_) => 5,
        Formula::Var(_) | Formula::Const(_) | Formula::Param(_) => 6,
    }
}

fn is_postfix(f: &Formula) -> bool {
    matches!(f, Formula::True(_) | Formula::False(_))
}

/// `tail` is true when nothing follows `f` at its nesting level, so a
/// quantifier may be written bare.
fn write_formula(f: &Formula, tail: bool, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    fn child(g: &Formula, parens: bool, tail: bool, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if parens {
            out.write_char('(')?;
            write_formula(g, true, out)?;
            out.write_char(')')
        } else {
            write_formula(g, tail, out)
        }
    }

    match f {
        Formula::Var(v) => write!(out, "{v}"),
        Formula::Const(c) => write!(out, "${c}"),
        Formula::Param(p) => write!(out, "{{{p}}}"),
        Formula::True(a) | Formula::False(a) => {
            child(a, prec(a) < 5, false, out)?;
            out.write_str(if matches!(f, Formula::True(_)) { " :true" } else { " :false" })
        }
        Formula::Or(a, b) | Formula::And(a, b) | Formula::Ident(a, b) | Formula::Refers(a, b) => {
            let (level, sym) = match f {
                Formula::Or(..) => (3, " \\/ "),
                Formula::And(..) => (4, " /\\ "),
                Formula::Ident(..) => (1, " == "),
                _ => (1, " < "),
            };
            // `==`/`<` operands live one level up (implication level).
            let left_min = if level == 1 { 2 } else { level };
            let right_min = if level == 1 { 2 } else { level + 1 };
            child(a, prec(a) < left_min || is_postfix(a), false, out)?;
            out.write_str(sym)?;
            let bare_quant = b.is_binder() && tail;
            child(b, (prec(b) < right_min && !bare_quant) || is_postfix(b), tail, out)
        }
        Formula::Exists(x, body) | Formula::Forall(x, body) => {
            let kw = if matches!(f, Formula::Exists(..)) { "ex" } else { "all" };
            write!(out, "{kw} {x} . ")?;
            write_formula(body, true, out)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, true, f)
    }
}

/// Same as `f.to_string()`; the text re-parses to `f`.
pub fn render_formula(f: &Formula) -> String {
    f.to_string()
}
