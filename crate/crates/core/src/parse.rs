//! Text syntax.
//!
//! ```text
//! sequent  := [formula {',' formula}] '|-' [formula {',' formula}]
//! formula  := imp ['<->' formula]
//! imp      := or ['->' imp]
//! or       := and {'|' and}
//! and      := unary {'&' unary}
//! unary    := '~' unary | 'o' unary | ('forall' | 'exists') ident '.' formula | primary
//! primary  := '(' formula ')' | Upper '(' term {',' term} ')' | lower
//! term     := lower ['(' term {',' term} ')'] | "'" ident
//! ```
//!
//! In formula position `o`, `forall` and `exists` are keywords, so no atom
//! can carry those names. In term position a lowercase identifier is a bound
//! variable when an enclosing quantifier binds it and a free variable
//! otherwise; `'c` is a constant. `a <-> b` abbreviates `(a -> b) & (b -> a)`.

use std::fmt;

use thiserror::Error;

use crate::sequent::Sequent;
use crate::syntax::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Const(String),
    Tilde,
    Amp,
    Bar,
    Arrow,
    Iff,
    LParen,
    RParen,
    Comma,
    Dot,
    Turnstile,
    End,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |position: usize, message: String| ParseError { position, message };
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let ident_end = |from: usize| {
            let mut j = from;
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            j
        };
        let tok = match c {
            '~' => {
                i += 1;
                Tok::Tilde
            }
            '&' => {
                i += 1;
                Tok::Amp
            }
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            '.' => {
                i += 1;
                Tok::Dot
            }
            '|' if bytes.get(i + 1) == Some(&b'-') => {
                i += 2;
                Tok::Turnstile
            }
            '|' => {
                i += 1;
                Tok::Bar
            }
            '-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Arrow
            }
            '<' if src[i..].starts_with("<->") => {
                i += 3;
                Tok::Iff
            }
            '\'' => {
                let j = ident_end(i + 1);
                if j == i + 1 {
                    return Err(err(i, "expected a constant name after `'`".into()));
                }
                let name = src[i + 1..j].to_string();
                i = j;
                Tok::Const(name)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let j = ident_end(i);
                let name = src[i..j].to_string();
                i = j;
                Tok::Ident(name)
            }
            other => return Err(err(i, format!("unexpected character `{other}`"))),
        };
        out.push((tok, start));
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    scope: Vec<String>,
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "o" | "forall" | "exists")
}

impl Parser {
    fn new(src: &str) -> Result<Parser, ParseError> {
        Ok(Parser { toks: tokenize(src)?, pos: 0, scope: Vec::new() })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.here(), message: message.into() })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(s) if s == "o" => {
                self.bump();
                Ok(Formula::circ(self.unary()?))
            }
            Tok::Ident(s) if s == "forall" || s == "exists" => {
                self.bump();
                let x = match self.peek().clone() {
                    Tok::Ident(x) if !is_keyword(&x) => x,
                    _ => return self.fail("expected a variable after quantifier"),
                };
                self.bump();
                if self.scope.contains(&x) {
                    return self.fail(format!("`{x}` is already bound here"));
                }
                self.expect(Tok::Dot, "`.`")?;
                self.scope.push(x.clone());
                let body = self.formula();
                self.scope.pop();
                let body = body?;
                Ok(if s == "forall" { Formula::forall(x, body) } else { Formula::exists(x, body) })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(name) if name.starts_with(|c: char| c.is_ascii_uppercase()) => {
                self.bump();
                if *self.peek() != Tok::LParen {
                    return self.fail(format!("predicate `{name}` needs an argument list"));
                }
                let args = self.term_list()?;
                Ok(Formula::Pred(name, args))
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    self.pos -= 1;
                    return self.fail(format!("propositional atom `{name}` takes no arguments"));
                }
                Ok(Formula::Prop(name))
            }
            Tok::End => self.fail("unexpected end of input"),
            other => self.fail(format!("unexpected token {other:?}")),
        }
    }

    fn term_list(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen, "`)`")?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Const(c) => {
                self.bump();
                Ok(Term::Const(c))
            }
            Tok::Ident(name) if name.starts_with(|c: char| c.is_ascii_lowercase() || c == '_') => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    return Ok(Term::App(name, self.term_list()?));
                }
                if self.scope.contains(&name) {
                    Ok(Term::Bound(name))
                } else {
                    Ok(Term::Free(name))
                }
            }
            _ => self.fail("expected a term"),
        }
    }

    fn side(&mut self, stop: &Tok) -> Result<Vec<Formula>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == stop {
            return Ok(out);
        }
        out.push(self.formula()?);
        while *self.peek() == Tok::Comma {
            self.bump();
            out.push(self.formula()?);
        }
        Ok(out)
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.fail("trailing input")
        }
    }
}

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_sequent(src: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(src)?;
    let ante = p.side(&Tok::Turnstile)?;
    p.expect(Tok::Turnstile, "`|-`")?;
    let succ = p.side(&Tok::End)?;
    p.finish()?;
    Ok(Sequent::new(ante, succ))
}

/// Parses a closed-of-bound-variables term, e.g. an instantiation witness.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Free(a) | Term::Bound(a) => f.write_str(a),
            Term::Const(c) => write!(f, "'{c}"),
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                write_list(f, args)?;
                f.write_str(")")
            }
        }
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, t) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

const PREC_IMP: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_UNARY: u8 = 4;

/// `last` says nothing follows this formula inside the current parentheses,
/// which is what lets a quantifier go unbracketed.
fn write_formula(out: &mut String, phi: &Formula, prec: u8, last: bool) {
    let binary = |out: &mut String, a: &Formula, b: &Formula, op: &str, own: u8, lp: u8, rp: u8| {
        let paren = prec > own;
        if paren {
            out.push('(');
        }
        write_formula(out, a, lp, false);
        out.push_str(op);
        write_formula(out, b, rp, last || paren);
        if paren {
            out.push(')');
        }
    };
    match phi {
        Formula::Prop(p) => out.push_str(p),
        Formula::Pred(p, args) => {
            out.push_str(p);
            out.push('(');
            for (i, t) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&t.to_string());
            }
            out.push(')');
        }
        Formula::Not(a) => {
            out.push('~');
            write_formula(out, a, PREC_UNARY, last);
        }
        Formula::Circ(a) => {
            out.push_str("o ");
            write_formula(out, a, PREC_UNARY, last);
        }
        Formula::And(a, b) => binary(out, a, b, " & ", PREC_AND, PREC_AND, PREC_UNARY),
        Formula::Or(a, b) => binary(out, a, b, " | ", PREC_OR, PREC_OR, PREC_AND),
        Formula::Imp(a, b) => binary(out, a, b, " -> ", PREC_IMP, PREC_OR, PREC_IMP),
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            let q = if matches!(phi, Formula::Forall(..)) { "forall" } else { "exists" };
            if !last {
                out.push('(');
            }
            out.push_str(q);
            out.push(' ');
            out.push_str(x);
            out.push_str(". ");
            write_formula(out, a, 0, true);
            if !last {
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_formula(&mut s, self, 0, true);
        f.write_str(&s)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ante: Vec<&Formula> = self.ante.iter().collect();
        let succ: Vec<&Formula> = self.succ.iter().collect();
        write_list(f, &ante)?;
        f.write_str(if ante.is_empty() { "|-" } else { " |-" })?;
        if !succ.is_empty() {
            f.write_str(" ")?;
        }
        write_list(f, &succ)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(s: &str) -> String {
        parse_formula(s).unwrap().to_string()
    }

    #[test]
    fn precedence() {
        let f = parse_formula("~p & q | r -> s -> t").unwrap();
        let p = Formula::prop;
        let want = Formula::imp(
            Formula::or(Formula::and(Formula::not(p("p")), p("q")), p("r")),
            Formula::imp(p("s"), p("t")),
        );
        assert_eq!(f, want);
    }

    #[test]
    fn circle_keyword() {
        assert_eq!(parse_formula("o o p").unwrap(), Formula::circ(Formula::circ(Formula::prop("p"))));
        assert_eq!(parse_formula("op").unwrap(), Formula::prop("op"));
        assert_eq!(parse_formula("o~p").unwrap(), Formula::circ(Formula::not(Formula::prop("p"))));
        assert!(parse_formula("o").is_err());
    }

    #[test]
    fn quantifier_scope_runs_right() {
        let f = parse_formula("P(a1) & forall x. Q(x) | R(x)").unwrap();
        let qx = Formula::pred("Q", vec![Term::Bound("x".into())]);
        let rx = Formula::pred("R", vec![Term::Bound("x".into())]);
        let want = Formula::and(Formula::pred("P", vec![Term::free("a1")]), Formula::forall("x", Formula::or(qx, rx)));
        assert_eq!(f, want);
        assert_eq!(rt("(forall x. P(x)) -> exists y. P(y)"), "(forall x. P(x)) -> exists y. P(y)");
    }

    #[test]
    fn free_versus_bound() {
        let f = parse_formula("forall x. R(x, y)").unwrap();
        assert_eq!(f.free_variables().into_iter().collect::<Vec<_>>(), ["y"]);
        assert!(parse_formula("forall x. forall x. P(x)").is_err());
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("p, q |- r").unwrap();
        assert_eq!(s.ante.len(), 2);
        assert_eq!(s.succ.len(), 1);
        assert_eq!(s.to_string(), "p, q |- r");
        let e = parse_sequent("|-").unwrap();
        assert!(e.ante.is_empty() && e.succ.is_empty());
        assert_eq!(e.to_string(), "|-");
        assert_eq!(parse_sequent("|- o o p").unwrap().to_string(), "|- o o p");
        assert_eq!(parse_sequent("p |-").unwrap().to_string(), "p |-");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("p & ").unwrap_err();
        assert_eq!(e.position, 4);
        assert!(parse_formula("p q").is_err());
        assert!(parse_formula("P").is_err());
        assert!(parse_formula("p(a)").is_err());
        assert!(parse_sequent("p").is_err());
        assert!(parse_formula("p $ q").is_err());
    }

    #[test]
    fn printing_is_minimal() {
        assert_eq!(rt("(p & q) & r"), "p & q & r");
        assert_eq!(rt("p & (q & r)"), "p & (q & r)");
        assert_eq!(rt("(p -> q) -> r"), "(p -> q) -> r");
        assert_eq!(rt("~(p | q)"), "~(p | q)");
        assert_eq!(rt("~forall x. P(x)"), "~forall x. P(x)");
        assert_eq!(rt("(~forall x. P(x)) & q"), "~(forall x. P(x)) & q");
        assert_eq!(rt("P(f('c, a1))"), "P(f('c, a1))");
    }
}
