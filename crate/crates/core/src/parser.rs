//! Concrete syntax for terms, formulas and sequents.
//!
//! ```text
//! formula := imp
//! imp     := or ("=>" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "forall" ident "." imp | "exists" ident "." imp | atom
//! atom    := "top" | "bot" | ident ("(" term ("," term)* ")")? | "(" formula ")"
//! term    := ident ("(" term ("," term)* ")")?
//! sequent := [formula ("," formula)*] "|-" [formula ("," formula)*]
//! ```
//!
//! Lowercase identifiers are constants, functions and predicates unless a
//! quantifier binds them. Capitalized identifiers are rejected; they are
//! how metavariables print.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::syntax::{Formula, Sequent, Term};

/// Location of a token in the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("syntax error at {span}: {message}")]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    And,
    Or,
    Imp,
    Not,
    Turnstile,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Imp => f.write_str("`=>`"),
            Tok::Not => f.write_str("`~`"),
            Tok::Turnstile => f.write_str("`|-`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut line_start = 0;
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let span = |end: usize| SourceSpan { line, column: i - line_start + 1, start: i, end };
        if c == b'\n' {
            line += 1;
            i += 1;
            line_start = i;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let (tok, len) = match c {
            b'(' => (Tok::LParen, 1),
            b')' => (Tok::RParen, 1),
            b',' => (Tok::Comma, 1),
            b'.' => (Tok::Dot, 1),
            b'&' => (Tok::And, 1),
            b'~' => (Tok::Not, 1),
            b'|' if bytes.get(i + 1) == Some(&b'-') => (Tok::Turnstile, 2),
            b'|' => (Tok::Or, 1),
            b'=' if bytes.get(i + 1) == Some(&b'>') => (Tok::Imp, 2),
            c if c.is_ascii_alphabetic() => {
                let len = bytes[i..].iter().take_while(|b| b.is_ascii_alphanumeric() || **b == b'_').count();
                let word = &src[i..i + len];
                if c.is_ascii_uppercase() {
                    return Err(ParseError {
                        message: format!("capitalized identifier `{word}` is reserved for metavariables"),
                        span: span(i + len),
                    });
                }
                (Tok::Ident(word.to_string()), len)
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    message: format!("unexpected character `{ch}`"),
                    span: span(i + ch.len_utf8()),
                });
            }
        };
        out.push((tok, span(i + len)));
        i += len;
    }
    let end = SourceSpan { line, column: i - line_start + 1, start: i, end: i };
    out.push((Tok::Eof, end));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Namespace {
    Pred,
    Func,
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    scope: Vec<String>,
    arity: HashMap<(Namespace, String), usize>,
}

const KEYWORDS: [&str; 4] = ["top", "bot", "forall", "exists"];

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(src)?, pos: 0, scope: Vec::new(), arity: HashMap::new() })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { message: message.into(), span: self.span() })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        self.error(format!("expected {wanted}, found {}", self.peek()))
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&tok.to_string())
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error(format!("unexpected {} after complete input", self.peek()))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            _ => self.unexpected("an identifier"),
        }
    }

    fn check_arity(&mut self, ns: Namespace, name: &str, n: usize) -> Result<(), ParseError> {
        match self.arity.get(&(ns, name.to_string())) {
            Some(&m) if m != n => self.error(format!("`{name}` used with {n} argument(s) but earlier with {m}")),
            Some(_) => Ok(()),
            None => {
                self.arity.insert((ns, name.to_string()), n);
                Ok(())
            }
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.imp()
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(kw) if kw == "forall" || kw == "exists" => {
                self.bump();
                let x = self.ident()?;
                self.expect(Tok::Dot)?;
                self.scope.push(x.clone());
                let body = self.imp();
                self.scope.pop();
                let body = body?;
                Ok(if kw == "forall" { Formula::forall(&x, body) } else { Formula::exists(&x, body) })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) if s == "top" => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::Ident(s) if s == "bot" => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Ident(_) => {
                let p = self.ident()?;
                let args = self.arguments()?;
                self.check_arity(Namespace::Pred, &p, args.len())?;
                Ok(Formula::Atom(p.into(), args))
            }
            _ => self.unexpected("a formula"),
        }
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = Vec::new();
        if *self.peek() == Tok::LParen {
            self.bump();
            args.push(self.term()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                args.push(self.term()?);
            }
            self.expect(Tok::RParen)?;
        }
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let name = self.ident()?;
        let args = self.arguments()?;
        if args.is_empty() && self.scope.contains(&name) {
            return Ok(Term::Var(name));
        }
        self.check_arity(Namespace::Func, &name, args.len())?;
        Ok(Term::app(name, args))
    }

    fn formula_list(&mut self) -> Result<Vec<Formula>, ParseError> {
        let mut out = Vec::new();
        if matches!(self.peek(), Tok::Turnstile | Tok::Eof) {
            return Ok(out);
        }
        out.push(self.formula()?);
        while *self.peek() == Tok::Comma {
            self.bump();
            out.push(self.formula()?);
        }
        Ok(out)
    }

    fn sequent(&mut self) -> Result<Sequent, ParseError> {
        let ante = self.formula_list()?;
        self.expect(Tok::Turnstile)?;
        let succ = self.formula_list()?;
        Ok(Sequent::new(ante, succ))
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.expect_end()?;
    Ok(f)
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text)?;
    let s = p.sequent()?;
    p.expect_end()?;
    Ok(s)
}

/// Parse a closed term; identifiers are constants or function symbols.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.expect_end()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        Formula::prop(s)
    }

    #[test]
    fn peirce_formula() {
        let f = parse_formula("((q => s) => q) => q").unwrap();
        let expected = Formula::imp(Formula::imp(Formula::imp(p("q"), p("s")), p("q")), p("q"));
        assert_eq!(f, expected);
    }

    #[test]
    fn negation_desugars() {
        let f = parse_formula("~p(a)").unwrap();
        assert_eq!(f, Formula::imp(Formula::atom("p", vec![Term::constant("a")]), Formula::Bot));
    }

    #[test]
    fn trailing_connective_is_an_error() {
        let err = parse_formula("forall x. p(x) &").unwrap_err();
        assert_eq!(err.span.start, 16);
        assert!(err.message.contains("expected a formula"), "{err}");
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse_formula("~a & b | c => d => e").unwrap(),
            parse_formula("((((~a) & b) | c) => (d => e))").unwrap()
        );
        assert_eq!(parse_formula("a | b | c").unwrap(), parse_formula("(a | b) | c").unwrap());
        assert_eq!(
            parse_formula("forall x. p(x) & q => r").unwrap(),
            parse_formula("forall x. ((p(x) & q) => r)").unwrap()
        );
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("q | s |- s | q").unwrap();
        assert_eq!(s.ante(), &[Formula::or(p("q"), p("s"))]);
        assert_eq!(s.succ(), &[Formula::or(p("s"), p("q"))]);

        let s = parse_sequent("|- top").unwrap();
        assert!(s.ante().is_empty());
        assert_eq!(s.succ(), &[Formula::Top]);

        let s = parse_sequent("p(a), p(a) |- p(a)").unwrap();
        assert_eq!(s.ante().len(), 2);

        let s = parse_sequent("p |-").unwrap();
        assert!(s.succ().is_empty());
    }

    #[test]
    fn bound_and_free_identifiers() {
        let f = parse_formula("forall x. r(x, y)").unwrap();
        let expected = Formula::forall("x", Formula::atom("r", vec![Term::Var("x".into()), Term::constant("y")]));
        assert_eq!(f, expected);
        assert!(f.free_vars().is_empty());
    }

    #[test]
    fn capitals_and_arity_are_rejected() {
        assert!(parse_formula("p(X)").is_err());
        assert!(parse_formula("p(a) & p(a, b)").is_err());
        assert!(parse_formula("p(f(a)) & q(f)").is_err());
        assert!(parse_sequent("p |- q |- r").is_err());
    }

    #[test]
    fn spans_track_lines() {
        let err = parse_formula("p &\n  & q").unwrap_err();
        assert_eq!((err.span.line, err.span.column), (2, 3));
    }
}
