use std::collections::BTreeSet;
use std::fmt::{self, Write};

use super::formula::Formula;
use super::sequent::Sequent;
use super::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// The parser's own syntax.
    Ascii,
    Unicode,
}

struct Printer<'a> {
    style: Style,
    taken: &'a BTreeSet<String>,
    scope: Vec<String>,
}

impl Printer<'_> {
    fn term(&self, t: &Term, out: &mut String) {
        match t {
            Term::Bound(i) => {
                let i = *i as usize;
                match self.scope.len().checked_sub(i + 1) {
                    Some(k) => out.push_str(&self.scope[k]),
                    None => {
                        let _ = write!(out, "#{i}");
                    }
                }
            }
            Term::Var(v) | Term::Const(v) => out.push_str(v),
            Term::Meta(m) => {
                let _ = write!(out, "X{m}");
            }
            Term::App(f, args) => {
                out.push_str(f);
                self.args(args, out);
            }
        }
    }

    fn args(&self, args: &[Term], out: &mut String) {
        out.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            self.term(a, out);
        }
        out.push(')');
    }

    fn fresh_binder(&self, hint: &str) -> String {
        let clash = |n: &str| self.taken.contains(n) || self.scope.iter().any(|s| s == n);
        if !clash(hint) {
            return hint.to_string();
        }
        (0..).map(|i| format!("{hint}{i}")).find(|n| !clash(n)).expect("unbounded name supply")
    }

    fn sym(&self, ascii: &'static str, unicode: &'static str) -> &'static str {
        match self.style {
            Style::Ascii => ascii,
            Style::Unicode => unicode,
        }
    }

    fn formula(&mut self, f: &Formula, out: &mut String) {
        match f {
            Formula::Top => out.push_str(self.sym("top", "⊤")),
            Formula::Bot => out.push_str(self.sym("bot", "⊥")),
            Formula::Atom(p, args) => {
                out.push_str(p);
                if !args.is_empty() {
                    self.args(args, out);
                }
            }
            Formula::Imp(a, b) if **b == Formula::Bot => {
                out.push_str(self.sym("~", "¬"));
                self.operand(a, !is_unary(a), out);
            }
            Formula::Imp(a, b) => {
                self.operand(a, is_imp(a) || a.is_quantifier(), out);
                out.push_str(self.sym(" => ", " ⊃ "));
                self.operand(b, b.is_quantifier(), out);
            }
            Formula::Or(a, b) => {
                self.operand(a, is_imp(a) || a.is_quantifier(), out);
                out.push_str(self.sym(" | ", " ∨ "));
                self.operand(b, matches!(**b, Formula::Or(..)) || is_imp(b) || b.is_quantifier(), out);
            }
            Formula::And(a, b) => {
                self.operand(a, looser_than_and(a), out);
                out.push_str(self.sym(" & ", " ∧ "));
                self.operand(b, looser_than_and(b) || matches!(**b, Formula::And(..)), out);
            }
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let name = self.fresh_binder(&x.0);
                let (ascii, uni) =
                    if matches!(f, Formula::Forall(..)) { ("forall ", "∀") } else { ("exists ", "∃") };
                out.push_str(self.sym(ascii, uni));
                out.push_str(&name);
                out.push_str(self.sym(". ", " "));
                self.scope.push(name);
                self.formula(body, out);
                self.scope.pop();
            }
        }
    }

    fn operand(&mut self, f: &Formula, parens: bool, out: &mut String) {
        if parens {
            out.push('(');
        }
        self.formula(f, out);
        if parens {
            out.push(')');
        }
    }
}

fn is_imp(f: &Formula) -> bool {
    matches!(f, Formula::Imp(_, b) if **b != Formula::Bot)
}

fn is_unary(f: &Formula) -> bool {
    match f {
        Formula::Top | Formula::Bot | Formula::Atom(..) => true,
        Formula::Imp(_, b) => **b == Formula::Bot,
        _ => false,
    }
}

fn looser_than_and(f: &Formula) -> bool {
    matches!(f, Formula::Or(..)) || is_imp(f) || f.is_quantifier()
}

fn taken_names<'a>(fs: impl Iterator<Item = &'a Formula>) -> BTreeSet<String> {
    let mut taken = BTreeSet::new();
    for f in fs {
        f.collect_names(&mut taken);
    }
    taken
}

/// Render a formula; binder names are freshened against the symbols in use.
pub fn formula_to_string(f: &Formula, style: Style) -> String {
    let taken = taken_names(std::iter::once(f));
    let mut p = Printer { style, taken: &taken, scope: Vec::new() };
    let mut out = String::new();
    p.formula(f, &mut out);
    out
}

pub fn term_to_string(t: &Term) -> String {
    let taken = BTreeSet::new();
    let p = Printer { style: Style::Ascii, taken: &taken, scope: Vec::new() };
    let mut out = String::new();
    p.term(t, &mut out);
    out
}

pub fn sequent_to_string(s: &Sequent, style: Style) -> String {
    let list = |fs: &[Formula]| fs.iter().map(|f| formula_to_string(f, style)).collect::<Vec<_>>().join(", ");
    let turnstile = match style {
        Style::Ascii => "|-",
        Style::Unicode => "⊢",
    };
    let mut out = String::new();
    if !s.ante().is_empty() {
        out.push_str(&list(s.ante()));
        out.push(' ');
    }
    out.push_str(turnstile);
    if !s.succ().is_empty() {
        out.push(' ');
        out.push_str(&list(s.succ()));
    }
    out
}

impl Formula {
    pub fn to_unicode(&self) -> String {
        formula_to_string(self, Style::Unicode)
    }
}

impl Sequent {
    pub fn to_unicode(&self) -> String {
        sequent_to_string(self, Style::Unicode)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&formula_to_string(self, Style::Ascii))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&term_to_string(self))
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&sequent_to_string(self, Style::Ascii))
    }
}
