use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::term::{Symbol, Term};

/// Name hint carried by a quantifier for printing.
///
/// Binders are nameless (the body refers to them by de Bruijn index), so the
/// hint takes no part in equality, ordering or hashing: alpha-equivalent
/// formulas compare equal.
#[derive(Clone, Debug)]
pub struct Binder(pub String);

impl PartialEq for Binder {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Binder {}

impl PartialOrd for Binder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Binder {
    fn cmp(&self, _: &Self) -> Ordering {
        Ordering::Equal
    }
}

impl Hash for Binder {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

/// A first-order formula. `~A` is not primitive; it is `A => bot`.
///
/// The derived `Ord` compares by constructor tag first and then
/// structurally; sequents keep their multisets sorted by it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Top,
    Bot,
    Atom(Arc<str>, Vec<Term>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    Forall(Binder, Arc<Formula>),
    Exists(Binder, Arc<Formula>),
}

impl Formula {
    pub fn atom(pred: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Atom(Arc::from(pred.into()), args)
    }

    pub fn prop(name: impl Into<String>) -> Formula {
        Formula::Atom(Arc::from(name.into()), Vec::new())
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    /// `forall x. body`, binding the free variable `x` of `body`.
    pub fn forall(x: &str, body: Formula) -> Formula {
        Formula::Forall(Binder(x.to_string()), Arc::new(body.abstract_var(x)))
    }

    /// `exists x. body`, binding the free variable `x` of `body`.
    pub fn exists(x: &str, body: Formula) -> Formula {
        Formula::Exists(Binder(x.to_string()), Arc::new(body.abstract_var(x)))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(..))
    }

    pub fn is_atomic_or_bot(&self) -> bool {
        matches!(self, Formula::Atom(..) | Formula::Bot)
    }

    pub fn is_quantifier(&self) -> bool {
        matches!(self, Formula::Forall(..) | Formula::Exists(..))
    }

    /// Number of logical connectives and quantifiers (`top`/`bot` count zero).
    pub fn connectives(&self) -> usize {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(..) => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.connectives() + b.connectives(),
            Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.connectives(),
        }
    }

    pub fn has_quantifier(&self) -> bool {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(..) => false,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => a.has_quantifier() || b.has_quantifier(),
            Formula::Forall(..) | Formula::Exists(..) => true,
        }
    }

    /// Rebuild the formula applying `f` to every maximal term, passing the
    /// number of binders crossed on the way down. Subformulas whose terms
    /// all map to themselves are shared with the input.
    pub fn map_terms(&self, f: &mut impl FnMut(&Term, u32) -> Term) -> Formula {
        self.map_terms_at(0, f).unwrap_or_else(|| self.clone())
    }

    /// `None` when nothing changed.
    fn map_terms_at(&self, depth: u32, f: &mut impl FnMut(&Term, u32) -> Term) -> Option<Formula> {
        fn child(a: &Arc<Formula>, depth: u32, f: &mut impl FnMut(&Term, u32) -> Term) -> Option<Arc<Formula>> {
            a.map_terms_at(depth, f).map(Arc::new)
        }
        fn pair(
            a: &Arc<Formula>,
            b: &Arc<Formula>,
            depth: u32,
            f: &mut impl FnMut(&Term, u32) -> Term,
        ) -> Option<(Arc<Formula>, Arc<Formula>)> {
            match (child(a, depth, f), child(b, depth, f)) {
                (None, None) => None,
                (x, y) => Some((x.unwrap_or_else(|| a.clone()), y.unwrap_or_else(|| b.clone()))),
            }
        }
        match self {
            Formula::Top | Formula::Bot => None,
            Formula::Atom(p, args) => {
                let mapped: Vec<Term> = args.iter().map(|t| f(t, depth)).collect();
                (mapped != *args).then(|| Formula::Atom(p.clone(), mapped))
            }
            Formula::And(a, b) => pair(a, b, depth, f).map(|(a, b)| Formula::And(a, b)),
            Formula::Or(a, b) => pair(a, b, depth, f).map(|(a, b)| Formula::Or(a, b)),
            Formula::Imp(a, b) => pair(a, b, depth, f).map(|(a, b)| Formula::Imp(a, b)),
            Formula::Forall(x, b) => child(b, depth + 1, f).map(|b| Formula::Forall(x.clone(), b)),
            Formula::Exists(x, b) => child(b, depth + 1, f).map(|b| Formula::Exists(x.clone(), b)),
        }
    }

    /// Visit every maximal term.
    pub fn for_each_term(&self, f: &mut impl FnMut(&Term)) {
        match self {
            Formula::Top | Formula::Bot => {}
            Formula::Atom(_, args) => args.iter().for_each(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.for_each_term(f);
                b.for_each_term(f);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.for_each_term(f),
        }
    }

    /// Open a quantifier body: replace the outermost bound variable by `t`.
    /// `t` must not contain dangling de Bruijn indices, which makes the
    /// replacement capture-free.
    pub fn instantiate(&self, t: &Term) -> Formula {
        debug_assert!(t.is_locally_closed());
        self.map_terms(&mut |term, depth| term.instantiate_at(depth, t))
    }

    /// Turn the free variable `x` into the outermost bound variable.
    pub fn abstract_var(&self, x: &str) -> Formula {
        self.map_terms(&mut |term, depth| term.abstract_at(x, depth))
    }

    pub fn replace_const(&self, name: &str, with: &Term) -> Formula {
        self.map_terms(&mut |t, _| t.replace_const(name, with))
    }

    /// Constants, function symbols and metavariables occurring in the formula.
    pub fn free_symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.for_each_term(&mut |t| t.collect_symbols(&mut out));
        out
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.for_each_term(&mut |t| t.collect_vars(&mut out));
        out
    }

    pub fn metas(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.for_each_term(&mut |t| t.collect_metas(&mut out));
        out
    }

    pub fn contains_const(&self, name: &str) -> bool {
        let mut found = false;
        self.for_each_term(&mut |t| found |= t.contains_const(name));
        found
    }

    /// Names of every predicate, function and constant symbol in the formula.
    pub fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Top | Formula::Bot => {}
            Formula::Atom(p, args) => {
                out.insert(p.to_string());
                let mut syms = BTreeSet::new();
                args.iter().for_each(|t| t.collect_symbols(&mut syms));
                out.extend(syms.into_iter().filter_map(|s| match s {
                    Symbol::Const(n) | Symbol::Func(n) => Some(n),
                    Symbol::Meta(_) => None,
                }));
                args.iter().for_each(|t| {
                    let mut vars = BTreeSet::new();
                    t.collect_vars(&mut vars);
                    out.extend(vars);
                });
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.collect_names(out),
        }
    }

    /// Ground subterms, used as instantiation candidates in ground search.
    pub fn collect_ground_terms(&self, out: &mut BTreeSet<Term>) {
        self.for_each_term(&mut |t| t.collect_ground_subterms(out));
    }
}

/// `[t/x] b`: replace the free occurrences of the variable `x` by `t`.
///
/// Quantifiers are nameless, so inner binders named `x` are untouched and no
/// capture can happen; the printer picks fresh binder names where needed.
pub fn substitute(t: &Term, x: &str, b: &Formula) -> Formula {
    b.map_terms(&mut |term, _| term.replace_var(x, t))
}

/// Symbols of `f` (constants, function names, metavariables).
pub fn free_symbols(f: &Formula) -> BTreeSet<Symbol> {
    f.free_symbols()
}
