use std::collections::BTreeMap;

use crate::syntax::{Formula, Term};

/// Bindings for metavariables.
///
/// Stored triangularly (a binding may mention other bound metavariables);
/// [`Substitution::apply`] resolves fully, so applying twice is the same as
/// applying once.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<u32, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    /// The binding of `id`, fully resolved.
    pub fn get(&self, id: u32) -> Option<Term> {
        self.map.get(&id).map(|t| self.apply(t))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, Term)> + '_ {
        self.map.keys().map(|&id| (id, self.apply(&Term::Meta(id))))
    }

    /// Follow bindings at the head of `t`.
    fn walk<'a>(&'a self, mut t: &'a Term) -> &'a Term {
        while let Term::Meta(id) = t {
            match self.map.get(id) {
                Some(next) => t = next,
                None => break,
            }
        }
        t
    }

    pub fn apply(&self, t: &Term) -> Term {
        match self.walk(t) {
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.apply(a)).collect()),
            t => t.clone(),
        }
    }

    pub fn apply_formula(&self, f: &Formula) -> Formula {
        if self.map.is_empty() {
            return f.clone();
        }
        f.map_terms(&mut |t, _| self.apply(t))
    }

    fn occurs(&self, id: u32, t: &Term) -> bool {
        match self.walk(t) {
            Term::Meta(m) => *m == id,
            Term::App(_, args) => args.iter().any(|a| self.occurs(id, a)),
            _ => false,
        }
    }

    /// Does the resolved `t` mention the constant or function `name`?
    pub fn resolves_to_contain(&self, t: &Term, name: &str) -> bool {
        match self.walk(t) {
            Term::Const(c) => c == name,
            Term::App(f, args) => f == name || args.iter().any(|a| self.resolves_to_contain(a, name)),
            _ => false,
        }
    }

    /// Unify in place, recording new bindings on `trail`. On failure the
    /// bindings made so far stay on the trail; callers roll back with
    /// [`Substitution::undo`].
    pub fn unify_in_place(&mut self, a: &Term, b: &Term, trail: &mut Vec<u32>) -> bool {
        let a = self.walk(a).clone();
        let b = self.walk(b).clone();
        match (&a, &b) {
            (Term::Meta(x), Term::Meta(y)) if x == y => true,
            (Term::Meta(x), t) | (t, Term::Meta(x)) => {
                if self.occurs(*x, t) {
                    return false;
                }
                self.map.insert(*x, t.clone());
                trail.push(*x);
                true
            }
            (Term::App(f, xs), Term::App(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| self.unify_in_place(x, y, trail))
            }
            _ => a == b,
        }
    }

    pub fn unify_args_in_place(&mut self, xs: &[Term], ys: &[Term], trail: &mut Vec<u32>) -> bool {
        xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| self.unify_in_place(x, y, trail))
    }

    /// Remove the bindings recorded on `trail` after `mark`.
    pub fn undo(&mut self, trail: &mut Vec<u32>, mark: usize) {
        for id in trail.drain(mark..) {
            self.map.remove(&id);
        }
    }

    /// The same substitution with every binding fully resolved.
    pub fn normalized(&self) -> Substitution {
        Substitution { map: self.iter().collect() }
    }

    /// Structural equality of two formulas after applying the substitution.
    pub fn formulas_equal(&self, a: &Formula, b: &Formula) -> bool {
        match (a, b) {
            (Formula::Top, Formula::Top) | (Formula::Bot, Formula::Bot) => true,
            (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
                p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| self.terms_equal(x, y))
            }
            (Formula::And(a1, a2), Formula::And(b1, b2))
            | (Formula::Or(a1, a2), Formula::Or(b1, b2))
            | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
                self.formulas_equal(a1, b1) && self.formulas_equal(a2, b2)
            }
            (Formula::Forall(_, a), Formula::Forall(_, b)) | (Formula::Exists(_, a), Formula::Exists(_, b)) => {
                self.formulas_equal(a, b)
            }
            _ => false,
        }
    }

    fn terms_equal(&self, a: &Term, b: &Term) -> bool {
        match (self.walk(a), self.walk(b)) {
            (Term::App(f, xs), Term::App(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| self.terms_equal(x, y))
            }
            (a, b) => a == b,
        }
    }
}

/// Most general unifier of `a` and `b` extending `under`, with occurs
/// check. The result is normalized: every binding is fully resolved.
///
/// The occurs check also keeps a metavariable from being bound to a
/// Herbrand term applied to itself, which would break the dependency of
/// the strong quantifier on the weak one.
pub fn unify(a: &Term, b: &Term, under: &Substitution) -> Option<Substitution> {
    let mut s = under.clone();
    let mut trail = Vec::new();
    s.unify_in_place(a, b, &mut trail).then(|| s.normalized())
}

/// Simultaneous unification of argument lists.
pub fn unify_args(xs: &[Term], ys: &[Term], under: &Substitution) -> Option<Substitution> {
    let mut s = under.clone();
    let mut trail = Vec::new();
    s.unify_args_in_place(xs, ys, &mut trail).then(|| s.normalized())
}
