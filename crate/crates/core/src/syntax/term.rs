use std::collections::BTreeSet;
use std::fmt;

/// A first-order term.
///
/// Bound variables are de Bruijn indices counted outward from the nearest
/// quantifier. `Var` is a free, named variable; it only shows up while a
/// quantifier body is opened (substitution, Herbrandization). `Meta` is a
/// search-time placeholder and never appears in parsed input.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Bound(u32),
    Var(String),
    Const(String),
    App(String, Vec<Term>),
    Meta(u32),
}

/// A non-logical symbol occurring in a term or formula.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Const(String),
    Func(String),
    Meta(u32),
}

impl Symbol {
    pub fn name(&self) -> String {
        match self {
            Symbol::Const(n) | Symbol::Func(n) => n.clone(),
            Symbol::Meta(id) => format!("X{id}"),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Term {
    pub fn constant(name: impl Into<String>) -> Term {
        Term::Const(name.into())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        if args.is_empty() {
            Term::Const(name.into())
        } else {
            Term::App(name.into(), args)
        }
    }

    /// True when the term has no variables and no metavariables.
    pub fn is_ground(&self) -> bool {
        match self {
            Term::Const(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_ground),
            Term::Bound(_) | Term::Var(_) | Term::Meta(_) => false,
        }
    }

    /// True when no de Bruijn index escapes the term.
    pub fn is_locally_closed(&self) -> bool {
        match self {
            Term::Bound(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_locally_closed),
            _ => true,
        }
    }

    pub(crate) fn instantiate_at(&self, depth: u32, with: &Term) -> Term {
        match self {
            Term::Bound(i) if *i == depth => with.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.instantiate_at(depth, with)).collect()),
            t => t.clone(),
        }
    }

    pub(crate) fn abstract_at(&self, name: &str, depth: u32) -> Term {
        match self {
            Term::Var(v) if v == name => Term::Bound(depth),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.abstract_at(name, depth)).collect()),
            t => t.clone(),
        }
    }

    /// Replace every occurrence of the free variable `name`.
    pub fn replace_var(&self, name: &str, with: &Term) -> Term {
        self.map_leaves(&mut |t| match t {
            Term::Var(v) if v == name => Some(with.clone()),
            _ => None,
        })
    }

    /// Replace every occurrence of the constant `name`.
    pub fn replace_const(&self, name: &str, with: &Term) -> Term {
        self.map_leaves(&mut |t| match t {
            Term::Const(c) if c == name => Some(with.clone()),
            _ => None,
        })
    }

    /// Rebuild the term, substituting leaves for which `f` returns a value.
    pub fn map_leaves(&self, f: &mut impl FnMut(&Term) -> Option<Term>) -> Term {
        match self {
            Term::App(g, args) => Term::App(g.clone(), args.iter().map(|a| a.map_leaves(f)).collect()),
            t => f(t).unwrap_or_else(|| t.clone()),
        }
    }

    pub fn collect_symbols(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Term::Const(c) => {
                out.insert(Symbol::Const(c.clone()));
            }
            Term::App(f, args) => {
                out.insert(Symbol::Func(f.clone()));
                for a in args {
                    a.collect_symbols(out);
                }
            }
            Term::Meta(m) => {
                out.insert(Symbol::Meta(*m));
            }
            Term::Bound(_) | Term::Var(_) => {}
        }
    }

    pub fn collect_metas(&self, out: &mut BTreeSet<u32>) {
        match self {
            Term::Meta(m) => {
                out.insert(*m);
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_metas(out)),
            _ => {}
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            _ => {}
        }
    }

    /// Every ground subterm, including the term itself.
    pub fn collect_ground_subterms(&self, out: &mut BTreeSet<Term>) {
        if let Term::App(_, args) = self {
            args.iter().for_each(|a| a.collect_ground_subterms(out));
        }
        if self.is_ground() {
            out.insert(self.clone());
        }
    }

    pub fn contains_const(&self, name: &str) -> bool {
        match self {
            Term::Const(c) => c == name,
            Term::App(f, args) => f == name || args.iter().any(|a| a.contains_const(name)),
            _ => false,
        }
    }

    pub fn contains_meta(&self, id: u32) -> bool {
        match self {
            Term::Meta(m) => *m == id,
            Term::App(_, args) => args.iter().any(|a| a.contains_meta(id)),
            _ => false,
        }
    }
}
