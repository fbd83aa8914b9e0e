//! Terms, formulas and sequents.
//!
//! Quantifiers are nameless: a bound variable is a de Bruijn index, so
//! alpha-equivalent formulas are structurally equal and sort identically.

mod formula;
mod print;
mod sequent;
mod term;

pub use formula::{free_symbols, substitute, Binder, Formula};
pub use print::{formula_to_string, sequent_to_string, term_to_string, Style};
pub use sequent::{multiset_difference, Sequent, Side};
pub use term::{Symbol, Term};

use std::collections::BTreeSet;

/// Supply of constant and function names that avoid a fixed set of names.
#[derive(Clone, Debug, Default)]
pub struct NameSupply {
    taken: BTreeSet<String>,
    next: usize,
}

impl NameSupply {
    pub fn new(taken: BTreeSet<String>) -> Self {
        NameSupply { taken, next: 0 }
    }

    pub fn avoiding(s: &Sequent) -> Self {
        NameSupply::new(s.names())
    }

    pub fn reserve(&mut self, name: impl Into<String>) {
        self.taken.insert(name.into());
    }

    /// A name `prefix<n>` not seen before.
    pub fn fresh(&mut self, prefix: &str) -> String {
        loop {
            let name = format!("{prefix}{}", self.next);
            self.next += 1;
            if self.taken.insert(name.clone()) {
                return name;
            }
        }
    }
}
