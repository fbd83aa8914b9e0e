use std::collections::BTreeSet;

use super::formula::Formula;
use super::term::Term;

/// Which side of a sequent a formula sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Ante,
    Succ,
}

/// `ante |- succ`, both sides multisets kept in canonical (sorted) order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    ante: Vec<Formula>,
    succ: Vec<Formula>,
}

impl Sequent {
    pub fn new(mut ante: Vec<Formula>, mut succ: Vec<Formula>) -> Sequent {
        ante.sort();
        succ.sort();
        Sequent { ante, succ }
    }

    pub fn goal(ante: Vec<Formula>, goal: Formula) -> Sequent {
        Sequent::new(ante, vec![goal])
    }

    pub fn ante(&self) -> &[Formula] {
        &self.ante
    }

    pub fn succ(&self) -> &[Formula] {
        &self.succ
    }

    pub fn side(&self, side: Side) -> &[Formula] {
        match side {
            Side::Ante => &self.ante,
            Side::Succ => &self.succ,
        }
    }

    pub fn into_parts(self) -> (Vec<Formula>, Vec<Formula>) {
        (self.ante, self.succ)
    }

    /// The single succedent formula, if there is exactly one.
    pub fn single_succ(&self) -> Option<&Formula> {
        match self.succ.as_slice() {
            [f] => Some(f),
            _ => None,
        }
    }

    /// Index of the first copy of `f` on `side`.
    pub fn position(&self, side: Side, f: &Formula) -> Option<usize> {
        let items = self.side(side);
        let i = items.partition_point(|g| g < f);
        (i < items.len() && &items[i] == f).then_some(i)
    }

    pub fn contains(&self, side: Side, f: &Formula) -> bool {
        self.position(side, f).is_some()
    }

    pub fn count(&self, side: Side, f: &Formula) -> usize {
        self.side(side).iter().filter(|g| *g == f).count()
    }

    /// Remove the formula at `index` on `side`.
    pub fn without(&self, side: Side, index: usize) -> Sequent {
        let mut s = self.clone();
        match side {
            Side::Ante => s.ante.remove(index),
            Side::Succ => s.succ.remove(index),
        };
        s
    }

    /// Remove one copy of `f`, if present.
    pub fn without_formula(&self, side: Side, f: &Formula) -> Option<Sequent> {
        self.position(side, f).map(|i| self.without(side, i))
    }

    pub fn with(&self, side: Side, f: Formula) -> Sequent {
        let mut s = self.clone();
        s.insert(side, f);
        s
    }

    pub fn insert(&mut self, side: Side, f: Formula) {
        let items = match side {
            Side::Ante => &mut self.ante,
            Side::Succ => &mut self.succ,
        };
        let i = items.partition_point(|g| g <= &f);
        items.insert(i, f);
    }

    pub fn with_all(&self, side: Side, fs: impl IntoIterator<Item = Formula>) -> Sequent {
        let mut s = self.clone();
        for f in fs {
            s.insert(side, f);
        }
        s
    }

    /// Multiset union.
    pub fn extend(&self, ante: &[Formula], succ: &[Formula]) -> Sequent {
        self.with_all(Side::Ante, ante.iter().cloned()).with_all(Side::Succ, succ.iter().cloned())
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.ante.iter().chain(self.succ.iter())
    }

    pub fn map_formulas(&self, mut f: impl FnMut(&Formula) -> Formula) -> Sequent {
        Sequent::new(self.ante.iter().map(&mut f).collect(), self.succ.iter().map(&mut f).collect())
    }

    pub fn contains_const(&self, name: &str) -> bool {
        self.formulas().any(|f| f.contains_const(name))
    }

    pub fn has_quantifier(&self) -> bool {
        self.formulas().any(Formula::has_quantifier)
    }

    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.formulas().for_each(|f| f.collect_names(&mut out));
        out
    }

    pub fn ground_terms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        self.formulas().for_each(|f| f.collect_ground_terms(&mut out));
        out
    }

    /// The sequent with duplicate formulas collapsed on each side.
    pub fn as_sets(&self) -> Sequent {
        let mut s = self.clone();
        s.ante.dedup();
        s.succ.dedup();
        s
    }

    /// True if every formula of `self` occurs in `other` (ignoring multiplicity).
    pub fn set_subsumed_by(&self, other: &Sequent) -> bool {
        self.ante.iter().all(|f| other.contains(Side::Ante, f))
            && self.succ.iter().all(|f| other.contains(Side::Succ, f))
    }
}

/// Remove from `from` one copy of each element of `remove`; `None` if some
/// element is missing.
pub fn multiset_difference(from: &[Formula], remove: &[Formula]) -> Option<Vec<Formula>> {
    let mut rest = from.to_vec();
    for f in remove {
        let i = rest.iter().position(|g| g == f)?;
        rest.remove(i);
    }
    Some(rest)
}
