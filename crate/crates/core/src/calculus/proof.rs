use std::fmt::Write;

use super::rule::{RuleId, RuleUsageProfile};
use crate::syntax::{Formula, Sequent, Side, Term};

/// A derivation tree. Each node records its rule, its conclusion and the
/// data needed to re-check the inference locally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Proof {
    pub rule: RuleId,
    pub conclusion: Sequent,
    /// Index of the principal formula in the (sorted) conclusion side.
    pub principal: Option<(Side, usize)>,
    /// Instantiation term of a quantifier rule.
    pub witness: Option<Term>,
    /// Eigenvariable constant of `exists-L`/`forall-R`.
    pub eigen: Option<String>,
    pub premises: Vec<Proof>,
    /// `1 + max(premise heights)`; filled in by the constructors.
    pub height: usize,
}

impl Proof {
    pub fn new(rule: RuleId, conclusion: Sequent, premises: Vec<Proof>) -> Proof {
        let height = 1 + premises.iter().map(|p| p.height).max().unwrap_or(0);
        Proof { rule, conclusion, principal: None, witness: None, eigen: None, premises, height }
    }

    pub fn axiom(conclusion: Sequent) -> Proof {
        Proof::new(RuleId::Axiom, conclusion, Vec::new())
    }

    /// A node whose principal formula is `principal` on `side` of `conclusion`.
    ///
    /// Panics if the formula is absent; callers build conclusions from it.
    pub fn infer(rule: RuleId, conclusion: Sequent, side: Side, principal: &Formula, premises: Vec<Proof>) -> Proof {
        let index =
            conclusion.position(side, principal).unwrap_or_else(|| panic!("{principal} is not in {conclusion}"));
        let mut p = Proof::new(rule, conclusion, premises);
        p.principal = Some((side, index));
        p
    }

    pub fn with_witness(mut self, t: Term) -> Proof {
        self.witness = Some(t);
        self
    }

    pub fn with_eigen(mut self, c: impl Into<String>) -> Proof {
        self.eigen = Some(c.into());
        self
    }

    pub fn principal_formula(&self) -> Option<&Formula> {
        let (side, i) = self.principal?;
        self.conclusion.side(side).get(i)
    }

    /// Recompute the stored heights bottom-up.
    pub fn recompute_heights(&mut self) {
        for p in &mut self.premises {
            p.recompute_heights();
        }
        self.height = 1 + self.premises.iter().map(|p| p.height).max().unwrap_or(0);
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }

    pub fn rule_usage(&self) -> RuleUsageProfile {
        let mut out = RuleUsageProfile::default();
        self.visit(&mut |p| out.insert(p.rule));
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Proof)) {
        f(self);
        for p in &self.premises {
            p.visit(f);
        }
    }

    pub fn count_rule(&self, rule: RuleId) -> usize {
        let mut n = 0;
        self.visit(&mut |p| n += usize::from(p.rule == rule));
        n
    }

    /// Indented tree, conclusion first.
    pub fn render_tree(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, indent: usize, out: &mut String) {
        let _ = write!(out, "{:indent$}{}  [{}", "", self.conclusion, self.rule, indent = indent);
        if let Some(t) = &self.witness {
            let _ = write!(out, " {t}");
        }
        if let Some(c) = &self.eigen {
            let _ = write!(out, " {c}");
        }
        out.push_str("]\n");
        for p in &self.premises {
            p.render_into(indent + 2, out);
        }
    }
}

/// The rule set of a proof.
pub fn rule_usage(p: &Proof) -> RuleUsageProfile {
    p.rule_usage()
}
