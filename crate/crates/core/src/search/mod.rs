//! Bounded proof search.
//!
//! Classical search works in the contraction-free starred calculus with
//! metavariables and unification; intuitionistic, uniform and restart
//! search are ground, goal-directed and loop-checked. Every proof
//! returned has been expanded into plain rules and carries its class.

mod classical;
mod goal;
mod herbrand;
mod unify;

use std::fmt;

pub use herbrand::herbrandize;
pub use unify::{unify, unify_args, Substitution};

use crate::calculus::{Proof, ProofClass};
use crate::syntax::{Formula, Sequent};

/// Resource bounds for one search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of rule applications on one branch.
    pub depth: usize,
    /// Maximum number of instances drawn from each quantified formula on
    /// one branch.
    pub qbudget: usize,
    /// Maximum number of search nodes over the whole search.
    pub node_budget: usize,
    /// Leave leaves closed by a non-atomic common formula as axioms
    /// instead of expanding them into standard axioms.
    pub strengthened_axioms: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { depth: 40, qbudget: 3, node_budget: 1_000_000, strengthened_axioms: false }
    }
}

impl SearchLimits {
    pub fn validate(&self) -> Result<(), LimitError> {
        if self.depth == 0 {
            return Err(LimitError("depth must be positive"));
        }
        if self.node_budget == 0 {
            return Err(LimitError("node budget must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid search limits: {0}")]
pub struct LimitError(pub &'static str);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error(transparent)]
    Limits(#[from] LimitError),
    #[error("{0} search needs exactly one succedent formula, found {1}")]
    NotSingleSuccedent(Mode, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Classical,
    Intuitionistic,
    Uniform,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Classical => "classical",
            Mode::Intuitionistic => "intuitionistic",
            Mode::Uniform => "uniform",
        })
    }
}

/// A found proof together with what it proves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub proof: Proof,
    pub class: ProofClass,
    /// The sequent that was asked about. It differs from the proof's
    /// conclusion only when the search ran on a Herbrandized form.
    pub original: Sequent,
}

// Returned once per search; boxing the certificate buys nothing.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Proved(Certificate),
    NotProvedWithinLimits,
    /// The search was exhaustive; only reported by the decision procedures
    /// (quantifier-free input).
    Refuted,
}

impl SearchOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, SearchOutcome::Proved(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            SearchOutcome::Proved(c) => Some(c),
            _ => None,
        }
    }

    pub fn proof(&self) -> Option<&Proof> {
        self.certificate().map(|c| &c.proof)
    }

    pub fn verdict(&self) -> &'static str {
        match self {
            SearchOutcome::Proved(_) => "proved",
            SearchOutcome::NotProvedWithinLimits => "not proved within limits",
            SearchOutcome::Refuted => "refuted",
        }
    }
}

/// Search for a proof of `s` in the given mode.
///
/// Classical proofs are returned as class `C`, intuitionistic ones as `I`
/// and uniform ones as `O`.
pub fn prove(s: &Sequent, mode: Mode, limits: &SearchLimits) -> Result<SearchOutcome, SearchError> {
    limits.validate()?;
    match mode {
        Mode::Classical => Ok(classical::prove(s, limits).into_outcome(s, ProofClass::C)),
        Mode::Intuitionistic | Mode::Uniform => {
            let goal = s.single_succ().ok_or(SearchError::NotSingleSuccedent(mode, s.succ().len()))?;
            let gm = if mode == Mode::Uniform { goal::GoalMode::Uniform } else { goal::GoalMode::Intuitionistic };
            let class = if mode == Mode::Uniform { ProofClass::O } else { ProofClass::I };
            Ok(goal::prove(s.ante(), goal, gm, limits).into_outcome(s, class))
        }
    }
}

/// Classical search for the contraction-free starred proof itself.
pub fn prove_cstar(s: &Sequent, limits: &SearchLimits) -> Result<SearchOutcome, SearchError> {
    limits.validate()?;
    Ok(classical::prove_starred(s, limits).into_outcome(s, ProofClass::Cstar))
}

/// Intuitionistic search returning the contraction-free starred proof.
pub fn prove_istar(s: &Sequent, limits: &SearchLimits) -> Result<SearchOutcome, SearchError> {
    limits.validate()?;
    let goal = s.single_succ().ok_or(SearchError::NotSingleSuccedent(Mode::Intuitionistic, s.succ().len()))?;
    Ok(goal::prove_starred(s.ante(), goal, limits).into_outcome(s, ProofClass::Istar))
}

/// Classical search on the Herbrandized form of `s`.
pub fn prove_herbrandized(s: &Sequent, limits: &SearchLimits) -> Result<SearchOutcome, SearchError> {
    limits.validate()?;
    let h = herbrandize(s);
    let outcome = classical::prove(&h, limits).into_outcome(&h, ProofClass::C);
    Ok(match outcome {
        SearchOutcome::Proved(mut c) => {
            c.original = s.clone();
            SearchOutcome::Proved(c)
        }
        o => o,
    })
}

/// Goal-directed search with restarts: looks for a uniform proof of
/// `gamma |- g` in the calculus where atomic goals may be replaced by `g`
/// and disjunctive assumptions split with one branch restarting.
///
/// Success means `g => bot, gamma |- g` has a uniform proof, and so
/// `gamma |- g` is classically provable.
pub fn prove_restart(gamma: &[Formula], g: &Formula, limits: &SearchLimits) -> Result<SearchOutcome, SearchError> {
    limits.validate()?;
    let s = Sequent::goal(gamma.to_vec(), g.clone());
    let mode = goal::GoalMode::Restart(g.clone());
    Ok(goal::prove(s.ante(), g, mode, limits).into_outcome(&s, ProofClass::OG(g.clone())))
}

/// What an engine reports before the outcome is packaged.
pub(crate) enum EngineResult {
    Proved(Proof),
    Exhausted,
    OutOfLimits,
}

impl EngineResult {
    fn into_outcome(self, s: &Sequent, class: ProofClass) -> SearchOutcome {
        match self {
            EngineResult::Proved(proof) => SearchOutcome::Proved(Certificate { proof, class, original: s.clone() }),
            EngineResult::Exhausted => SearchOutcome::Refuted,
            EngineResult::OutOfLimits => SearchOutcome::NotProvedWithinLimits,
        }
    }
}

/// The node budget ran out.
#[derive(Debug)]
pub(crate) struct Abort;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check_proof, RuleId};
    use crate::parser::parse_sequent;

    fn run(src: &str, mode: Mode) -> SearchOutcome {
        let s = parse_sequent(src).unwrap();
        let out = prove(&s, mode, &SearchLimits::default()).unwrap();
        if let Some(c) = out.certificate() {
            assert_eq!(c.proof.conclusion, s);
            if let Err(e) = check_proof(&c.proof, &c.class, false) {
                panic!("{src} ({mode}): {e}\n{}", c.proof.render_tree());
            }
        }
        out
    }

    #[test]
    fn peirce() {
        let src = "|- ((p => q) => p) => p";
        assert!(run(src, Mode::Classical).is_proved());
        assert_eq!(run(src, Mode::Intuitionistic), SearchOutcome::Refuted);
        assert_eq!(run(src, Mode::Uniform), SearchOutcome::Refuted);
    }

    #[test]
    fn excluded_middle_and_disjunctive_assumption() {
        assert!(run("|- p | ~p", Mode::Classical).is_proved());
        assert_eq!(run("|- p | ~p", Mode::Intuitionistic), SearchOutcome::Refuted);
        assert!(run("p | q |- q | p", Mode::Intuitionistic).is_proved());
        assert_eq!(run("p | q |- q | p", Mode::Uniform), SearchOutcome::Refuted);
    }

    #[test]
    fn quantified_classical() {
        for src in [
            "|- exists y. forall x. (p(y) => p(x))",
            "forall x. forall y. (p(x) | q(y)) |- (forall x. p(x)) | (forall y. q(y))",
            "forall x. forall y. (r(x, a) | r(y, b)) |- exists y. forall x. r(x, y)",
            "forall x. ((p(x) => bot) => bot) |- forall x. p(x)",
            "|- forall x. (p(x) | (p(x) => s))",
            "forall x. forall y. (p(x) | q(y)), (forall x. p(x)) => (forall y. q(y)) |- forall y. q(y)",
        ] {
            assert!(run(src, Mode::Classical).is_proved(), "{src}");
        }
    }

    #[test]
    fn eigenvariable_condition_blocks_unsound_swap() {
        let out = run("forall y. exists x. r(x, y) |- exists x. forall y. r(x, y)", Mode::Classical);
        assert_eq!(out, SearchOutcome::NotProvedWithinLimits);
        assert!(run("exists x. forall y. r(x, y) |- forall y. exists x. r(x, y)", Mode::Classical).is_proved());
    }

    #[test]
    fn quantified_intuitionistic_and_uniform() {
        let src = "exists x. forall y. r(x, y) |- forall y. exists x. r(x, y)";
        assert!(run(src, Mode::Intuitionistic).is_proved());
        assert!(run("forall x. p(x), forall x. (p(x) => q(x)) |- q(a)", Mode::Uniform).is_proved());
        assert!(run(
            "(forall y. exists x. r(x, y)) => bot, forall y. exists x. r(x, y) |- forall y. exists x. r(x, y)",
            Mode::Intuitionistic
        )
        .is_proved());
    }

    #[test]
    fn restart_proves_classical_consequences() {
        let g = crate::parser::parse_formula("((p => q) => p) => p").unwrap();
        let out = prove_restart(&[], &g, &SearchLimits::default()).unwrap();
        let c = out.certificate().expect("proved");
        check_proof(&c.proof, &c.class, false).unwrap();
    }

    #[test]
    fn strengthened_closure_and_cstar() {
        let s = parse_sequent("p & q |- p & q").unwrap();
        let limits = SearchLimits { strengthened_axioms: true, ..SearchLimits::default() };
        let out = prove_cstar(&s, &limits).unwrap();
        let c = out.certificate().unwrap();
        assert_eq!(c.proof.rule, RuleId::Axiom);
        check_proof(&c.proof, &c.class, true).unwrap();
        let out = prove_istar(&s, &SearchLimits::default()).unwrap();
        check_proof(out.proof().unwrap(), &ProofClass::Istar, false).unwrap();
    }
}
