//! Goal/clause fragments on which classical, intuitionistic and uniform
//! provability coincide, and the rule-usage conditions behind them.

use std::fmt;
use std::str::FromStr;

use crate::calculus::{ProofClass, RuleId, RuleUsageProfile};
use crate::syntax::{Formula, Sequent};

/// A pair (or, for `LpCls`, a triple) of mutually recursive formula classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FragmentId {
    /// Goals without implication; clauses with goal-guarded implications,
    /// no disjunction.
    F1,
    /// As `F1` without universal goals, with disjunctive clauses.
    F2,
    /// As `F1` with disjunctive clauses but no universal clauses.
    F3,
    /// Goals with clause-guarded implications, no disjunction or
    /// existential; clauses without implication.
    F4,
    /// Intuitionistic abstract logic programming language.
    LpInt,
    /// Classical abstract logic programming language.
    LpCls,
}

impl FragmentId {
    pub const ALL: [FragmentId; 6] =
        [FragmentId::F1, FragmentId::F2, FragmentId::F3, FragmentId::F4, FragmentId::LpInt, FragmentId::LpCls];

    pub fn name(self) -> &'static str {
        match self {
            FragmentId::F1 => "f1",
            FragmentId::F2 => "f2",
            FragmentId::F3 => "f3",
            FragmentId::F4 => "f4",
            FragmentId::LpInt => "lp-int",
            FragmentId::LpCls => "lp-cls",
        }
    }
}

impl fmt::Display for FragmentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FragmentId {
    type Err = FragmentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FragmentId::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| FragmentError::UnknownFragment(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Goal,
    Clause,
    /// The auxiliary goal class of `LpCls`.
    GPrime,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Goal => "goal",
            Role::Clause => "clause",
            Role::GPrime => "gprime",
        }
    }
}

impl FromStr for Role {
    type Err = FragmentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "goal" | "g" => Ok(Role::Goal),
            "clause" | "d" => Ok(Role::Clause),
            "gprime" | "g'" => Ok(Role::GPrime),
            _ => Err(FragmentError::UnknownRole(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FragmentError {
    #[error("role {} is only defined for fragment lp-cls", .0.name())]
    InvalidRole(Role),
    #[error("unknown fragment `{0}` (expected f1, f2, f3, f4, lp-int or lp-cls)")]
    UnknownFragment(String),
    #[error("unknown role `{0}` (expected goal, clause or gprime)")]
    UnknownRole(String),
    #[error("fragment membership is defined for sequents with one succedent formula, found {0}")]
    NotSingleSuccedent(usize),
}

/// Right-hand sides of a production; each names the classes of the
/// immediate subformulas.
#[derive(Clone, Copy)]
enum Rhs {
    Top,
    Bot,
    Atom,
    And(Role, Role),
    Or(Role, Role),
    Imp(Role, Role),
    Forall(Role),
    Exists(Role),
    /// A unit production `N ::= M`.
    Is(Role),
}

use Rhs::*;
use Role::{Clause as D, GPrime as G1, Goal as G};

fn productions(frag: FragmentId, role: Role) -> &'static [Rhs] {
    match (frag, role) {
        (FragmentId::F1, G) => &[Top, Bot, Atom, And(G, G), Or(G, G), Forall(G), Exists(G)],
        (FragmentId::F1, D) => &[Top, Bot, Atom, Imp(G, D), And(D, D), Exists(D), Forall(D)],
        (FragmentId::F2, G) => &[Top, Bot, Atom, And(G, G), Or(G, G), Exists(G)],
        (FragmentId::F2, D) => &[Top, Bot, Atom, Imp(G, D), And(D, D), Or(D, D), Exists(D), Forall(D)],
        (FragmentId::F3, G) => &[Top, Bot, Atom, And(G, G), Or(G, G), Exists(G), Forall(G)],
        (FragmentId::F3, D) => &[Top, Bot, Atom, Imp(G, D), And(D, D), Or(D, D), Exists(D)],
        (FragmentId::F4, G) => &[Top, Bot, Atom, And(G, G), Imp(D, G), Forall(G)],
        (FragmentId::F4, D) => &[Top, Bot, Atom, And(D, D), Or(D, D), Exists(D), Forall(D)],
        (FragmentId::LpInt, G) => &[Top, Bot, Atom, And(G, G), Or(G, G), Imp(D, G), Forall(G), Exists(G)],
        (FragmentId::LpInt, D) => &[Top, Bot, Atom, Imp(G, D), And(D, D), Forall(D)],
        (FragmentId::LpCls, G) => &[Is(G1), Imp(D, G), And(G, G), Forall(G)],
        (FragmentId::LpCls, G1) => &[Top, Bot, Atom, And(G1, G1), Or(G1, G1), Forall(G1), Exists(G1)],
        (FragmentId::LpCls, D) => &[Top, Bot, Atom, Imp(G1, D), And(D, D), Forall(D)],
        (_, G1) => &[],
    }
}

fn member(f: &Formula, frag: FragmentId, role: Role) -> bool {
    productions(frag, role).iter().any(|rhs| match (rhs, f) {
        (Top, Formula::Top) | (Bot, Formula::Bot) | (Atom, Formula::Atom(..)) => true,
        (And(l, r), Formula::And(a, b)) | (Or(l, r), Formula::Or(a, b)) | (Imp(l, r), Formula::Imp(a, b)) => {
            member(a, frag, *l) && member(b, frag, *r)
        }
        (Forall(n), Formula::Forall(_, b)) | (Exists(n), Formula::Exists(_, b)) => member(b, frag, *n),
        (Is(n), _) => member(f, frag, *n),
        _ => false,
    })
}

/// Is `f` generated by the `role` production of `frag`?
pub fn classify(f: &Formula, frag: FragmentId, role: Role) -> Result<bool, FragmentError> {
    if role == Role::GPrime && frag != FragmentId::LpCls {
        return Err(FragmentError::InvalidRole(role));
    }
    Ok(member(f, frag, role))
}

/// All antecedent formulas are clauses and the succedent formula a goal.
pub fn fragment_guarantee(s: &Sequent, frag: FragmentId) -> Result<bool, FragmentError> {
    let goal = s.single_succ().ok_or(FragmentError::NotSingleSuccedent(s.succ().len()))?;
    Ok(member(goal, frag, Role::Goal) && s.ante().iter().all(|d| member(d, frag, Role::Clause)))
}

/// Rule-usage restrictions under which a classical proof's end sequent
/// is also intuitionistically provable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IntuitionisticCriterion {
    NoImpROrL,
    NoImpRForallR,
    NoImpRForallL,
    NoImpLOrRExistsR,
}

impl IntuitionisticCriterion {
    pub const ALL: [IntuitionisticCriterion; 4] = [
        IntuitionisticCriterion::NoImpROrL,
        IntuitionisticCriterion::NoImpRForallR,
        IntuitionisticCriterion::NoImpRForallL,
        IntuitionisticCriterion::NoImpLOrRExistsR,
    ];

    /// The rules the criterion forbids.
    pub fn forbidden(self) -> &'static [RuleId] {
        match self {
            IntuitionisticCriterion::NoImpROrL => &[RuleId::ImpR, RuleId::OrL],
            IntuitionisticCriterion::NoImpRForallR => &[RuleId::ImpR, RuleId::ForallR],
            IntuitionisticCriterion::NoImpRForallL => &[RuleId::ImpR, RuleId::ForallL],
            IntuitionisticCriterion::NoImpLOrRExistsR => &[RuleId::ImpL, RuleId::OrR1, RuleId::OrR2, RuleId::ExistsR],
        }
    }

    /// The fragment whose sequents only have proofs meeting the criterion.
    pub fn fragment(self) -> FragmentId {
        match self {
            IntuitionisticCriterion::NoImpROrL => FragmentId::F1,
            IntuitionisticCriterion::NoImpRForallR => FragmentId::F2,
            IntuitionisticCriterion::NoImpRForallL => FragmentId::F3,
            IntuitionisticCriterion::NoImpLOrRExistsR => FragmentId::F4,
        }
    }
}

impl fmt::Display for IntuitionisticCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self
            .forbidden()
            .iter()
            .map(|r| match r {
                RuleId::OrR1 | RuleId::OrR2 => "or-R",
                r => r.name(),
            })
            .collect();
        let mut names = names;
        names.dedup();
        write!(f, "no {}", names.join(", no "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("rule usage mentions rules outside the plain classical calculus: {}", .0.join(", "))]
pub struct ProfileError(pub Vec<String>);

fn plain_profile(prof: &RuleUsageProfile) -> Result<(), ProfileError> {
    let allowed = ProofClass::C.rules();
    let bad: Vec<String> = prof.rules().iter().filter(|r| !allowed.contains(r)).map(|r| r.name().to_string()).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(ProfileError(bad))
    }
}

/// The first criterion the profile of a classical proof satisfies, if any.
pub fn implies_intuitionistic(prof: &RuleUsageProfile) -> Result<Option<IntuitionisticCriterion>, ProfileError> {
    plain_profile(prof)?;
    Ok(IntuitionisticCriterion::ALL.into_iter().find(|c| !prof.uses_any(c.forbidden())))
}

/// Which reduction a rule-usage condition licenses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    /// From a classical proof of `G |- F` to an intuitionistic proof of
    /// the augmented sequent `F => bot, G |- F`.
    ClassicalToIntuitionistic,
    /// From an intuitionistic proof of an augmented sequent to a uniform one.
    IntuitionisticToUniform,
}

/// The first numbered condition (1-based) satisfied by the profile.
///
/// Classical to intuitionistic: 1 no `forall-R`; 2 no `imp-R` and no
/// `or-L`; 3 no `imp-R` and no `forall-L`; 4 no `imp-L`, `or-R`, `exists-R`.
///
/// Intuitionistic to uniform: 1 no `forall-R`; 2 (no `or-R` or no `or-L`)
/// and (no `exists-R`, or neither `or-L` nor `exists-L`); 3 no `forall-L`
/// and no `imp-R`.
pub fn reduction_conditions(prof: &RuleUsageProfile, stage: Stage) -> Result<Option<u8>, ProfileError> {
    use RuleId::*;
    plain_profile(prof)?;
    let no = |rules: &[RuleId]| !prof.uses_any(rules);
    let conditions = match stage {
        Stage::ClassicalToIntuitionistic => {
            vec![no(&[ForallR]), no(&[ImpR, OrL]), no(&[ImpR, ForallL]), no(&[ImpL, OrR1, OrR2, ExistsR])]
        }
        Stage::IntuitionisticToUniform => vec![
            no(&[ForallR]),
            (no(&[OrR1, OrR2]) || no(&[OrL])) && (no(&[ExistsR]) || no(&[OrL, ExistsL])),
            no(&[ForallL, ImpR]),
        ],
    };
    Ok(conditions.iter().position(|&c| c).map(|i| i as u8 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_formula, parse_sequent};

    fn class(s: &str, frag: FragmentId, role: Role) -> bool {
        classify(&parse_formula(s).unwrap(), frag, role).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert!(class("p(a) => q", FragmentId::F1, Role::Clause));
        assert!(!class("forall x. (p(x) | q)", FragmentId::F1, Role::Clause));
        assert!(class("forall x. (p(x) | q)", FragmentId::F2, Role::Clause));
        assert!(!class("exists x. (p(x) => q)", FragmentId::LpCls, Role::Goal));
        assert!(class("forall x. (p(x) => q(x))", FragmentId::LpCls, Role::Goal));
        assert!(classify(&Formula::Top, FragmentId::F1, Role::GPrime).is_err());
    }

    #[test]
    fn guarantee_examples() {
        let g = |s: &str, f| fragment_guarantee(&parse_sequent(s).unwrap(), f).unwrap();
        assert!(!g("forall x. (p(x) | q) |- (forall x. p(x)) | q", FragmentId::F1));
        for frag in FragmentId::ALL {
            assert!(g("|- top", frag));
        }
        assert!(g("forall x. (p(x) => q), p(a) |- q", FragmentId::F1));
        assert!(fragment_guarantee(&parse_sequent("|- p, q").unwrap(), FragmentId::F1).is_err());
    }

    #[test]
    fn intuitionistic_criteria() {
        use RuleId::*;
        let prof = |rs: &[RuleId]| RuleUsageProfile::new(rs.iter().copied());
        assert_eq!(implies_intuitionistic(&prof(&[])).unwrap(), Some(IntuitionisticCriterion::NoImpROrL));
        assert_eq!(implies_intuitionistic(&prof(&[ImpR, ImpL, Axiom])).unwrap(), None);
        assert_eq!(implies_intuitionistic(&prof(&[OrL, ForallR, ForallL, OrR1, Axiom])).unwrap(), None);
        assert_eq!(
            implies_intuitionistic(&prof(&[ImpL, ExistsR, ForallR, Axiom])).unwrap(),
            Some(IntuitionisticCriterion::NoImpROrL)
        );
        assert!(implies_intuitionistic(&prof(&[AndLStar])).is_err());
        assert_eq!(IntuitionisticCriterion::NoImpLOrRExistsR.to_string(), "no imp-L, no or-R, no exists-R");
    }

    #[test]
    fn reduction_condition_examples() {
        use RuleId::*;
        let prof = |rs: &[RuleId]| RuleUsageProfile::new(rs.iter().copied());
        let c2i = Stage::ClassicalToIntuitionistic;
        assert_eq!(reduction_conditions(&prof(&[ImpR, ImpL, Axiom]), c2i).unwrap(), Some(1));
        assert_eq!(reduction_conditions(&prof(&[ForallR, OrL, ForallL, ExistsR, Axiom]), c2i).unwrap(), None);
        assert_eq!(reduction_conditions(&prof(&[]), c2i).unwrap(), Some(1));
        assert_eq!(reduction_conditions(&prof(&[]), Stage::IntuitionisticToUniform).unwrap(), Some(1));
        // or-R and or-L together, exists-R absent: condition 2 fails on its
        // first conjunct.
        let p = prof(&[ForallR, OrR1, OrL, ForallL]);
        assert_eq!(reduction_conditions(&p, Stage::IntuitionisticToUniform).unwrap(), None);
        let p = prof(&[ForallR, OrR1, ExistsR, ForallL]);
        assert_eq!(reduction_conditions(&p, Stage::IntuitionisticToUniform).unwrap(), Some(2));
    }
}
