//! Contraction elimination for the starred classical calculus.
//!
//! Contractions are removed top-down from the leaves: a contraction whose
//! premise has a contraction-free proof is pushed upward through that
//! proof. Where the contracted formula is itself principal, the remaining
//! copy is first decomposed by inversion, and the contraction continues on
//! the smaller components.

use std::collections::BTreeSet;

use super::weaken::{proof_names, rename_const};
use super::{weaken, TransformError};
use crate::calculus::{check_proof, is_axiom, Proof, ProofClass, RuleId};
use crate::syntax::{Formula, NameSupply, Sequent, Side, Term};

/// Turn a proof in the starred calculus with contractions into one
/// without, for the same end sequent.
pub fn eliminate_contractions(p: &Proof) -> Result<Proof, TransformError> {
    check_proof(p, &ProofClass::Cplus, false)?;
    Ok(eliminate_unchecked(p))
}

pub(crate) fn eliminate_unchecked(p: &Proof) -> Proof {
    let mut taken = BTreeSet::new();
    proof_names(p, &mut taken);
    let mut names = NameSupply::new(taken);
    eliminate(p, &mut names)
}

fn eliminate(p: &Proof, names: &mut NameSupply) -> Proof {
    let premises: Vec<Proof> = p.premises.iter().map(|q| eliminate(q, names)).collect();
    match p.rule {
        RuleId::ContrL | RuleId::ContrR => {
            let (side, _) = p.principal.expect("contraction has a principal formula");
            let f = p.principal_formula().expect("principal in range").clone();
            contract(&premises[0], side, &f, names)
        }
        _ => rebuild(p, p.conclusion.clone(), premises),
    }
}

/// Copy of `p`'s node with a new conclusion and premises; the principal
/// formula is located again by value.
fn rebuild(p: &Proof, conclusion: Sequent, premises: Vec<Proof>) -> Proof {
    let mut out = Proof::new(p.rule, conclusion, premises);
    if let (Some((side, _)), Some(f)) = (p.principal, p.principal_formula()) {
        out.principal = Some((side, out.conclusion.position(side, f).expect("principal kept")));
    }
    out.witness = p.witness.clone();
    out.eigen = p.eigen.clone();
    out
}

fn principal_is(p: &Proof, side: Side, f: &Formula) -> bool {
    matches!(p.principal, Some((s, _)) if s == side) && p.principal_formula() == Some(f)
}

/// A contraction-free proof of `p`'s end sequent with one copy of `f`
/// removed from `side`; `f` must occur there at least twice.
fn contract(p: &Proof, side: Side, f: &Formula, names: &mut NameSupply) -> Proof {
    use RuleId::*;
    let target = p.conclusion.without_formula(side, f).expect("contracted formula present");
    if p.rule == Axiom {
        return Proof::axiom(target);
    }
    if !principal_is(p, side, f) {
        let premises = p.premises.iter().map(|q| contract(q, side, f, names)).collect();
        return rebuild(p, target, premises);
    }
    let prem = |i: usize| &p.premises[i];
    let premises = match (p.rule, f) {
        (ForallLStar | ExistsRStar, _) => vec![contract(prem(0), side, f, names)],
        (BotR, _) => return drop_bot(prem(0)),
        (AndLStar, Formula::And(a, b)) => {
            let q = invert(prem(0), f, &Inversion::AndL);
            vec![contract(&contract(&q, Side::Ante, a, names), Side::Ante, b, names)]
        }
        (OrRStar, Formula::Or(a, b)) => {
            let q = invert(prem(0), f, &Inversion::OrR);
            vec![contract(&contract(&q, Side::Succ, a, names), Side::Succ, b, names)]
        }
        (ImpR, Formula::Imp(a, b)) => {
            let q = invert(prem(0), f, &Inversion::ImpR);
            vec![contract(&contract(&q, Side::Ante, a, names), Side::Succ, b, names)]
        }
        (OrL, Formula::Or(a, b)) => vec![
            contract(&invert(prem(0), f, &Inversion::OrL(0)), Side::Ante, a, names),
            contract(&invert(prem(1), f, &Inversion::OrL(1)), Side::Ante, b, names),
        ],
        (AndR, Formula::And(a, b)) => vec![
            contract(&invert(prem(0), f, &Inversion::AndR(0)), Side::Succ, a, names),
            contract(&invert(prem(1), f, &Inversion::AndR(1)), Side::Succ, b, names),
        ],
        (ImpLStar, Formula::Imp(a, b)) => vec![
            contract(&invert(prem(0), f, &Inversion::ImpL(0)), Side::Succ, a, names),
            contract(&invert(prem(1), f, &Inversion::ImpL(1)), Side::Ante, b, names),
        ],
        (ExistsL | ForallR, Formula::Exists(_, body) | Formula::Forall(_, body)) => {
            // Decompose the other copy with a fresh eigenvariable, then
            // identify it with this node's.
            let c = p.eigen.clone().expect("eigenvariable rule");
            let fresh = names.fresh("c");
            let inv =
                if p.rule == ExistsL { Inversion::ExistsL(fresh.clone()) } else { Inversion::ForallR(fresh.clone()) };
            let q = invert(prem(0), f, &inv);
            let q = freshen_eigen(&q, &c, names);
            let q = rename_const(&q, &fresh, &c);
            vec![contract(&q, side, &body.instantiate(&Term::constant(&c)), names)]
        }
        _ => unreachable!("{} cannot have principal {f}", p.rule),
    };
    rebuild(p, target, premises)
}

/// Rename every eigenvariable `c` of a node above the root to a fresh name,
/// so `c` can be substituted into the proof.
fn freshen_eigen(p: &Proof, c: &str, names: &mut NameSupply) -> Proof {
    let mut premises: Vec<Proof> = p.premises.iter().map(|q| freshen_eigen(q, c, names)).collect();
    let mut eigen = p.eigen.clone();
    if p.eigen.as_deref() == Some(c) {
        let fresh = names.fresh(c);
        premises = premises.iter().map(|q| rename_const(q, c, &fresh)).collect();
        eigen = Some(fresh);
    }
    let mut out = rebuild(p, p.conclusion.clone(), premises);
    out.eigen = eigen;
    out
}

/// The invertible decompositions, named by the rule they undo.
#[derive(Clone, Debug)]
enum Inversion {
    AndL,
    OrR,
    ImpR,
    OrL(usize),
    AndR(usize),
    ImpL(usize),
    ExistsL(String),
    ForallR(String),
}

impl Inversion {
    fn side(&self) -> Side {
        match self {
            Inversion::AndL | Inversion::OrL(_) | Inversion::ImpL(_) | Inversion::ExistsL(_) => Side::Ante,
            _ => Side::Succ,
        }
    }

    fn rule(&self) -> RuleId {
        match self {
            Inversion::AndL => RuleId::AndLStar,
            Inversion::OrR => RuleId::OrRStar,
            Inversion::ImpR => RuleId::ImpR,
            Inversion::OrL(_) => RuleId::OrL,
            Inversion::AndR(_) => RuleId::AndR,
            Inversion::ImpL(_) => RuleId::ImpLStar,
            Inversion::ExistsL(_) => RuleId::ExistsL,
            Inversion::ForallR(_) => RuleId::ForallR,
        }
    }

    fn premise(&self) -> usize {
        match self {
            Inversion::OrL(k) | Inversion::AndR(k) | Inversion::ImpL(k) => *k,
            _ => 0,
        }
    }

    /// What replaces `f`: (antecedent, succedent) formulas.
    fn components(&self, f: &Formula) -> (Vec<Formula>, Vec<Formula>) {
        let pick = |k: usize, a: &Formula, b: &Formula| if k == 0 { a.clone() } else { b.clone() };
        match (self, f) {
            (Inversion::AndL, Formula::And(a, b)) => (vec![(**a).clone(), (**b).clone()], vec![]),
            (Inversion::OrR, Formula::Or(a, b)) => (vec![], vec![(**a).clone(), (**b).clone()]),
            (Inversion::ImpR, Formula::Imp(a, b)) => (vec![(**a).clone()], vec![(**b).clone()]),
            (Inversion::OrL(k), Formula::Or(a, b)) => (vec![pick(*k, a, b)], vec![]),
            (Inversion::AndR(k), Formula::And(a, b)) => (vec![], vec![pick(*k, a, b)]),
            (Inversion::ImpL(0), Formula::Imp(a, _)) => (vec![], vec![(**a).clone()]),
            (Inversion::ImpL(_), Formula::Imp(_, b)) => (vec![(**b).clone()], vec![]),
            (Inversion::ExistsL(c), Formula::Exists(_, body)) => (vec![body.instantiate(&Term::constant(c))], vec![]),
            (Inversion::ForallR(c), Formula::Forall(_, body)) => (vec![], vec![body.instantiate(&Term::constant(c))]),
            _ => unreachable!("{self:?} does not apply to {f}"),
        }
    }
}

/// Height-preserving inversion: a proof of `p`'s end sequent with one
/// copy of `f` replaced by its components.
fn invert(p: &Proof, f: &Formula, inv: &Inversion) -> Proof {
    let side = inv.side();
    let (ante, succ) = inv.components(f);
    let target = p.conclusion.without_formula(side, f).expect("inverted formula present").extend(&ante, &succ);
    if p.rule == RuleId::Axiom {
        return Proof::axiom(target);
    }
    if principal_is(p, side, f) {
        if p.rule == inv.rule() {
            let q = p.premises[inv.premise()].clone();
            return match (&p.eigen, inv) {
                (Some(c0), Inversion::ExistsL(c) | Inversion::ForallR(c)) => rename_const(&q, c0, c),
                _ => q,
            };
        }
        if p.rule == RuleId::BotR {
            // The premise has `bot` where `f` was.
            return drop_bot(&weaken(&p.premises[0], &ante, &succ));
        }
    }
    let premises = p.premises.iter().map(|q| invert(q, f, inv)).collect();
    rebuild(p, target, premises)
}

/// From a proof of `G |- D, bot` with `D` nonempty, a proof of `G |- D`.
///
/// `bot` on the right only ever closes an axiom against `bot` on the
/// left; such a leaf becomes a `bot-R` on another succedent formula.
pub(crate) fn drop_bot(p: &Proof) -> Proof {
    let target = p.conclusion.without_formula(Side::Succ, &Formula::Bot).expect("bot in succedent");
    debug_assert!(!target.succ().is_empty());
    match p.rule {
        RuleId::Axiom if is_axiom(&target, false) => Proof::axiom(target),
        RuleId::Axiom => {
            let e = target.succ()[0].clone();
            let leaf = Proof::axiom(target.without(Side::Succ, 0).with(Side::Succ, Formula::Bot));
            Proof::infer(RuleId::BotR, target, Side::Succ, &e, vec![leaf])
        }
        RuleId::BotR if p.principal_formula() == Some(&Formula::Bot) => drop_bot(&p.premises[0]),
        _ => {
            let premises = p.premises.iter().map(drop_bot).collect();
            rebuild(p, target, premises)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_formula, parse_sequent};

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    #[test]
    fn contraction_above_axiom() {
        let q = parse_formula("q").unwrap();
        let p = Proof::infer(RuleId::ContrL, seq("q |- q"), Side::Ante, &q, vec![Proof::axiom(seq("q, q |- q"))]);
        let out = eliminate_contractions(&p).unwrap();
        assert_eq!(out, Proof::axiom(seq("q |- q")));
    }

    #[test]
    fn contraction_free_input_is_unchanged() {
        let p = Proof::axiom(seq("p, q |- q"));
        assert_eq!(eliminate_contractions(&p).unwrap(), p);
    }

    #[test]
    fn drop_bot_turns_bot_axiom_into_bot_r() {
        let p = Proof::axiom(seq("bot |- p, bot"));
        let q = drop_bot(&p);
        assert_eq!(q.rule, RuleId::BotR);
        check_proof(&q, &ProofClass::Cstar, false).unwrap();
    }
}
