use super::contraction::eliminate_unchecked;
use super::{expand_starred, weaken, TransformError};
use crate::calculus::{check_proof, Proof, ProofClass, RuleId};
use crate::fragments::IntuitionisticCriterion;
use crate::syntax::{multiset_difference, Formula, Sequent, Side};

/// An intuitionistic proof obtained from a classical one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    /// Proves the classical antecedent with `goal` as the only succedent.
    pub proof: Proof,
    pub goal: Formula,
    /// The rule restriction the classical proof met.
    pub via: IntuitionisticCriterion,
}

/// Build an I-proof from a C-proof that avoids `imp-R` and `or-L`, or that
/// avoids `imp-L`, `or-R` and `exists-R` and has one succedent formula.
///
/// Without `imp-R` and `or-L` the result proves `G |- F` for some `F` in
/// the classical succedent; where several premises would do, the leftmost
/// one is followed. Otherwise the proof is rewritten into the starred
/// calculus, its contractions eliminated and the starred rules expanded.
pub fn extract_intuitionistic(p: &Proof) -> Result<Extraction, TransformError> {
    use RuleId::*;
    check_proof(p, &ProofClass::C, false)?;
    let profile = p.rule_usage();
    if !profile.uses_any(&[ImpR, OrL]) {
        let (proof, goal) = no_imp_r_or_l(p);
        return Ok(Extraction { proof, goal, via: IntuitionisticCriterion::NoImpROrL });
    }
    let single = p.conclusion.single_succ().cloned();
    let violating: Vec<RuleId> =
        [ImpR, OrL, ImpL, OrR1, OrR2, ExistsR].into_iter().filter(|r| profile.contains(*r)).collect();
    match single {
        Some(goal) if !profile.uses_any(&[ImpL, OrR1, OrR2, ExistsR]) => {
            let star = eliminate_unchecked(&to_plus(p));
            let proof = expand_starred(&star);
            Ok(Extraction { proof, goal, via: IntuitionisticCriterion::NoImpLOrRExistsR })
        }
        _ => Err(TransformError::NotEligible { rules: violating, succedent: p.conclusion.succ().len() }),
    }
}

/// Induction over a C-proof without `imp-R` and `or-L`.
fn no_imp_r_or_l(p: &Proof) -> (Proof, Formula) {
    use RuleId::*;
    let s = &p.conclusion;
    let ante = s.ante().to_vec();
    let goal_seq = |g: &Formula| Sequent::goal(ante.clone(), g.clone());
    let principal = p.principal_formula().cloned();
    match p.rule {
        Axiom => {
            let g = if s.contains(Side::Succ, &Formula::Top) {
                Formula::Top
            } else {
                s.succ()
                    .iter()
                    .find(|f| f.is_atomic_or_bot() && s.contains(Side::Ante, f))
                    .expect("axiom has a closing pair")
                    .clone()
            };
            (Proof::axiom(goal_seq(&g)), g)
        }
        ContrR => no_imp_r_or_l(&p.premises[0]),
        BotR => {
            let (q, g) = no_imp_r_or_l(&p.premises[0]);
            let d = principal.expect("bot-R principal");
            let rest = s.without_formula(Side::Succ, &d).expect("principal present");
            if g != Formula::Bot || rest.contains(Side::Succ, &Formula::Bot) {
                (q, g)
            } else {
                (Proof::infer(BotR, goal_seq(&d), Side::Succ, &d, vec![q]), d)
            }
        }
        ContrL | AndL1 | AndL2 | ForallL | ExistsL => {
            let (q, g) = no_imp_r_or_l(&p.premises[0]);
            let f = principal.expect("left rule principal");
            let mut node = Proof::infer(p.rule, goal_seq(&g), Side::Ante, &f, vec![q]);
            node.witness = p.witness.clone();
            node.eigen = p.eigen.clone();
            (node, g)
        }
        OrR1 | OrR2 | ExistsR | ForallR => {
            let (q, g) = no_imp_r_or_l(&p.premises[0]);
            let f = principal.expect("right rule principal");
            let context = s.without_formula(Side::Succ, &f).expect("principal present");
            if context.contains(Side::Succ, &g) {
                return (q, g);
            }
            let mut node = Proof::infer(p.rule, goal_seq(&f), Side::Succ, &f, vec![q]);
            node.witness = p.witness.clone();
            node.eigen = p.eigen.clone();
            (node, f)
        }
        AndR => {
            let f = principal.expect("and-R principal");
            let context = s.without_formula(Side::Succ, &f).expect("principal present");
            let (l, g1) = no_imp_r_or_l(&p.premises[0]);
            if context.contains(Side::Succ, &g1) {
                return (l, g1);
            }
            let (r, g2) = no_imp_r_or_l(&p.premises[1]);
            if context.contains(Side::Succ, &g2) {
                return (r, g2);
            }
            (Proof::infer(AndR, goal_seq(&f), Side::Succ, &f, vec![l, r]), f)
        }
        ImpL => {
            let f = principal.expect("imp-L principal");
            let Formula::Imp(b, _) = &f else { unreachable!("imp-L on {f}") };
            let left = &p.premises[0].conclusion;
            let (l, g1) = no_imp_r_or_l(&p.premises[0]);
            let delta1 = multiset_difference(left.succ(), std::slice::from_ref(&**b)).expect("left premise has B");
            if delta1.contains(&g1) {
                // The left premise already proves a conclusion formula.
                let extra = multiset_difference(&ante, left.ante()).expect("left antecedent is contained");
                return (weaken(&l, &extra, &[]), g1);
            }
            let (r, g2) = no_imp_r_or_l(&p.premises[1]);
            (Proof::infer(ImpL, goal_seq(&g2), Side::Ante, &f, vec![l, r]), g2)
        }
        _ => unreachable!("{} is excluded or not a C rule", p.rule),
    }
}

/// Rewrite a C-proof in the starred calculus with contractions: the
/// plain left/right rules become their starred forms on weakened premises.
pub(crate) fn to_plus(p: &Proof) -> Proof {
    use RuleId::*;
    let premises: Vec<Proof> = p.premises.iter().map(to_plus).collect();
    let s = &p.conclusion;
    let starred = match p.rule {
        AndL1 | AndL2 => AndLStar,
        OrR1 | OrR2 => OrRStar,
        ForallL => ForallLStar,
        ExistsR => ExistsRStar,
        ImpL => ImpLStar,
        _ => {
            let mut out = Proof::new(p.rule, s.clone(), premises);
            out.principal = p.principal;
            out.witness = p.witness.clone();
            out.eigen = p.eigen.clone();
            return out;
        }
    };
    let (side, _) = p.principal.expect("logical rule");
    let f = p.principal_formula().expect("principal in range").clone();
    let rest = s.without_formula(side, &f).expect("principal present");
    let targets: Vec<Sequent> = match (starred, &f) {
        (AndLStar, Formula::And(a, b)) => vec![rest.with_all(Side::Ante, [(**a).clone(), (**b).clone()])],
        (OrRStar, Formula::Or(a, b)) => vec![rest.with_all(Side::Succ, [(**a).clone(), (**b).clone()])],
        (ForallLStar | ExistsRStar, _) => {
            let inst = premises[0].conclusion.clone();
            // The premise is `rest` plus the instance; keep the principal too.
            vec![inst.with(side, f.clone())]
        }
        (ImpLStar, Formula::Imp(b, d)) => {
            vec![rest.with(Side::Succ, (**b).clone()), rest.with(Side::Ante, (**d).clone())]
        }
        _ => unreachable!("{starred} on {f}"),
    };
    let premises = premises.iter().zip(&targets).map(|(q, t)| weaken_to(q, t)).collect();
    let mut out = Proof::infer(starred, s.clone(), side, &f, premises);
    out.witness = p.witness.clone();
    out
}

/// Weaken `p` so it proves `target`, a superset of its conclusion.
fn weaken_to(p: &Proof, target: &Sequent) -> Proof {
    let ante = multiset_difference(target.ante(), p.conclusion.ante()).expect("antecedent grows");
    let succ = multiset_difference(target.succ(), p.conclusion.succ()).expect("succedent grows");
    weaken(p, &ante, &succ)
}

/// `|- F` becomes `F => bot |- F`: the goal's negation is assumed.
pub fn augment(s: &Sequent) -> Result<Sequent, TransformError> {
    let f = s.single_succ().ok_or(TransformError::NotSingleSuccedent(s.succ().len()))?;
    Ok(s.with(Side::Ante, Formula::not(f.clone())))
}
