use super::weaken;
use crate::calculus::{Proof, RuleId};
use crate::syntax::{Formula, NameSupply, Sequent, Side, Term};

/// Replace every starred rule by plain rules and contractions.
///
/// `and-L*` becomes two projections and a contraction, `forall-L*` an
/// instance and a contraction (dually on the right), `imp-L*` a plain
/// `imp-L` followed by right contractions of the shared succedent, and
/// `imp-L*I` a plain `imp-L` on a weakened right premise followed by a
/// left contraction.
pub fn expand_starred(p: &Proof) -> Proof {
    expand_owned(p.clone())
}

pub(crate) fn expand_owned(p: Proof) -> Proof {
    use RuleId::*;
    let Proof { rule, conclusion: s, principal, witness, eigen, premises, .. } = p;
    let premises: Vec<Proof> = premises.into_iter().map(expand_owned).collect();
    let Some((side, index)) = principal else {
        return Proof { eigen, witness, ..Proof::new(rule, s, premises) };
    };
    let f = s.side(side)[index].clone();
    match (rule, &f) {
        (AndLStar, Formula::And(a, _)) => {
            let rest = s.without(Side::Ante, index);
            let doubled = s.with(Side::Ante, f.clone());
            let mid = rest.with(Side::Ante, (**a).clone()).with(Side::Ante, f.clone());
            let p2 = Proof::infer(AndL2, mid, Side::Ante, &f, premises);
            let p1 = Proof::infer(AndL1, doubled, Side::Ante, &f, vec![p2]);
            Proof::infer(ContrL, s, Side::Ante, &f, vec![p1])
        }
        (OrRStar, Formula::Or(a, _)) => {
            let rest = s.without(Side::Succ, index);
            let doubled = s.with(Side::Succ, f.clone());
            let mid = rest.with(Side::Succ, (**a).clone()).with(Side::Succ, f.clone());
            let p2 = Proof::infer(OrR2, mid, Side::Succ, &f, premises);
            let p1 = Proof::infer(OrR1, doubled, Side::Succ, &f, vec![p2]);
            Proof::infer(ContrR, s, Side::Succ, &f, vec![p1])
        }
        (ForallLStar | ExistsRStar, _) => {
            let (plain, contr) = if rule == ForallLStar { (ForallL, ContrL) } else { (ExistsR, ContrR) };
            let doubled = s.with(side, f.clone());
            let inst = Proof::infer(plain, doubled, side, &f, premises)
                .with_witness(witness.expect("quantifier rule has a witness"));
            Proof::infer(contr, s, side, &f, vec![inst])
        }
        (ImpLStar, _) => {
            // Both premises share the succedent; the plain rule splits it,
            // so the conclusion holds it twice.
            let delta = s.succ().to_vec();
            let mut current = s.extend(&[], &delta);
            let mut node = Proof::infer(ImpL, current.clone(), Side::Ante, &f, premises);
            for d in &delta {
                current = current.without_formula(Side::Succ, d).expect("duplicated formula");
                node = Proof::infer(ContrR, current.clone(), Side::Succ, d, vec![node]);
            }
            node
        }
        (ImpLStarI, _) => {
            let mut premises = premises;
            let right = weaken(&premises.pop().expect("two premises"), std::slice::from_ref(&f), &[]);
            let left = premises.pop().expect("two premises");
            let doubled = s.with(Side::Ante, f.clone());
            let node = Proof::infer(ImpL, doubled, Side::Ante, &f, vec![left, right]);
            Proof::infer(ContrL, s, Side::Ante, &f, vec![node])
        }
        _ => Proof { principal, eigen, witness, ..Proof::new(rule, s, premises) },
    }
}

/// Which starred calculus an identity derivation is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityStyle {
    /// Multi-succedent, contraction-free classical rules.
    Classical,
    /// Single-succedent, contraction-free intuitionistic rules.
    Intuitionistic,
}

/// A derivation of `s`, which must contain `f` on both sides, whose
/// leaves are standard axioms (atoms, `bot` or `top`).
pub fn identity_proof(s: &Sequent, f: &Formula, style: IdentityStyle) -> Proof {
    assert!(s.contains(Side::Ante, f) && s.contains(Side::Succ, f), "{f} must occur on both sides of {s}");
    let mut names = NameSupply::avoiding(s);
    identity(s, f, style, &mut names)
}

fn identity(s: &Sequent, f: &Formula, style: IdentityStyle, names: &mut NameSupply) -> Proof {
    use RuleId::*;
    let classical = style == IdentityStyle::Classical;
    let drop = |side: Side, seq: &Sequent| seq.without_formula(side, f).expect("formula present");
    match f {
        Formula::Top | Formula::Bot | Formula::Atom(..) => Proof::axiom(s.clone()),
        Formula::And(a, b) => {
            let s1 = drop(Side::Ante, s).with_all(Side::Ante, [(**a).clone(), (**b).clone()]);
            let rest = drop(Side::Succ, &s1);
            let left = identity(&rest.with(Side::Succ, (**a).clone()), a, style, names);
            let right = identity(&rest.with(Side::Succ, (**b).clone()), b, style, names);
            let and_r = Proof::infer(AndR, s1, Side::Succ, f, vec![left, right]);
            Proof::infer(AndLStar, s.clone(), Side::Ante, f, vec![and_r])
        }
        Formula::Or(a, b) if classical => {
            let s1 = drop(Side::Succ, s).with_all(Side::Succ, [(**a).clone(), (**b).clone()]);
            let rest = drop(Side::Ante, &s1);
            let left = identity(&rest.with(Side::Ante, (**a).clone()), a, style, names);
            let right = identity(&rest.with(Side::Ante, (**b).clone()), b, style, names);
            let or_l = Proof::infer(OrL, s1, Side::Ante, f, vec![left, right]);
            Proof::infer(OrRStar, s.clone(), Side::Succ, f, vec![or_l])
        }
        Formula::Or(a, b) => {
            let rest = drop(Side::Ante, s);
            let branch = |x: &Formula, rule: RuleId, names: &mut NameSupply| {
                let s1 = rest.with(Side::Ante, x.clone());
                let s2 = drop(Side::Succ, &s1).with(Side::Succ, x.clone());
                let inner = identity(&s2, x, style, names);
                Proof::infer(rule, s1, Side::Succ, f, vec![inner])
            };
            let left = branch(a, OrR1, names);
            let right = branch(b, OrR2, names);
            Proof::infer(OrL, s.clone(), Side::Ante, f, vec![left, right])
        }
        Formula::Imp(a, b) => {
            let s1 = drop(Side::Succ, s).with(Side::Ante, (**a).clone()).with(Side::Succ, (**b).clone());
            let rest = drop(Side::Ante, &s1);
            let (rule, left_seq) = if classical {
                (ImpLStar, rest.with(Side::Succ, (**a).clone()))
            } else {
                (ImpLStarI, Sequent::goal(s1.ante().to_vec(), (**a).clone()))
            };
            let left = identity(&left_seq, a, style, names);
            let right = identity(&rest.with(Side::Ante, (**b).clone()), b, style, names);
            let imp_l = Proof::infer(rule, s1, Side::Ante, f, vec![left, right]);
            Proof::infer(ImpR, s.clone(), Side::Succ, f, vec![imp_l])
        }
        Formula::Forall(_, body) => {
            let c = names.fresh("c");
            let inst = body.instantiate(&Term::constant(&c));
            let s1 = drop(Side::Succ, s).with(Side::Succ, inst.clone());
            let s2 = s1.with(Side::Ante, inst.clone());
            let inner = identity(&s2, &inst, style, names);
            let all_l = Proof::infer(ForallLStar, s1, Side::Ante, f, vec![inner]).with_witness(Term::constant(&c));
            Proof::infer(ForallR, s.clone(), Side::Succ, f, vec![all_l]).with_eigen(c)
        }
        Formula::Exists(_, body) => {
            let c = names.fresh("c");
            let inst = body.instantiate(&Term::constant(&c));
            let s1 = drop(Side::Ante, s).with(Side::Ante, inst.clone());
            let (rule, s2) = if classical {
                (ExistsRStar, s1.with(Side::Succ, inst.clone()))
            } else {
                (ExistsR, drop(Side::Succ, &s1).with(Side::Succ, inst.clone()))
            };
            let inner = identity(&s2, &inst, style, names);
            let ex_r = Proof::infer(rule, s1, Side::Succ, f, vec![inner]).with_witness(Term::constant(&c));
            Proof::infer(ExistsL, s.clone(), Side::Ante, f, vec![ex_r]).with_eigen(c)
        }
    }
}
