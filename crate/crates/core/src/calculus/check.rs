use std::fmt;

use super::proof::Proof;
use super::rule::{ProofClass, RuleId};
use crate::syntax::{multiset_difference, Formula, Sequent, Side, Term};

/// Axiom test: `top` in the succedent, or an atom or `bot` on both sides.
/// With `strengthened`, any formula common to both sides suffices.
pub fn is_axiom(s: &Sequent, strengthened: bool) -> bool {
    s.contains(Side::Succ, &Formula::Top)
        || s.ante().iter().any(|a| (strengthened || a.is_atomic_or_bot()) && s.contains(Side::Succ, a))
}

/// Location of a node: the premise indices followed from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NodePath(pub Vec<usize>);

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for i in &self.0 {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    /// The node does not have the shape of its rule (premise count).
    #[error("malformed node at {path}: {rule} takes {expected} premise(s), found {found}")]
    Malformed { path: NodePath, rule: RuleId, expected: usize, found: usize },
    /// The first node, in pre-order, that is not a correct inference.
    #[error("invalid {rule} at {path} concluding `{sequent}`: {reason}")]
    Invalid { path: NodePath, rule: RuleId, sequent: Sequent, reason: String },
}

impl CheckError {
    pub fn path(&self) -> &NodePath {
        match self {
            CheckError::Malformed { path, .. } | CheckError::Invalid { path, .. } => path,
        }
    }

    pub fn reason(&self) -> String {
        match self {
            CheckError::Malformed { .. } => "wrong number of premises".to_string(),
            CheckError::Invalid { reason, .. } => reason.clone(),
        }
    }
}

/// Check that `p` is a correct proof of its class.
pub fn check_proof(p: &Proof, class: &ProofClass, strengthened: bool) -> Result<(), CheckError> {
    let checker = Checker { class, strengthened, rules: class.rules() };
    let mut path = Vec::new();
    checker.node(p, &mut path)
}

struct Checker<'a> {
    class: &'a ProofClass,
    strengthened: bool,
    rules: std::collections::BTreeSet<RuleId>,
}

type Reason = String;

impl Checker<'_> {
    fn node(&self, p: &Proof, path: &mut Vec<usize>) -> Result<(), CheckError> {
        if p.premises.len() != p.rule.arity() {
            return Err(CheckError::Malformed {
                path: NodePath(path.clone()),
                rule: p.rule,
                expected: p.rule.arity(),
                found: p.premises.len(),
            });
        }
        if let Err(reason) = self.local(p) {
            return Err(CheckError::Invalid {
                path: NodePath(path.clone()),
                rule: p.rule,
                sequent: p.conclusion.clone(),
                reason,
            });
        }
        for (i, q) in p.premises.iter().enumerate() {
            path.push(i);
            self.node(q, path)?;
            path.pop();
        }
        Ok(())
    }

    fn local(&self, p: &Proof) -> Result<(), Reason> {
        if !self.rules.contains(&p.rule) {
            return Err(format!("rule {} is not part of class {}", p.rule, self.class.name()));
        }
        let s = &p.conclusion;
        if self.class.single_succedent() && s.succ().len() != 1 {
            return Err("succedent not singleton".into());
        }
        if self.class.uniform() {
            self.uniformity(p)?;
        }
        let expected = 1 + p.premises.iter().map(|q| q.height).max().unwrap_or(0);
        if p.height != expected {
            return Err(format!("stored height {} but recomputed {expected}", p.height));
        }
        self.schema(p)
    }

    fn uniformity(&self, p: &Proof) -> Result<(), Reason> {
        let Some(f) = p.conclusion.single_succ() else {
            return Ok(());
        };
        let introduced = match f {
            Formula::Atom(..) | Formula::Bot => return Ok(()),
            Formula::Top => p.rule == RuleId::Axiom,
            Formula::And(..) => p.rule == RuleId::AndR,
            Formula::Or(..) => matches!(p.rule, RuleId::OrR1 | RuleId::OrR2),
            Formula::Imp(..) => p.rule == RuleId::ImpR,
            Formula::Forall(..) => p.rule == RuleId::ForallR,
            Formula::Exists(..) => p.rule == RuleId::ExistsR,
        };
        if introduced && (p.rule == RuleId::Axiom || p.principal == Some((Side::Succ, 0))) {
            Ok(())
        } else {
            Err(format!("non-atomic succedent `{f}` not introduced by a right rule"))
        }
    }

    fn schema(&self, p: &Proof) -> Result<(), Reason> {
        use RuleId::*;
        let s = &p.conclusion;
        let prem = |i: usize| &p.premises[i].conclusion;
        match p.rule {
            Axiom => {
                if is_axiom(s, self.strengthened) {
                    Ok(())
                } else {
                    Err("not an axiom".into())
                }
            }
            ResG => {
                let g = self.goal()?;
                same(prem(0), &Sequent::goal(s.ante().to_vec(), g.clone()))
            }
            ContrL | ContrR => {
                let side = if p.rule == ContrL { Side::Ante } else { Side::Succ };
                let (f, _) = principal(p, side)?;
                same(prem(0), &s.with(side, f.clone()))
            }
            BotR => {
                let (_, rest) = principal(p, Side::Succ)?;
                same(prem(0), &rest.with(Side::Succ, Formula::Bot))
            }
            AndL1 | AndL2 | AndLStar => {
                let (f, rest) = principal(p, Side::Ante)?;
                let Formula::And(b, d) = f else { return Err(shape("a conjunction", f)) };
                let expected = match p.rule {
                    AndL1 => rest.with(Side::Ante, (**b).clone()),
                    AndL2 => rest.with(Side::Ante, (**d).clone()),
                    _ => rest.with_all(Side::Ante, [(**b).clone(), (**d).clone()]),
                };
                same(prem(0), &expected)
            }
            OrR1 | OrR2 | OrRStar => {
                let (f, rest) = principal(p, Side::Succ)?;
                let Formula::Or(b, d) = f else { return Err(shape("a disjunction", f)) };
                let expected = match p.rule {
                    OrR1 => rest.with(Side::Succ, (**b).clone()),
                    OrR2 => rest.with(Side::Succ, (**d).clone()),
                    _ => rest.with_all(Side::Succ, [(**b).clone(), (**d).clone()]),
                };
                same(prem(0), &expected)
            }
            OrL => {
                let (f, rest) = principal(p, Side::Ante)?;
                let Formula::Or(b, d) = f else { return Err(shape("a disjunction", f)) };
                same(prem(0), &rest.with(Side::Ante, (**b).clone()))?;
                same(prem(1), &rest.with(Side::Ante, (**d).clone()))
            }
            OrLG => {
                let g = self.goal()?;
                let (f, rest) = principal(p, Side::Ante)?;
                let Formula::Or(b, d) = f else { return Err(shape("a disjunction", f)) };
                same(prem(0), &rest.with(Side::Ante, (**b).clone()))?;
                let mut ante = rest.ante().to_vec();
                ante.push((**d).clone());
                same(prem(1), &Sequent::goal(ante, g.clone()))
            }
            MOrL => {
                let (f, rest) = principal(p, Side::Ante)?;
                let Formula::Or(b, d) = f else { return Err(shape("a disjunction", f)) };
                let Some(goal) = prem(0).single_succ() else {
                    return Err("premises of M-or-L must have one succedent formula".into());
                };
                if !s.contains(Side::Succ, goal) {
                    return Err(format!("`{goal}` is not in the conclusion's succedent"));
                }
                let base = Sequent::new(rest.ante().to_vec(), vec![goal.clone()]);
                same(prem(0), &base.with(Side::Ante, (**b).clone()))?;
                same(prem(1), &base.with(Side::Ante, (**d).clone()))
            }
            AndR => {
                let (f, rest) = principal(p, Side::Succ)?;
                let Formula::And(b, d) = f else { return Err(shape("a conjunction", f)) };
                same(prem(0), &rest.with(Side::Succ, (**b).clone()))?;
                same(prem(1), &rest.with(Side::Succ, (**d).clone()))
            }
            ImpR | MImpR => {
                let (f, rest) = principal(p, Side::Succ)?;
                let Formula::Imp(b, d) = f else { return Err(shape("an implication", f)) };
                let expected = if p.rule == ImpR {
                    rest.with(Side::Ante, (**b).clone()).with(Side::Succ, (**d).clone())
                } else {
                    let mut ante = rest.ante().to_vec();
                    ante.push((**b).clone());
                    Sequent::goal(ante, (**d).clone())
                };
                same(prem(0), &expected)
            }
            ImpL => {
                let (f, rest) = principal(p, Side::Ante)?;
                let Formula::Imp(b, d) = f else { return Err(shape("an implication", f)) };
                let (left, right) = (prem(0), prem(1));
                if left.ante() != rest.ante() {
                    return Err(format!("left premise antecedent should be that of `{rest}`"));
                }
                if right.ante() != rest.with(Side::Ante, (**d).clone()).ante() {
                    return Err(format!("right premise antecedent should add `{d}`"));
                }
                let delta = multiset_difference(left.succ(), std::slice::from_ref(&**b))
                    .ok_or_else(|| format!("left premise must have `{b}` in its succedent"))?;
                let mut joined = delta;
                joined.extend(right.succ().iter().cloned());
                joined.sort();
                if joined != rest.succ() {
                    return Err("premise succedents do not partition the conclusion's".into());
                }
                Ok(())
            }
            ImpLStar | ImpLStarI => {
                let (f, rest) = principal(p, Side::Ante)?;
                let Formula::Imp(b, d) = f else { return Err(shape("an implication", f)) };
                let left = if p.rule == ImpLStar {
                    rest.with(Side::Succ, (**b).clone())
                } else {
                    Sequent::goal(s.ante().to_vec(), (**b).clone())
                };
                same(prem(0), &left)?;
                same(prem(1), &rest.with(Side::Ante, (**d).clone()))
            }
            ForallL | ForallLStar => {
                let (f, rest) = principal(p, Side::Ante)?;
                let Formula::Forall(_, body) = f else { return Err(shape("a universal", f)) };
                let t = witness(p)?;
                let base = if p.rule == ForallL { rest } else { s.clone() };
                same(prem(0), &base.with(Side::Ante, body.instantiate(t)))
            }
            ExistsR | ExistsRStar => {
                let (f, rest) = principal(p, Side::Succ)?;
                let Formula::Exists(_, body) = f else { return Err(shape("an existential", f)) };
                let t = witness(p)?;
                let base = if p.rule == ExistsR { rest } else { s.clone() };
                same(prem(0), &base.with(Side::Succ, body.instantiate(t)))
            }
            ExistsL => {
                let (f, rest) = principal(p, Side::Ante)?;
                let Formula::Exists(_, body) = f else { return Err(shape("an existential", f)) };
                let c = self.eigen(p)?;
                same(prem(0), &rest.with(Side::Ante, body.instantiate(&c)))
            }
            ForallR | MForallR => {
                let (f, rest) = principal(p, Side::Succ)?;
                let Formula::Forall(_, body) = f else { return Err(shape("a universal", f)) };
                let c = self.eigen(p)?;
                let expected = if p.rule == ForallR {
                    rest.with(Side::Succ, body.instantiate(&c))
                } else {
                    Sequent::goal(s.ante().to_vec(), body.instantiate(&c))
                };
                same(prem(0), &expected)
            }
        }
    }

    fn goal(&self) -> Result<&Formula, Reason> {
        self.class.goal().ok_or_else(|| "restart rules need a goal formula".to_string())
    }

    fn eigen(&self, p: &Proof) -> Result<Term, Reason> {
        let c = p.eigen.as_deref().ok_or("missing eigenvariable")?;
        if p.conclusion.contains_const(c) {
            return Err(format!("eigenvariable `{c}` occurs in the lower sequent"));
        }
        if let Some(g) = self.class.goal() {
            if g.contains_const(c) {
                return Err(format!("eigenvariable `{c}` occurs in the goal `{g}`"));
            }
        }
        Ok(Term::constant(c))
    }
}

fn principal(p: &Proof, side: Side) -> Result<(&Formula, Sequent), Reason> {
    match p.principal {
        None => Err("missing principal formula".into()),
        Some((s, _)) if s != side => Err(format!(
            "principal formula must be in the {}",
            if side == Side::Ante { "antecedent" } else { "succedent" }
        )),
        Some((_, i)) => match p.conclusion.side(side).get(i) {
            Some(f) => Ok((f, p.conclusion.without(side, i))),
            None => Err(format!("principal index {i} out of range")),
        },
    }
}

fn witness(p: &Proof) -> Result<&Term, Reason> {
    let t = p.witness.as_ref().ok_or("missing instantiation term")?;
    if t.is_ground() {
        Ok(t)
    } else {
        Err(format!("instantiation term `{t}` is not ground"))
    }
}

fn same(found: &Sequent, expected: &Sequent) -> Result<(), Reason> {
    if found == expected {
        Ok(())
    } else {
        Err(format!("premise `{found}` should be `{expected}`"))
    }
}

fn shape(what: &str, f: &Formula) -> Reason {
    format!("principal formula `{f}` is not {what}")
}
