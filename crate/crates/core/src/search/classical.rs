//! Classical search in the contraction-free starred calculus.
//!
//! All rules except `forall-L*`/`exists-R*` are invertible and applied
//! eagerly. Quantifier instances are metavariables, bound by unification
//! when an antecedent atom is matched against a succedent atom. Branches
//! share one substitution, so the search is written in continuation
//! passing style: a branch that closes hands its proof to the continuation,
//! which goes on to the sibling branches; if they fail, the branch tries
//! its next alternative.

use super::unify::Substitution;
use super::{Abort, EngineResult, SearchLimits};
use crate::calculus::{Proof, RuleId};
use crate::syntax::{Formula, NameSupply, Sequent, Side, Term};
use crate::transform::{expand_owned, identity_proof, IdentityStyle};

/// Proof under construction; formulas may still contain metavariables.
#[derive(Clone, Debug)]
struct Draft {
    rule: RuleId,
    ante: Vec<Formula>,
    succ: Vec<Formula>,
    principal: Option<(Side, Formula)>,
    witness: Option<Term>,
    eigen: Option<String>,
    premises: Vec<Draft>,
    /// Closed by a non-atomic formula common to both sides.
    identity: Option<Formula>,
}

/// A formula on a branch, with the number of instances drawn from it.
#[derive(Clone, Debug)]
struct Item {
    f: Formula,
    uses: usize,
}

#[derive(Clone, Debug, Default)]
struct Branch {
    ante: Vec<Item>,
    succ: Vec<Item>,
}

impl Branch {
    fn from_sequent(s: &Sequent) -> Branch {
        let items = |fs: &[Formula]| fs.iter().map(|f| Item { f: f.clone(), uses: 0 }).collect();
        Branch { ante: items(s.ante()), succ: items(s.succ()) }
    }

    fn side(&self, side: Side) -> &Vec<Item> {
        match side {
            Side::Ante => &self.ante,
            Side::Succ => &self.succ,
        }
    }

    fn side_mut(&mut self, side: Side) -> &mut Vec<Item> {
        match side {
            Side::Ante => &mut self.ante,
            Side::Succ => &mut self.succ,
        }
    }

    fn formulas(&self, side: Side) -> Vec<Formula> {
        self.side(side).iter().map(|i| i.f.clone()).collect()
    }

    fn without(&self, side: Side, i: usize) -> Branch {
        let mut b = self.clone();
        b.side_mut(side).remove(i);
        b
    }

    fn with(mut self, side: Side, f: Formula) -> Branch {
        self.side_mut(side).push(Item { f, uses: 0 });
        self
    }

    fn draft(&self, rule: RuleId, principal: Option<(Side, Formula)>, premises: Vec<Draft>) -> Draft {
        Draft {
            rule,
            ante: self.formulas(Side::Ante),
            succ: self.formulas(Side::Succ),
            principal,
            witness: None,
            eigen: None,
            premises,
            identity: None,
        }
    }
}

type Cont<'a> = &'a mut dyn FnMut(&mut Engine, Draft) -> Result<bool, Abort>;

struct Engine<'l> {
    limits: &'l SearchLimits,
    qbudget: usize,
    subst: Substitution,
    trail: Vec<u32>,
    /// Eigenvariables and the metavariables that must never mention them.
    constraints: Vec<(String, Vec<u32>)>,
    next_meta: u32,
    names: NameSupply,
    nodes: usize,
    hit_depth: bool,
    hit_qbudget: bool,
    result: Option<Draft>,
}

impl Engine<'_> {
    fn constraints_ok(&self) -> bool {
        self.constraints
            .iter()
            .all(|(c, metas)| metas.iter().all(|m| !self.subst.resolves_to_contain(&Term::Meta(*m), c)))
    }

    fn metas_of(&self, b: &Branch) -> Vec<u32> {
        let mut out = std::collections::BTreeSet::new();
        for item in b.ante.iter().chain(&b.succ) {
            out.extend(self.subst.apply_formula(&item.f).metas());
        }
        out.into_iter().collect()
    }

    fn solve(&mut self, b: Branch, depth: usize, k: Cont) -> Result<bool, Abort> {
        self.nodes += 1;
        if self.nodes > self.limits.node_budget {
            return Err(Abort);
        }

        // Closures that bind nothing are committed to.
        if b.succ.iter().any(|it| it.f == Formula::Top) {
            return k(self, b.draft(RuleId::Axiom, None, Vec::new()));
        }
        for a in &b.ante {
            if let Some(c) = b.succ.iter().find(|c| self.subst.formulas_equal(&a.f, &c.f)) {
                let mut d = b.draft(RuleId::Axiom, None, Vec::new());
                if !a.f.is_atomic_or_bot() {
                    d.identity = Some(c.f.clone());
                }
                return k(self, d);
            }
        }
        if b.ante.iter().any(|it| it.f == Formula::Bot) && !b.succ.is_empty() {
            let d = b.succ[0].f.clone();
            let premise = b.without(Side::Succ, 0).with(Side::Succ, Formula::Bot);
            let leaf = premise.draft(RuleId::Axiom, None, Vec::new());
            return k(self, b.draft(RuleId::BotR, Some((Side::Succ, d)), vec![leaf]));
        }

        if depth >= self.limits.depth {
            self.hit_depth = true;
            return Ok(false);
        }

        if let Some((side, i)) = pick_invertible(&b) {
            return self.invertible(b, side, i, depth, k);
        }
        self.leaf(b, depth, k)
    }

    fn invertible(&mut self, b: Branch, side: Side, i: usize, depth: usize, k: Cont) -> Result<bool, Abort> {
        let f = b.side(side)[i].f.clone();
        let rest = b.without(side, i);
        let principal = Some((side, f.clone()));
        match (side, &f) {
            (Side::Ante, Formula::And(x, y)) => {
                let p = rest.with(Side::Ante, (**x).clone()).with(Side::Ante, (**y).clone());
                self.solve(p, depth + 1, &mut |e, d| k(e, b.draft(RuleId::AndLStar, principal.clone(), vec![d])))
            }
            (Side::Succ, Formula::Or(x, y)) => {
                let p = rest.with(Side::Succ, (**x).clone()).with(Side::Succ, (**y).clone());
                self.solve(p, depth + 1, &mut |e, d| k(e, b.draft(RuleId::OrRStar, principal.clone(), vec![d])))
            }
            (Side::Succ, Formula::Imp(x, y)) => {
                let p = rest.with(Side::Ante, (**x).clone()).with(Side::Succ, (**y).clone());
                self.solve(p, depth + 1, &mut |e, d| k(e, b.draft(RuleId::ImpR, principal.clone(), vec![d])))
            }
            (_, Formula::Exists(_, body)) | (_, Formula::Forall(_, body)) => {
                // exists-L or forall-R: a fresh eigenvariable no current
                // metavariable may ever take.
                let rule = if side == Side::Ante { RuleId::ExistsL } else { RuleId::ForallR };
                let c = self.names.fresh("c");
                let metas = self.metas_of(&b);
                let p = rest.with(side, body.instantiate(&Term::constant(&c)));
                self.constraints.push((c.clone(), metas));
                let r = self.solve(p, depth + 1, &mut |e, d| {
                    let mut node = b.draft(rule, principal.clone(), vec![d]);
                    node.eigen = Some(c.clone());
                    k(e, node)
                });
                if !matches!(r, Ok(true)) {
                    self.constraints.pop();
                }
                r
            }
            (Side::Ante, Formula::Or(x, y)) => {
                let l = rest.clone().with(Side::Ante, (**x).clone());
                let r = rest.with(Side::Ante, (**y).clone());
                self.solve2(&b, RuleId::OrL, principal, l, r, depth, k)
            }
            (Side::Ante, Formula::Imp(x, y)) => {
                let l = rest.clone().with(Side::Succ, (**x).clone());
                let r = rest.with(Side::Ante, (**y).clone());
                self.solve2(&b, RuleId::ImpLStar, principal, l, r, depth, k)
            }
            (Side::Succ, Formula::And(x, y)) => {
                let l = rest.clone().with(Side::Succ, (**x).clone());
                let r = rest.with(Side::Succ, (**y).clone());
                self.solve2(&b, RuleId::AndR, principal, l, r, depth, k)
            }
            _ => unreachable!("pick_invertible only returns decomposable formulas"),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn solve2(
        &mut self,
        b: &Branch,
        rule: RuleId,
        principal: Option<(Side, Formula)>,
        left: Branch,
        right: Branch,
        depth: usize,
        k: Cont,
    ) -> Result<bool, Abort> {
        self.solve(left, depth + 1, &mut |e, d1| {
            e.solve(right.clone(), depth + 1, &mut |e2, d2| {
                k(e2, b.draft(rule, principal.clone(), vec![d1.clone(), d2]))
            })
        })
    }

    fn leaf(&mut self, b: Branch, depth: usize, k: Cont) -> Result<bool, Abort> {
        // Close against an atom pair, binding metavariables.
        for a in &b.ante {
            let Formula::Atom(p, xs) = &a.f else { continue };
            for c in &b.succ {
                let Formula::Atom(q, ys) = &c.f else { continue };
                if p != q || xs.len() != ys.len() {
                    continue;
                }
                let mark = self.trail.len();
                let mut trail = std::mem::take(&mut self.trail);
                let unified = self.subst.unify_args_in_place(xs, ys, &mut trail);
                self.trail = trail;
                if unified
                    && mark < self.trail.len()
                    && self.constraints_ok()
                    && k(self, b.draft(RuleId::Axiom, None, Vec::new()))?
                {
                    return Ok(true);
                }
                let mut trail = std::mem::take(&mut self.trail);
                self.subst.undo(&mut trail, mark);
                self.trail = trail;
            }
        }

        // Draw one more instance from the least-used weak quantifier.
        let mut best: Option<(Side, usize)> = None;
        let mut blocked = false;
        for side in [Side::Ante, Side::Succ] {
            for (i, it) in b.side(side).iter().enumerate() {
                let weak = match side {
                    Side::Ante => matches!(it.f, Formula::Forall(..)),
                    Side::Succ => matches!(it.f, Formula::Exists(..)),
                };
                if !weak {
                    continue;
                }
                if it.uses >= self.qbudget {
                    blocked = true;
                    continue;
                }
                if best.is_none_or(|(s, j)| it.uses < b.side(s)[j].uses) {
                    best = Some((side, i));
                }
            }
        }
        if blocked {
            self.hit_qbudget = true;
        }
        let Some((side, i)) = best else {
            return Ok(false);
        };
        let f = b.side(side)[i].f.clone();
        let (Formula::Forall(_, body) | Formula::Exists(_, body)) = &f else { unreachable!() };
        let x = Term::Meta(self.next_meta);
        self.next_meta += 1;
        let mut p = b.clone();
        p.side_mut(side)[i].uses += 1;
        let p = p.with(side, body.instantiate(&x));
        let rule = if side == Side::Ante { RuleId::ForallLStar } else { RuleId::ExistsRStar };
        self.solve(p, depth + 1, &mut |e, d| {
            let mut node = b.draft(rule, Some((side, f.clone())), vec![d]);
            node.witness = Some(x.clone());
            k(e, node)
        })
    }

    fn finalize(&self, d: Draft, default: &Term, style_keep: bool) -> Proof {
        let resolve = |f: Formula| -> Formula {
            if self.next_meta == 0 {
                return f;
            }
            self.subst.apply_formula(&f).map_terms(&mut |t, _| ground_metas(t, default))
        };
        let ante: Vec<Formula> = d.ante.into_iter().map(resolve).collect();
        let succ: Vec<Formula> = d.succ.into_iter().map(resolve).collect();
        let conclusion = Sequent::new(ante, succ);
        if let Some(f) = d.identity {
            if !style_keep {
                return identity_proof(&conclusion, &resolve(f), IdentityStyle::Classical);
            }
        }
        let premises = d.premises.into_iter().map(|p| self.finalize(p, default, style_keep)).collect();
        let mut proof = match d.principal {
            Some((side, f)) => Proof::infer(d.rule, conclusion, side, &resolve(f), premises),
            None => Proof::new(d.rule, conclusion, premises),
        };
        proof.witness = d.witness.map(|t| ground_metas(&self.subst.apply(&t), default));
        proof.eigen = d.eigen;
        proof
    }
}

fn ground_metas(t: &Term, default: &Term) -> Term {
    t.map_leaves(&mut |leaf| matches!(leaf, Term::Meta(_)).then(|| default.clone()))
}

/// Next invertible rule: single-premise rules first, then branching ones.
fn pick_invertible(b: &Branch) -> Option<(Side, usize)> {
    let single = |side: Side, f: &Formula| {
        matches!(
            (side, f),
            (Side::Ante, Formula::And(..) | Formula::Exists(..))
                | (Side::Succ, Formula::Or(..) | Formula::Imp(..) | Formula::Forall(..))
        )
    };
    let branching = |side: Side, f: &Formula| {
        matches!((side, f), (Side::Ante, Formula::Or(..) | Formula::Imp(..)) | (Side::Succ, Formula::And(..)))
    };
    for test in [&single as &dyn Fn(Side, &Formula) -> bool, &branching] {
        for side in [Side::Ante, Side::Succ] {
            if let Some(i) = b.side(side).iter().position(|it| test(side, &it.f)) {
                return Some((side, i));
            }
        }
    }
    None
}

/// Search for a starred proof; iterative deepening on the quantifier budget.
pub(crate) fn prove_starred(s: &Sequent, limits: &SearchLimits) -> EngineResult {
    let mut nodes = 0;
    let quantified = s.has_quantifier();
    // Names are only drawn for eigenvariables and unbound metavariables.
    let mut names = if quantified { NameSupply::avoiding(s) } else { NameSupply::default() };
    let default = Term::constant(names.fresh("d"));
    let max_q = if quantified { limits.qbudget } else { 0 };
    let mut exhausted = false;
    for qbudget in 0..=max_q {
        let mut engine = Engine {
            limits,
            qbudget,
            subst: Substitution::new(),
            trail: Vec::new(),
            constraints: Vec::new(),
            next_meta: 0,
            names: names.clone(),
            nodes,
            hit_depth: false,
            hit_qbudget: false,
            result: None,
        };
        let run = engine.solve(Branch::from_sequent(s), 0, &mut |e, d| {
            e.result = Some(d);
            Ok(true)
        });
        nodes = engine.nodes;
        match run {
            Err(Abort) => return EngineResult::OutOfLimits,
            Ok(true) => {
                let draft = engine.result.take().expect("result recorded on success");
                return EngineResult::Proved(engine.finalize(draft, &default, limits.strengthened_axioms));
            }
            Ok(false) => {
                if !engine.hit_depth && !engine.hit_qbudget {
                    exhausted = true;
                    break;
                }
            }
        }
    }
    if exhausted && !quantified {
        EngineResult::Exhausted
    } else {
        EngineResult::OutOfLimits
    }
}

/// Search and expand the starred proof into plain rules.
pub(crate) fn prove(s: &Sequent, limits: &SearchLimits) -> EngineResult {
    match prove_starred(s, limits) {
        EngineResult::Proved(p) => EngineResult::Proved(expand_owned(p)),
        other => other,
    }
}
