//! Goal-directed, ground search over single-succedent sequents.
//!
//! One engine serves three calculi. In intuitionistic mode it searches the
//! contraction-free starred intuitionistic calculus. Uniform mode adds the
//! restriction that a compound goal is always decomposed first. Restart
//! mode is uniform, replaces `or-L` by the restarting split and lets an
//! atomic goal be swapped for the fixed goal `G`.
//!
//! Quantifier instances are drawn from the ground terms of the sequent,
//! closed under one more layer of function application per deepening
//! round.
//! A branch fails when it revisits a sequent already open below it.
//! Formulas and terms are interned, so a search node is a few vectors of
//! integers; sequents are only materialized for the nodes of a proof.

use std::collections::{BTreeSet, HashMap};

use super::{Abort, EngineResult, SearchLimits};
use crate::calculus::{Proof, RuleId};
use crate::syntax::{Formula, NameSupply, Sequent, Side, Term};
use crate::transform::{expand_owned, identity_proof, IdentityStyle};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum GoalMode {
    Intuitionistic,
    Uniform,
    Restart(Formula),
}

type Id = u32;

#[derive(Clone, Copy, Debug)]
enum Shape {
    Top,
    Bot,
    Atom,
    And(Id, Id),
    Or(Id, Id),
    Imp(Id, Id),
    Forall,
    Exists,
}

/// Interned formulas with their top-level shape and ground terms.
#[derive(Default)]
struct Table {
    formulas: Vec<Formula>,
    shapes: Vec<Shape>,
    ground: Vec<Vec<Id>>,
    index: HashMap<Formula, Id>,
    terms: Vec<Term>,
    term_index: HashMap<Term, Id>,
    instances: HashMap<(Id, Id), Id>,
}

impl Table {
    fn intern(&mut self, f: &Formula) -> Id {
        if let Some(&id) = self.index.get(f) {
            return id;
        }
        let shape = match f {
            Formula::Top => Shape::Top,
            Formula::Bot => Shape::Bot,
            Formula::Atom(..) => Shape::Atom,
            Formula::And(a, b) => Shape::And(self.intern(a), self.intern(b)),
            Formula::Or(a, b) => Shape::Or(self.intern(a), self.intern(b)),
            Formula::Imp(a, b) => Shape::Imp(self.intern(a), self.intern(b)),
            Formula::Forall(..) => Shape::Forall,
            Formula::Exists(..) => Shape::Exists,
        };
        let mut terms = BTreeSet::new();
        f.collect_ground_terms(&mut terms);
        let ground = terms.into_iter().map(|t| self.term(t)).collect();
        let id = self.formulas.len() as Id;
        self.formulas.push(f.clone());
        self.shapes.push(shape);
        self.ground.push(ground);
        self.index.insert(f.clone(), id);
        id
    }

    fn term(&mut self, t: Term) -> Id {
        if let Some(&id) = self.term_index.get(&t) {
            return id;
        }
        let id = self.terms.len() as Id;
        self.terms.push(t.clone());
        self.term_index.insert(t, id);
        id
    }

    /// The instance of quantified formula `q` at term `t`.
    fn instance(&mut self, q: Id, t: Id) -> Id {
        if let Some(&id) = self.instances.get(&(q, t)) {
            return id;
        }
        let (Formula::Forall(_, body) | Formula::Exists(_, body)) = &self.formulas[q as usize] else {
            unreachable!("instance of a non-quantifier")
        };
        let inst = body.instantiate(&self.terms[t as usize]);
        let id = self.intern(&inst);
        self.instances.insert((q, t), id);
        id
    }

    fn shape(&self, id: Id) -> Shape {
        self.shapes[id as usize]
    }

    fn formula(&self, id: Id) -> &Formula {
        &self.formulas[id as usize]
    }
}

#[derive(Clone, Copy, Debug)]
struct Item {
    id: Id,
    uses: u32,
}

struct Engine<'l> {
    mode: GoalMode,
    restart: Option<Id>,
    limits: &'l SearchLimits,
    depth_limit: usize,
    table: Table,
    names: NameSupply,
    eigens: Vec<(String, Id)>,
    bot: Id,
    /// Used when the sequent has no ground terms at all.
    default: Id,
    /// Function symbols of the input with their arities.
    functions: Vec<(String, usize)>,
    /// Layers of function application added to the ground terms.
    term_layers: usize,
    witness_pools: HashMap<Vec<Id>, Vec<Id>>,
    nodes: usize,
    hit_limit: bool,
    /// Sequents open on the current branch, with their depth.
    open: HashMap<(Vec<Id>, Id), usize>,
    /// Shallowest open ancestor that pruned a branch in the current subtree.
    loop_floor: usize,
    /// Failed nodes (antecedent with use counts, goal) and the remaining
    /// depth they failed with; `usize::MAX` when no limit was involved.
    failed: HashMap<(Vec<(Id, u32)>, Id), usize>,
}

fn with(ante: &[Item], id: Id) -> Vec<Item> {
    let mut out = Vec::with_capacity(ante.len() + 1);
    out.extend_from_slice(ante);
    out.push(Item { id, uses: 0 });
    out
}

fn without(ante: &[Item], i: usize) -> Vec<Item> {
    let mut out = ante.to_vec();
    out.remove(i);
    out
}

fn replace(ante: &[Item], i: usize, id: Id) -> Vec<Item> {
    let mut out = without(ante, i);
    out.push(Item { id, uses: 0 });
    out
}

type Found = Result<Option<Proof>, Abort>;

/// Upper bound on the instance terms tried for one quantifier.
const MAX_WITNESSES: usize = 48;

/// All `n`-tuples over `items`.
fn tuples(items: &[Term], n: usize) -> Vec<Vec<Term>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |t| {
                    let mut next = prefix.clone();
                    next.push(t.clone());
                    next
                })
            })
            .collect();
    }
    out
}

fn collect_functions(t: &Term, out: &mut BTreeSet<(String, usize)>) {
    if let Term::App(f, args) = t {
        out.insert((f.clone(), args.len()));
        for a in args {
            collect_functions(a, out);
        }
    }
}

impl Engine<'_> {
    fn uniform(&self) -> bool {
        self.mode != GoalMode::Intuitionistic
    }

    fn sequent(&self, ante: &[Item], goal: Id) -> Sequent {
        let ante = ante.iter().map(|it| self.table.formula(it.id).clone()).collect();
        Sequent::goal(ante, self.table.formula(goal).clone())
    }

    fn node(&self, rule: RuleId, ante: &[Item], goal: Id, side: Side, principal: Id, premises: Vec<Proof>) -> Proof {
        let f = self.table.formula(principal).clone();
        Proof::infer(rule, self.sequent(ante, goal), side, &f, premises)
    }

    fn candidates(&self, ante: &[Item], goal: Id) -> Vec<Id> {
        let mut out: Vec<Id> = Vec::new();
        for id in ante.iter().map(|it| it.id).chain([goal]).chain(self.restart) {
            out.extend_from_slice(&self.table.ground[id as usize]);
        }
        out.sort_unstable();
        out.dedup();
        if out.is_empty() {
            out.push(self.default);
        }
        out
    }

    /// Instance terms for `forall-L` and `exists-R`.
    fn witnesses(&mut self, ante: &[Item], goal: Id) -> Vec<Id> {
        let base = self.candidates(ante, goal);
        if self.functions.is_empty() {
            return base;
        }
        // The pool is a finite cut of an infinite universe.
        self.hit_limit = true;
        if let Some(pool) = self.witness_pools.get(&base) {
            return pool.clone();
        }
        let mut pool = base.clone();
        let mut seen: BTreeSet<Id> = base.iter().copied().collect();
        'layers: for _ in 0..self.term_layers {
            let current: Vec<Term> = pool.iter().map(|&t| self.table.terms[t as usize].clone()).collect();
            for (f, arity) in &self.functions {
                for args in tuples(&current, *arity) {
                    let t = self.table.term(Term::app(f.clone(), args));
                    if seen.insert(t) {
                        pool.push(t);
                        if pool.len() >= MAX_WITNESSES {
                            break 'layers;
                        }
                    }
                }
            }
        }
        self.witness_pools.insert(base, pool.clone());
        pool
    }

    /// An eigenvariable for a rule concluding `ante |- goal`.
    ///
    /// The proviso only concerns the lower sequent, so the first pooled
    /// constant absent from it is reused. Repeated subgoals then get the
    /// same eigenvariable, which the loop check and failure cache rely on.
    fn eigen(&mut self, ante: &[Item], goal: Id) -> (String, Id) {
        let present = self.candidates(ante, goal);
        if let Some((c, t)) = self.eigens.iter().find(|(_, t)| present.binary_search(t).is_err()) {
            return (c.clone(), *t);
        }
        let c = self.names.fresh("c");
        let t = self.table.term(Term::constant(&c));
        self.eigens.push((c.clone(), t));
        (c, t)
    }

    fn solve(&mut self, ante: &[Item], goal: Id, depth: usize) -> Found {
        self.nodes += 1;
        if self.nodes > self.limits.node_budget {
            return Err(Abort);
        }
        let shape = self.table.shape(goal);
        let atomic = matches!(shape, Shape::Atom | Shape::Bot);

        if matches!(shape, Shape::Top) {
            return Ok(Some(Proof::axiom(self.sequent(ante, goal))));
        }
        if ante.iter().any(|it| it.id == goal) {
            if atomic {
                return Ok(Some(Proof::axiom(self.sequent(ante, goal))));
            }
            if !self.uniform() {
                let here = self.sequent(ante, goal);
                return Ok(Some(if self.limits.strengthened_axioms {
                    Proof::axiom(here)
                } else {
                    identity_proof(&here, self.table.formula(goal), IdentityStyle::Intuitionistic)
                }));
            }
        }
        if (!self.uniform() || atomic) && ante.iter().any(|it| it.id == self.bot) {
            let premise = Proof::axiom(self.sequent(ante, self.bot));
            return Ok(Some(self.node(RuleId::BotR, ante, goal, Side::Succ, goal, vec![premise])));
        }

        if depth >= self.depth_limit {
            self.hit_limit = true;
            return Ok(None);
        }
        let remaining = self.depth_limit - depth;
        let mut state: Vec<(Id, u32)> = ante.iter().map(|it| (it.id, it.uses)).collect();
        state.sort_unstable();
        let state = (state, goal);
        if let Some(&r) = self.failed.get(&state) {
            if r >= remaining {
                if r != usize::MAX {
                    self.hit_limit = true;
                }
                return Ok(None);
            }
        }
        let mut key: Vec<Id> = state.0.iter().map(|&(id, _)| id).collect();
        key.dedup();
        let key = (key, goal);
        if let Some(&at) = self.open.get(&key) {
            self.loop_floor = self.loop_floor.min(at);
            return Ok(None);
        }

        self.open.insert(key.clone(), depth);
        let (outer_floor, outer_hit) = (self.loop_floor, self.hit_limit);
        self.loop_floor = usize::MAX;
        self.hit_limit = false;
        let result = self.expand(ante, goal, shape, depth + 1);
        self.open.remove(&key);
        let (floor, hit) = (self.loop_floor, self.hit_limit);
        self.loop_floor = outer_floor.min(floor);
        self.hit_limit = outer_hit || hit;

        // A failure that only depends on loops closed inside this subtree
        // is a property of the node itself.
        if matches!(result, Ok(None)) && floor >= depth {
            let r = if hit { remaining } else { usize::MAX };
            let slot = self.failed.entry(state).or_insert(0);
            *slot = (*slot).max(r);
        }
        result
    }

    fn expand(&mut self, ante: &[Item], goal: Id, shape: Shape, d: usize) -> Found {
        use RuleId::*;

        // Right rules that never need to be undone.
        match shape {
            Shape::And(a, b) => {
                let Some(l) = self.solve(ante, a, d)? else { return Ok(None) };
                let Some(r) = self.solve(ante, b, d)? else { return Ok(None) };
                return Ok(Some(self.node(AndR, ante, goal, Side::Succ, goal, vec![l, r])));
            }
            Shape::Imp(a, b) => {
                let Some(p) = self.solve(&with(ante, a), b, d)? else { return Ok(None) };
                return Ok(Some(self.node(ImpR, ante, goal, Side::Succ, goal, vec![p])));
            }
            Shape::Forall => {
                let (c, t) = self.eigen(ante, goal);
                let inst = self.table.instance(goal, t);
                let Some(p) = self.solve(ante, inst, d)? else { return Ok(None) };
                return Ok(Some(self.node(ForallR, ante, goal, Side::Succ, goal, vec![p]).with_eigen(c)));
            }
            _ => {}
        }

        let atomic = matches!(shape, Shape::Atom | Shape::Bot);
        if self.uniform() && !atomic {
            return self.right_choice(ante, goal, shape, d);
        }

        // Left rules that never need to be undone.
        for (i, it) in ante.iter().enumerate() {
            let f = it.id;
            let found = match self.table.shape(f) {
                Shape::And(a, b) => {
                    let mut next = replace(ante, i, a);
                    next.push(Item { id: b, uses: 0 });
                    self.solve(&next, goal, d)?.map(|p| self.node(AndLStar, ante, goal, Side::Ante, f, vec![p]))
                }
                Shape::Exists => {
                    let (c, t) = self.eigen(ante, goal);
                    let inst = self.table.instance(f, t);
                    self.solve(&replace(ante, i, inst), goal, d)?
                        .map(|p| self.node(ExistsL, ante, goal, Side::Ante, f, vec![p]).with_eigen(c))
                }
                Shape::Or(a, b) if self.restart.is_none() => match self.solve(&replace(ante, i, a), goal, d)? {
                    None => None,
                    Some(l) => self
                        .solve(&replace(ante, i, b), goal, d)?
                        .map(|r| self.node(OrL, ante, goal, Side::Ante, f, vec![l, r])),
                },
                _ => continue,
            };
            return Ok(found);
        }

        if !self.uniform() {
            if let Some(p) = self.right_choice(ante, goal, shape, d)? {
                return Ok(Some(p));
            }
        }

        // Left choices.
        if let Some(g) = self.restart {
            for (i, it) in ante.iter().enumerate() {
                let Shape::Or(a, b) = self.table.shape(it.id) else { continue };
                let Some(l) = self.solve(&replace(ante, i, a), goal, d)? else { continue };
                let Some(r) = self.solve(&replace(ante, i, b), g, d)? else { continue };
                return Ok(Some(self.node(OrLG, ante, goal, Side::Ante, it.id, vec![l, r])));
            }
        }
        for (i, it) in ante.iter().enumerate() {
            let Shape::Imp(a, b) = self.table.shape(it.id) else { continue };
            let Some(l) = self.solve(ante, a, d)? else { continue };
            let Some(r) = self.solve(&replace(ante, i, b), goal, d)? else { continue };
            return Ok(Some(self.node(ImpLStarI, ante, goal, Side::Ante, it.id, vec![l, r])));
        }
        let mut terms = None;
        for (i, it) in ante.iter().enumerate() {
            if !matches!(self.table.shape(it.id), Shape::Forall) {
                continue;
            }
            if it.uses as usize >= self.limits.qbudget {
                self.hit_limit = true;
                continue;
            }
            if terms.is_none() {
                terms = Some(self.witnesses(ante, goal));
            }
            for &t in terms.as_ref().unwrap() {
                let inst = self.table.instance(it.id, t);
                if ante.iter().any(|x| x.id == inst) {
                    continue;
                }
                let mut next = with(ante, inst);
                next[i].uses += 1;
                if let Some(p) = self.solve(&next, goal, d)? {
                    let witness = self.table.terms[t as usize].clone();
                    return Ok(Some(
                        self.node(ForallLStar, ante, goal, Side::Ante, it.id, vec![p]).with_witness(witness),
                    ));
                }
            }
        }
        if let Some(g) = self.restart {
            if atomic {
                if let Some(p) = self.solve(ante, g, d)? {
                    return Ok(Some(Proof::new(ResG, self.sequent(ante, goal), vec![p])));
                }
            }
        }
        Ok(None)
    }

    /// `or-R` and `exists-R`: the right rules that commit to a choice.
    fn right_choice(&mut self, ante: &[Item], goal: Id, shape: Shape, d: usize) -> Found {
        match shape {
            Shape::Or(a, b) => {
                for (rule, x) in [(RuleId::OrR1, a), (RuleId::OrR2, b)] {
                    if let Some(p) = self.solve(ante, x, d)? {
                        return Ok(Some(self.node(rule, ante, goal, Side::Succ, goal, vec![p])));
                    }
                }
                Ok(None)
            }
            Shape::Exists => {
                for t in self.witnesses(ante, goal) {
                    let inst = self.table.instance(goal, t);
                    if let Some(p) = self.solve(ante, inst, d)? {
                        let witness = self.table.terms[t as usize].clone();
                        let node = self.node(RuleId::ExistsR, ante, goal, Side::Succ, goal, vec![p]);
                        return Ok(Some(node.with_witness(witness)));
                    }
                }
                Ok(None)
            }
            _ => Ok(None),
        }
    }
}

/// Search for a starred proof of `ante |- goal`.
pub(crate) fn prove_starred(ante: &[Formula], goal: &Formula, limits: &SearchLimits) -> EngineResult {
    search(ante, goal, GoalMode::Intuitionistic, limits)
}

/// Search and expand into plain rules.
pub(crate) fn prove(ante: &[Formula], goal: &Formula, mode: GoalMode, limits: &SearchLimits) -> EngineResult {
    match search(ante, goal, mode, limits) {
        EngineResult::Proved(p) => EngineResult::Proved(expand_owned(p)),
        other => other,
    }
}

fn search(ante: &[Formula], goal: &Formula, mode: GoalMode, limits: &SearchLimits) -> EngineResult {
    let mut context = ante.to_vec();
    if let GoalMode::Restart(g) = &mode {
        // Eigenvariables must also avoid the restart goal.
        context.push(g.clone());
    }
    let mut names = NameSupply::avoiding(&Sequent::goal(context, goal.clone()));
    let default = Term::constant(names.fresh("d"));
    let quantified = ante.iter().chain([goal]).any(Formula::has_quantifier)
        || matches!(&mode, GoalMode::Restart(g) if g.has_quantifier());

    let mut functions = BTreeSet::new();
    for f in ante.iter().chain([goal]).chain(match &mode {
        GoalMode::Restart(g) => Some(g),
        _ => None,
    }) {
        f.for_each_term(&mut |t| collect_functions(t, &mut functions));
    }

    let mut table = Table::default();
    let start: Vec<Item> = ante.iter().map(|f| Item { id: table.intern(f), uses: 0 }).collect();
    let goal = table.intern(goal);
    let restart = match &mode {
        GoalMode::Restart(g) => Some(table.intern(g)),
        _ => None,
    };
    let bot = table.intern(&Formula::Bot);
    let default = table.term(default);

    let mut engine = Engine {
        mode,
        restart,
        limits,
        depth_limit: 8.min(limits.depth),
        table,
        names,
        eigens: Vec::new(),
        bot,
        default,
        functions: functions.into_iter().collect(),
        term_layers: 0,
        witness_pools: HashMap::new(),
        nodes: 0,
        hit_limit: false,
        open: HashMap::new(),
        loop_floor: usize::MAX,
        failed: HashMap::new(),
    };
    loop {
        engine.hit_limit = false;
        match engine.solve(&start, goal, 0) {
            Err(Abort) => return EngineResult::OutOfLimits,
            Ok(Some(p)) => return EngineResult::Proved(p),
            Ok(None) if !engine.hit_limit => {
                return if quantified { EngineResult::OutOfLimits } else { EngineResult::Exhausted };
            }
            Ok(None) if engine.depth_limit >= limits.depth => return EngineResult::OutOfLimits,
            Ok(None) => {
                engine.depth_limit = (engine.depth_limit * 2).min(limits.depth);
                engine.term_layers += 1;
                engine.witness_pools.clear();
            }
        }
    }
}
