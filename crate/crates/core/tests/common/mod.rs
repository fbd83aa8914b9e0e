//! Generators and oracles shared by the integration tests. The oracles
//! are written against the syntax alone; only `decorate_contractions`
//! uses the library's weakening.
#![allow(dead_code)]

pub mod enumerate;

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use uniprove::{weaken, Formula, Proof, RuleId, Sequent, Side, Term};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Truth value of a quantifier-free formula under `val` (atoms missing
/// from the map are false).
pub fn eval(f: &Formula, val: &BTreeMap<String, bool>) -> bool {
    match f {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Atom(p, args) => {
            assert!(args.is_empty(), "propositional atoms only");
            val.get(&**p).copied().unwrap_or(false)
        }
        Formula::And(a, b) => eval(a, val) && eval(b, val),
        Formula::Or(a, b) => eval(a, val) || eval(b, val),
        Formula::Imp(a, b) => !eval(a, val) || eval(b, val),
        Formula::Forall(..) | Formula::Exists(..) => panic!("quantifier in {f}"),
    }
}

fn atoms(f: &Formula, out: &mut Vec<String>) {
    match f {
        Formula::Atom(p, _) => {
            if !out.iter().any(|q| q.as_str() == &**p) {
                out.push(p.to_string());
            }
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            atoms(a, out);
            atoms(b, out);
        }
        Formula::Forall(_, b) | Formula::Exists(_, b) => atoms(b, out),
        Formula::Top | Formula::Bot => {}
    }
}

/// Classical validity of a quantifier-free sequent by truth tables.
pub fn valid(s: &Sequent) -> bool {
    let mut names = Vec::new();
    for f in s.ante().iter().chain(s.succ()) {
        atoms(f, &mut names);
    }
    (0..1u32 << names.len()).all(|bits| {
        let val: BTreeMap<String, bool> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), bits >> i & 1 == 1)).collect();
        !s.ante().iter().all(|f| eval(f, &val)) || s.succ().iter().any(|f| eval(f, &val))
    })
}

/// Vocabulary for random first-order formulas.
#[derive(Clone, Debug)]
pub struct Vocab {
    pub props: &'static [&'static str],
    pub unary: &'static [&'static str],
    pub binary: &'static [&'static str],
    pub constants: &'static [&'static str],
    pub functions: &'static [&'static str],
}

pub const SMALL: Vocab =
    Vocab { props: &["q", "s"], unary: &["p"], binary: &["r"], constants: &["a", "b"], functions: &["f"] };

/// Random well-scoped formulas.
pub struct FormulaGen<'v> {
    pub vocab: &'v Vocab,
    /// Relative weight of quantifiers among compound nodes (0 disables).
    pub quantifiers: u32,
    bound: Vec<String>,
    counter: usize,
}

impl<'v> FormulaGen<'v> {
    pub fn new(vocab: &'v Vocab, quantifiers: u32) -> Self {
        FormulaGen { vocab, quantifiers, bound: Vec::new(), counter: 0 }
    }

    pub fn term(&mut self, rng: &mut ChaCha8Rng, nested: bool) -> Term {
        let v = self.vocab;
        let nvars = self.bound.len();
        let choices = nvars + v.constants.len() + if nested { 0 } else { v.functions.len() };
        let k = rng.gen_range(0..choices.max(1));
        if k < nvars {
            Term::Var(self.bound[nvars - 1 - k].clone())
        } else if k < nvars + v.constants.len() {
            Term::constant(v.constants[k - nvars])
        } else {
            let f = v.functions[k - nvars - v.constants.len()];
            Term::app(f, vec![self.term(rng, true)])
        }
    }

    pub fn atom(&mut self, rng: &mut ChaCha8Rng) -> Formula {
        let v = self.vocab;
        let total = v.props.len() + v.unary.len() + v.binary.len();
        let k = rng.gen_range(0..total);
        if k < v.props.len() {
            Formula::prop(v.props[k])
        } else if k < v.props.len() + v.unary.len() {
            Formula::atom(v.unary[k - v.props.len()], vec![self.term(rng, false)])
        } else {
            let p = v.binary[k - v.props.len() - v.unary.len()];
            Formula::atom(p, vec![self.term(rng, false), self.term(rng, false)])
        }
    }

    /// A formula with exactly `size` connectives and quantifiers.
    pub fn formula(&mut self, rng: &mut ChaCha8Rng, size: usize) -> Formula {
        if size == 0 {
            return if rng.gen_ratio(1, 12) { Formula::Bot } else { self.atom(rng) };
        }
        let weight_q = self.quantifiers;
        match rng.gen_range(0..9 + weight_q) {
            k if k >= 9 => {
                let x = self.fresh_var();
                self.bound.push(x.clone());
                let body = self.formula(rng, size - 1);
                self.bound.pop();
                if rng.gen_bool(0.5) {
                    Formula::forall(&x, body)
                } else {
                    Formula::exists(&x, body)
                }
            }
            k => {
                let left = rng.gen_range(0..size);
                let a = self.formula(rng, left);
                let b = self.formula(rng, size - 1 - left);
                match k % 3 {
                    0 => Formula::and(a, b),
                    1 => Formula::or(a, b),
                    _ => Formula::imp(a, b),
                }
            }
        }
    }

    fn fresh_var(&mut self) -> String {
        self.counter += 1;
        format!("x{}", self.counter)
    }

    /// A random sequent with `n_ante` antecedent formulas and one goal;
    /// goal atoms are drawn from the same vocabulary so that provable
    /// instances are common.
    pub fn sequent(&mut self, rng: &mut ChaCha8Rng, n_ante: usize, max_size: usize) -> Sequent {
        let ante = (0..n_ante).map(|_| {
            let n = rng.gen_range(0..=max_size);
            self.formula(rng, n)
        });
        let ante: Vec<Formula> = ante.collect();
        let n = rng.gen_range(0..=max_size);
        let goal = self.formula(rng, n);
        Sequent::goal(ante, goal)
    }
}

/// Independent statement of the fragment grammars: which constructors a
/// goal (`true`) or clause (`false`) may use, and the roles of the parts.
#[derive(Clone, Copy, Debug)]
pub enum Production {
    Top,
    Bot,
    Atom,
    And(bool, bool),
    Or(bool, bool),
    Imp(bool, bool),
    Forall(bool),
    Exists(bool),
}

pub fn grammar(fragment: &str, goal: bool) -> Vec<Production> {
    use Production::*;
    let (g, d) = (true, false);
    let mut out = vec![Top, Bot, Atom];
    let extra: &[Production] = match (fragment, goal) {
        ("f1", true) => &[And(g, g), Or(g, g), Forall(g), Exists(g)],
        ("f1", false) => &[Imp(g, d), And(d, d), Exists(d), Forall(d)],
        ("f2", true) => &[And(g, g), Or(g, g), Exists(g)],
        ("f2", false) => &[Imp(g, d), And(d, d), Or(d, d), Exists(d), Forall(d)],
        ("f3", true) => &[And(g, g), Or(g, g), Exists(g), Forall(g)],
        ("f3", false) => &[Imp(g, d), And(d, d), Or(d, d), Exists(d)],
        ("f4", true) => &[And(g, g), Imp(d, g), Forall(g)],
        ("f4", false) => &[And(d, d), Or(d, d), Exists(d), Forall(d)],
        _ => panic!("no grammar for {fragment}"),
    };
    out.extend_from_slice(extra);
    out
}

impl FormulaGen<'_> {
    /// A formula derived from the goal or clause class of `fragment`.
    pub fn in_fragment(&mut self, rng: &mut ChaCha8Rng, fragment: &str, goal: bool, size: usize) -> Formula {
        use Production::*;
        let rules = grammar(fragment, goal);
        let (leaves, inner): (Vec<Production>, Vec<Production>) =
            rules.into_iter().partition(|p| matches!(p, Top | Bot | Atom));
        if size == 0 || inner.is_empty() {
            return match leaves.choose(rng).unwrap() {
                Top if rng.gen_ratio(1, 3) => Formula::Top,
                Bot if rng.gen_ratio(1, 3) => Formula::Bot,
                _ => self.atom(rng),
            };
        }
        let prod = *inner.choose(rng).unwrap();
        let split = rng.gen_range(0..size);
        let mut pair = |this: &mut Self, l: bool, r: bool| {
            let a = this.in_fragment(rng, fragment, l, split);
            let b = this.in_fragment(rng, fragment, r, size - 1 - split);
            (a, b)
        };
        match prod {
            And(l, r) => {
                let (a, b) = pair(self, l, r);
                Formula::and(a, b)
            }
            Or(l, r) => {
                let (a, b) = pair(self, l, r);
                Formula::or(a, b)
            }
            Imp(l, r) => {
                let (a, b) = pair(self, l, r);
                Formula::imp(a, b)
            }
            Forall(r) | Exists(r) => {
                let x = self.fresh_var();
                self.bound.push(x.clone());
                let body = self.in_fragment(rng, fragment, r, size - 1);
                self.bound.pop();
                if matches!(prod, Forall(_)) {
                    Formula::forall(&x, body)
                } else {
                    Formula::exists(&x, body)
                }
            }
            Top | Bot | Atom => unreachable!(),
        }
    }
}

/// Horn-like sequents: facts, and universally closed definite clauses
/// `forall x. (b1 & b2 => h)`, with an atomic or conjunctive goal.
pub fn horn_sequent(rng: &mut ChaCha8Rng) -> Sequent {
    let preds = ["p", "q", "t"];
    let consts = ["a", "b"];
    let atom = |rng: &mut ChaCha8Rng, var: bool| {
        let arg =
            if var && rng.gen_bool(0.7) { Term::Var("x".into()) } else { Term::constant(*consts.choose(rng).unwrap()) };
        Formula::atom(*preds.choose(rng).unwrap(), vec![arg])
    };
    let mut ante = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        ante.push(atom(rng, false));
    }
    for _ in 0..rng.gen_range(1..=3) {
        let head = atom(rng, true);
        let body = match rng.gen_range(0..3) {
            0 => atom(rng, true),
            1 => Formula::and(atom(rng, true), atom(rng, true)),
            _ => Formula::or(atom(rng, true), atom(rng, true)),
        };
        ante.push(Formula::forall("x", Formula::imp(body, head)));
    }
    let goal = match rng.gen_range(0..3) {
        0 => atom(rng, false),
        1 => Formula::and(atom(rng, false), atom(rng, false)),
        _ => Formula::exists("x", atom(rng, true)),
    };
    Sequent::goal(ante, goal)
}

/// Insert contractions at random nodes: the node's proof is weakened by a
/// copy of one of its conclusion formulas, which a contraction removes.
pub fn decorate_contractions(p: &Proof, rng: &mut ChaCha8Rng, chance: f64) -> Proof {
    let mut node = p.clone();
    node.premises = p.premises.iter().map(|q| decorate_contractions(q, rng, chance)).collect();
    node.height = 1 + node.premises.iter().map(|q| q.height).max().unwrap_or(0);
    let s = node.conclusion.clone();
    let total = s.ante().len() + s.succ().len();
    if total == 0 || !rng.gen_bool(chance) {
        return node;
    }
    let k = rng.gen_range(0..total);
    let (side, f) = if k < s.ante().len() {
        (Side::Ante, s.ante()[k].clone())
    } else {
        (Side::Succ, s.succ()[k - s.ante().len()].clone())
    };
    let one = std::slice::from_ref(&f);
    let (rule, weakened) = match side {
        Side::Ante => (RuleId::ContrL, weaken(&node, one, &[])),
        Side::Succ => (RuleId::ContrR, weaken(&node, &[], one)),
    };
    Proof::infer(rule, s, side, &f, vec![weakened])
}
