mod common;

use common::rng;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use uniprove::search::{unify, Substitution};
use uniprove::Term;

fn term(r: &mut ChaCha8Rng, depth: u32) -> Term {
    match r.gen_range(0..if depth == 0 { 2 } else { 4 }) {
        0 => Term::Meta(r.gen_range(0..3)),
        1 => Term::constant(["a", "b"][r.gen_range(0..2)]),
        2 => Term::app("f", vec![term(r, depth - 1)]),
        _ => Term::app("g", vec![term(r, depth - 1), term(r, depth - 1)]),
    }
}

fn ground(r: &mut ChaCha8Rng, depth: u32) -> Term {
    loop {
        let t = term(r, depth);
        if t.is_ground() {
            return t;
        }
    }
}

/// Replace metavariables by the given ground terms.
fn assign(t: &Term, vals: &[Term]) -> Term {
    t.map_leaves(&mut |x| match x {
        Term::Meta(m) => Some(vals[*m as usize].clone()),
        _ => None,
    })
}

fn occurs(m: u32, t: &Term) -> bool {
    match t {
        Term::Meta(n) => *n == m,
        Term::App(_, args) => args.iter().any(|a| occurs(m, a)),
        _ => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn unifiers_equate_and_are_idempotent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (term(&mut r, 3), term(&mut r, 3));
        if let Some(s) = unify(&a, &b, &Substitution::new()) {
            prop_assert_eq!(s.apply(&a), s.apply(&b));
            let once = s.apply(&a);
            prop_assert_eq!(s.apply(&once), once.clone());
            for (m, t) in s.iter() {
                prop_assert!(!occurs(m, &s.apply(&t)), "X{} bound to a term containing it", m);
            }
        }
    }

    /// Any ground unifier is an instance of the computed one.
    #[test]
    fn unifiers_are_most_general(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = term(&mut r, 3);
        // Derive `b` from a ground instance of `a` by abstracting some
        // subterms, so that unifiable pairs are common.
        let vals: Vec<Term> = (0..3).map(|_| ground(&mut r, 2)).collect();
        let b = if r.gen_bool(0.5) { assign(&a, &vals) } else { term(&mut r, 3) };
        let unifies = assign(&a, &vals) == assign(&b, &vals);
        match unify(&a, &b, &Substitution::new()) {
            None => prop_assert!(!unifies, "{} and {} have a common instance", a, b),
            Some(s) => {
                if unifies {
                    prop_assert_eq!(assign(&s.apply(&a), &vals), assign(&a, &vals));
                    prop_assert_eq!(assign(&s.apply(&b), &vals), assign(&b, &vals));
                }
            }
        }
    }

    #[test]
    fn unification_is_symmetric_in_success(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (term(&mut r, 3), term(&mut r, 3));
        let ab = unify(&a, &b, &Substitution::new());
        let ba = unify(&b, &a, &Substitution::new());
        prop_assert_eq!(ab.is_some(), ba.is_some());
        if let (Some(x), Some(y)) = (ab, ba) {
            prop_assert_eq!(x.apply(&a), x.apply(&b));
            prop_assert_eq!(y.apply(&a), y.apply(&b));
        }
    }
}

#[test]
fn occurs_check() {
    let x = Term::Meta(0);
    assert!(unify(&x, &Term::app("f", vec![x.clone()]), &Substitution::new()).is_none());
    assert!(unify(&x, &x, &Substitution::new()).is_some());
}

#[test]
fn extends_an_existing_substitution() {
    let (x, y) = (Term::Meta(0), Term::Meta(1));
    let s = unify(&x, &Term::constant("a"), &Substitution::new()).unwrap();
    assert!(unify(&x, &Term::constant("b"), &s).is_none());
    let t =
        unify(&Term::app("g", vec![x.clone(), y.clone()]), &Term::app("g", vec![y, Term::constant("a")]), &s).unwrap();
    assert_eq!(t.get(1), Some(Term::constant("a")));
}
