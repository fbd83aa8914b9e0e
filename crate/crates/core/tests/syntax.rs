mod common;

use common::{rng, FormulaGen, SMALL};
use proptest::prelude::*;
use uniprove::syntax::{formula_to_string, Style};
use uniprove::{parse_formula, parse_sequent, parse_term, Formula, Sequent};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn printed_formulas_parse_back(seed in any::<u64>(), size in 0usize..8) {
        let mut r = rng(seed);
        let f = FormulaGen::new(&SMALL, 3).formula(&mut r, size);
        let text = f.to_string();
        prop_assert_eq!(parse_formula(&text).unwrap(), f, "{}", text);
    }

    #[test]
    fn printed_sequents_parse_back(seed in any::<u64>(), n in 0usize..4) {
        let mut r = rng(seed);
        let mut g = FormulaGen::new(&SMALL, 2);
        let ante: Vec<Formula> = (0..n).map(|i| g.formula(&mut r, i + 1)).collect();
        let succ: Vec<Formula> = (0..n % 3).map(|i| g.formula(&mut r, i)).collect();
        let s = Sequent::new(ante, succ);
        prop_assert_eq!(parse_sequent(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn unicode_printing_is_injective(seed in any::<u64>(), size in 0usize..6) {
        let mut r = rng(seed);
        let mut g = FormulaGen::new(&SMALL, 3);
        let (a, b) = (g.formula(&mut r, size), g.formula(&mut r, size));
        // Bound names follow the binder hints, so only one direction holds.
        if a != b {
            prop_assert_ne!(formula_to_string(&a, Style::Unicode), formula_to_string(&b, Style::Unicode));
        }
    }
}

#[test]
fn bound_names_do_not_matter() {
    let a = parse_formula("forall x. exists y. r(x, y)").unwrap();
    let b = parse_formula("forall u. exists v. r(u, v)").unwrap();
    assert_eq!(a, b);
    assert_ne!(a, parse_formula("forall x. exists y. r(y, x)").unwrap());
}

#[test]
fn precedence_and_associativity() {
    let f = |s: &str| parse_formula(s).unwrap();
    assert_eq!(f("p & q | r => s"), f("((p & q) | r) => s"));
    assert_eq!(f("p => q => r"), f("p => (q => r)"));
    assert_eq!(f("~p"), f("p => bot"));
    assert_eq!(f("forall x. p(x) & q"), f("forall x. (p(x) & q)"));
}

#[test]
fn shadowing_prints_unambiguously() {
    let f = parse_formula("forall x. (p(x) & exists x. r(x, x))").unwrap();
    assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
}

#[test]
fn syntax_errors_carry_positions() {
    let e = parse_formula("p & (q |").unwrap_err();
    assert!(e.to_string().contains("1:"), "{e}");
    assert!(parse_sequent("p |- q |- r").is_err());
    assert!(parse_term("f(a,").is_err());
    assert!(parse_formula("forall. p").is_err());
}
