use crate::syntax::{Formula, NameSupply, Sequent, Term};

/// Replace every strong quantifier by a fresh Herbrand function of the
/// weak-quantifier variables in whose scope it lies.
///
/// Strong quantifiers are universals in positive position and
/// existentials in negative position; the succedent is positive and the
/// antecedent negative. Only sound for classical provability.
pub fn herbrandize(s: &Sequent) -> Sequent {
    let mut names = NameSupply::avoiding(s);
    let mut vars = NameSupply::avoiding(s);
    let mut h = Herbrandizer { names: &mut names, vars: &mut vars, weak: Vec::new() };
    let ante = s.ante().iter().map(|f| h.formula(f, false)).collect();
    let succ = s.succ().iter().map(|f| h.formula(f, true)).collect();
    Sequent::new(ante, succ)
}

struct Herbrandizer<'a> {
    names: &'a mut NameSupply,
    vars: &'a mut NameSupply,
    weak: Vec<String>,
}

impl Herbrandizer<'_> {
    fn formula(&mut self, f: &Formula, positive: bool) -> Formula {
        match f {
            Formula::Top | Formula::Bot | Formula::Atom(..) => f.clone(),
            Formula::And(a, b) => Formula::and(self.formula(a, positive), self.formula(b, positive)),
            Formula::Or(a, b) => Formula::or(self.formula(a, positive), self.formula(b, positive)),
            Formula::Imp(a, b) => Formula::imp(self.formula(a, !positive), self.formula(b, positive)),
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let strong = matches!(f, Formula::Forall(..)) == positive;
                if strong {
                    let name = self.names.fresh("h");
                    let args = self.weak.iter().map(|v| Term::Var(v.clone())).collect();
                    let witness = Term::app(name, args);
                    self.formula(&body.instantiate(&witness), positive)
                } else {
                    let v = self.vars.fresh(&format!("{}_", x.0));
                    self.weak.push(v.clone());
                    let inner = self.formula(&body.instantiate(&Term::Var(v.clone())), positive);
                    self.weak.pop();
                    let mut out = if matches!(f, Formula::Forall(..)) {
                        Formula::forall(&v, inner)
                    } else {
                        Formula::exists(&v, inner)
                    };
                    // Keep the user's binder name for printing.
                    if let Formula::Forall(b, _) | Formula::Exists(b, _) = &mut out {
                        b.0 = x.0.clone();
                    }
                    out
                }
            }
        }
    }
}
