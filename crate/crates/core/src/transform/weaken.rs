use std::collections::BTreeSet;

use crate::calculus::{Proof, RuleId};
use crate::syntax::{Formula, NameSupply, Sequent, Term};

/// Every name (constants, functions, predicates, eigenvariables) used
/// anywhere in `p`.
pub(crate) fn proof_names(p: &Proof, out: &mut BTreeSet<String>) {
    p.visit(&mut |q| {
        out.extend(q.conclusion.names());
        if let Some(c) = &q.eigen {
            out.insert(c.clone());
        }
        if let Some(t) = &q.witness {
            let mut symbols = BTreeSet::new();
            t.collect_symbols(&mut symbols);
            out.extend(symbols.iter().map(|s| s.name()));
        }
    });
}

/// Rename constant `from` to `to` throughout a subproof.
pub(crate) fn rename_const(p: &Proof, from: &str, to: &str) -> Proof {
    let with = Term::constant(to);
    let conclusion = p.conclusion.map_formulas(|f| f.replace_const(from, &with));
    let premises = p.premises.iter().map(|q| rename_const(q, from, to)).collect();
    let mut out = Proof::new(p.rule, conclusion, premises);
    out.principal = p.principal;
    out.witness = p.witness.as_ref().map(|t| t.replace_const(from, &with));
    out.eigen = p.eigen.as_ref().map(|c| if c == from { to.to_string() } else { c.clone() });
    out
}

/// Add `ante` and `succ` to every sequent of `p` where the rules allow.
///
/// The result proves `conclusion + ante |- conclusion + succ` with the
/// same rules and the same height. Eigenvariables that clash with the
/// added formulas are renamed. Rules that fix a premise's succedent
/// (`imp-L*I`, the restart rules, the modified right rules) pass only the
/// antecedent additions into that premise.
pub fn weaken(p: &Proof, ante: &[Formula], succ: &[Formula]) -> Proof {
    if ante.is_empty() && succ.is_empty() {
        return p.clone();
    }
    let mut taken = BTreeSet::new();
    proof_names(p, &mut taken);
    let extra = Sequent::new(ante.to_vec(), succ.to_vec());
    taken.extend(extra.names());
    let mut names = NameSupply::new(taken);
    go(p, ante, succ, &mut names)
}

fn go(p: &Proof, ante: &[Formula], succ: &[Formula], names: &mut NameSupply) -> Proof {
    use RuleId::*;
    let conclusion = p.conclusion.extend(ante, succ);
    let mut premises: Vec<Proof> = p.premises.clone();

    // An eigenvariable must stay out of the lower sequent.
    let mut eigen = p.eigen.clone();
    if let Some(c) = &p.eigen {
        let extra = Sequent::new(ante.to_vec(), succ.to_vec());
        if extra.contains_const(c) {
            let fresh = names.fresh(c);
            premises = premises.iter().map(|q| rename_const(q, c, &fresh)).collect();
            eigen = Some(fresh);
        }
    }

    let premises: Vec<Proof> = match p.rule {
        ImpL => vec![go(&premises[0], ante, &[], names), go(&premises[1], ante, succ, names)],
        ImpLStarI => vec![go(&premises[0], ante, &[], names), go(&premises[1], ante, succ, names)],
        OrLG => vec![go(&premises[0], ante, succ, names), go(&premises[1], ante, &[], names)],
        MOrL | MImpR | MForallR | ResG => premises.iter().map(|q| go(q, ante, &[], names)).collect(),
        _ => premises.iter().map(|q| go(q, ante, succ, names)).collect(),
    };

    let mut out = Proof::new(p.rule, conclusion, premises);
    if let (Some((side, _)), Some(f)) = (p.principal, p.principal_formula()) {
        out.principal = Some((side, out.conclusion.position(side, f).expect("principal kept")));
    }
    out.witness = p.witness.clone();
    out.eigen = eigen;
    out
}
