//! Proof transformations: weakening, expansion of starred rules into
//! plain ones, identity expansion, contraction elimination and the
//! extraction of intuitionistic proofs from classical ones.

mod contraction;
mod expand;
mod extract;
mod weaken;

use crate::calculus::{CheckError, RuleId};

pub use contraction::eliminate_contractions;
pub(crate) use expand::expand_owned;
pub use expand::{expand_starred, identity_proof, IdentityStyle};
pub use extract::{augment, extract_intuitionistic, Extraction};
pub use weaken::weaken;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("input is not a valid proof: {0}")]
    Invalid(#[from] CheckError),
    #[error("proof uses {} with {succedent} succedent formula(s); no extraction route applies", rule_list(.rules))]
    NotEligible { rules: Vec<RuleId>, succedent: usize },
    #[error("augmentation needs exactly one succedent formula, found {0}")]
    NotSingleSuccedent(usize),
}

fn rule_list(rules: &[RuleId]) -> String {
    let names: Vec<&str> = rules.iter().map(|r| r.name()).collect();
    names.join(", ")
}
