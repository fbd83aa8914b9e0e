//! Sequent calculi for first-order classical, intuitionistic and uniform
//! provability: proof objects and checkers, bounded proof search,
//! proof transformations, and the formula fragments on which the three
//! provability relations coincide.

pub mod calculus;
pub mod corpus;
pub mod fragments;
pub mod parser;
pub mod search;
pub mod syntax;
pub mod transform;

pub use calculus::{check_proof, is_axiom, rule_usage, Proof, ProofClass, RuleId, RuleUsageProfile};
pub use fragments::{classify, fragment_guarantee, FragmentId, IntuitionisticCriterion, Role};
pub use parser::{parse_formula, parse_sequent, parse_term, ParseError, SourceSpan};
pub use search::{
    herbrandize, prove, prove_cstar, prove_herbrandized, prove_istar, prove_restart, Certificate, Mode, SearchError,
    SearchLimits, SearchOutcome,
};
pub use syntax::{Formula, Sequent, Side, Term};
pub use transform::{
    augment, eliminate_contractions, expand_starred, extract_intuitionistic, weaken, Extraction, TransformError,
};
