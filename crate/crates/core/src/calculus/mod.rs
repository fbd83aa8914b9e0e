//! Rule schemata, proof objects and proof-class checkers.

mod check;
mod json;
mod proof;
mod rule;

pub use check::{check_proof, is_axiom, CheckError, NodePath};
pub use json::{proof_from_json, proof_to_json, proof_to_json_string, JsonError};
pub use proof::{rule_usage, Proof};
pub use rule::{ClassError, ProofClass, RuleId, RuleUsageProfile, UnknownName};
