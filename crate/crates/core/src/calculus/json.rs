//! Proof interchange format.
//!
//! ```json
//! { "class": "C", "rule": "imp-R",
//!   "sequent": { "ante": [], "succ": ["p => p"] },
//!   "principal": { "side": "succ", "index": 0 },
//!   "witness": null, "eigen": null, "premises": [ ... ] }
//! ```
//!
//! Formulas and terms are strings in parser syntax. `goal` is present at
//! the top level for the restart classes.

use serde::{Deserialize, Serialize};

use super::proof::Proof;
use super::rule::{ClassError, ProofClass, RuleId, UnknownName};
use crate::parser::{parse_formula, parse_term, ParseError};
use crate::syntax::{Formula, Sequent, Side};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("invalid proof JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Rule(#[from] UnknownName),
    #[error("{0}")]
    Class(#[from] ClassError),
    #[error("in proof JSON: {0}")]
    Parse(#[from] ParseError),
    #[error("principal index {index} out of range for `{sequent}`")]
    Principal { index: usize, sequent: String },
}

#[derive(Serialize, Deserialize)]
struct SequentJson {
    ante: Vec<String>,
    succ: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PrincipalJson {
    side: SideJson,
    index: usize,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum SideJson {
    Ante,
    Succ,
}

#[derive(Serialize, Deserialize)]
struct NodeJson {
    rule: String,
    sequent: SequentJson,
    principal: Option<PrincipalJson>,
    witness: Option<String>,
    eigen: Option<String>,
    premises: Vec<NodeJson>,
}

#[derive(Serialize, Deserialize)]
struct DocJson {
    class: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    goal: Option<String>,
    #[serde(flatten)]
    root: NodeJson,
}

fn node_to_json(p: &Proof) -> NodeJson {
    let strings = |fs: &[Formula]| fs.iter().map(|f| f.to_string()).collect();
    NodeJson {
        rule: p.rule.name().to_string(),
        sequent: SequentJson { ante: strings(p.conclusion.ante()), succ: strings(p.conclusion.succ()) },
        principal: p.principal.map(|(side, index)| PrincipalJson {
            side: match side {
                Side::Ante => SideJson::Ante,
                Side::Succ => SideJson::Succ,
            },
            index,
        }),
        witness: p.witness.as_ref().map(|t| t.to_string()),
        eigen: p.eigen.clone(),
        premises: p.premises.iter().map(node_to_json).collect(),
    }
}

fn node_from_json(n: NodeJson) -> Result<Proof, JsonError> {
    let parse_all = |v: &[String]| v.iter().map(|s| parse_formula(s)).collect::<Result<Vec<_>, _>>();
    let ante = parse_all(&n.sequent.ante)?;
    let succ = parse_all(&n.sequent.succ)?;
    // The index refers to the array as written; re-find it in sorted order.
    let principal = match &n.principal {
        None => None,
        Some(pj) => {
            let (side, list) = match pj.side {
                SideJson::Ante => (Side::Ante, &ante),
                SideJson::Succ => (Side::Succ, &succ),
            };
            let f = list.get(pj.index).cloned().ok_or_else(|| JsonError::Principal {
                index: pj.index,
                sequent: format!("{} |- {}", n.sequent.ante.join(", "), n.sequent.succ.join(", ")),
            })?;
            Some((side, f))
        }
    };
    let conclusion = Sequent::new(ante, succ);
    let premises = n.premises.into_iter().map(node_from_json).collect::<Result<Vec<_>, _>>()?;
    let mut p = Proof::new(n.rule.parse::<RuleId>()?, conclusion, premises);
    p.principal = principal.map(|(side, f)| {
        let i = p.conclusion.position(side, &f).expect("formula came from this sequent");
        (side, i)
    });
    p.witness = n.witness.as_deref().map(parse_term).transpose()?;
    p.eigen = n.eigen;
    Ok(p)
}

pub fn proof_to_json(p: &Proof, class: &ProofClass) -> serde_json::Value {
    let doc =
        DocJson { class: class.name().to_string(), goal: class.goal().map(|g| g.to_string()), root: node_to_json(p) };
    serde_json::to_value(doc).expect("proof documents always serialize")
}

pub fn proof_to_json_string(p: &Proof, class: &ProofClass) -> String {
    serde_json::to_string_pretty(&proof_to_json(p, class)).expect("proof documents always serialize")
}

/// Read a proof document; returns the proof and its declared class.
pub fn proof_from_json(text: &str) -> Result<(Proof, ProofClass), JsonError> {
    let doc: DocJson = serde_json::from_str(text)?;
    let goal = doc.goal.as_deref().map(parse_formula).transpose()?;
    let class = ProofClass::from_name(&doc.class, goal)?;
    Ok((node_from_json(doc.root)?, class))
}
