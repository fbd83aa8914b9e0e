//! Line-oriented golden files of sequents with expected verdicts.
//!
//! ```text
//! # comment
//! name ; sequent ; C=yes ; I=no ; O=no [; R=yes] [; AI=no] [; frag=f1,f4]
//! ```
//!
//! `R` is the expected outcome of restart search on the sequent, `AI` that
//! of intuitionistic search on its augmentation, and `frag` lists
//! fragments whose guarantee the sequent is expected to meet.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use crate::fragments::{fragment_guarantee, FragmentId};
use crate::parser::{parse_sequent, ParseError};
use crate::search::{prove, prove_restart, Mode, SearchError, SearchLimits, SearchOutcome};
use crate::syntax::Sequent;
use crate::transform::augment;

/// A relation a corpus entry can state an expectation for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Classical,
    Intuitionistic,
    Uniform,
    /// Restart search on the sequent itself.
    Restart,
    /// Intuitionistic search on the augmented sequent.
    AugmentedIntuitionistic,
}

impl Relation {
    pub fn key(self) -> &'static str {
        match self {
            Relation::Classical => "C",
            Relation::Intuitionistic => "I",
            Relation::Uniform => "O",
            Relation::Restart => "R",
            Relation::AugmentedIntuitionistic => "AI",
        }
    }

    fn from_key(key: &str) -> Option<Relation> {
        [
            Relation::Classical,
            Relation::Intuitionistic,
            Relation::Uniform,
            Relation::Restart,
            Relation::AugmentedIntuitionistic,
        ]
        .into_iter()
        .find(|r| r.key() == key)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub sequent: Sequent,
    /// Expected provability per relation, in the order given.
    pub expected: Vec<(Relation, bool)>,
    pub fragments: BTreeSet<FragmentId>,
    /// 1-based line in the source file.
    pub line: usize,
}

impl CorpusEntry {
    pub fn expects(&self, r: Relation) -> Option<bool> {
        self.expected.iter().find(|(q, _)| *q == r).map(|(_, b)| *b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    Sequent { line: usize, source: ParseError },
    #[error("line {line}: duplicate entry name `{name}`")]
    Duplicate { line: usize, name: String },
}

/// Parse a corpus file.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut entries: Vec<CorpusEntry> = Vec::new();
    let mut names = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let bad = |message: String| CorpusError::Malformed { line, message };
        let fields: Vec<&str> = content.split(';').map(str::trim).collect();
        if fields.len() < 5 {
            return Err(bad(format!("expected at least 5 `;`-separated fields, found {}", fields.len())));
        }
        let name = fields[0].to_string();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(bad(format!("invalid entry name `{name}`")));
        }
        let sequent = parse_sequent(fields[1]).map_err(|source| CorpusError::Sequent { line, source })?;
        let mut expected = Vec::new();
        let mut fragments = BTreeSet::new();
        for (k, field) in fields[2..].iter().enumerate() {
            let (key, value) =
                field.split_once('=').ok_or_else(|| bad(format!("expected key=value, found `{field}`")))?;
            let (key, value) = (key.trim(), value.trim());
            if key == "frag" {
                for f in value.split(',') {
                    fragments.insert(f.trim().parse::<FragmentId>().map_err(|e| bad(e.to_string()))?);
                }
                continue;
            }
            let rel = Relation::from_key(key).ok_or_else(|| bad(format!("unknown key `{key}`")))?;
            let required = [Relation::Classical, Relation::Intuitionistic, Relation::Uniform];
            if k < 3 && rel != required[k] {
                return Err(bad(format!("field {} must be {}=yes|no", k + 3, required[k])));
            }
            let yes = match value {
                "yes" => true,
                "no" => false,
                _ => return Err(bad(format!("expected yes or no, found `{value}`"))),
            };
            if expected.iter().any(|(r, _)| *r == rel) {
                return Err(bad(format!("{rel} given twice")));
            }
            expected.push((rel, yes));
        }
        if !names.insert(name.clone()) {
            return Err(CorpusError::Duplicate { line, name });
        }
        entries.push(CorpusEntry { name, sequent, expected, fragments, line });
    }
    Ok(entries)
}

/// Run `r` on `s`. Relations needing one succedent formula report not
/// proved on other sequents.
pub fn run_relation(s: &Sequent, r: Relation, limits: &SearchLimits) -> Result<SearchOutcome, SearchError> {
    let single = s.single_succ().cloned();
    match (r, single) {
        (Relation::Classical, _) => prove(s, Mode::Classical, limits),
        (Relation::Intuitionistic, Some(_)) => prove(s, Mode::Intuitionistic, limits),
        (Relation::Uniform, Some(_)) => prove(s, Mode::Uniform, limits),
        (Relation::Restart, Some(g)) => prove_restart(s.ante(), &g, limits),
        (Relation::AugmentedIntuitionistic, Some(_)) => {
            let aug = augment(s).expect("single succedent");
            prove(&aug, Mode::Intuitionistic, limits)
        }
        (_, None) => Ok(SearchOutcome::Refuted),
    }
}

/// One checked expectation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Observation {
    pub relation: Relation,
    pub expected: bool,
    pub outcome: SearchOutcome,
    /// For expected "no": the outcome with doubled depth was also unproved.
    pub stable: bool,
    pub elapsed: Duration,
}

impl Observation {
    pub fn passed(&self) -> bool {
        self.outcome.is_proved() == self.expected && self.stable
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryReport {
    pub name: String,
    pub observations: Vec<Observation>,
    /// Fragments the entry was tagged with but whose guarantee fails.
    pub fragment_mismatches: Vec<FragmentId>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.fragment_mismatches.is_empty() && self.observations.iter().all(Observation::passed)
    }
}

/// Check every expectation of `entry`. A "no" that holds at `limits` is
/// re-run with doubled depth when `recheck_depth` is set and must still
/// fail there.
pub fn run_entry(entry: &CorpusEntry, limits: &SearchLimits, recheck_depth: bool) -> Result<EntryReport, SearchError> {
    let mut observations = Vec::new();
    for &(relation, expected) in &entry.expected {
        let start = Instant::now();
        let outcome = run_relation(&entry.sequent, relation, limits)?;
        let mut stable = true;
        if !expected && recheck_depth && matches!(outcome, SearchOutcome::NotProvedWithinLimits) {
            let doubled = SearchLimits { depth: limits.depth * 2, ..*limits };
            stable = !run_relation(&entry.sequent, relation, &doubled)?.is_proved();
        }
        observations.push(Observation { relation, expected, outcome, stable, elapsed: start.elapsed() });
    }
    let fragment_mismatches =
        entry.fragments.iter().copied().filter(|f| !fragment_guarantee(&entry.sequent, *f).unwrap_or(false)).collect();
    Ok(EntryReport { name: entry.name.clone(), observations, fragment_mismatches })
}
