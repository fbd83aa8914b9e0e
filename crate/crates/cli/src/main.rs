//! `uniprove`: prove, check and analyze sequents from the command line.
//!
//! Exit codes: 0 proved / valid / member / all entries match, 1 refuted /
//! invalid / not a member / mismatch, 2 not proved within limits,
//! 64 usage error, 65 unreadable or malformed input.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use uniprove::calculus::{proof_from_json, proof_to_json_string};
use uniprove::corpus::{parse_corpus, run_entry, EntryReport, Relation};
use uniprove::fragments::{implies_intuitionistic, reduction_conditions, Stage};
use uniprove::{
    check_proof, classify, expand_starred, parse_formula, parse_sequent, prove, prove_herbrandized, prove_restart,
    FragmentId, Mode, Proof, ProofClass, Role, SearchLimits, SearchOutcome,
};

const USAGE: u8 = 64;
const DATA: u8 = 65;

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => USAGE,
            Failure::Data(_) => DATA,
        }
    }
}

fn data(e: impl std::fmt::Display) -> Failure {
    Failure::Data(e.to_string())
}

#[derive(Parser)]
#[command(
    name = "uniprove",
    version,
    about = "Classical, intuitionistic and uniform provability of first-order sequents"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a proof of a sequent.
    Prove(ProveArgs),
    /// Validate a proof document against a proof class.
    Check(CheckArgs),
    /// Print the rules a proof uses and which reduction conditions hold.
    Analyze {
        /// Proof JSON file (`-` for stdin).
        proof: String,
    },
    /// Decide membership of a formula in a fragment class.
    Classify {
        #[arg(long, value_parser = parse_fragment)]
        fragment: FragmentId,
        #[arg(long, value_parser = parse_role)]
        role: Role,
        /// The formula (`-` for stdin).
        formula: String,
    },
    /// Run a corpus of sequents with expected verdicts.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Run every entry and compare with its expectations.
    Run(CorpusArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Logic {
    C,
    I,
    O,
}

#[derive(Args)]
struct LimitArgs {
    /// Maximum rule applications on a branch.
    #[arg(long, default_value_t = 40)]
    depth: usize,
    /// Instances drawn from each quantified formula on a branch.
    #[arg(long, default_value_t = 3)]
    qbudget: usize,
    /// Search nodes over the whole search.
    #[arg(long, default_value_t = 1_000_000)]
    node_budget: usize,
    /// Close leaves on any common formula, not only atoms.
    #[arg(long)]
    strengthened_axioms: bool,
}

impl LimitArgs {
    fn limits(&self) -> Result<SearchLimits, Failure> {
        let limits = SearchLimits {
            depth: self.depth,
            qbudget: self.qbudget,
            node_budget: self.node_budget,
            strengthened_axioms: self.strengthened_axioms,
        };
        limits.validate().map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(limits)
    }
}

#[derive(Args)]
struct ProveArgs {
    #[arg(long, value_enum, default_value_t = Logic::C)]
    logic: Logic,
    /// Goal-directed search with the restart rule (single succedent).
    #[arg(long, conflicts_with = "logic")]
    restart: bool,
    /// Replace strong quantifiers by Herbrand functions first (classical only).
    #[arg(long)]
    herbrandize: bool,
    /// Write the proof as JSON to this file.
    #[arg(long)]
    emit: Option<PathBuf>,
    /// Print the proof as an indented tree.
    #[arg(long)]
    tree: bool,
    #[command(flatten)]
    limits: LimitArgs,
    /// The sequent, e.g. `p, p => q |- q` (`-` for stdin).
    #[arg(required_unless_present = "file")]
    sequent: Option<String>,
    /// Read the sequent from a file.
    #[arg(long, short, conflicts_with = "sequent")]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Proof JSON file (`-` for stdin).
    proof: String,
    /// Class to check against; defaults to the class the document declares.
    #[arg(long)]
    class: Option<String>,
    /// Goal formula for the `IG`/`OG` classes; defaults to the document's.
    #[arg(long)]
    goal: Option<String>,
    #[arg(long)]
    strengthened_axioms: bool,
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus file (`-` for stdin).
    corpus: String,
    #[command(flatten)]
    limits: LimitArgs,
    /// Do not re-run negative verdicts at doubled depth.
    #[arg(long)]
    no_recheck: bool,
    /// Worker threads (0 picks one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn parse_fragment(s: &str) -> Result<FragmentId, String> {
    s.parse().map_err(|e: uniprove::fragments::FragmentError| e.to_string())
}

fn parse_role(s: &str) -> Result<Role, String> {
    s.parse().map_err(|e: uniprove::fragments::FragmentError| e.to_string())
}

fn read_input(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| data(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        read_file(Path::new(arg))
    }
}

/// Inline text, or stdin for `-`.
fn inline_or_stdin(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        read_input(arg)
    } else {
        Ok(arg.to_string())
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| data(format!("{}: {e}", path.display())))
}

fn outcome_code(o: &SearchOutcome) -> u8 {
    match o {
        SearchOutcome::Proved(_) => 0,
        SearchOutcome::Refuted => 1,
        SearchOutcome::NotProvedWithinLimits => 2,
    }
}

fn cmd_prove(args: &ProveArgs) -> Result<u8, Failure> {
    let text = match (&args.sequent, &args.file) {
        (_, Some(path)) => read_file(path)?,
        (Some(s), None) => inline_or_stdin(s)?,
        (None, None) => unreachable!("clap requires one of them"),
    };
    let s = parse_sequent(text.trim()).map_err(data)?;
    let limits = args.limits.limits()?;
    let outcome = if args.restart {
        if args.herbrandize {
            return Err(Failure::Usage("--herbrandize is only sound for classical search".into()));
        }
        let [goal] = s.succ() else {
            return Err(data(format!("restart search needs one succedent formula, found {}", s.succ().len())));
        };
        prove_restart(s.ante(), goal, &limits)
    } else {
        let mode = match args.logic {
            Logic::C => Mode::Classical,
            Logic::I => Mode::Intuitionistic,
            Logic::O => Mode::Uniform,
        };
        if args.herbrandize && mode != Mode::Classical {
            return Err(Failure::Usage(format!("--herbrandize is not sound for {mode} search")));
        }
        if args.herbrandize {
            prove_herbrandized(&s, &limits)
        } else {
            prove(&s, mode, &limits)
        }
    }
    .map_err(data)?;

    println!("{}", outcome.verdict());
    if let Some(c) = outcome.certificate() {
        if c.proof.conclusion != c.original {
            println!("herbrandized: {}", c.proof.conclusion);
        }
        println!("class: {}, height {}, {} nodes", c.class.name(), c.proof.height, c.proof.size());
        if args.tree {
            print!("{}", c.proof.render_tree());
        }
        if let Some(path) = &args.emit {
            std::fs::write(path, proof_to_json_string(&c.proof, &c.class) + "\n")
                .map_err(|e| data(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(outcome_code(&outcome))
}

fn cmd_check(args: &CheckArgs) -> Result<u8, Failure> {
    let (proof, declared) = proof_from_json(&read_input(&args.proof)?).map_err(data)?;
    let goal = match &args.goal {
        Some(g) => Some(parse_formula(g).map_err(data)?),
        None => declared.goal().cloned(),
    };
    let class = match &args.class {
        Some(name) => ProofClass::from_name(name, goal).map_err(|e| Failure::Usage(e.to_string()))?,
        None => declared,
    };
    match check_proof(&proof, &class, args.strengthened_axioms) {
        Ok(()) => {
            println!("valid {} proof of {}", class.name(), proof.conclusion);
            Ok(0)
        }
        Err(e) => {
            println!("invalid: {e}");
            Ok(1)
        }
    }
}

fn cmd_analyze(path: &str) -> Result<u8, Failure> {
    let (proof, class) = proof_from_json(&read_input(path)?).map_err(data)?;
    // Starred rules are read through their plain expansions.
    let plain: Proof = if matches!(class, ProofClass::Cplus | ProofClass::Cstar | ProofClass::Istar) {
        expand_starred(&proof)
    } else {
        proof
    };
    let usage = plain.rule_usage();
    let names: Vec<&str> = usage.rules().iter().map(|r| r.name()).collect();
    println!("conclusion: {}", plain.conclusion);
    println!("rules: {}", names.join(", "));
    let criterion = implies_intuitionistic(&usage).map_err(data)?;
    match criterion {
        Some(c) => println!("intuitionistic criterion: {c} (fragment {})", c.fragment()),
        None => println!("intuitionistic criterion: none"),
    }
    for (label, stage) in [
        ("classical to intuitionistic", Stage::ClassicalToIntuitionistic),
        ("intuitionistic to uniform", Stage::IntuitionisticToUniform),
    ] {
        match reduction_conditions(&usage, stage).map_err(data)? {
            Some(n) => println!("{label}: condition {n}"),
            None => println!("{label}: none"),
        }
    }
    Ok(0)
}

fn cmd_classify(fragment: FragmentId, role: Role, input: &str) -> Result<u8, Failure> {
    let f = parse_formula(inline_or_stdin(input)?.trim()).map_err(data)?;
    let member = classify(&f, fragment, role).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{}", if member { "yes" } else { "no" });
    Ok(if member { 0 } else { 1 })
}

fn cell(report: &EntryReport, r: Relation) -> String {
    match report.observations.iter().find(|o| o.relation == r) {
        None => "-".into(),
        Some(o) => {
            let got = match &o.outcome {
                SearchOutcome::Proved(_) => "yes",
                SearchOutcome::Refuted => "no",
                SearchOutcome::NotProvedWithinLimits if o.stable => "no?",
                SearchOutcome::NotProvedWithinLimits => "no?!",
            };
            if o.passed() {
                got.into()
            } else {
                format!("{got}*")
            }
        }
    }
}

fn cmd_corpus(args: &CorpusArgs) -> Result<u8, Failure> {
    let entries = parse_corpus(&read_input(&args.corpus)?).map_err(data)?;
    let limits = args.limits.limits()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.jobs).build().map_err(data)?;
    let mut reports = pool
        .install(|| entries.par_iter().map(|e| run_entry(e, &limits, !args.no_recheck)).collect::<Result<Vec<_>, _>>())
        .map_err(data)?;
    reports.sort_by(|a, b| a.name.cmp(&b.name));

    let relations = [
        Relation::Classical,
        Relation::Intuitionistic,
        Relation::Uniform,
        Relation::Restart,
        Relation::AugmentedIntuitionistic,
    ];
    let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
    let header: Vec<String> = relations.iter().map(|r| format!("{:<5}", r.key())).collect();
    println!("{:<width$}  {}  result", "name", header.join(" "));
    let mut failed = 0;
    for r in &reports {
        let cells: Vec<String> = relations.iter().map(|rel| format!("{:<5}", cell(r, *rel))).collect();
        let status = if r.passed() { "pass" } else { "FAIL" };
        print!("{:<width$}  {}  {status}", r.name, cells.join(" "));
        if !r.fragment_mismatches.is_empty() {
            let tags: Vec<&str> = r.fragment_mismatches.iter().map(|f| f.name()).collect();
            print!(" (not in {})", tags.join(", "));
        }
        println!();
        failed += !r.passed() as usize;
    }
    println!("{} entries, {failed} failed (no? = not proved within limits, * = mismatch)", reports.len());
    Ok(if failed == 0 { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Prove(args) => cmd_prove(args),
        Command::Check(args) => cmd_check(args),
        Command::Analyze { proof } => cmd_analyze(proof),
        Command::Classify { fragment, role, formula } => cmd_classify(*fragment, *role, formula),
        Command::Corpus { command: CorpusCommand::Run(args) } => cmd_corpus(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("uniprove: {e}");
            ExitCode::from(e.code())
        }
    }
}
