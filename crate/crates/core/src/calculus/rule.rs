use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::syntax::Formula;

/// Inference rule schemata.
///
/// `AndL1`/`AndL2` and `OrR1`/`OrR2` are the two projections/injections of
/// the same schema family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    Axiom,
    ContrL,
    ContrR,
    BotR,
    AndL1,
    AndL2,
    OrL,
    AndR,
    OrR1,
    OrR2,
    ImpL,
    ImpR,
    ForallL,
    ExistsR,
    ExistsL,
    ForallR,
    AndLStar,
    OrRStar,
    ImpLStar,
    ForallLStar,
    ExistsRStar,
    ImpLStarI,
    OrLG,
    ResG,
    MOrL,
    MImpR,
    MForallR,
}

impl RuleId {
    pub const ALL: [RuleId; 27] = [
        RuleId::Axiom,
        RuleId::ContrL,
        RuleId::ContrR,
        RuleId::BotR,
        RuleId::AndL1,
        RuleId::AndL2,
        RuleId::OrL,
        RuleId::AndR,
        RuleId::OrR1,
        RuleId::OrR2,
        RuleId::ImpL,
        RuleId::ImpR,
        RuleId::ForallL,
        RuleId::ExistsR,
        RuleId::ExistsL,
        RuleId::ForallR,
        RuleId::AndLStar,
        RuleId::OrRStar,
        RuleId::ImpLStar,
        RuleId::ForallLStar,
        RuleId::ExistsRStar,
        RuleId::ImpLStarI,
        RuleId::OrLG,
        RuleId::ResG,
        RuleId::MOrL,
        RuleId::MImpR,
        RuleId::MForallR,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Axiom => "axiom",
            RuleId::ContrL => "contr-L",
            RuleId::ContrR => "contr-R",
            RuleId::BotR => "bot-R",
            RuleId::AndL1 => "and-L1",
            RuleId::AndL2 => "and-L2",
            RuleId::OrL => "or-L",
            RuleId::AndR => "and-R",
            RuleId::OrR1 => "or-R1",
            RuleId::OrR2 => "or-R2",
            RuleId::ImpL => "imp-L",
            RuleId::ImpR => "imp-R",
            RuleId::ForallL => "forall-L",
            RuleId::ExistsR => "exists-R",
            RuleId::ExistsL => "exists-L",
            RuleId::ForallR => "forall-R",
            RuleId::AndLStar => "and-L*",
            RuleId::OrRStar => "or-R*",
            RuleId::ImpLStar => "imp-L*",
            RuleId::ForallLStar => "forall-L*",
            RuleId::ExistsRStar => "exists-R*",
            RuleId::ImpLStarI => "imp-L*I",
            RuleId::OrLG => "or-L_G",
            RuleId::ResG => "res_G",
            RuleId::MOrL => "M-or-L",
            RuleId::MImpR => "M-imp-R",
            RuleId::MForallR => "M-forall-R",
        }
    }

    /// Number of premises.
    pub fn arity(self) -> usize {
        match self {
            RuleId::Axiom => 0,
            RuleId::OrL
            | RuleId::AndR
            | RuleId::ImpL
            | RuleId::ImpLStar
            | RuleId::ImpLStarI
            | RuleId::OrLG
            | RuleId::MOrL => 2,
            _ => 1,
        }
    }

    pub fn is_contraction(self) -> bool {
        matches!(self, RuleId::ContrL | RuleId::ContrR)
    }

    pub fn is_starred(self) -> bool {
        matches!(
            self,
            RuleId::AndLStar
                | RuleId::OrRStar
                | RuleId::ImpLStar
                | RuleId::ForallLStar
                | RuleId::ExistsRStar
                | RuleId::ImpLStarI
        )
    }

    /// Rules that decompose the single succedent formula.
    pub fn is_right_introduction(self) -> bool {
        matches!(
            self,
            RuleId::AndR
                | RuleId::OrR1
                | RuleId::OrR2
                | RuleId::OrRStar
                | RuleId::ImpR
                | RuleId::MImpR
                | RuleId::ExistsR
                | RuleId::ExistsRStar
                | RuleId::ForallR
                | RuleId::MForallR
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown {what} `{name}`")]
pub struct UnknownName {
    pub what: &'static str,
    pub name: String,
}

impl FromStr for RuleId {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| UnknownName { what: "rule", name: s.to_string() })
    }
}

/// The proof classes a derivation can be checked against.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProofClass {
    /// The plain classical rules with contraction.
    C,
    /// C-proofs with a single succedent formula everywhere.
    I,
    /// Uniform proofs.
    O,
    /// Starred rules in place of their plain forms, contraction allowed.
    Cplus,
    Cstar,
    Istar,
    /// Single-succedent proofs with the restart rules for goal `G` and no `or-L`.
    IG(Formula),
    OG(Formula),
    /// Multi-succedent intuitionistic calculus postponing disjunction choices.
    MIOr,
    /// Multi-succedent intuitionistic calculus with the modified `forall-R`.
    MIForall,
}

impl ProofClass {
    pub fn name(&self) -> &'static str {
        match self {
            ProofClass::C => "C",
            ProofClass::I => "I",
            ProofClass::O => "O",
            ProofClass::Cplus => "C+",
            ProofClass::Cstar => "C*",
            ProofClass::Istar => "I*",
            ProofClass::IG(_) => "IG",
            ProofClass::OG(_) => "OG",
            ProofClass::MIOr => "MI-or",
            ProofClass::MIForall => "MI-forall",
        }
    }

    /// Build a class from its name; `goal` is required for `IG`/`OG` and
    /// ignored otherwise.
    pub fn from_name(name: &str, goal: Option<Formula>) -> Result<ProofClass, ClassError> {
        let class = match name {
            "C" | "c" => ProofClass::C,
            "I" | "i" => ProofClass::I,
            "O" | "o" => ProofClass::O,
            "C+" | "c+" | "Cplus" => ProofClass::Cplus,
            "C*" | "c*" | "Cstar" => ProofClass::Cstar,
            "I*" | "i*" | "Istar" => ProofClass::Istar,
            "IG" | "ig" | "OG" | "og" => {
                let goal = goal.ok_or(ClassError::MissingGoal)?;
                if name.eq_ignore_ascii_case("ig") {
                    ProofClass::IG(goal)
                } else {
                    ProofClass::OG(goal)
                }
            }
            "MI-or" | "mi-or" => ProofClass::MIOr,
            "MI-forall" | "mi-forall" => ProofClass::MIForall,
            _ => return Err(ClassError::Unknown(UnknownName { what: "proof class", name: name.to_string() })),
        };
        Ok(class)
    }

    pub fn goal(&self) -> Option<&Formula> {
        match self {
            ProofClass::IG(g) | ProofClass::OG(g) => Some(g),
            _ => None,
        }
    }

    /// Every sequent must have exactly one succedent formula.
    pub fn single_succedent(&self) -> bool {
        matches!(self, ProofClass::I | ProofClass::O | ProofClass::Istar | ProofClass::IG(_) | ProofClass::OG(_))
    }

    pub fn uniform(&self) -> bool {
        matches!(self, ProofClass::O | ProofClass::OG(_))
    }

    /// The rule schemata the class admits.
    pub fn rules(&self) -> BTreeSet<RuleId> {
        use RuleId::*;
        let plain = [
            Axiom, ContrL, ContrR, BotR, AndL1, AndL2, OrL, AndR, OrR1, OrR2, ImpL, ImpR, ForallL, ExistsR, ExistsL,
            ForallR,
        ];
        let starred_classical = [
            Axiom,
            ContrL,
            ContrR,
            BotR,
            AndLStar,
            OrL,
            AndR,
            OrRStar,
            ImpLStar,
            ImpR,
            ForallLStar,
            ExistsRStar,
            ExistsL,
            ForallR,
        ];
        let mut set: BTreeSet<RuleId> = match self {
            ProofClass::C | ProofClass::I | ProofClass::O => plain.into(),
            ProofClass::Cplus => starred_classical.into(),
            ProofClass::Cstar | ProofClass::MIOr | ProofClass::MIForall => {
                let mut s: BTreeSet<_> = starred_classical.into();
                s.remove(&ContrL);
                s.remove(&ContrR);
                s
            }
            ProofClass::Istar => {
                [Axiom, BotR, AndLStar, OrL, AndR, OrR1, OrR2, ImpLStarI, ImpR, ForallLStar, ExistsR, ExistsL, ForallR]
                    .into()
            }
            ProofClass::IG(_) | ProofClass::OG(_) => {
                let mut s: BTreeSet<_> = plain.into();
                s.remove(&OrL);
                s.insert(OrLG);
                s.insert(ResG);
                s
            }
        };
        match self {
            ProofClass::MIOr => {
                set.remove(&OrL);
                set.remove(&ImpR);
                set.extend([MOrL, MImpR]);
            }
            ProofClass::MIForall => {
                set.remove(&ForallR);
                set.remove(&ImpR);
                set.extend([MForallR, MImpR]);
            }
            _ => {}
        }
        set
    }
}

impl fmt::Display for ProofClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.goal() {
            Some(g) => write!(f, "{}({g})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClassError {
    #[error(transparent)]
    Unknown(#[from] UnknownName),
    #[error("classes IG and OG need a goal formula")]
    MissingGoal,
}

/// The set of rule schemata used in a proof.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RuleUsageProfile(BTreeSet<RuleId>);

impl RuleUsageProfile {
    pub fn new(rules: impl IntoIterator<Item = RuleId>) -> Self {
        RuleUsageProfile(rules.into_iter().collect())
    }

    pub fn contains(&self, r: RuleId) -> bool {
        self.0.contains(&r)
    }

    /// True if any of `rules` is used.
    pub fn uses_any(&self, rules: &[RuleId]) -> bool {
        rules.iter().any(|r| self.contains(*r))
    }

    pub fn rules(&self) -> &BTreeSet<RuleId> {
        &self.0
    }

    pub fn is_subset(&self, other: &RuleUsageProfile) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn insert(&mut self, r: RuleId) {
        self.0.insert(r);
    }
}

impl FromIterator<RuleId> for RuleUsageProfile {
    fn from_iter<T: IntoIterator<Item = RuleId>>(iter: T) -> Self {
        RuleUsageProfile::new(iter)
    }
}

impl fmt::Display for RuleUsageProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(r.name())?;
        }
        f.write_str("}")
    }
}
