use core::fmt;
use core::str::FromStr;

use crate::graph::{EdgeSet, EditMode, Graph};
use crate::recognize::{GraphClass, UnknownTag};

/// The five parameterized edge-modification problems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    CliqueIsDeletion,
    SplitAddition,
    SplitDeletion,
    TpAddition,
    StarDeletion,
}

impl Problem {
    pub const ALL: [Problem; 5] = [
        Problem::CliqueIsDeletion,
        Problem::SplitAddition,
        Problem::SplitDeletion,
        Problem::TpAddition,
        Problem::StarDeletion,
    ];

    pub fn class(self) -> GraphClass {
        match self {
            Problem::CliqueIsDeletion => GraphClass::CliquePlusIS,
            Problem::SplitAddition | Problem::SplitDeletion => GraphClass::Split,
            Problem::TpAddition => GraphClass::TriviallyPerfect,
            Problem::StarDeletion => GraphClass::Starforest,
        }
    }

    pub fn mode(self) -> EditMode {
        match self {
            Problem::SplitAddition | Problem::TpAddition => EditMode::Add,
            _ => EditMode::Delete,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Problem::CliqueIsDeletion => "clique-is-del",
            Problem::SplitAddition => "split-add",
            Problem::SplitDeletion => "split-del",
            Problem::TpAddition => "tp-add",
            Problem::StarDeletion => "star-del",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Problem {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "clique-is-del" => Ok(Problem::CliqueIsDeletion),
            "split-add" => Ok(Problem::SplitAddition),
            "split-del" => Ok(Problem::SplitDeletion),
            "tp-add" => Ok(Problem::TpAddition),
            // editing towards starforests never profits from additions
            "star-del" | "star-edit" => Ok(Problem::StarDeletion),
            _ => Err(UnknownTag),
        }
    }
}

/// A graph, a budget and the problem it is posed for.
///
/// The budget is signed because reduction rules may drive it below zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProblemInstance {
    pub problem: Problem,
    pub graph: Graph,
    pub k: i64,
}

impl ProblemInstance {
    pub fn new(problem: Problem, graph: Graph, k: i64) -> Self {
        ProblemInstance { problem, graph, k }
    }
}

/// Answer of an exact solver, with a witness edge set on positive answers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub answer: bool,
    pub witness: Option<EdgeSet>,
}

impl Decision {
    pub fn yes(witness: EdgeSet) -> Self {
        Decision {
            answer: true,
            witness: Some(witness),
        }
    }

    pub fn no() -> Self {
        Decision {
            answer: false,
            witness: None,
        }
    }

    /// Whether the witness (if any) is at most `k` edits that land `g` in the
    /// target class of `problem`.
    pub fn witness_is_valid(&self, problem: Problem, g: &Graph, k: i64) -> bool {
        match (&self.answer, &self.witness) {
            (false, _) => true,
            (true, None) => true,
            (true, Some(f)) => {
                (f.len() as i64) <= k
                    && g.apply_edits(f, problem.mode())
                        .map(|h| crate::recognize::is_member(problem.class(), &h))
                        .unwrap_or(false)
            }
        }
    }
}
