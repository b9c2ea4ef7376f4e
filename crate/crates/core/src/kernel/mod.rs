//! Kernelization pipelines for the five problems.

pub mod clique_is;
pub mod split;
pub mod star;
pub mod tp;

use alloc::vec::Vec;

use crate::graph::Graph;
use crate::problem::{Problem, ProblemInstance};
use crate::recognize::is_member;
use crate::trace::{Edit, KernelOutcome, KernelResult, ReductionTrace, Rule};

pub use clique_is::{kernelize_clique_is, CliqueIsConfig};
pub use split::kernelize_split;
pub use star::kernelize_star;
pub use tp::kernelize_tp;

/// Result of trying one rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleOutcome {
    Unchanged,
    Changed,
    Decided(bool),
}

/// The instance a kernel is working on, together with its trace so far.
#[derive(Clone, Debug)]
pub struct KernelState {
    pub problem: Problem,
    pub graph: Graph,
    pub k: i64,
    pub trace: ReductionTrace,
}

impl KernelState {
    pub fn new(inst: &ProblemInstance) -> Self {
        KernelState {
            problem: inst.problem,
            graph: inst.graph.clone(),
            k: inst.k,
            trace: ReductionTrace::default(),
        }
    }

    pub(crate) fn decide(&mut self, rule: Rule, answer: bool) -> RuleOutcome {
        self.trace.decide(rule, answer);
        RuleOutcome::Decided(answer)
    }

    /// Deletes the flagged vertices, charging `cost` to the budget.
    pub(crate) fn remove_vertices(&mut self, rule: Rule, remove: &[bool], cost: i64) -> Vec<Option<usize>> {
        let listed: Vec<usize> = (0..remove.len()).filter(|&v| remove[v]).collect();
        let map = self.graph.remove_vertices_mask(remove);
        self.k -= cost;
        self.trace.push(rule, alloc::vec![Edit::RemoveVertices(listed)], -cost);
        map
    }

    /// Checks shared by every pipeline: negative budget, membership, and no
    /// budget left for a non-member.
    pub(crate) fn trivial_checks(&mut self) -> RuleOutcome {
        if self.k < 0 {
            return self.decide(Rule::NegativeBudget, false);
        }
        if is_member(self.problem.class(), &self.graph) {
            return self.decide(Rule::AlreadyMember, true);
        }
        if self.k == 0 {
            return self.decide(Rule::ZeroBudget, false);
        }
        RuleOutcome::Unchanged
    }

    pub fn finish(self, decided: Option<bool>) -> KernelOutcome {
        let result = match decided {
            Some(b) => KernelResult::Decided(b),
            None => KernelResult::Reduced(ProblemInstance::new(self.problem, self.graph, self.k)),
        };
        KernelOutcome {
            result,
            trace: self.trace,
        }
    }
}

/// Runs the kernel of `inst.problem` with default settings.
pub fn kernelize(inst: &ProblemInstance) -> KernelOutcome {
    match inst.problem {
        Problem::CliqueIsDeletion => kernelize_clique_is(&inst.graph, inst.k, &CliqueIsConfig::default()),
        Problem::SplitAddition | Problem::SplitDeletion => kernelize_split(&inst.graph, inst.k, inst.problem),
        Problem::TpAddition => kernelize_tp(&inst.graph, inst.k),
        Problem::StarDeletion => kernelize_star(&inst.graph, inst.k),
    }
}
