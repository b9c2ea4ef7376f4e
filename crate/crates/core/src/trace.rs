//! Reduction traces: what every kernel did, in a form that can be replayed on
//! the original instance.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::GraphError;
use crate::graph::{Edge, Graph};
use crate::problem::{Problem, ProblemInstance};

/// Every rule a kernel can record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    NegativeBudget,
    AlreadyMember,
    ZeroBudget,
    BudgetCoversEdges,

    CliqueLowDegree,
    CliqueLogDegree,
    CliqueHighDegree,
    CliqueSizeBound,
    CliqueSmallBudget,

    SplitComplement,
    SplitIsOnlyCliqueNeighbors,
    SplitIsManyCliqueNonNeighbors,
    SplitCliqueNeighborInIs,
    SplitCliqueManyNonEdges,
    SplitCliqueDominates,
    SplitFillClique,
    SplitNegativeBudget,
    SplitEdgeInIs,
    SplitUnlabel,
    SplitSizeBound,

    TpDiagonal,
    TpModulator,
    TpSizeBound,
    TpEmptyModulator,

    StarCleanup,
    StarLeafEdges,
    StarCenterEdges,
    StarMergeCenters,
    StarTrimLeaves,
    StarSizeBound,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::NegativeBudget => "trivial-negative-budget",
            Rule::AlreadyMember => "trivial-member",
            Rule::ZeroBudget => "trivial-zero-budget",
            Rule::BudgetCoversEdges => "trivial-budget-covers-edges",
            Rule::CliqueLowDegree => "clique-low-degree",
            Rule::CliqueLogDegree => "clique-log-degree",
            Rule::CliqueHighDegree => "clique-high-degree",
            Rule::CliqueSizeBound => "clique-size-bound",
            Rule::CliqueSmallBudget => "clique-small-budget",
            Rule::SplitComplement => "split-complement",
            Rule::SplitIsOnlyCliqueNeighbors => "split-I-a",
            Rule::SplitIsManyCliqueNonNeighbors => "split-I-b",
            Rule::SplitCliqueNeighborInIs => "split-K-a",
            Rule::SplitCliqueManyNonEdges => "split-K-b",
            Rule::SplitCliqueDominates => "split-K-c",
            Rule::SplitFillClique => "split-red-a",
            Rule::SplitNegativeBudget => "split-red-b",
            Rule::SplitEdgeInIs => "split-red-c",
            Rule::SplitUnlabel => "split-unlabel",
            Rule::SplitSizeBound => "split-final",
            Rule::TpDiagonal => "tp-diagonal",
            Rule::TpModulator => "tp-modulator",
            Rule::TpSizeBound => "tp-size",
            Rule::TpEmptyModulator => "tp-empty-modulator",
            Rule::StarCleanup => "star-cleanup",
            Rule::StarLeafEdges => "star-center-label-a",
            Rule::StarCenterEdges => "star-center-label-b",
            Rule::StarMergeCenters => "star-merge",
            Rule::StarTrimLeaves => "star-trim",
            Rule::StarSizeBound => "star-size",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Side of a split decomposition a vertex has been committed to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Clique,
    Independent,
}

/// One primitive change to a (labeled) instance. Vertex ids refer to the graph
/// as it is right before the edit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Edit {
    Label {
        label: Label,
        vertices: Vec<usize>,
    },
    ClearLabels,
    /// Delete vertices; survivors are renumbered in increasing order.
    RemoveVertices(Vec<usize>),
    AddEdges(Vec<Edge>),
    DeleteEdges(Vec<Edge>),
    /// Merge into one vertex that takes the smallest id; see `Graph::merge_vertices`.
    Merge(Vec<usize>),
    /// Complement the graph; for split problems this swaps addition and deletion.
    Complement,
    /// Append `count` vertices, then add `edges` (ids after the append).
    AppendVertices {
        count: usize,
        edges: Vec<Edge>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    pub edits: Vec<Edit>,
    pub k_delta: i64,
    /// Set on the step that decided the instance.
    pub decision: Option<bool>,
}

/// The ordered list of rule applications of one kernel run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn push(&mut self, rule: Rule, edits: Vec<Edit>, k_delta: i64) {
        self.steps.push(TraceStep {
            rule,
            edits,
            k_delta,
            decision: None,
        });
    }

    pub fn decide(&mut self, rule: Rule, answer: bool) {
        self.steps.push(TraceStep {
            rule,
            edits: Vec::new(),
            k_delta: 0,
            decision: Some(answer),
        });
    }

    /// Number of recorded applications per rule name.
    pub fn firing_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for s in &self.steps {
            *out.entry(s.rule.name()).or_insert(0) += 1;
        }
        out
    }

    /// Replays every step starting from `start`.
    pub fn replay(&self, start: &ProblemInstance) -> Result<ReplayState, GraphError> {
        let mut st = ReplayState::new(start);
        for step in &self.steps {
            st.apply(step)?;
        }
        Ok(st)
    }

    /// Replays step by step, handing the state before and after each step to
    /// `visit`.
    pub fn replay_each<F>(&self, start: &ProblemInstance, mut visit: F) -> Result<ReplayState, GraphError>
    where
        F: FnMut(&ReplayState, &TraceStep, &ReplayState),
    {
        let mut st = ReplayState::new(start);
        for step in &self.steps {
            let before = st.clone();
            st.apply(step)?;
            visit(&before, step, &st);
        }
        Ok(st)
    }
}

/// Instance state reconstructed while replaying a trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayState {
    pub problem: Problem,
    pub graph: Graph,
    pub k: i64,
    pub labels: Vec<Option<Label>>,
    pub decided: Option<bool>,
}

impl ReplayState {
    pub fn new(inst: &ProblemInstance) -> Self {
        ReplayState {
            problem: inst.problem,
            graph: inst.graph.clone(),
            k: inst.k,
            labels: vec![None; inst.graph.n()],
            decided: None,
        }
    }

    pub fn instance(&self) -> ProblemInstance {
        ProblemInstance::new(self.problem, self.graph.clone(), self.k)
    }

    pub fn labeled(&self, label: Label) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&v| self.labels[v] == Some(label))
            .collect()
    }

    pub fn apply(&mut self, step: &TraceStep) -> Result<(), GraphError> {
        for e in &step.edits {
            self.apply_edit(e)?;
        }
        self.k += step.k_delta;
        if step.decision.is_some() {
            self.decided = step.decision;
        }
        Ok(())
    }

    fn apply_edit(&mut self, edit: &Edit) -> Result<(), GraphError> {
        match edit {
            Edit::Label { label, vertices } => {
                for &v in vertices {
                    self.labels[v] = Some(*label);
                }
            }
            Edit::ClearLabels => self.labels.iter_mut().for_each(|l| *l = None),
            Edit::RemoveVertices(vs) => {
                let map = self.graph.remove_vertices(vs)?;
                let mut labels = vec![None; self.graph.n()];
                for (old, new) in map.iter().enumerate() {
                    if let Some(new) = new {
                        labels[*new] = self.labels[old];
                    }
                }
                self.labels = labels;
            }
            Edit::AddEdges(es) => {
                for &(u, v) in es {
                    if !self.graph.add_edge(u, v)? {
                        return Err(GraphError::EdgePresent { u, v });
                    }
                }
            }
            Edit::DeleteEdges(es) => {
                for &(u, v) in es {
                    if !self.graph.remove_edge(u, v)? {
                        return Err(GraphError::EdgeMissing { u, v });
                    }
                }
            }
            Edit::Merge(vs) => {
                let (g, map) = self.graph.merge_vertices(vs)?;
                let mut labels = vec![None; g.n()];
                for (old, &new) in map.iter().enumerate() {
                    if labels[new].is_none() {
                        labels[new] = self.labels[old];
                    }
                }
                self.graph = g;
                self.labels = labels;
            }
            Edit::Complement => {
                self.graph = self.graph.complement();
                self.problem = match self.problem {
                    Problem::SplitAddition => Problem::SplitDeletion,
                    Problem::SplitDeletion => Problem::SplitAddition,
                    p => p,
                };
                for l in &mut self.labels {
                    *l = l.map(|l| match l {
                        Label::Clique => Label::Independent,
                        Label::Independent => Label::Clique,
                    });
                }
            }
            Edit::AppendVertices { count, edges } => {
                self.graph.add_vertices(*count);
                self.labels.resize(self.graph.n(), None);
                for &(u, v) in edges {
                    if !self.graph.add_edge(u, v)? {
                        return Err(GraphError::DuplicateEdge { u, v });
                    }
                }
            }
        }
        Ok(())
    }
}

/// What a kernel concluded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelResult {
    Decided(bool),
    Reduced(ProblemInstance),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelOutcome {
    pub result: KernelResult,
    pub trace: ReductionTrace,
}

impl KernelOutcome {
    pub fn decided(&self) -> Option<bool> {
        match self.result {
            KernelResult::Decided(b) => Some(b),
            KernelResult::Reduced(_) => None,
        }
    }

    pub fn reduced(&self) -> Option<&ProblemInstance> {
        match &self.result {
            KernelResult::Reduced(inst) => Some(inst),
            KernelResult::Decided(_) => None,
        }
    }

    /// Checks that replaying the trace on `original` reproduces the result.
    pub fn replays_from(&self, original: &ProblemInstance) -> bool {
        let Ok(st) = self.trace.replay(original) else {
            return false;
        };
        match &self.result {
            KernelResult::Decided(b) => st.decided == Some(*b),
            KernelResult::Reduced(inst) => st.decided.is_none() && st.instance() == *inst,
        }
    }
}
