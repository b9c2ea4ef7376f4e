//! JSON reports for kernel runs and traces.

use std::collections::BTreeMap;

use edgekern_core::trace::{Edit, Label};
use edgekern_core::{KernelOutcome, KernelResult, ProblemInstance, ReductionTrace};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceStats {
    pub n: usize,
    pub m: usize,
    pub k: i64,
}

impl InstanceStats {
    pub fn of(inst: &ProblemInstance) -> Self {
        InstanceStats {
            n: inst.graph.n(),
            m: inst.graph.m(),
            k: inst.k,
        }
    }
}

/// Summary of one `kernelize` run. `kernel` is present exactly when the
/// outcome is `"reduced"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub problem: String,
    pub input: InstanceStats,
    pub outcome: &'static str,
    pub kernel: Option<InstanceStats>,
    pub rules: BTreeMap<String, usize>,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl RunReport {
    pub fn new(input: &ProblemInstance, out: &KernelOutcome, seed: Option<u64>) -> Self {
        let (outcome, kernel) = match &out.result {
            KernelResult::Decided(true) => ("yes", None),
            KernelResult::Decided(false) => ("no", None),
            KernelResult::Reduced(r) => ("reduced", Some(InstanceStats::of(r))),
        };
        RunReport {
            problem: input.problem.tag().into(),
            input: InstanceStats::of(input),
            outcome,
            kernel,
            rules: out
                .trace
                .firing_counts()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            seed,
            elapsed_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[derive(Serialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
enum EditJson<'a> {
    Label { label: &'static str, vertices: &'a [usize] },
    ClearLabels,
    RemoveVertices { vertices: &'a [usize] },
    AddEdges { edges: &'a [(usize, usize)] },
    DeleteEdges { edges: &'a [(usize, usize)] },
    Merge { vertices: &'a [usize] },
    Complement,
    AppendVertices { count: usize, edges: &'a [(usize, usize)] },
}

impl<'a> From<&'a Edit> for EditJson<'a> {
    fn from(e: &'a Edit) -> Self {
        match e {
            Edit::Label { label, vertices } => EditJson::Label {
                label: match label {
                    Label::Clique => "clique",
                    Label::Independent => "independent",
                },
                vertices,
            },
            Edit::ClearLabels => EditJson::ClearLabels,
            Edit::RemoveVertices(v) => EditJson::RemoveVertices { vertices: v },
            Edit::AddEdges(e) => EditJson::AddEdges { edges: e },
            Edit::DeleteEdges(e) => EditJson::DeleteEdges { edges: e },
            Edit::Merge(v) => EditJson::Merge { vertices: v },
            Edit::Complement => EditJson::Complement,
            Edit::AppendVertices { count, edges } => EditJson::AppendVertices { count: *count, edges },
        }
    }
}

#[derive(Serialize)]
struct StepJson<'a> {
    rule: &'static str,
    k_delta: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    decision: Option<bool>,
    edits: Vec<EditJson<'a>>,
}

/// The trace as a JSON array, one object per step.
pub fn trace_json(trace: &ReductionTrace) -> String {
    let steps: Vec<StepJson> = trace
        .steps
        .iter()
        .map(|s| StepJson {
            rule: s.rule.name(),
            k_delta: s.k_delta,
            decision: s.decision,
            edits: s.edits.iter().map(EditJson::from).collect(),
        })
        .collect();
    serde_json::to_string_pretty(&steps).expect("trace serializes") + "\n"
}
