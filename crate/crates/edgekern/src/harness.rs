//! Verification of kernels against exact oracles.

use std::collections::BTreeMap;

use edgekern_core::arith::lt_sqrt;
use edgekern_core::kernel::kernelize;
use edgekern_core::kernel::split::exceeds_undecided_bound;
use edgekern_core::oracle::{generalized_split_cost, generic_solve, graph_from_mask, solve_exact, CostTable};
use edgekern_core::trace::{Label, ReplayState, Rule};
use edgekern_core::{Graph, KernelOutcome, KernelResult, OracleError, Problem, ProblemInstance};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::generate::{random_graph, rng_for};

/// Ground truth for instances of one problem: cost tables for small graphs,
/// then edit-set enumeration, then the specialized exact solver.
pub struct Adjudicator {
    problem: Problem,
    tables: Vec<CostTable>,
}

impl Adjudicator {
    /// Builds cost tables for every vertex count up to `table_n` (at most 7).
    pub fn new(problem: Problem, table_n: usize) -> Self {
        let mut tables = Vec::new();
        for n in 0..=table_n.min(7) {
            tables.push(CostTable::build(problem, n).expect("table size checked"));
            // split tables double as the complement problem's tables
        }
        Adjudicator { problem, tables }
    }

    pub fn table(&self, n: usize) -> Option<&CostTable> {
        self.tables.get(n)
    }

    pub fn answer(&self, inst: &ProblemInstance) -> Result<bool, OracleError> {
        if inst.k < 0 {
            return Ok(false);
        }
        if inst.problem == self.problem {
            if let Some(t) = self.tables.get(inst.graph.n()) {
                return Ok(t.answer(&inst.graph, inst.k));
            }
        }
        if inst.graph.n() <= 7 {
            if let Ok(d) = generic_solve(inst) {
                return Ok(d.answer);
            }
        }
        Ok(solve_exact(inst)?.answer)
    }

    /// Answer of a replay state, reading labels as a generalized split
    /// instance.
    pub fn state_answer(&self, st: &ReplayState) -> Result<bool, OracleError> {
        if let Some(b) = st.decided {
            return Ok(b);
        }
        if st.labels.iter().any(Option::is_some) {
            debug_assert_eq!(st.problem, Problem::SplitAddition);
            if st.k < 0 {
                return Ok(false);
            }
            let ks = st.labeled(Label::Clique);
            let is = st.labeled(Label::Independent);
            let cost = generalized_split_cost(&st.graph, &ks, &is)?;
            return Ok(cost.is_some_and(|c| c as i64 <= st.k));
        }
        self.answer(&st.instance())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RuleTally {
    pub fired: usize,
    pub checked: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub problem: String,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub k: i64,
    pub seed: Option<u64>,
    pub expected: bool,
    pub kernel: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleViolation {
    pub rule: String,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub k: i64,
    pub step: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub problem: String,
    pub instances: usize,
    pub decided: usize,
    pub reduced: usize,
    pub skipped: usize,
    pub mismatches: Vec<Mismatch>,
    pub rules: BTreeMap<String, RuleTally>,
    pub rule_violations: Vec<RuleViolation>,
    pub max_kernel_n: usize,
    pub size_bound_violations: usize,
}

impl VerificationReport {
    pub fn new(problem: Problem) -> Self {
        VerificationReport {
            problem: problem.tag().into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.rule_violations.is_empty() && self.size_bound_violations == 0
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.instances += other.instances;
        self.decided += other.decided;
        self.reduced += other.reduced;
        self.skipped += other.skipped;
        self.mismatches.extend(other.mismatches);
        for (name, t) in other.rules {
            let e = self.rules.entry(name).or_default();
            e.fired += t.fired;
            e.checked += t.checked;
            e.violations += t.violations;
        }
        self.rule_violations.extend(other.rule_violations);
        self.max_kernel_n = self.max_kernel_n.max(other.max_kernel_n);
        self.size_bound_violations += other.size_bound_violations;
    }

    fn tally(&mut self, rule: Rule) -> &mut RuleTally {
        self.rules.entry(rule.name().to_string()).or_default()
    }
}

/// Whether a reduced instance respects the size bound of its kernel.
pub fn kernel_bound_holds(inst: &ProblemInstance) -> bool {
    let n = inst.graph.n() as i128;
    let k = inst.k as i128;
    match inst.problem {
        Problem::StarDeletion => n <= 4 * k + 3,
        Problem::TpAddition => n <= 2 * k * k + 2 * k,
        // 11k + 6 sqrt(2k) + 8, i.e. (n - 11k - 8)^2 <= 72k when positive
        Problem::SplitAddition | Problem::SplitDeletion => {
            let x = n - 11 * k - 8;
            x <= 0 || x * x <= 72 * k
        }
        Problem::CliqueIsDeletion => {
            inst.k <= 257 || ((n - 1) as f64) * edgekern_core::arith::log2(inst.k) <= 2.0 * inst.k as f64
        }
    }
}

/// Number of undecided split vertices right before unlabeling, if the trace
/// reached that point.
pub fn undecided_before_unlabel(original: &ProblemInstance, out: &KernelOutcome) -> Option<usize> {
    let mut st = ReplayState::new(original);
    for step in &out.trace.steps {
        if step.rule == Rule::SplitUnlabel {
            return Some(st.labels.iter().filter(|l| l.is_none()).count());
        }
        st.apply(step).ok()?;
    }
    // nothing was labeled, so unlabeling was a no-op and all vertices are in D
    out.reduced().map(|r| r.graph.n())
}

/// Whether the split |D| bound holds on the state before unlabeling.
pub fn split_undecided_bound_holds(original: &ProblemInstance, out: &KernelOutcome) -> bool {
    match (out.reduced(), undecided_before_unlabel(original, out)) {
        (Some(r), Some(d)) => !exceeds_undecided_bound(d, r.k),
        _ => true,
    }
}

/// Minimum degree condition of Clique+IS Rule 1, `δ >= sqrt(2(m-k)) - 1`,
/// checked after every Rule 1 step that leaves the instance undecided and on
/// the reduced output.
pub fn clique_degree_invariant_holds(original: &ProblemInstance, out: &KernelOutcome) -> bool {
    let holds = |g: &Graph, k: i64| {
        let gap = g.m() as i128 - k as i128;
        match g.min_degree() {
            Some(d) if gap > 0 => !lt_sqrt(d as i128 + 1, 2 * gap),
            _ => true,
        }
    };
    let mut st = ReplayState::new(original);
    let steps = &out.trace.steps;
    for (i, step) in steps.iter().enumerate() {
        if st.apply(step).is_err() {
            return false;
        }
        let undecided_next = steps.get(i + 1).is_none_or(|s| s.decision.is_none());
        if step.rule == Rule::CliqueLowDegree
            && st.decided.is_none()
            && undecided_next
            && st.k >= 0
            && !holds(&st.graph, st.k)
        {
            return false;
        }
    }
    out.reduced().is_none_or(|r| holds(&r.graph, r.k))
}

fn edges_of(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().collect()
}

/// Replays the trace and checks that every step keeps the answer.
fn check_steps(
    adj: &Adjudicator,
    original: &ProblemInstance,
    out: &KernelOutcome,
    report: &mut VerificationReport,
) -> Result<(), OracleError> {
    let mut st = ReplayState::new(original);
    let mut before_answer = adj.state_answer(&st)?;
    for (i, step) in out.trace.steps.iter().enumerate() {
        st.apply(step).map_err(OracleError::Graph)?;
        let after = adj.state_answer(&st)?;
        let t = report.tally(step.rule);
        t.fired += 1;
        t.checked += 1;
        if after != before_answer {
            t.violations += 1;
            report.rule_violations.push(RuleViolation {
                rule: step.rule.name().into(),
                n: original.graph.n(),
                edges: edges_of(&original.graph),
                k: original.k,
                step: i,
            });
        }
        before_answer = after;
    }
    Ok(())
}

/// Applies the rules that are safe on their own directly to the input, each in
/// a fresh state, and checks every step they record.
fn check_isolated_rules(
    adj: &Adjudicator,
    inst: &ProblemInstance,
    report: &mut VerificationReport,
) -> Result<(), OracleError> {
    use edgekern_core::kernel::{clique_is, split, star, tp, KernelState, RuleOutcome};
    let g = &inst.graph;
    let k = inst.k;
    let mut outcomes: Vec<KernelOutcome> = Vec::new();
    let mut starts: Vec<ProblemInstance> = Vec::new();
    let wrap = |st: KernelState| st.finish(None);
    match inst.problem {
        Problem::CliqueIsDeletion => {
            if k >= 0 && (k as usize) < g.m() {
                let mut st = KernelState::new(inst);
                clique_is::apply_low_degree_rule(&mut st);
                outcomes.push(wrap(st));
                let mut st = KernelState::new(inst);
                clique_is::apply_log_degree_rule(&mut st);
                outcomes.push(wrap(st));
                let mut st = KernelState::new(inst);
                clique_is::apply_high_degree_rule(&mut st);
                outcomes.push(wrap(st));
                starts.extend([inst.clone(), inst.clone(), inst.clone()]);
            }
        }
        Problem::SplitAddition | Problem::SplitDeletion => {
            if k >= 0 {
                let base = if inst.problem == Problem::SplitDeletion {
                    g.complement()
                } else {
                    g.clone()
                };
                let start = ProblemInstance::new(Problem::SplitAddition, base.clone(), k);
                for rule in [split::apply_i_rules, split::apply_k_rules] {
                    let mut st = split::SplitState::new(&base, k);
                    rule(&mut st);
                    outcomes.push(st.base.finish(None));
                    starts.push(start.clone());
                }
            }
        }
        Problem::TpAddition => {
            if k >= 0 {
                let mut st = KernelState::new(inst);
                tp::apply_diagonal_rule(&mut st);
                outcomes.push(wrap(st));
                starts.push(inst.clone());
            }
        }
        Problem::StarDeletion => {
            if k >= 0 {
                let mut st = KernelState::new(inst);
                let clean = star::apply_cleanup_rule(&mut st) == RuleOutcome::Unchanged;
                outcomes.push(wrap(st));
                starts.push(inst.clone());
                if clean {
                    let mut st = KernelState::new(inst);
                    let labeled = star::apply_center_label_rules(&mut st) == RuleOutcome::Unchanged;
                    outcomes.push(wrap(st));
                    starts.push(inst.clone());
                    if labeled {
                        let mut st = KernelState::new(inst);
                        star::apply_center_reduction(&mut st);
                        outcomes.push(wrap(st));
                        starts.push(inst.clone());
                    }
                }
            }
        }
    }
    for (start, out) in starts.iter().zip(&outcomes) {
        check_steps(adj, start, out, report)?;
    }
    Ok(())
}

/// Kernelizes one instance and checks the outcome, every recorded step, the
/// isolated rules and the size bound. Oracle refusals count as skipped.
pub fn verify_instance(adj: &Adjudicator, inst: &ProblemInstance, seed: Option<u64>, report: &mut VerificationReport) {
    report.instances += 1;
    let expected = match adj.answer(inst) {
        Ok(b) => b,
        Err(_) => {
            report.skipped += 1;
            return;
        }
    };
    let out = kernelize(inst);
    let got = match &out.result {
        KernelResult::Decided(b) => {
            report.decided += 1;
            Some(*b)
        }
        KernelResult::Reduced(r) => {
            report.reduced += 1;
            report.max_kernel_n = report.max_kernel_n.max(r.graph.n());
            if !kernel_bound_holds(r) || !split_undecided_bound_holds(inst, &out) {
                report.size_bound_violations += 1;
            }
            adj.answer(r).ok()
        }
    };
    if got != Some(expected) || !out.replays_from(inst) {
        report.mismatches.push(Mismatch {
            problem: inst.problem.tag().into(),
            n: inst.graph.n(),
            edges: edges_of(&inst.graph),
            k: inst.k,
            seed,
            expected,
            kernel: got,
        });
    }
    if check_steps(adj, inst, &out, report).is_err() || check_isolated_rules(adj, inst, report).is_err() {
        report.skipped += 1;
    }
}

/// Every labeled graph on at most `n_max` vertices, every budget up to `k_max`.
pub fn exhaustive_verify(problem: Problem, n_max: usize, k_max: i64) -> VerificationReport {
    assert!(n_max <= 7, "exhaustive enumeration supports n <= 7");
    let adj = Adjudicator::new(problem, n_max.max(6));
    let mut report = VerificationReport::new(problem);
    for n in 0..=n_max {
        let pairs = n * n.saturating_sub(1) / 2;
        let parts: Vec<VerificationReport> = (0..1u64 << pairs)
            .into_par_iter()
            .map(|mask| {
                let mut part = VerificationReport::new(problem);
                let g = graph_from_mask(n, mask);
                for k in 0..=k_max {
                    verify_instance(&adj, &ProblemInstance::new(problem, g.clone(), k), None, &mut part);
                }
                part
            })
            .collect();
        for part in parts {
            report.merge(part);
        }
    }
    report
}

/// Random `G(n, p)` instances with `n` in `n_lo..=n_hi`, checked against the
/// exact solver.
pub fn sample_verify(
    problem: Problem,
    n_lo: usize,
    n_hi: usize,
    k_max: i64,
    samples: usize,
    seed: u64,
) -> VerificationReport {
    let adj = Adjudicator::new(problem, 6);
    let parts: Vec<VerificationReport> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i);
            let mut rng = rng_for(s);
            let n = rng.random_range(n_lo..=n_hi);
            let p = rng.random_range(0.05..0.95);
            let k = rng.random_range(0..=k_max);
            let g = random_graph(n, p, s);
            let mut part = VerificationReport::new(problem);
            verify_instance(&adj, &ProblemInstance::new(problem, g, k), Some(s), &mut part);
            part
        })
        .collect();
    let mut report = VerificationReport::new(problem);
    for part in parts {
        report.merge(part);
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Match(bool),
    Mismatch { kernel: bool, oracle: bool },
    Skipped(String),
}

/// Kernelizes `(g, k)` and compares with the oracle on the input.
pub fn check_equivalence(problem: Problem, g: &Graph, k: i64) -> Equivalence {
    let inst = ProblemInstance::new(problem, g.clone(), k);
    let adj = Adjudicator::new(problem, 0);
    let oracle = match adj.answer(&inst) {
        Ok(b) => b,
        Err(e) => return Equivalence::Skipped(e.to_string()),
    };
    let out = kernelize(&inst);
    let kernel = match &out.result {
        KernelResult::Decided(b) => *b,
        KernelResult::Reduced(r) => match adj.answer(r) {
            Ok(b) => b,
            Err(e) => return Equivalence::Skipped(e.to_string()),
        },
    };
    if kernel == oracle {
        Equivalence::Match(oracle)
    } else {
        Equivalence::Mismatch { kernel, oracle }
    }
}

/// Size-bound experiment on planted positives: `n` log-uniform in
/// `n_lo..=n_hi`, `r` uniform in `0..=r_max`, one instance per seed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PlantedSummary {
    pub problem: String,
    pub instances: usize,
    pub decided_yes: usize,
    pub reduced: usize,
    /// Seeds of planted positives the kernel rejected.
    pub wrong_no: Vec<u64>,
    /// Seeds whose kernel broke the size bound.
    pub bound_violations: Vec<u64>,
    pub max_kernel_n: usize,
    pub max_input_n: usize,
}

impl PlantedSummary {
    pub fn passed(&self) -> bool {
        self.wrong_no.is_empty() && self.bound_violations.is_empty()
    }
}

/// The planted instance used for `seed` in `planted_size_check`.
pub fn planted_case(
    problem: Problem,
    seed: u64,
    n_lo: usize,
    n_hi: usize,
    r_lo: usize,
    r_hi: usize,
) -> crate::generate::Planted {
    let mut rng = rng_for(seed ^ 0x5DEE_CE66_D1CE_4E5B);
    let (lo, hi) = ((n_lo as f64).ln(), (n_hi as f64).ln());
    let n = (rng.random_range(lo..=hi).exp().round() as usize).clamp(n_lo, n_hi);
    let r = rng.random_range(r_lo..=r_hi);
    crate::generate::plant_instance(&crate::generate::PlantSpec {
        problem,
        n,
        r,
        seed,
        params: Default::default(),
    })
}

pub fn planted_size_check(
    problem: Problem,
    seeds: std::ops::Range<u64>,
    n_lo: usize,
    n_hi: usize,
    r_max: usize,
) -> PlantedSummary {
    struct Row {
        seed: u64,
        n: usize,
        decided: Option<bool>,
        kernel_n: Option<usize>,
        ok: bool,
    }
    let rows: Vec<Row> = seeds
        .into_par_iter()
        .map(|seed| {
            let inst = planted_case(problem, seed, n_lo, n_hi, 0, r_max).instance;
            let out = kernelize(&inst);
            let ok = match &out.result {
                KernelResult::Reduced(r) => kernel_bound_holds(r) && split_undecided_bound_holds(&inst, &out),
                KernelResult::Decided(_) => true,
            };
            Row {
                seed,
                n: inst.graph.n(),
                decided: out.decided(),
                kernel_n: out.reduced().map(|r| r.graph.n()),
                ok,
            }
        })
        .collect();
    let mut s = PlantedSummary {
        problem: problem.tag().into(),
        ..Default::default()
    };
    for Row {
        seed,
        n,
        decided,
        kernel_n,
        ok,
    } in rows
    {
        s.instances += 1;
        s.max_input_n = s.max_input_n.max(n);
        match decided {
            Some(true) => s.decided_yes += 1,
            Some(false) => s.wrong_no.push(seed),
            None => s.reduced += 1,
        }
        s.max_kernel_n = s.max_kernel_n.max(kernel_n.unwrap_or(0));
        if !ok {
            s.bound_violations.push(seed);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn equivalence_examples() {
        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(
            check_equivalence(Problem::StarDeletion, &k3, 1),
            Equivalence::Match(true)
        );
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            check_equivalence(Problem::TpAddition, &p4, 0),
            Equivalence::Match(false)
        );
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(
            check_equivalence(Problem::CliqueIsDeletion, &c4, 3),
            Equivalence::Match(true)
        );
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        assert_eq!(
            check_equivalence(Problem::SplitAddition, &c5, 1),
            Equivalence::Match(false)
        );
        assert_eq!(
            check_equivalence(Problem::SplitAddition, &c5, 2),
            Equivalence::Match(true)
        );
    }

    #[test]
    fn refusal_is_skipped() {
        let g = random_graph(30, 0.5, 1);
        assert!(matches!(
            check_equivalence(Problem::StarDeletion, &g, 5),
            Equivalence::Skipped(_)
        ));
    }

    #[test]
    fn small_exhaustive_runs() {
        let r = exhaustive_verify(Problem::StarDeletion, 4, 2);
        assert_eq!(r.instances, (1 + 1 + 2 + 8 + 64) * 3);
        assert!(r.passed(), "{r:?}");
        for p in [Problem::SplitAddition, Problem::TpAddition] {
            let r = exhaustive_verify(p, 5, 3);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn bounds() {
        let inst = |p, n, k| ProblemInstance::new(p, Graph::new(n), k);
        assert!(kernel_bound_holds(&inst(Problem::StarDeletion, 7, 1)));
        assert!(!kernel_bound_holds(&inst(Problem::StarDeletion, 8, 1)));
        assert!(kernel_bound_holds(&inst(Problem::TpAddition, 4, 1)));
        assert!(!kernel_bound_holds(&inst(Problem::TpAddition, 5, 1)));
        // 11 + 6 sqrt(2) + 8 = 27.49
        assert!(kernel_bound_holds(&inst(Problem::SplitAddition, 27, 1)));
        assert!(!kernel_bound_holds(&inst(Problem::SplitAddition, 28, 1)));
    }
}
