//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use edgekern::cli;
use edgekern::generate::{plant_instance, MemberParams, PlantSpec};
use edgekern::harness::{
    check_equivalence, clique_degree_invariant_holds, exhaustive_verify, planted_case, planted_size_check, Equivalence,
    VerificationReport,
};
use edgekern_core::kernel::clique_is::{kernelize_clique_is, CliqueIsConfig};
use edgekern_core::oracle::{generic_solve, graph_from_mask, solve_exact};
use edgekern_core::{kernelize, Graph, KernelResult, Problem, ProblemInstance};

const EXHAUSTIVE_N: usize = 6;
const EXHAUSTIVE_K: i64 = 4;
const PLANTED_SEEDS: u64 = 1000;
const PLANTED_N: (usize, usize) = (10, 2000);
const PLANTED_R: usize = 20;
const CLIQUE_SEEDS: u64 = 200;
const CLIQUE_N: (usize, usize) = (60, 1500);
const CLIQUE_K: (usize, usize) = (300, 1000);
const SPLIT_LIMIT: Duration = Duration::from_secs(10);
const STAR_LIMIT: Duration = Duration::from_secs(5);

struct Suite {
    failed: usize,
}

impl Suite {
    fn report(&mut self, id: u32, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {id}: {detail}");
        if !ok {
            self.failed += 1;
        }
    }
}

const REQUIRED_RULES: &[(Problem, &[&str])] = &[
    (
        Problem::CliqueIsDeletion,
        &["clique-low-degree", "clique-log-degree", "clique-high-degree"],
    ),
    (
        Problem::SplitAddition,
        &[
            "split-I-a",
            "split-I-b",
            "split-K-a",
            "split-K-b",
            "split-K-c",
            "split-red-a",
            "split-red-b",
            "split-red-c",
            "split-unlabel",
        ],
    ),
    (Problem::TpAddition, &["tp-diagonal", "tp-modulator", "tp-size"]),
    (
        Problem::StarDeletion,
        &[
            "star-cleanup",
            "star-center-label-a",
            "star-center-label-b",
            "star-merge",
            "star-trim",
            "star-size",
        ],
    ),
];

fn exhaustive(suite: &mut Suite) {
    let reports: Vec<VerificationReport> = Problem::ALL
        .iter()
        .map(|&p| exhaustive_verify(p, EXHAUSTIVE_N, EXHAUSTIVE_K))
        .collect();
    let mismatches: usize = reports.iter().map(|r| r.mismatches.len()).sum();
    let skipped: usize = reports.iter().map(|r| r.skipped).sum();
    let instances: usize = reports.iter().map(|r| r.instances).sum();
    suite.report(
        1,
        mismatches == 0 && skipped == 0,
        format!("{instances} instances (n <= {EXHAUSTIVE_N}, k <= {EXHAUSTIVE_K}, 5 problems), {mismatches} mismatches, {skipped} skipped"),
    );

    let violations: usize = reports.iter().map(|r| r.rule_violations.len()).sum();
    let checked: usize = reports.iter().flat_map(|r| r.rules.values()).map(|t| t.checked).sum();
    let mut never_fired = Vec::new();
    for (problem, rules) in REQUIRED_RULES {
        let r = &reports[Problem::ALL.iter().position(|p| p == problem).unwrap()];
        for &name in *rules {
            if r.rules.get(name).is_none_or(|t| t.fired == 0) {
                never_fired.push(name);
            }
        }
    }
    suite.report(
        2,
        violations == 0 && never_fired.is_empty(),
        format!("{checked} rule applications checked, {violations} violations, rules never exercised: {never_fired:?}"),
    );
}

fn planted_bounds(suite: &mut Suite) {
    let mut parts = Vec::new();
    let mut ok = true;
    for problem in [
        Problem::StarDeletion,
        Problem::TpAddition,
        Problem::SplitAddition,
        Problem::SplitDeletion,
    ] {
        let s = planted_size_check(problem, 0..PLANTED_SEEDS, PLANTED_N.0, PLANTED_N.1, PLANTED_R);
        ok &= s.passed();
        parts.push(format!(
            "{}: {} instances, max kernel n {}, {} bound violations, {} wrongly rejected",
            s.problem,
            s.instances,
            s.max_kernel_n,
            s.bound_violations.len(),
            s.wrong_no.len()
        ));
    }
    suite.report(3, ok, parts.join("; "));
}

fn clique_invariants(suite: &mut Suite) {
    let mut degree_failures = 0;
    let mut bound_failures = 0;
    let mut wrong_no = 0;
    let mut undecided = 0;
    let free = CliqueIsConfig {
        enable_size_rejection: false,
        ..CliqueIsConfig::default()
    };
    for seed in 0..CLIQUE_SEEDS {
        let inst = planted_case(
            Problem::CliqueIsDeletion,
            seed,
            CLIQUE_N.0,
            CLIQUE_N.1,
            CLIQUE_K.0,
            CLIQUE_K.1,
        )
        .instance;
        for cfg in [CliqueIsConfig::default(), free] {
            let out = kernelize_clique_is(&inst.graph, inst.k, &cfg);
            if !clique_degree_invariant_holds(&inst, &out) {
                degree_failures += 1;
            }
            match &out.result {
                KernelResult::Decided(false) => wrong_no += 1,
                KernelResult::Decided(true) => {}
                KernelResult::Reduced(r) => {
                    undecided += 1;
                    if r.k > 257 && !edgekern::harness::kernel_bound_holds(r) {
                        bound_failures += 1;
                    }
                }
            }
        }
    }
    // small budgets too, where only the degree invariant applies
    for seed in 0..PLANTED_SEEDS {
        let inst = planted_case(Problem::CliqueIsDeletion, seed, PLANTED_N.0, 400, 0, PLANTED_R).instance;
        if !clique_degree_invariant_holds(&inst, &kernelize(&inst)) {
            degree_failures += 1;
        }
    }
    suite.report(
        4,
        degree_failures == 0 && bound_failures == 0 && wrong_no == 0,
        format!(
            "{degree_failures} degree invariant failures, {bound_failures} of {undecided} undecided outputs over 2k/log2(k)+1 (k in [{}, {}]), {wrong_no} planted positives rejected",
            CLIQUE_K.0, CLIQUE_K.1
        ),
    );
}

fn oracle_cross_validation(suite: &mut Suite) {
    let mut mismatches = 0;
    let mut instances = 0;
    for n in 0..=5usize {
        for mask in 0..1u64 << (n * n.saturating_sub(1) / 2) {
            let g = graph_from_mask(n, mask);
            for problem in Problem::ALL {
                for k in 0..=3 {
                    let inst = ProblemInstance::new(problem, g.clone(), k);
                    instances += 1;
                    let a = solve_exact(&inst).map(|d| d.answer);
                    let b = generic_solve(&inst).map(|d| d.answer);
                    if a.is_err() || a.ok() != b.ok() {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    suite.report(
        5,
        mismatches == 0,
        format!("{instances} instances (n <= 5, k <= 3), {mismatches} mismatches"),
    );
}

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).unwrap()
}

fn micro_examples(suite: &mut Suite) {
    let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
    let two_k2 = graph(4, &[(0, 1), (2, 3)]);
    let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
    let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
    let cases = [
        (Problem::TpAddition, &p4, 0, false),
        (Problem::TpAddition, &p4, 1, true),
        (Problem::SplitAddition, &two_k2, 0, false),
        (Problem::SplitAddition, &two_k2, 1, true),
        (Problem::SplitAddition, &c5, 1, false),
        (Problem::SplitAddition, &c5, 2, true),
        (Problem::StarDeletion, &k3, 1, true),
        (Problem::StarDeletion, &k4, 2, false),
        (Problem::StarDeletion, &k4, 3, true),
        (Problem::CliqueIsDeletion, &c4, 2, false),
        (Problem::CliqueIsDeletion, &c4, 3, true),
    ];
    let mut wrong = Vec::new();
    for (problem, g, k, expected) in cases {
        let inst = ProblemInstance::new(problem, g.clone(), k);
        let brute = generic_solve(&inst).unwrap().answer;
        let exact = solve_exact(&inst).unwrap().answer;
        let kernel = check_equivalence(problem, g, k);
        if brute != expected || exact != expected || kernel != Equivalence::Match(expected) {
            wrong.push(format!("({problem}, n={}, k={k})", g.n()));
        }
    }
    suite.report(
        6,
        wrong.is_empty(),
        format!("{} examples, wrong: {wrong:?}", cases.len()),
    );
}

fn timed_kernel(spec: PlantSpec) -> (Duration, ProblemInstance, KernelResult) {
    let inst = plant_instance(&spec).instance;
    let start = Instant::now();
    let out = kernelize(&inst);
    (start.elapsed(), inst, out.result)
}

fn performance(suite: &mut Suite) {
    let (split_t, split_in, split_out) = timed_kernel(PlantSpec {
        problem: Problem::SplitAddition,
        n: 100_000,
        r: 50,
        seed: 1,
        params: MemberParams {
            clique_size: Some(500),
            cross_prob: Some(0.0035),
        },
    });
    let (star_t, star_in, star_out) = timed_kernel(PlantSpec {
        problem: Problem::StarDeletion,
        n: 100_000,
        r: 50,
        seed: 1,
        params: MemberParams::default(),
    });
    let sound = !matches!(split_out, KernelResult::Decided(false)) && !matches!(star_out, KernelResult::Decided(false));
    suite.report(
        7,
        sound && split_t < SPLIT_LIMIT && star_t < STAR_LIMIT,
        format!(
            "split-add n={} m={} k=50: {:.2}s (limit {}s); star-del n={} m={} k=50: {:.2}s (limit {}s)",
            split_in.graph.n(),
            split_in.graph.m(),
            split_t.as_secs_f64(),
            SPLIT_LIMIT.as_secs(),
            star_in.graph.n(),
            star_in.graph.m(),
            star_t.as_secs_f64(),
            STAR_LIMIT.as_secs()
        ),
    );
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(
        std::iter::once("edgekern").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, out)
}

fn determinism(suite: &mut Suite) {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let mut same = true;
    let mut runs = Vec::new();
    for round in 0..2 {
        let mut files = Vec::new();
        for problem in Problem::ALL {
            let tag = problem.tag();
            let g = path(&format!("{tag}-{round}.gr"));
            let (code, _) = run_cli(&[
                "generate",
                "--problem",
                tag,
                "--n",
                "300",
                "--perturb",
                "12",
                "--seed",
                "42",
                "--output",
                &g,
            ]);
            same &= code == 0;
            let kernel = path(&format!("{tag}-{round}.kernel"));
            let report = path(&format!("{tag}-{round}.json"));
            let trace = path(&format!("{tag}-{round}.trace"));
            let (code, stdout) = run_cli(&[
                "kernelize",
                "--problem",
                tag,
                "--k",
                "12",
                "--input",
                &g,
                "--output",
                &kernel,
                "--report",
                &report,
                "--trace",
                &trace,
            ]);
            same &= code == 0;
            files.push(stdout);
            for f in [&g, &kernel, &report, &trace] {
                files.push(std::fs::read(f).unwrap());
            }
        }
        let (code, verify) = run_cli(&[
            "verify",
            "--problem",
            "split-add",
            "--n-max",
            "5",
            "--k-max",
            "3",
            "--samples",
            "50",
            "--seed",
            "9",
        ]);
        same &= code == 0;
        files.push(verify);
        runs.push(files);
    }
    same &= runs[0] == runs[1];
    // the parallel sweep must not depend on the number of workers
    let sweep = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| serde_json::to_string(&exhaustive_verify(Problem::StarDeletion, 5, 3)).unwrap())
    };
    let workers_agree = sweep(1) == sweep(4);
    suite.report(
        8,
        same && workers_agree,
        format!(
            "repeated generate/kernelize/verify byte-identical: {same}; sweep identical for 1 and 4 workers: {workers_agree}"
        ),
    );
}

fn main() -> ExitCode {
    let mut suite = Suite { failed: 0 };
    exhaustive(&mut suite);
    planted_bounds(&mut suite);
    clique_invariants(&mut suite);
    oracle_cross_validation(&mut suite);
    micro_examples(&mut suite);
    performance(&mut suite);
    determinism(&mut suite);
    if suite.failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", suite.failed);
        ExitCode::FAILURE
    }
}
