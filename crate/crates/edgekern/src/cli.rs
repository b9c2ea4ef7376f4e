//! Command-line front end.
//!
//! Exit codes: 0 success (whatever the outcome), 1 verification failure or
//! output error, 2 usage error, 3 unreadable or malformed input, 4 instance
//! too large for the exact solver.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use edgekern_core::oracle::solve_exact;
use edgekern_core::{kernelize, Graph, GraphClass, KernelResult, OracleError, Problem, ProblemInstance};
use thiserror::Error;

use crate::generate::{generate_member_with, plant_instance, MemberParams, PlantSpec};
use crate::harness::{exhaustive_verify, sample_verify, VerificationReport};
use crate::io::{read_graph, read_graph_and_seed, write_edge_list, write_graph_with_comments, ReadError};
use crate::report::{trace_json, RunReport};

#[derive(Debug, Parser)]
#[command(
    name = "edgekern",
    version,
    about = "Polynomial kernels for edge modification problems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce an instance to an equivalent kernel.
    Kernelize(KernelizeArgs),
    /// Decide an instance with the exact solver.
    Solve(SolveArgs),
    /// Generate a class member or a planted instance.
    Generate(GenerateArgs),
    /// Check the kernels against the oracles.
    Verify(VerifyArgs),
}

fn parse_problem(s: &str) -> Result<Problem, String> {
    s.parse().map_err(|_| {
        let tags: Vec<&str> = Problem::ALL.iter().map(|p| p.tag()).collect();
        format!("unknown problem {s:?}; expected one of {}", tags.join(", "))
    })
}

fn parse_class(s: &str) -> Result<GraphClass, String> {
    s.parse().map_err(|_| {
        let tags: Vec<&str> = GraphClass::ALL.iter().map(|c| c.tag()).collect();
        format!("unknown class {s:?}; expected one of {}", tags.join(", "))
    })
}

#[derive(Debug, Args)]
pub struct KernelizeArgs {
    #[arg(long, value_parser = parse_problem)]
    pub problem: Problem,
    #[arg(long, allow_negative_numbers = true)]
    pub k: i64,
    /// Graph file, or `-` for standard input.
    #[arg(long)]
    pub input: String,
    /// Where to write the kernel (`-` for standard output).
    #[arg(long)]
    pub output: Option<String>,
    /// Where to write the JSON run report.
    #[arg(long)]
    pub report: Option<String>,
    /// Where to write the JSON reduction trace.
    #[arg(long)]
    pub trace: Option<String>,
    /// Include wall-clock time in the report (makes it nondeterministic).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_parser = parse_problem)]
    pub problem: Problem,
    #[arg(long, allow_negative_numbers = true)]
    pub k: i64,
    #[arg(long)]
    pub input: String,
    /// Where to write the edit set of a yes answer.
    #[arg(long)]
    pub witness: Option<String>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["class", "problem"]))]
pub struct GenerateArgs {
    /// Generate a member of this class.
    #[arg(long, value_parser = parse_class)]
    pub class: Option<GraphClass>,
    /// Generate a planted instance of this problem.
    #[arg(long, value_parser = parse_problem)]
    pub problem: Option<Problem>,
    #[arg(long)]
    pub n: usize,
    /// Number of planted edits (the budget of the instance).
    #[arg(long, default_value_t = 0, requires = "problem")]
    pub perturb: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<String>,
    /// Clique size for clique+IS and split members.
    #[arg(long)]
    pub clique_size: Option<usize>,
    /// Edge probability between the two sides of split members.
    #[arg(long)]
    pub cross_prob: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_problem)]
    pub problem: Problem,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(0..=7))]
    pub n_max: u64,
    #[arg(long, default_value_t = 3)]
    pub k_max: u32,
    /// Additional random instances slightly above `n-max`.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub report: Option<String>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Input(#[from] ReadError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("cannot write {path}: {source}")]
    Output { path: String, source: std::io::Error },
    #[error("verification failed")]
    Failed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed | CliError::Output { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Oracle(_) => 4,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            if !matches!(e, CliError::Failed) {
                let _ = writeln!(err, "error: {e}");
            }
            e.exit_code()
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Kernelize(a) => cmd_kernelize(a, out, err),
        Command::Solve(a) => cmd_solve(a, out),
        Command::Generate(a) => cmd_generate(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    }
}

/// Writes `text` to `path`, or to `out` when `path` is `-`.
fn emit(path: &str, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let res = if path == "-" {
        out.write_all(text.as_bytes())
    } else {
        fs::write(path, text)
    };
    res.map_err(|source| CliError::Output {
        path: path.into(),
        source,
    })
}

fn say(out: &mut dyn Write, text: std::fmt::Arguments) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(|source| CliError::Output {
        path: "<stdout>".into(),
        source,
    })
}

/// Smallest instance with the given answer: the empty graph at budget 0, or a
/// minimal obstruction at budget 0.
pub fn trivial_instance(problem: Problem, answer: bool) -> ProblemInstance {
    let g = if answer {
        Graph::new(0)
    } else {
        let edges: &[(usize, usize)] = match problem {
            Problem::CliqueIsDeletion => &[(0, 1), (1, 2)],
            Problem::SplitAddition => &[(0, 1), (2, 3)],
            Problem::SplitDeletion => &[(0, 1), (1, 2), (2, 3), (0, 3)],
            Problem::TpAddition | Problem::StarDeletion => &[(0, 1), (1, 2), (2, 3)],
        };
        let n = edges.iter().map(|e| e.1).max().unwrap_or(0) + 1;
        Graph::from_edges(n, edges).expect("fixed obstruction")
    };
    ProblemInstance::new(problem, g, 0)
}

fn instance_comments(inst: &ProblemInstance) -> Vec<String> {
    vec![format!("problem = {}", inst.problem.tag()), format!("k = {}", inst.k)]
}

fn cmd_kernelize(a: KernelizeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let (g, seed) = read_graph_and_seed(&a.input)?;
    let inst = ProblemInstance::new(a.problem, g, a.k);
    let start = Instant::now();
    let outcome = kernelize(&inst);
    let elapsed = start.elapsed();
    let mut report = RunReport::new(&inst, &outcome, seed);
    if a.timing {
        report.elapsed_ms = Some(elapsed.as_millis() as u64);
    }
    let to_stdout = [&a.output, &a.report, &a.trace]
        .iter()
        .any(|p| p.as_deref() == Some("-"));
    let summary: &mut dyn Write = if to_stdout { err } else { &mut *out };
    match &outcome.result {
        KernelResult::Decided(b) => say(summary, format_args!("outcome: {}", if *b { "yes" } else { "no" }))?,
        KernelResult::Reduced(r) => say(
            summary,
            format_args!("outcome: reduced n={} m={} k={}", r.graph.n(), r.graph.m(), r.k),
        )?,
    }
    if let Some(path) = &a.output {
        let kernel = match &outcome.result {
            KernelResult::Reduced(r) => r.clone(),
            KernelResult::Decided(b) => trivial_instance(a.problem, *b),
        };
        let text = write_graph_with_comments(&kernel.graph, &instance_comments(&kernel));
        emit(path, &text, out)?;
    }
    if let Some(path) = &a.report {
        emit(path, &report.to_json(), out)?;
    }
    if let Some(path) = &a.trace {
        emit(path, &trace_json(&outcome.trace), out)?;
    }
    Ok(())
}

fn cmd_solve(a: SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let inst = ProblemInstance::new(a.problem, read_graph(&a.input)?, a.k);
    let d = solve_exact(&inst)?;
    say(out, format_args!("{}", if d.answer { "YES" } else { "NO" }))?;
    if let (Some(path), Some(w)) = (&a.witness, &d.witness) {
        let verb = match a.problem.mode() {
            edgekern_core::EditMode::Add => "add",
            edgekern_core::EditMode::Delete => "delete",
        };
        let text = write_edge_list(w, &format!("{} edges to {verb}", w.len()));
        emit(path, &text, out)?;
    }
    Ok(())
}

fn cmd_generate(a: GenerateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    if a.cross_prob.is_some_and(|p| !(0.0..=1.0).contains(&p)) {
        return Err(CliError::Usage("--cross-prob must lie in [0, 1]".into()));
    }
    let params = MemberParams {
        clique_size: a.clique_size,
        cross_prob: a.cross_prob,
    };
    let (g, comments) = match (a.class, a.problem) {
        (Some(class), _) => {
            let g = generate_member_with(class, a.n, a.seed, &params);
            (
                g,
                vec![format!("class = {}", class.tag()), format!("seed = {}", a.seed)],
            )
        }
        (None, Some(problem)) => {
            let p = plant_instance(&PlantSpec {
                problem,
                n: a.n,
                r: a.perturb,
                seed: a.seed,
                params,
            });
            let mut comments = instance_comments(&p.instance);
            comments.push(format!("seed = {}", a.seed));
            if p.r < a.perturb {
                comments.push(format!("perturbation capped at {} edits", p.r));
            }
            (p.instance.graph, comments)
        }
        (None, None) => unreachable!("clap enforces the group"),
    };
    let text = write_graph_with_comments(&g, &comments);
    emit(a.output.as_deref().unwrap_or("-"), &text, out)
}

fn print_report(r: &VerificationReport, out: &mut dyn Write) -> Result<(), CliError> {
    say(out, format_args!("problem: {}", r.problem))?;
    say(out, format_args!("instances: {}", r.instances))?;
    say(out, format_args!("decided: {}", r.decided))?;
    say(out, format_args!("reduced: {}", r.reduced))?;
    say(out, format_args!("skipped: {}", r.skipped))?;
    for (name, t) in &r.rules {
        say(
            out,
            format_args!("rule {name}: fired {} violations {}", t.fired, t.violations),
        )?;
    }
    say(out, format_args!("max kernel n: {}", r.max_kernel_n))?;
    say(out, format_args!("size bound violations: {}", r.size_bound_violations))?;
    for m in r.mismatches.iter().take(10) {
        say(
            out,
            format_args!(
                "mismatch: n={} k={} seed={:?} edges={:?} oracle={} kernel={:?}",
                m.n, m.k, m.seed, m.edges, m.expected, m.kernel
            ),
        )?;
    }
    for v in r.rule_violations.iter().take(10) {
        say(
            out,
            format_args!(
                "rule violation: {} at step {} n={} k={} edges={:?}",
                v.rule, v.step, v.n, v.k, v.edges
            ),
        )?;
    }
    say(out, format_args!("mismatches: {}", r.mismatches.len()))
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let n_max = a.n_max as usize;
    let mut report = exhaustive_verify(a.problem, n_max, a.k_max as i64);
    if a.samples > 0 {
        report.merge(sample_verify(
            a.problem,
            n_max + 1,
            n_max + 6,
            a.k_max as i64,
            a.samples,
            a.seed,
        ));
    }
    print_report(&report, out)?;
    if let Some(path) = &a.report {
        let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        emit(path, &json, out)?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use edgekern_core::is_member;

    #[test]
    fn trivial_instances_have_the_right_answer() {
        for p in Problem::ALL {
            assert!(is_member(p.class(), &trivial_instance(p, true).graph));
            let no = trivial_instance(p, false);
            assert!(!is_member(p.class(), &no.graph), "{p}");
            assert!(!solve_exact(&no).unwrap().answer);
        }
    }

    #[test]
    fn usage_errors_exit_2() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(
            run(
                ["edgekern", "solve", "--problem", "nope", "--k", "1", "--input", "x"],
                &mut out,
                &mut err
            ),
            2
        );
        assert!(String::from_utf8(err).unwrap().contains("unknown problem"));
        let mut err = Vec::new();
        assert_eq!(
            run(
                ["edgekern", "verify", "--problem", "tp-add", "--n-max", "9"],
                &mut out,
                &mut err
            ),
            2
        );
        let mut err = Vec::new();
        assert_eq!(run(["edgekern", "generate", "--n", "3"], &mut out, &mut err), 2);
    }
}
