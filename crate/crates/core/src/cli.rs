//! The `gasp` command line: generate, solve, verify, reduce, bench.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::generators::{
    gen_example, gen_random, make_copyable, reduce_clique_to_ns, reduce_hitting_set_to_core, reduce_mcc_to_ns,
    witness_clique, witness_hitting_set, witness_mcc, WorkedExample, RandomSpec, RandomTopology, ReductionMetadata,
    SimpleGraph,
};
use crate::model::{Assignment, Instance};
use crate::stability::{verify, Concept, Verdict};
use crate::tree_dp::ChildStrategy;
use crate::io;
use crate::solver::{self, Algorithm, SolveOptions};

pub const EXIT_FOUND: u8 = 0;
pub const EXIT_NONE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_UNSUPPORTED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "gasp", version, about = "Stable group activity selection on social networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a worked example or a seeded random instance.
    Generate(GenerateArgs),
    /// Find a stable assignment.
    Solve(SolveArgs),
    /// Check an assignment and print STABLE or a witness.
    Verify(VerifyArgs),
    /// Build a hardness-reduction instance from a problem file.
    Reduce(ReduceArgs),
    /// Run the seeded cross-check suites.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Example {
    Stalker,
    NoIs,
    NoCore,
    Single,
}

#[derive(clap::Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum, conflicts_with = "topology")]
    example: Option<Example>,
    /// Activities for the stalker example.
    #[arg(long, default_value_t = 1)]
    activities: usize,
    #[arg(long)]
    topology: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short = 'n', default_value_t = 6)]
    players: usize,
    #[arg(long, short = 'p', default_value_t = 2)]
    p: usize,
    #[arg(long, default_value_t = 0.5)]
    approval: f64,
    #[arg(long, default_value_t = 0.2)]
    ties: f64,
    /// Replace each activity by n equivalent copies.
    #[arg(long)]
    copyable: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}


#[derive(clap::Args, Debug)]
struct SolveArgs {
    #[arg(long, value_parser = parse_concept)]
    concept: Concept,
    #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
    algo: Algorithm,
    #[arg(long = "in")]
    input: PathBuf,
    /// Cap on oracle and enumeration steps.
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads for the oracle; 1 keeps it sequential.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Switches the tree DP to randomized child coloring with this seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Failure probability bound for randomized coloring.
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    /// Also write the assignment here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_concept)]
    concept: Concept,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    assignment: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Reduction {
    Clique,
    HittingSet,
    Mcc,
}

#[derive(clap::Args, Debug)]
struct ReduceArgs {
    #[arg(value_enum)]
    kind: Reduction,
    /// Problem file; see the README for the three layouts.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output prefix: writes PREFIX.json, PREFIX.meta.json and, when the
    /// problem file has a solution, PREFIX.witness.json.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Desk,
}

#[derive(clap::Args, Debug)]
struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Suite::Desk)]
    suite: Suite,
    /// Add a wall-clock column.
    #[arg(long)]
    timing: bool,
}

fn parse_concept(s: &str) -> std::result::Result<Concept, String> {
    s.parse::<Concept>().map_err(|e| e.to_string())
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_FOUND };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Generate(a) => generate(a, out),
        Command::Solve(a) => solve(a, out),
        Command::Verify(a) => verify_cmd(a, out),
        Command::Reduce(a) => reduce(a, out),
        Command::Bench(a) => bench(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::BudgetExceeded(_) | Error::Unsupported(_) | Error::Precondition(_) => EXIT_UNSUPPORTED,
                Error::Invalid(_) | Error::Parse(_) | Error::Io(_) => EXIT_INVALID,
            }
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn generate(a: GenerateArgs, out: &mut dyn Write) -> Result<u8> {
    let inst = match (a.example, &a.topology) {
        (Some(ex), _) => gen_example(match ex {
            Example::Stalker => WorkedExample::Stalker(a.activities.max(1)),
            Example::NoIs => WorkedExample::NoIs,
            Example::NoCore => WorkedExample::NoCore,
            Example::Single => WorkedExample::Single,
        }),
        (None, Some(t)) => {
            let topology: RandomTopology = t.parse()?;
            if a.players == 0 || a.p == 0 {
                return Err(Error::Precondition("need at least one player and one activity".into()));
            }
            if !(0.0..=1.0).contains(&a.approval) || !(0.0..=1.0).contains(&a.ties) {
                return Err(Error::Precondition("densities must lie in [0, 1]".into()));
            }
            gen_random(&RandomSpec {
                seed: a.seed,
                topology,
                n: a.players,
                p: a.p,
                approval: a.approval,
                ties: a.ties,
            })
        }
        (None, None) => return Err(Error::Parse("pass --example or --topology".into())),
    };
    let inst = if a.copyable { make_copyable(&inst) } else { inst };
    let text = io::render_instance(&inst);
    match a.out {
        Some(path) => std::fs::write(path, text)?,
        None => emit(out, &text)?,
    }
    Ok(EXIT_FOUND)
}

fn solve(a: SolveArgs, out: &mut dyn Write) -> Result<u8> {
    let inst = io::read_instance(&a.input)?;
    if a.seed.is_some() && !(a.epsilon > 0.0 && a.epsilon < 1.0) {
        return Err(Error::Precondition("epsilon must lie in (0, 1)".into()));
    }
    let strategy = match a.seed {
        Some(seed) => ChildStrategy::Randomized { seed, epsilon: a.epsilon },
        None => ChildStrategy::Deterministic,
    };
    let opts = SolveOptions { budget: a.budget, jobs: a.jobs.max(1), strategy };
    match solver::solve(&inst, a.concept, a.algo, &opts)? {
        Some(pi) => {
            let line = io::render_assignment(&inst, &pi);
            if let Some(path) = &a.out {
                std::fs::write(path, format!("{line}\n"))?;
            }
            emit(out, &format!("{line}\n"))?;
            Ok(EXIT_FOUND)
        }
        None => {
            emit(out, "NONE\n")?;
            Ok(EXIT_NONE)
        }
    }
}

fn verify_cmd(a: VerifyArgs, out: &mut dyn Write) -> Result<u8> {
    let inst = io::read_instance(&a.input)?;
    let pi = io::read_assignment(&inst, &a.assignment)?;
    match verify(&inst, &pi, a.concept) {
        Verdict::Stable => emit(out, "STABLE\n")?,
        Verdict::Unstable(w) => emit(out, &format!("UNSTABLE\n{}\n", w.render(&inst)))?,
    }
    Ok(EXIT_FOUND)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphProblem {
    vertices: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    k: Option<usize>,
    #[serde(default)]
    colors: Option<Vec<usize>>,
    #[serde(default)]
    solution: Option<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SetProblem {
    universe: usize,
    sets: Vec<Vec<usize>>,
    k: usize,
    #[serde(default)]
    solution: Option<Vec<usize>>,
}

fn zero_based(v: &[usize], what: &str) -> Result<Vec<usize>> {
    v.iter()
        .map(|&x| x.checked_sub(1).ok_or_else(|| Error::Parse(format!("{what} are 1-based, found 0"))))
        .collect()
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    serde_json::from_str(&std::fs::read_to_string(path)?).map_err(|e| Error::Parse(e.to_string()))
}

fn reduce(a: ReduceArgs, out: &mut dyn Write) -> Result<u8> {
    let (inst, meta, witness): (Instance, ReductionMetadata, Option<Assignment>) = match a.kind {
        Reduction::Clique | Reduction::Mcc => {
            let prob: GraphProblem = read_json(&a.input)?;
            let mut edges = Vec::with_capacity(prob.edges.len());
            for [u, v] in &prob.edges {
                let e = zero_based(&[*u, *v], "vertices")?;
                if e[0] >= prob.vertices || e[1] >= prob.vertices {
                    return Err(Error::Parse(format!("edge ({u}, {v}) outside 1..={}", prob.vertices)));
                }
                edges.push((e[0], e[1]));
            }
            let g = SimpleGraph::new(prob.vertices, &edges);
            let solution = prob.solution.as_deref().map(|s| zero_based(s, "vertices")).transpose()?;
            if let Reduction::Clique = a.kind {
                let k = prob.k.ok_or_else(|| Error::Parse("clique problem needs k".into()))?;
                let (inst, meta) = reduce_clique_to_ns(&g, k)?;
                let w = solution.map(|s| witness_clique(&g, &inst, &meta, &s)).transpose()?;
                (inst, meta, w)
            } else {
                let colors = prob.colors.ok_or_else(|| Error::Parse("mcc problem needs colors".into()))?;
                let (inst, meta) = reduce_mcc_to_ns(&g, &colors)?;
                let w = solution.map(|s| witness_mcc(&g, &colors, &inst, &meta, &s)).transpose()?;
                (inst, meta, w)
            }
        }
        Reduction::HittingSet => {
            let prob: SetProblem = read_json(&a.input)?;
            let family = prob.sets.iter().map(|s| zero_based(s, "elements")).collect::<Result<Vec<_>>>()?;
            let (inst, meta) = reduce_hitting_set_to_core(prob.universe, &family, prob.k)?;
            let w = prob
                .solution
                .as_deref()
                .map(|s| zero_based(s, "elements").and_then(|s| witness_hitting_set(&family, prob.k, &inst, &meta, &s)))
                .transpose()?;
            (inst, meta, w)
        }
    };
    let path = |suffix: &str| {
        let mut s = a.out.clone().into_os_string();
        s.push(suffix);
        PathBuf::from(s)
    };
    io::write_instance(&path(".json"), &inst)?;
    std::fs::write(path(".meta.json"), io::render_metadata(&meta))?;
    emit(out, &format!("players={} activities={}\n", inst.n(), inst.p()))?;
    if let Some(pi) = witness {
        std::fs::write(path(".witness.json"), format!("{}\n", io::render_assignment(&inst, &pi)))?;
        let concept = if matches!(a.kind, Reduction::HittingSet) { Concept::Core } else { Concept::Nash };
        let verdict = if verify(&inst, &pi, concept).is_stable() { "STABLE" } else { "UNSTABLE" };
        emit(out, &format!("witness {concept}: {verdict}\n"))?;
    }
    Ok(EXIT_FOUND)
}

fn bench(a: BenchArgs, out: &mut dyn Write) -> Result<u8> {
    let Suite::Desk = a.suite;
    let reports = crate::bench::desk_suite();
    emit(out, &crate::bench::render_table(&reports, a.timing))?;
    Ok(if reports.iter().all(|r| r.passed()) { EXIT_FOUND } else { EXIT_NONE })
}
