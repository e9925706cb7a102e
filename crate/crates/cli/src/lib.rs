//! Command-line front end: file handling, solver dispatch and JSON reports.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use metric_repair::format::{emit_matrix, parse_matrix, parse_simple_graph};
use metric_repair::{
    complete, exact, fpt::FptSolver, generate, reductions, Edge, Mode, Rational, RepairPlan, WeightedGraph,
};

mod report;

pub use report::{CutReport, RepairReport, StatsReport};

/// Default limit on simple cycles enumerated for `--stats` and `stats`.
pub const DEFAULT_CYCLE_BUDGET: usize = 200_000;
/// Graphs with more edges than this are refused by `--stats`.
pub const STATS_EDGE_LIMIT: usize = 40;
pub const CYCLE_BUDGET_VAR: &str = "METRIC_REPAIR_CYCLE_BUDGET";
pub const EXACT_CAP_VAR: &str = "METRIC_REPAIR_EXACT_CAP";

#[derive(Debug, Parser)]
#[command(name = "metric-repair", version, about = "Sparse metric repair for weighted graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Repair a graph and print a JSON report.
    Repair(RepairArgs),
    /// Check whether a given support admits a repair.
    Verify(VerifyArgs),
    /// Transform an instance and print the result in graph format.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Generate an instance in graph format.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Solve a cut problem exactly by subset search.
    #[command(subcommand)]
    Cut(CutCommand),
    /// Exhaustive broken-cycle statistics (small graphs only).
    Stats(InputArg),
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Input file; standard input when omitted or `-`.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Omega {
    Decrease,
    Increase,
    General,
}

impl From<Omega> for Mode {
    fn from(o: Omega) -> Mode {
        match o {
            Omega::Decrease => Mode::DecreaseOnly,
            Omega::Increase => Mode::IncreaseOnly,
            Omega::General => Mode::General,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Dmr,
    Fpt,
    Spc,
    Deficit,
    Exact,
    #[value(name = "5cycle")]
    FiveCycle,
    Iomr,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Dmr => "dmr",
            Algo::Fpt => "fpt",
            Algo::Spc => "spc",
            Algo::Deficit => "deficit",
            Algo::Exact => "exact",
            Algo::FiveCycle => "5cycle",
            Algo::Iomr => "iomr",
        }
    }

    fn supports(self, omega: Omega) -> bool {
        use Omega::*;
        match self {
            Algo::Dmr => omega == Decrease,
            Algo::Fpt | Algo::Spc | Algo::Deficit => omega != Decrease,
            Algo::Exact => true,
            Algo::FiveCycle => omega == General,
            Algo::Iomr => omega == Increase,
        }
    }
}

#[derive(Debug, Args)]
pub struct RepairArgs {
    #[command(flatten)]
    pub input: InputArg,
    #[arg(long, value_enum)]
    pub omega: Omega,
    #[arg(long, value_enum)]
    pub algo: Algo,
    /// Longest chordless cycle, for `fpt`. Defaults to the vertex count.
    #[arg(long)]
    pub sigma: Option<usize>,
    /// Largest support `fpt` may try before giving up.
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Accepted for harness compatibility; every solver is deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Include exhaustive broken-cycle statistics.
    #[arg(long)]
    pub stats: bool,
    /// Report `wall_ms` as 0 so reports are byte-identical across runs.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArg,
    #[arg(long, value_enum, default_value = "general")]
    pub omega: Omega,
    /// A support edge as `u,v`; repeat for more.
    #[arg(long = "edge", value_parser = parse_pair)]
    pub edges: Vec<(usize, usize)>,
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum ReduceCommand {
    /// Demand pairs of an unweighted graph to an increase-only instance.
    Multicut {
        #[command(flatten)]
        input: InputArg,
        /// Demand pair as `s,t`; repeat for more.
        #[arg(long = "pair", value_parser = parse_pair, required = true)]
        pairs: Vec<(usize, usize)>,
        #[command(flatten)]
        common: ReduceOptions,
    },
    /// Length-bounded s-t cut of an unweighted graph to an increase-only instance.
    Lbcut {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        length: usize,
        #[command(flatten)]
        common: ReduceOptions,
    },
    /// Increase-only instance to an equivalent general instance.
    Inc2gen {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        common: ReduceOptions,
    },
}

#[derive(Debug, Args)]
pub struct ReduceOptions {
    /// Delete terminal pairs that are already edges and record them as cut.
    #[arg(long)]
    pub force: bool,
    /// Write provenance metadata as JSON to this file.
    #[arg(long)]
    pub provenance: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Uniform random edges with integer weights.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        wmax: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random graph with no chordless cycle longer than `sigma`.
    Chordal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sigma: usize,
        #[arg(long, default_value_t = 10)]
        wmax: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Complete graph on which the fixed-order increase-only repair is far from optimal.
    IomrAdversarial {
        #[arg(long)]
        n: usize,
        /// Replace zero entries by this positive value.
        #[arg(long, value_parser = parse_weight)]
        epsilon: Option<Rational>,
    },
    /// K_n with one edge of weight n+1.
    FootnoteKn {
        #[arg(long)]
        n: usize,
    },
    /// Chain of k unit diamonds, with 2^k shortest end-to-end paths.
    Ladder {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CutCommand {
    Multicut {
        #[command(flatten)]
        input: InputArg,
        #[arg(long = "pair", value_parser = parse_pair, required = true)]
        pairs: Vec<(usize, usize)>,
        /// Subset search; the only method available.
        #[arg(long)]
        exact: bool,
    },
    Lbcut {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        exact: bool,
    },
}

fn parse_pair(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| format!("expected `u,v`, got `{text}`"))?;
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("invalid vertex `{s}`"));
    Ok((num(a)?, num(b)?))
}

fn parse_weight(text: &str) -> Result<Rational, String> {
    metric_repair::parse_rational(text).ok_or_else(|| format!("invalid rational `{text}`"))
}

/// A failed command: bad input (exit 1) or an instance with no answer (exit 2).
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Infeasible(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Infeasible(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "error: {m}"),
            Failure::Infeasible(m) => write!(f, "infeasible: {m}"),
        }
    }
}

impl From<metric_repair::Error> for Failure {
    fn from(e: metric_repair::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<metric_repair::ParseError> for Failure {
    fn from(e: metric_repair::ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

/// Parses `args` and runs the command, writing its output to `out` and any
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli.command, stdin, err) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(f) => {
            let _ = writeln!(err, "{f}");
            f.exit_code()
        }
    }
}

fn execute(command: Command, stdin: &mut dyn Read, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Repair(args) => repair(args, stdin, err),
        Command::Verify(args) => verify(args, stdin),
        Command::Reduce(cmd) => reduce(cmd, stdin),
        Command::Gen(cmd) => gen(cmd),
        Command::Cut(cmd) => cut(cmd, stdin),
        Command::Stats(input) => {
            let g = metric_repair::parse_graph(&read_input(&input, stdin)?)?;
            Ok(json(&StatsReport::compute(&g, cycle_budget()?)?))
        }
    }
}

fn read_input(arg: &InputArg, stdin: &mut dyn Read) -> Result<String, Failure> {
    match &arg.input {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Failure::Input(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn env_usize(var: &str, default: usize) -> Result<usize, Failure> {
    match std::env::var(var) {
        Ok(v) => v
            .parse()
            .map_err(|_| Failure::Input(format!("{var} must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(default),
    }
}

fn cycle_budget() -> Result<usize, Failure> {
    env_usize(CYCLE_BUDGET_VAR, DEFAULT_CYCLE_BUDGET)
}

fn exact_cap() -> Result<usize, Failure> {
    env_usize(EXACT_CAP_VAR, exact::DEFAULT_EDGE_CAP)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports serialize");
    s.push('\n');
    s
}

fn repair(args: RepairArgs, stdin: &mut dyn Read, err: &mut dyn Write) -> Outcome {
    if !args.algo.supports(args.omega) {
        return Err(Failure::Input(format!(
            "algorithm {} does not support --omega {}",
            args.algo.name(),
            Mode::from(args.omega)
        )));
    }
    let text = read_input(&args.input, stdin)?;
    let start = Instant::now();

    if args.algo == Algo::Iomr {
        let d = parse_matrix(&text)?;
        let outcome = complete::iomr_fixed(&d);
        let mut report = RepairReport::from_matrix(&d, &outcome);
        report.wall_ms = elapsed(start, args.no_timing);
        if args.stats {
            // Zero entries are not valid graph weights; this fails on them.
            let g = metric_repair::parse_graph(&text)?;
            report.stats = Some(StatsReport::compute(&g, cycle_budget()?)?);
        }
        return Ok(json(&report));
    }

    let g = metric_repair::parse_graph(&text)?;
    let mode = Mode::from(args.omega);
    let plan = match args.algo {
        Algo::Dmr => metric_repair::decrease_repair(&g),
        Algo::Spc => metric_repair::spc(&g, mode)?,
        Algo::Deficit => metric_repair::deficit_greedy(&g, mode)?,
        Algo::Exact => exact::brute_force_repair_capped(&g, mode, exact_cap()?)?,
        Algo::FiveCycle => complete::five_cycle_cover(&g)?,
        Algo::Fpt => run_fpt(&g, mode, &args, err)?,
        Algo::Iomr => unreachable!("handled above"),
    };
    let mut report = RepairReport::from_plan(args.algo.name(), &plan);
    report.wall_ms = elapsed(start, args.no_timing);
    if args.stats {
        report.stats = Some(StatsReport::compute(&g, cycle_budget()?)?);
    }
    Ok(json(&report))
}

/// General mode runs the branching search directly. Increase-only mode runs
/// it on the gadget instance, whose optimal supports are exactly the optimal
/// light covers of the input, and then repairs the input on that support.
fn run_fpt(g: &WeightedGraph, mode: Mode, args: &RepairArgs, err: &mut dyn Write) -> Result<RepairPlan, Failure> {
    let reduced;
    let target = match mode {
        Mode::General => g,
        _ => {
            reduced = reductions::increase_to_general(g).output;
            &reduced
        }
    };
    let sigma = args.sigma.unwrap_or_else(|| target.vertex_count().max(3));
    let outcome = FptSolver::new(sigma)?.with_k_max(args.kmax).solve(target)?;
    if !outcome.chordality_verified {
        let _ = writeln!(err, "warning: {sigma}-chordality assumed, not checked");
    }
    if !outcome.optimal {
        let _ = writeln!(err, "warning: branching failed; the support is not minimal");
    }
    let plan = outcome
        .plan
        .ok_or_else(|| Failure::Infeasible(format!("no repair with at most {} edges", args.kmax.unwrap_or(0))))?;
    if mode == Mode::General {
        return Ok(plan);
    }
    let support: BTreeSet<Edge> = plan.support().iter().copied().filter(|&e| g.has_edge(e)).collect();
    metric_repair::verify_support(g, &support, mode)?
        .ok_or_else(|| Failure::Infeasible("support found on the gadget instance is not a light cover".into()))
}

fn elapsed(start: Instant, disabled: bool) -> u64 {
    if disabled {
        0
    } else {
        start.elapsed().as_millis() as u64
    }
}

fn verify(args: VerifyArgs, stdin: &mut dyn Read) -> Outcome {
    let g = metric_repair::parse_graph(&read_input(&args.input, stdin)?)?;
    let mode = Mode::from(args.omega);
    if mode == Mode::DecreaseOnly {
        return Err(Failure::Input("verify supports --omega general or increase".into()));
    }
    let start = Instant::now();
    let support: BTreeSet<Edge> = args.edges.iter().map(|&(u, v)| Edge::new(u, v)).collect();
    let plan = metric_repair::verify_support(&g, &support, mode)?.ok_or_else(|| {
        Failure::Infeasible(format!(
            "the support is not a {} cover",
            if mode == Mode::General { "regular" } else { "light" }
        ))
    })?;
    let mut report = RepairReport::from_plan("verify", &plan);
    report.wall_ms = elapsed(start, args.no_timing);
    Ok(json(&report))
}

fn reduce(cmd: ReduceCommand, stdin: &mut dyn Read) -> Outcome {
    let (artifact, opts) = match cmd {
        ReduceCommand::Multicut { input, pairs, common } => {
            let g = parse_simple_graph(&read_input(&input, stdin)?)?;
            let art = if common.force {
                reductions::multicut_to_mr_forced(&g, &pairs)
            } else {
                reductions::multicut_to_mr(&g, &pairs)
            };
            (art, common)
        }
        ReduceCommand::Lbcut {
            input,
            s,
            t,
            length,
            common,
        } => {
            let g = parse_simple_graph(&read_input(&input, stdin)?)?;
            let art = if common.force {
                reductions::lbcut_to_mr_forced(&g, s, t, length)
            } else {
                reductions::lbcut_to_mr(&g, s, t, length)
            };
            (art, common)
        }
        ReduceCommand::Inc2gen { input, common } => {
            let g = metric_repair::parse_graph(&read_input(&input, stdin)?)?;
            (Ok(reductions::increase_to_general(&g)), common)
        }
    };
    let artifact = artifact.map_err(|e| match e {
        metric_repair::Error::PairIsEdge(_) => {
            Failure::Input(format!("{e}; pass --force to delete it and count it as cut"))
        }
        e => e.into(),
    })?;
    if let Some(path) = &opts.provenance {
        fs::write(path, json(&artifact))
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(metric_repair::emit_graph(&artifact.output))
}

fn gen(cmd: GenCommand) -> Outcome {
    let g = match cmd {
        GenCommand::Random { n, m, wmax, seed } => generate::random(n, m, wmax, seed)?,
        GenCommand::Chordal { n, sigma, wmax, seed } => generate::chordal(n, sigma, wmax, seed)?,
        GenCommand::IomrAdversarial { n, epsilon } => {
            let d = complete::iomr_adversarial(n)?;
            return match epsilon {
                Some(eps) => Ok(metric_repair::emit_graph(&d.to_graph(&eps)?)),
                None => Ok(emit_matrix(&d)),
            };
        }
        GenCommand::FootnoteKn { n } => generate::footnote_kn(n)?,
        GenCommand::Ladder { k } => generate::ladder(k),
    };
    Ok(metric_repair::emit_graph(&g))
}

fn cut(cmd: CutCommand, stdin: &mut dyn Read) -> Outcome {
    let cap = exact_cap()?;
    let report = match cmd {
        CutCommand::Multicut { input, pairs, .. } => {
            let g = parse_simple_graph(&read_input(&input, stdin)?)?;
            CutReport::new("multicut", exact::brute_multicut(&g, &pairs, cap)?)
        }
        CutCommand::Lbcut {
            input, s, t, length, ..
        } => {
            let g = parse_simple_graph(&read_input(&input, stdin)?)?;
            CutReport::new("lbcut", exact::brute_lbcut(&g, s, t, length, cap)?)
        }
    };
    Ok(json(&report))
}
