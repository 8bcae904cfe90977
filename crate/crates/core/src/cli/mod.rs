//! Command-line front end: `gen`, `disc`, `subset`, `lp-export`,
//! `lp-verify` and `experiment`.
//!
//! Exit codes: 0 success, 2 usage error, 3 input error, 4 resource cap
//! exceeded.

mod experiment;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::generators::{generate, GeneratorKind, GeneratorSpec};
use crate::geometry::io::{read_file, to_string};
use crate::geometry::{
    star_discrepancy, star_discrepancy_1d, star_discrepancy_2d, star_discrepancy_grid,
    DiscrepancyResult, PointSet,
};
use crate::milp::{build_model, parse_solution, verify_solution, write_lp, write_lp_relaxation};
use crate::solver::{
    bb_subset, brute_force_subset, greedy_subset, random_subset_search, BbOptions, Budget,
    InitialBound, SolverKind, SolverRecord, SubsetSelection,
};

pub use experiment::{run_experiment, ExperimentConfig, ExperimentRecord, CSV_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_CAP: i32 = 4;

/// Desk-scale default per-instance time limit.
pub const DEFAULT_TIME_LIMIT: &str = "60s";

#[derive(Debug, Parser)]
#[command(
    name = "stardisc",
    version,
    about = "Star discrepancy and optimal subset selection"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a point set.
    Gen(GenArgs),
    /// Compute the star discrepancy of a point set.
    Disc(DiscArgs),
    /// Select a low-discrepancy subset.
    Subset(SubsetArgs),
    /// Write the subset-selection MILP as an LP file.
    LpExport(LpExportArgs),
    /// Check a solver's solution file against the point set.
    LpVerify(LpVerifyArgs),
    /// Sweep generators, sizes and solvers; print a CSV table.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub kind: GeneratorKind,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long)]
    pub n: usize,
    /// Required for uniform and ilhs.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Candidates per step for ilhs.
    #[arg(long)]
    pub candidates: Option<usize>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Pick by dimension.
    Auto,
    Grid,
    Sweep2d,
    Nied1d,
}

#[derive(Debug, Args)]
pub struct DiscArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SubsetArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value = "bb")]
    pub solver: SolverKind,
    #[arg(long, default_value = DEFAULT_TIME_LIMIT, value_parser = humantime::parse_duration)]
    pub time_limit: Duration,
    /// Seed of the random solver.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sample count of the random solver; the time limit applies otherwise.
    #[arg(long)]
    pub evals: Option<u64>,
    /// Parallel shards of the random solver.
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
    /// Node cap of the branch-and-bound.
    #[arg(long)]
    pub node_cap: Option<u64>,
    /// Initial upper bound of the branch-and-bound: `greedy`, `greedy-swap`,
    /// `trivial` or a number.
    #[arg(long, default_value = "greedy", value_parser = parse_initial_bound)]
    pub ub: InitialBound,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct LpExportArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub out: PathBuf,
    /// Write the linear relaxation instead.
    #[arg(long)]
    pub relax: bool,
}

#[derive(Debug, Args)]
pub struct LpVerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub m: usize,
    /// Solution file: `<var> <value>` lines and an `objective <value>` line.
    #[arg(long)]
    pub solution: PathBuf,
    /// Objective of the LP relaxation, for the gap ratio.
    #[arg(long)]
    pub relaxation: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Comma-separated generator kinds; may be empty.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub gens: Vec<String>,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Comma-separated subset sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub m: Vec<usize>,
    /// Largest instance size; sizes run m + step, m + 2 step, ...
    #[arg(long)]
    pub nmax: usize,
    #[arg(long, default_value_t = 20)]
    pub nstep: usize,
    #[arg(long, value_delimiter = ',', default_value = "greedy,random,bb")]
    pub solvers: Vec<SolverKind>,
    /// Seed of the random generators and the random solver.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = DEFAULT_TIME_LIMIT, value_parser = humantime::parse_duration)]
    pub time_limit: Duration,
    #[arg(long)]
    pub node_cap: Option<u64>,
    /// Initial upper bound of the branch-and-bound runs.
    #[arg(long, default_value = "greedy", value_parser = parse_initial_bound)]
    pub ub: InitialBound,
    #[arg(long, default_value_t = experiment::DEFAULT_RANDOM_EVALS)]
    pub random_evals: u64,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// CSV output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the full JSON records, one per line.
    #[arg(long)]
    pub records: Option<PathBuf>,
}

fn parse_initial_bound(s: &str) -> Result<InitialBound, String> {
    match s {
        "greedy" => Ok(InitialBound::Greedy),
        "greedy-swap" => Ok(InitialBound::GreedySwap),
        "trivial" => Ok(InitialBound::Trivial),
        v => v.parse::<f64>().map(InitialBound::Value).map_err(|_| {
            format!("expected `greedy`, `greedy-swap`, `trivial` or a number, got `{v}`")
        }),
    }
}

/// A failed command with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::InvalidSpec(_) => EXIT_USAGE,
            Error::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Output goes to `out`, diagnostics to `err`.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match run(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

pub fn run(command: &Command, out: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Disc(a) => cmd_disc(a, out),
        Command::Subset(a) => cmd_subset(a, out),
        Command::LpExport(a) => cmd_lp_export(a, out),
        Command::LpVerify(a) => cmd_lp_verify(a, out),
        Command::Experiment(a) => cmd_experiment(a, out),
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::from(Error::Io(e))
}

fn load(path: &Path) -> CliResult<PointSet> {
    read_file(path).map_err(|e| CliError {
        message: format!("{}: {e}", path.display()),
        ..CliError::from(e)
    })
}

pub fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> CliResult<()> {
    let spec = GeneratorSpec {
        seed: a.seed,
        candidates: a.candidates,
        ..GeneratorSpec::new(a.kind, a.d, a.n)
    };
    let points = generate(&spec)?;
    let text = to_string(&points);
    match &a.out {
        Some(path) => fs::write(path, text).map_err(io_err),
        None => out.write_all(text.as_bytes()).map_err(io_err),
    }
}

/// `value witness=(q_1,...,q_d) kind=open|closed`.
pub fn format_discrepancy(r: &DiscrepancyResult) -> String {
    let coords: Vec<String> = r.witness.coords().iter().map(f64::to_string).collect();
    format!(
        "{} witness=({}) kind={}",
        r.value,
        coords.join(","),
        r.witness_kind
    )
}

pub fn cmd_disc(a: &DiscArgs, out: &mut dyn Write) -> CliResult<()> {
    let points = load(&a.input)?;
    let r = match a.method {
        Method::Auto => star_discrepancy(&points)?,
        Method::Grid => star_discrepancy_grid(&points)?,
        Method::Sweep2d => star_discrepancy_2d(&points)?,
        Method::Nied1d => star_discrepancy_1d(&points)?,
    };
    writeln!(out, "{}", format_discrepancy(&r)).map_err(io_err)
}

/// Settings shared by `subset` and `experiment`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveSettings {
    pub time_limit: Duration,
    pub node_cap: Option<u64>,
    pub initial_ub: InitialBound,
    pub seed: u64,
    /// `None` runs the random solver until the time limit.
    pub random_evals: Option<u64>,
    pub shards: usize,
}

pub fn solve(
    points: &PointSet,
    m: usize,
    solver: SolverKind,
    s: &SolveSettings,
) -> crate::Result<SubsetSelection> {
    match solver {
        SolverKind::Bb => bb_subset(
            points,
            m,
            &BbOptions {
                time_limit: Some(s.time_limit),
                initial_ub: s.initial_ub,
                node_cap: s.node_cap,
                ..BbOptions::default()
            },
        ),
        SolverKind::Greedy => greedy_subset(points, m),
        SolverKind::Brute => brute_force_subset(points, m),
        SolverKind::Random => {
            let budget = match s.random_evals {
                Some(k) => Budget::Evaluations(k),
                None => Budget::Time(s.time_limit),
            };
            random_subset_search(points, m, budget, s.seed, s.shards)
        }
    }
}

pub fn cmd_subset(a: &SubsetArgs, out: &mut dyn Write) -> CliResult<()> {
    let points = load(&a.input)?;
    let settings = SolveSettings {
        time_limit: a.time_limit,
        node_cap: a.node_cap,
        initial_ub: a.ub,
        seed: a.seed,
        random_evals: a.evals,
        shards: a.shards,
    };
    let selection = solve(&points, a.m, a.solver, &settings)?;
    let mut record =
        SolverRecord::new(a.input.display().to_string(), &points, a.solver, &selection);
    if !points.label().is_empty() {
        record.generator = Some(points.label().to_string());
    }
    if a.solver == SolverKind::Random {
        record.seed = Some(a.seed);
    }
    let text = match a.format {
        Format::Json => serde_json::to_string(&record).expect("records serialize"),
        Format::Csv => {
            let row = ExperimentRecord::from_solver_record(&record);
            format!("{CSV_HEADER}\n{}", row.csv_row())
        }
    };
    writeln!(out, "{text}").map_err(io_err)
}

pub fn cmd_lp_export(a: &LpExportArgs, out: &mut dyn Write) -> CliResult<()> {
    let points = load(&a.input)?;
    let model = build_model(&points, a.m)?;
    let file = fs::File::create(&a.out).map_err(io_err)?;
    let mut w = std::io::BufWriter::new(file);
    if a.relax {
        write_lp_relaxation(&model, &mut w)?;
    } else {
        write_lp(&model, &mut w)?;
    }
    w.flush().map_err(io_err)?;
    writeln!(
        out,
        "wrote {} ({} constraints, {} variables)",
        a.out.display(),
        model.constraint_count(),
        model.variable_count()
    )
    .map_err(io_err)
}

pub fn cmd_lp_verify(a: &LpVerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    let points = load(&a.input)?;
    let model = build_model(&points, a.m)?;
    let text = fs::read_to_string(&a.solution).map_err(io_err)?;
    let solution = parse_solution(&text)?;
    let report = verify_solution(&model, &solution, a.relaxation)?;
    writeln!(
        out,
        "{}",
        serde_json::to_string(&report).expect("reports serialize")
    )
    .map_err(io_err)?;
    if report.pass {
        Ok(())
    } else {
        Err(CliError {
            code: EXIT_INPUT,
            message: format!(
                "objective {} differs from recomputed discrepancy {} by {:e}",
                report.objective, report.discrepancy, report.abs_diff
            ),
        })
    }
}

pub fn cmd_experiment(a: &ExperimentArgs, out: &mut dyn Write) -> CliResult<()> {
    let gens = a
        .gens
        .iter()
        .filter(|g| !g.trim().is_empty())
        .map(|g| g.trim().parse::<GeneratorKind>())
        .collect::<crate::Result<Vec<_>>>()?;
    let config = ExperimentConfig {
        gens,
        d: a.d,
        ms: a.m.clone(),
        nmax: a.nmax,
        nstep: a.nstep,
        solvers: a.solvers.clone(),
        seed: a.seed,
        settings: SolveSettings {
            time_limit: a.time_limit,
            node_cap: a.node_cap,
            initial_ub: a.ub,
            seed: a.seed,
            random_evals: Some(a.random_evals),
            shards: 1,
        },
    };
    let run = || run_experiment(&config);
    let records = match a.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| CliError {
                code: EXIT_USAGE,
                message: e.to_string(),
            })?
            .install(run),
        None => run(),
    }?;
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for r in &records {
        csv.push_str(&r.csv_row());
        csv.push('\n');
    }
    match &a.out {
        Some(path) => fs::write(path, &csv).map_err(io_err)?,
        None => out.write_all(csv.as_bytes()).map_err(io_err)?,
    }
    if let Some(path) = &a.records {
        let mut lines = String::new();
        for r in &records {
            lines.push_str(&serde_json::to_string(&r.record).expect("records serialize"));
            lines.push('\n');
        }
        fs::write(path, lines).map_err(io_err)?;
    }
    Ok(())
}
