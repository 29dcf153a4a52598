//! `polyint`: synthesize, analyze and certify polynomial vector fields with
//! a prescribed factored first integral.

mod commands;
mod problem;
mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyint::Status;
use rayon::prelude::*;
use serde_json::{json, Value};

use commands::{Section, SimOptions};
use problem::{collect_inputs, InputError, ProblemSpec};

const SCHEMA_VERSION: &str = "1";

#[derive(Parser)]
#[command(name = "polyint", version, about = "Exact checks for polynomial first integrals")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Exit with code 3 when a verdict is inconclusive.
    #[arg(long, global = true)]
    strict: bool,

    /// Worker threads for a directory of problems.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Product-of-factors field, its reduction and the degree check.
    Construct { input: PathBuf },
    /// Integrating factors, critical values and the degree criteria.
    Analyze { input: PathBuf },
    /// The four genericity conditions on the curves.
    Cz { input: PathBuf },
    /// Certificate of the change of variables onto the linear saddle.
    Linearize {
        input: PathBuf,
        /// 1-based index of the factor used as `v` (default: the last).
        #[arg(long)]
        pivot: Option<usize>,
    },
    /// RK4 orbit and conservation drift of the integral.
    Simulate {
        input: PathBuf,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Every command above.
    All {
        input: PathBuf,
        #[arg(long)]
        pivot: Option<usize>,
        #[command(flatten)]
        sim: SimArgs,
    },
}

#[derive(Args, Clone)]
struct SimArgs {
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    x0: f64,
    #[arg(long, default_value_t = 0.25, allow_negative_numbers = true)]
    y0: f64,
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    /// Largest acceptable drift.
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    /// Write the orbit as CSV (single problem only).
    #[arg(long)]
    csv: Option<PathBuf>,
}

impl SimArgs {
    fn options(&self) -> SimOptions {
        SimOptions {
            x0: self.x0,
            y0: self.y0,
            step: self.step,
            steps: self.steps,
            tolerance: self.tolerance,
        }
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Construct { .. } => "construct",
            Command::Analyze { .. } => "analyze",
            Command::Cz { .. } => "cz",
            Command::Linearize { .. } => "linearize",
            Command::Simulate { .. } => "simulate",
            Command::All { .. } => "all",
        }
    }

    fn input(&self) -> &Path {
        match self {
            Command::Construct { input }
            | Command::Analyze { input }
            | Command::Cz { input }
            | Command::Linearize { input, .. }
            | Command::Simulate { input, .. }
            | Command::All { input, .. } => input,
        }
    }

    fn csv(&self) -> Option<&Path> {
        match self {
            Command::Simulate { sim, .. } | Command::All { sim, .. } => sim.csv.as_deref(),
            _ => None,
        }
    }
}

/// Outcome of one problem file.
struct Outcome {
    entry: Value,
    verdicts: Vec<Status>,
    input_error: bool,
}

fn run_one(cmd: &Command, path: &Path) -> Outcome {
    match try_run(cmd, path) {
        Ok((name, sections)) => {
            let verdicts: Vec<Status> = sections.iter().flat_map(|(_, s)| s.verdicts.clone()).collect();
            let mut results = serde_json::Map::new();
            for (key, s) in sections {
                results.insert(key.to_string(), s.body);
            }
            Outcome {
                entry: json!({
                    "file": path.display().to_string(),
                    "name": name,
                    "status": summary(&verdicts),
                    "results": results,
                }),
                verdicts,
                input_error: false,
            }
        }
        Err(e) => Outcome {
            entry: json!({
                "file": path.display().to_string(),
                "status": "InputError",
                "error": e.to_string(),
            }),
            verdicts: Vec::new(),
            input_error: true,
        },
    }
}

type Sections = Vec<(&'static str, Section)>;

fn try_run(cmd: &Command, path: &Path) -> Result<(String, Sections), InputError> {
    let problem = ProblemSpec::load(path)?.build()?;
    let mut sections = Vec::new();
    let simulate = |sim: &SimArgs| -> Result<Section, InputError> {
        let (section, orbit) = commands::simulate(&problem, &sim.options())?;
        if let Some(csv) = &sim.csv {
            let h = problem.integral.expand().to_f64();
            fs::write(csv, orbit.to_csv(&h)).map_err(|source| InputError::Io {
                path: csv.clone(),
                source,
            })?;
        }
        Ok(section)
    };
    match cmd {
        Command::Construct { .. } => sections.push(("construct", commands::construct(&problem))),
        Command::Analyze { .. } => sections.push(("analyze", commands::analyze(&problem))),
        Command::Cz { .. } => sections.push(("cz", commands::cz(&problem))),
        Command::Linearize { pivot, .. } => {
            sections.push(("linearize", commands::linearize(&problem, *pivot)?))
        }
        Command::Simulate { sim, .. } => sections.push(("simulate", simulate(sim)?)),
        Command::All { pivot, sim, .. } => {
            sections.push(("construct", commands::construct(&problem)));
            sections.push(("analyze", commands::analyze(&problem)));
            sections.push(("cz", commands::cz(&problem)));
            if problem.integral.len() >= 2 {
                sections.push(("linearize", commands::linearize(&problem, *pivot)?));
            }
            sections.push(("simulate", simulate(sim)?));
        }
    }
    Ok((problem.name, sections))
}

fn summary(verdicts: &[Status]) -> &'static str {
    if verdicts.contains(&Status::Fails) {
        "Fails"
    } else if verdicts.contains(&Status::Inconclusive) {
        "Inconclusive"
    } else {
        "Holds"
    }
}

fn exit_code(outcomes: &[Outcome], strict: bool) -> u8 {
    if outcomes.iter().any(|o| o.input_error) {
        2
    } else if outcomes.iter().flat_map(|o| &o.verdicts).any(|s| *s == Status::Fails) {
        1
    } else if strict
        && outcomes
            .iter()
            .flat_map(|o| &o.verdicts)
            .any(|s| *s == Status::Inconclusive)
    {
        3
    } else {
        0
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let files = match collect_inputs(cli.command.input()) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if files.len() > 1 && cli.command.csv().is_some() {
        eprintln!("error: --csv needs a single problem file");
        return ExitCode::from(2);
    }

    let outcomes: Vec<Outcome> = if cli.jobs > 1 && files.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| files.par_iter().map(|p| run_one(&cli.command, p)).collect())
    } else {
        files.iter().map(|p| run_one(&cli.command, p)).collect()
    };

    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": cli.command.name(),
        "problems": outcomes.iter().map(|o| o.entry.clone()).collect::<Vec<_>>(),
    });
    let out = match cli.format {
        Format::Json => {
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        Format::Text => render::text(&report, chrono::Local::now()),
    };
    // ignore a closed pipe, e.g. `| head`
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    ExitCode::from(exit_code(&outcomes, cli.strict))
}
