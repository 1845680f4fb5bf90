use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::acceptance::{self, Scale};
use crate::config::{default_jobs, default_output_root, parse_modes, parse_problems, ExperimentConfig};
use crate::error::{HarnessError, Result};
use crate::experiment::{generate_fronts, run_experiment};
use crate::records::{experiment_names, Layout, Records};
use crate::report::{render, summarize};

#[derive(Debug, Parser)]
#[command(name = "moea-bench", version, about = "Paired NSGA-II crowding-distance experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Run (or resume) an experiment.
    Run(RunArgs),
    /// Generate and cache reference fronts.
    Fronts(FrontsArgs),
    /// Summarize persisted records as tables.
    Report(ReportArgs),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Key-value config file; flags given on the command line override it.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Experiment name, used for the result file names.
    #[arg(long)]
    name: Option<String>,
    /// Problem name, comma list or `all`. Repeatable.
    #[arg(long, value_name = "NAME")]
    problem: Vec<String>,
    #[arg(long, value_parser = ["initial", "improved", "both"])]
    mode: Option<String>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    pop: Option<usize>,
    #[arg(long)]
    gens: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "eta-m")]
    eta_m: Option<f64>,
    #[arg(long)]
    pc: Option<f64>,
    #[arg(long)]
    pm: Option<f64>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long = "sigma-fraction")]
    sigma_fraction: Option<f64>,
    #[arg(long = "front-count")]
    front_count: Option<usize>,
    /// Output root (default: $MOEA_BENCH_DIR or the current directory).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct FrontsArgs {
    #[arg(long, value_name = "NAME")]
    problem: Vec<String>,
    #[arg(long = "front-count", default_value_t = moea_core::benchmarks::DEFAULT_FRONT_COUNT)]
    front_count: usize,
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Report only this experiment; by default every experiment found.
    #[arg(long)]
    name: Option<String>,
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Fewer runs and oracle instances.
    #[arg(long)]
    quick: bool,
    /// Keep the suite's files here instead of a temporary directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

fn build_config(args: RunArgs) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::default();
    if let Some(path) = &args.config {
        cfg.apply_file(path)?;
    }
    if let Some(v) = args.name {
        cfg.name = v;
    }
    if !args.problem.is_empty() {
        cfg.problems = parse_problems(&args.problem.join(","))?;
    }
    if let Some(v) = args.mode {
        cfg.modes = parse_modes(&v)?;
    }
    if let Some(v) = args.runs {
        cfg.runs = v;
    }
    if let Some(v) = args.pop {
        cfg.pop = v;
    }
    if let Some(v) = args.gens {
        cfg.generations = v;
    }
    if let Some(v) = args.seed {
        cfg.base_seed = v;
    }
    if let Some(v) = args.eta_m {
        cfg.variation.eta_m = v;
    }
    if let Some(v) = args.pc {
        cfg.variation.p_crossover = v;
    }
    if let Some(v) = args.pm {
        cfg.variation.p_mutation = v;
    }
    if let Some(v) = args.q {
        cfg.indicators.q = v;
    }
    if let Some(v) = args.sigma_fraction {
        cfg.indicators.sigma_fraction = v;
    }
    if let Some(v) = args.front_count {
        cfg.front_count = v;
    }
    if let Some(v) = args.out {
        cfg.out_dir = v;
    }
    if let Some(v) = args.jobs {
        cfg.jobs = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_run(args: RunArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = build_config(args)?;
    let records = run_experiment(&cfg)?;
    let layout = Layout::new(&cfg.out_dir, &cfg.name);
    let _ = writeln!(
        out,
        "{} run records, {} pair records in {}",
        records.runs.len(),
        records.pairs.len(),
        layout.runs_csv().display()
    );
    Ok(())
}

fn cmd_fronts(args: FrontsArgs, out: &mut dyn Write) -> Result<()> {
    let problems = if args.problem.is_empty() {
        moea_core::ProblemKind::ALL.to_vec()
    } else {
        parse_problems(&args.problem.join(","))?
    };
    if args.front_count < 2 {
        return Err(HarnessError::Config("front-count must be at least 2".into()));
    }
    let root = args.out.unwrap_or_else(default_output_root);
    for path in generate_fronts(&root, &problems, args.front_count)? {
        let _ = writeln!(out, "{}", path.display());
    }
    Ok(())
}

fn cmd_report(args: ReportArgs, out: &mut dyn Write) -> Result<()> {
    let root = args.out.unwrap_or_else(default_output_root);
    let names = match args.name {
        Some(n) => vec![n],
        None => experiment_names(&root)?,
    };
    let mut printed = false;
    for name in names {
        let records = Records::load(&Layout::new(&root, &name))?;
        if records.is_empty() {
            continue;
        }
        let _ = writeln!(out, "== {name} ==\n");
        let _ = write!(out, "{}", render(&summarize(&records)));
        printed = true;
    }
    if !printed {
        return Err(HarnessError::NoRecords(root.join("results")));
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    let scale = if args.quick { Scale::quick() } else { Scale::full() };
    let jobs = args.jobs.unwrap_or_else(default_jobs);
    let temp;
    let dir = match args.out {
        Some(d) => d,
        None => {
            temp = tempfile::tempdir().map_err(|e| HarnessError::io(std::env::temp_dir(), e))?;
            temp.path().to_path_buf()
        }
    };
    let results = acceptance::run_all(scale, &dir, jobs, &mut |r| {
        let _ = writeln!(out, "{r}");
        let _ = out.flush();
    })?;
    let failed: Vec<String> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("{} ({})", r.id, r.name))
        .collect();
    if failed.is_empty() {
        let _ = writeln!(out, "all {} criteria passed", results.len());
        Ok(true)
    } else {
        let _ = writeln!(err, "acceptance failed: criterion {}", failed.join(", "));
        Ok(false)
    }
}

/// Parse `argv` and execute it, returning the process exit code: 0 on
/// success, 1 on a failed command or acceptance check, 2 on bad usage.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return e.exit_code();
        }
    };
    let outcome = match cli.command {
        Command::Run(a) => cmd_run(a, out).map(|_| true),
        Command::Fronts(a) => cmd_fronts(a, out).map(|_| true),
        Command::Report(a) => cmd_report(a, out).map(|_| true),
        Command::Verify(a) => cmd_verify(a, out, err),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Entry point of the binary.
pub fn main() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}
