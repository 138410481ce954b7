//! The `gpgroup` command-line front end.
//!
//! Settings come from an optional flat `key=value` file (`--config`) and are
//! overridden by flags of the same name. `#` starts a comment line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::engine::{aggregate, run_experiment, AggregateRow, ExperimentConfig};
use crate::report::{aggregate_csv, combined_csv, line_chart, read_series};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "gpgroup",
    version,
    about = "Genetic programming with evaluation-time grouped breeding"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one configuration and write the per-generation aggregate CSV.
    Run(RunArgs),
    /// Run one configuration per group count and write per-setting and
    /// combined CSVs.
    Sweep(SweepArgs),
    /// Render an aggregate CSV as an SVG line chart.
    Plot(PlotArgs),
    /// Print the version.
    Version,
}

#[derive(Debug, Args, Default)]
pub struct ConfigArgs {
    /// key=value settings file; flags take precedence
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Parity problem width (2..=16)
    #[arg(long)]
    pub bits: Option<String>,
    #[arg(long)]
    pub pop: Option<String>,
    #[arg(long)]
    pub gens: Option<String>,
    #[arg(long)]
    pub runs: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    /// cost | wall
    #[arg(long)]
    pub timer: Option<String>,
    #[arg(long)]
    pub workers: Option<String>,
    /// Tournament size
    #[arg(long)]
    pub tournament: Option<String>,
    /// Crossover probability; reproduction gets the remainder
    #[arg(long = "xo-prob")]
    pub xo_prob: Option<String>,
    #[arg(long = "max-depth")]
    pub max_depth: Option<String>,
    #[arg(long)]
    pub elitism: Option<String>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Number of duration groups
    #[arg(long)]
    pub groups: Option<String>,
    /// Output CSV path (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Comma-separated group counts, e.g. 1,2,4,8
    #[arg(long)]
    pub groups: Option<String>,
    /// Output directory
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// File name prefix
    #[arg(long, default_value = "sweep")]
    pub prefix: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    #[value(name = "avg_size")]
    AvgSize,
    #[value(name = "best_fitness")]
    BestFitness,
    #[value(name = "avg_fitness")]
    AvgFitness,
}

impl Metric {
    pub fn column(self) -> &'static str {
        match self {
            Metric::AvgSize => "avg_size_mean",
            Metric::BestFitness => "best_fitness_mean",
            Metric::AvgFitness => "avg_fitness_mean",
        }
    }

    fn label(self) -> &'static str {
        match self {
            Metric::AvgSize => "avg_size",
            Metric::BestFitness => "best_fitness",
            Metric::AvgFitness => "avg_fitness",
        }
    }
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// CSV written by `run` or `sweep`
    pub csv: PathBuf,
    #[arg(long, value_enum, default_value = "avg_size")]
    pub metric: Metric,
    /// Output SVG path (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

impl From<crate::error::ConfigError> for CliError {
    fn from(e: crate::error::ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Base config plus the group counts to sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub base: ExperimentConfig,
    pub groups: Vec<usize>,
}

pub const PAPER_GROUPS: [usize; 8] = [1, 2, 4, 8, 16, 32, 64, 128];

impl SweepSpec {
    pub fn validate(&self) -> Result<(), crate::error::ConfigError> {
        use crate::error::ConfigError;
        if self.groups.is_empty() {
            return Err(ConfigError::new("groups", "no group counts given"));
        }
        for (i, &g) in self.groups.iter().enumerate() {
            if self.groups[..i].contains(&g) {
                return Err(ConfigError::new("groups", format!("{g} listed twice")));
            }
            let mut c = self.base.clone();
            c.groups = g;
            c.validate()?;
        }
        Ok(())
    }
}

/// Parses a `key=value` settings file into ordered pairs.
pub fn parse_config_text(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut pairs = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected key=value, got `{line}`", n + 1))
        })?;
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}

fn collect_settings(
    args: &ConfigArgs,
    groups_flag: Option<&str>,
) -> Result<Vec<(String, String)>, CliError> {
    let mut pairs = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            parse_config_text(&text)?
        }
        None => Vec::new(),
    };
    let flags = [
        ("bits", &args.bits),
        ("pop", &args.pop),
        ("gens", &args.gens),
        ("runs", &args.runs),
        ("seed", &args.seed),
        ("timer", &args.timer),
        ("workers", &args.workers),
        ("tournament", &args.tournament),
        ("xo-prob", &args.xo_prob),
        ("max-depth", &args.max_depth),
        ("elitism", &args.elitism),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            pairs.push((key.to_string(), v.clone()));
        }
    }
    if let Some(g) = groups_flag {
        pairs.push(("groups".to_string(), g.to_string()));
    }
    Ok(pairs)
}

/// Applies settings over the defaults. The `groups` value, if any, is
/// returned raw so `sweep` can read it as a list.
fn build_config(pairs: &[(String, String)]) -> Result<(ExperimentConfig, Option<String>), CliError> {
    let mut config = ExperimentConfig::default();
    let mut groups = None;
    let mut saw_bits = false;
    for (k, v) in pairs {
        match k.as_str() {
            "groups" => groups = Some(v.clone()),
            key => {
                saw_bits |= key == "bits";
                config.set(key, v)?;
            }
        }
    }
    if !saw_bits {
        return Err(CliError::Usage(
            "missing required key `bits` (pass --bits or set it in --config)".into(),
        ));
    }
    Ok((config, groups))
}

pub fn resolve_run_config(args: &RunArgs) -> Result<ExperimentConfig, CliError> {
    let pairs = collect_settings(&args.config, args.groups.as_deref())?;
    let (mut config, groups) = build_config(&pairs)?;
    if let Some(g) = groups {
        config.set("groups", &g)?;
    }
    config.validate()?;
    Ok(config)
}

pub fn parse_group_list(text: &str) -> Result<Vec<usize>, crate::error::ConfigError> {
    text.split(',')
        .map(|t| {
            t.trim().parse::<usize>().map_err(|_| {
                crate::error::ConfigError::new("groups", format!("`{t}` is not a group count"))
            })
        })
        .collect()
}

pub fn resolve_sweep(args: &SweepArgs) -> Result<SweepSpec, CliError> {
    let pairs = collect_settings(&args.config, args.groups.as_deref())?;
    let (base, groups) = build_config(&pairs)?;
    let groups = match groups {
        Some(g) => parse_group_list(&g)?,
        None => PAPER_GROUPS.to_vec(),
    };
    let spec = SweepSpec { base, groups };
    spec.validate()?;
    Ok(spec)
}

fn warn_if_long(config: &ExperimentConfig, err: &mut dyn Write) {
    if config.is_long_running() {
        let _ = writeln!(
            err,
            "warning: {}-bit parity with {} individuals x {} generations x {} runs is a long-running workload",
            config.num_bits, config.population_size, config.generations, config.runs
        );
    }
}

fn experiment_rows(config: &ExperimentConfig) -> Result<Vec<AggregateRow>, CliError> {
    let results = run_experiment(config).map_err(|e| CliError::Runtime(e.to_string()))?;
    aggregate(&results).map_err(|e| CliError::Runtime(e.to_string()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}

fn cmd_run(args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let config = resolve_run_config(args)?;
    warn_if_long(&config, err);
    let csv = aggregate_csv(&experiment_rows(&config)?);
    match &args.out {
        Some(path) => write_file(path, &csv),
        None => out
            .write_all(csv.as_bytes())
            .map_err(|e| CliError::Runtime(e.to_string())),
    }
}

/// Runs a sweep and writes `<prefix>_g<G>.csv` for each setting plus
/// `<prefix>_all.csv`. Returns the written paths.
pub fn run_sweep(spec: &SweepSpec, dir: &Path, prefix: &str) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", dir.display())))?;
    let mut written = Vec::new();
    let mut sets = Vec::with_capacity(spec.groups.len());
    for &g in &spec.groups {
        let mut config = spec.base.clone();
        config.groups = g;
        let rows = experiment_rows(&config)?;
        let path = dir.join(format!("{prefix}_g{g}.csv"));
        write_file(&path, &aggregate_csv(&rows))?;
        written.push(path);
        sets.push((g, rows));
    }
    let path = dir.join(format!("{prefix}_all.csv"));
    write_file(&path, &combined_csv(&sets))?;
    written.push(path);
    Ok(written)
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let spec = resolve_sweep(args)?;
    warn_if_long(&spec.base, err);
    for path in run_sweep(&spec, &args.out, &args.prefix)? {
        let _ = writeln!(out, "{}", path.display());
    }
    Ok(())
}

/// Renders the SVG for `metric` from CSV text.
pub fn render_plot(csv_text: &str, metric: Metric) -> Result<String, CliError> {
    let series =
        read_series(csv_text, metric.column()).map_err(|e| CliError::Runtime(e.to_string()))?;
    Ok(line_chart(
        &series,
        &format!("{} by generation", metric.label()),
        "generation",
        metric.label(),
    ))
}

fn cmd_plot(args: &PlotArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.csv)
        .map_err(|e| CliError::Runtime(format!("cannot read {}: {e}", args.csv.display())))?;
    let svg = render_plot(&text, args.metric)?;
    match &args.out {
        Some(path) => write_file(path, &svg),
        None => out
            .write_all(svg.as_bytes())
            .map_err(|e| CliError::Runtime(e.to_string())),
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Run(a) => cmd_run(a, out, err),
        Command::Sweep(a) => cmd_sweep(a, out, err),
        Command::Plot(a) => cmd_plot(a, out),
        Command::Version => writeln!(out, "gpgroup {}", env!("CARGO_PKG_VERSION"))
            .map_err(|e| CliError::Runtime(e.to_string())),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    match execute(&cli, &mut stdout.lock(), &mut stderr.lock()) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
