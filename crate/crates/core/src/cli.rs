//! Command-line front end. Exit codes: 0 success or Match, 1 Mismatch,
//! 2 usage, configuration or I/O error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::adapter::{self, AdapterError, AdapterSpec, CompareMode, MatchOutcome};
use crate::corpus;
use crate::diff::{diff_snapshots, DiffError, DiffScope};
use crate::lab::{self, ExperimentPlan, LabError, ReportError};
use crate::mutants::{self, RegistryError, VariantId};
use crate::sequence::{self, SequenceError, Suite, DEFAULT_LIMITS, DEFAULT_MASTER_SIZE};
use crate::snapshot::{self, SnapshotError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Adapter(#[from] AdapterError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Snapshot(#[from] SnapshotError),
    #[error(transparent)]
    Diff(#[from] DiffError),
    #[error(transparent)]
    Lab(#[from] LabError),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error(transparent)]
    Sut(#[from] corpus::SutError),
}

#[derive(Debug, Parser)]
#[command(name = "amplify", version, about = "Amplified regression test oracles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ScopeArg {
    All,
    Returns,
    Observers,
}

impl From<ScopeArg> for DiffScope {
    fn from(s: ScopeArg) -> Self {
        match s {
            ScopeArg::All => DiffScope::All,
            ScopeArg::Returns => DiffScope::ReturnsOnly,
            ScopeArg::Observers => DiffScope::ObserversOnly,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write one `<Class>TestDriver.txt` summary per adapter config row.
    GenDrivers {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate master suites and their prefix splits.
    GenTests {
        /// Classes to generate for; defaults to the collection classes.
        #[arg(long = "class", value_delimiter = ',')]
        classes: Vec<String>,
        /// Seeds; defaults to 1..10.
        #[arg(long = "seed", value_delimiter = ',')]
        seeds: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_MASTER_SIZE)]
        master: usize,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_LIMITS)]
        limits: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a suite through its driver and write the snapshot.
    Record {
        #[arg(long)]
        suite: PathBuf,
        /// Adapter config; defaults to the shipped one.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "baseline")]
        variant: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Record a fresh snapshot and compare it with an expected one.
    Check {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "baseline")]
        variant: String,
        #[arg(long)]
        expected: PathBuf,
        #[arg(long, value_enum, default_value_t = ScopeArg::All)]
        scope: ScopeArg,
        /// Also write the report text here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Generate, record baselines, run the mutation experiment and report.
    Experiment {
        #[arg(long, value_delimiter = ',', default_values_t = lab::DESK_SEEDS.collect::<Vec<u64>>())]
        seeds: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_values_t = lab::DESK_LIMITS)]
        limits: Vec<usize>,
        /// Defaults to every class of the adapter config.
        #[arg(long, value_delimiter = ',')]
        classes: Vec<String>,
        #[arg(long, default_value = "reports")]
        report_dir: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Inspect the mutant registry.
    Mutants {
        #[command(subcommand)]
        command: MutantsCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum MutantsCommand {
    /// One tab-separated line per mutant.
    List {
        #[arg(long = "class")]
        class: Option<String>,
    },
}

/// Parses `args` (program name first), runs, and maps the result to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Executes a parsed command, returning the success exit code (0 or 1).
pub fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::GenDrivers { config, out } => gen_drivers(&config, &out),
        Command::GenTests {
            classes,
            seeds,
            master,
            limits,
            out,
        } => gen_tests(&classes, &seeds, master, &limits, &out),
        Command::Record {
            suite,
            config,
            variant,
            out,
        } => record(&suite, config.as_deref(), &variant, &out),
        Command::Check {
            suite,
            config,
            variant,
            expected,
            scope,
            report,
        } => check(&suite, config.as_deref(), &variant, &expected, scope.into(), report.as_deref()),
        Command::Experiment {
            seeds,
            limits,
            classes,
            report_dir,
            config,
        } => experiment(&seeds, &limits, &classes, &report_dir, config.as_deref()),
        Command::Mutants {
            command: MutantsCommand::List { class },
        } => {
            for m in mutants::list_mutants(class.as_deref())? {
                println!("{}", mutants::list_line(&m));
            }
            Ok(0)
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

fn load_adapters(config: Option<&Path>) -> Result<Vec<AdapterSpec>, CliError> {
    let text = match config {
        Some(p) => read_text(p)?,
        None => adapter::DEFAULT_CONFIG.to_owned(),
    };
    Ok(adapter::load_adapters(&text)?)
}

fn adapter_for(config: Option<&Path>, class_name: &str) -> Result<AdapterSpec, CliError> {
    load_adapters(config)?
        .into_iter()
        .find(|a| a.class.class_name == class_name)
        .ok_or_else(|| CliError::Usage(format!("adapter config has no row for {class_name}")))
}

fn gen_drivers(config: &Path, out: &Path) -> Result<u8, CliError> {
    let specs = adapter::load_adapters(&read_text(config)?)?;
    for spec in &specs {
        let path = out.join(format!("{}.txt", spec.driver_name));
        snapshot::write_atomic(&path, &spec.summary())?;
    }
    println!("wrote {} driver(s) to {}", specs.len(), out.display());
    Ok(0)
}

fn gen_tests(classes: &[String], seeds: &[u64], master: usize, limits: &[usize], out: &Path) -> Result<u8, CliError> {
    let classes: Vec<&str> = if classes.is_empty() {
        corpus::collection_class_names()
    } else {
        classes.iter().map(String::as_str).collect()
    };
    let seeds: Vec<u64> = if seeds.is_empty() {
        lab::DESK_SEEDS.collect()
    } else {
        seeds.to_vec()
    };
    if let Some(&limit) = limits.iter().find(|&&l| l > master) {
        return Err(SequenceError::LimitExceedsMaster { limit, master }.into());
    }
    let mut files = 0;
    for name in classes {
        let class = corpus::class(name)?;
        for &seed in &seeds {
            let suite = sequence::generate_master_suite(class, seed, master)?;
            sequence::write_suite(&suite, &out.join(format!("{name}_s{seed}_master.suite")))?;
            for (limit, split) in sequence::split_prefix_suites(&suite, limits)? {
                sequence::write_suite(&split, &out.join(format!("{name}_s{seed}_l{limit}.suite")))?;
                files += 1;
            }
        }
    }
    println!("wrote {files} split suite(s) to {}", out.display());
    Ok(0)
}

fn recorded(suite_path: &Path, config: Option<&Path>, variant: &str) -> Result<(AdapterSpec, Suite, snapshot::Snapshot, VariantId), CliError> {
    let variant = VariantId::parse(variant)?;
    let suite = sequence::read_suite(suite_path)?;
    if let VariantId::Mutant(_) = &variant {
        let (class, _) = mutants::method_of(&variant)?;
        if class != suite.class_name {
            return Err(CliError::Usage(format!("{variant} does not mutate {}", suite.class_name)));
        }
    }
    let spec = adapter_for(config, &suite.class_name)?;
    let snap = adapter::record_snapshot(&spec, &suite, &variant)?;
    Ok((spec, suite, snap, variant))
}

fn record(suite_path: &Path, config: Option<&Path>, variant: &str, out: &Path) -> Result<u8, CliError> {
    let (_, suite, snap, variant) = recorded(suite_path, config, variant)?;
    snapshot::write_snapshot(&snap, out)?;
    if variant == VariantId::Baseline {
        let filled = sequence::record_expected_returns(&suite, &variant)?;
        if filled != suite {
            sequence::write_suite(&filled, suite_path)?;
        }
    }
    println!("recorded {} record(s) to {}", snap.records.len(), out.display());
    Ok(0)
}

fn check(
    suite_path: &Path,
    config: Option<&Path>,
    variant: &str,
    expected: &Path,
    scope: DiffScope,
    report_path: Option<&Path>,
) -> Result<u8, CliError> {
    let (spec, _, snap, _) = recorded(suite_path, config, variant)?;
    let mode = CompareMode::from_env()?.unwrap_or(spec.compare_mode);
    if mode == CompareMode::Record {
        let outcome = adapter::match_internal_state_snapshot(&spec, &snap, expected, Some(CompareMode::Record))?;
        debug_assert_eq!(outcome, MatchOutcome::Saved);
        println!("saved new expected state to {}", expected.display());
        return Ok(0);
    }
    if !expected.exists() {
        return Err(AdapterError::MissingExpectedFile(expected.to_owned()).into());
    }
    let expected_snap = snapshot::read_snapshot(expected).map_err(|e| match e {
        SnapshotError::Corrupt { line, reason } => CliError::Adapter(AdapterError::CorruptSnapshotFile { line, reason }),
        other => other.into(),
    })?;
    let report = diff_snapshots(&expected_snap, &snap, scope)?;
    let text = report.to_text();
    if let Some(p) = report_path {
        snapshot::write_atomic(p, &text)?;
    }
    print!("{text}");
    Ok(if report.is_match() { 0 } else { 1 })
}

fn experiment(seeds: &[u64], limits: &[usize], classes: &[String], report_dir: &Path, config: Option<&Path>) -> Result<u8, CliError> {
    let mut adapters = load_adapters(config)?;
    if !classes.is_empty() {
        for c in classes {
            corpus::class(c)?;
            if !adapters.iter().any(|a| a.class.class_name == c) {
                return Err(CliError::Usage(format!("adapter config has no row for {c}")));
            }
        }
        adapters.retain(|a| classes.iter().any(|c| c == a.class.class_name));
    }
    if seeds.is_empty() || limits.is_empty() {
        return Err(CliError::Usage("at least one seed and one limit are required".into()));
    }
    let mut plan = ExperimentPlan::desk(adapters);
    plan.seeds = seeds.to_vec();
    plan.limits = limits.to_vec();
    let result = lab::run_experiment(&plan)?;
    lab::emit_reports(&result, report_dir)?;
    print!("{}", lab::table1_csv(&result));
    Ok(0)
}
