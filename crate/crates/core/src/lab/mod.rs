//! Mutation experiment: run suites against mutants with and without
//! observer snapshot comparison, then aggregate kill and strength figures.

mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

pub use report::{emit_reports, outcomes_csv, strength_curve_csv, table1_csv, ReportError};

use crate::adapter::{record_snapshot, AdapterError, AdapterSpec, TestDriver};
use crate::corpus::{self, SutError};
use crate::diff::{diff_records, DiffScope};
use crate::mutants::{self, RegistryError, VariantId};
use crate::sequence::{self, GeneratorConfig, SequenceError, Suite};
use crate::snapshot::Snapshot;
use crate::value::Value;

pub const DESK_LIMITS: [usize; 7] = [2, 4, 8, 16, 32, 64, 128];
pub const DESK_SEEDS: std::ops::RangeInclusive<u64> = 1..=10;
pub const COLLECTION_MASTER_SIZE: usize = 128;
pub const TOY_MASTER_SIZE: usize = 1024;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error(transparent)]
    Sut(#[from] SutError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Adapter(#[from] AdapterError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// Return-value assertions only.
    Baseline,
    /// Return values plus every observer readout.
    Amplified,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::Baseline, Mode::Amplified];

    /// Column suffix in `table1.csv`.
    pub fn table_label(self) -> &'static str {
        match self {
            Mode::Baseline => "without",
            Mode::Amplified => "with",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Baseline => "baseline",
            Mode::Amplified => "amplified",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub class_name: String,
    pub mutant: VariantId,
    pub seed: u64,
    pub limit: usize,
    pub mode: Mode,
    pub killed: bool,
    pub killing_test_index: Option<usize>,
    pub executed_tests: usize,
    pub covered: bool,
    pub wall_time_s: f64,
}

impl RunOutcome {
    /// Equality ignoring wall time.
    pub fn same_result(&self, other: &RunOutcome) -> bool {
        RunOutcome {
            wall_time_s: 0.0,
            ..self.clone()
        } == RunOutcome {
            wall_time_s: 0.0,
            ..other.clone()
        }
    }
}

fn check_expected(suite: &Suite, expected: &Snapshot, adapter: &AdapterSpec) -> Result<(), LabError> {
    let mismatch = |what: String| Err(LabError::ConfigMismatch(what));
    if suite.class_name != adapter.class.class_name || expected.meta.class_name != suite.class_name {
        return mismatch(format!(
            "suite {}, adapter {}, snapshot {}",
            suite.class_name, adapter.class.class_name, expected.meta.class_name
        ));
    }
    if expected.meta.config_digest != adapter.config_digest || expected.observers != adapter.observer_names() {
        return mismatch("snapshot was recorded with a different adapter config".into());
    }
    Ok(())
}

/// Executes `suite` on `mutant` in order and stops at the first killing test.
pub fn run_suite_against(
    mutant: &VariantId,
    suite: &Suite,
    mode: Mode,
    expected: &Snapshot,
    adapter: &AdapterSpec,
) -> Result<RunOutcome, LabError> {
    let started = Instant::now();
    check_expected(suite, expected, adapter)?;
    let target = match mutant {
        VariantId::Baseline => None,
        m => {
            let (class, method) = mutants::method_of(m)?;
            if class != suite.class_name {
                return Err(LabError::ConfigMismatch(format!("{m} does not mutate {}", suite.class_name)));
            }
            Some(method)
        }
    };

    let mut covered = false;
    let mut killing_test_index = None;
    for (index, seq) in suite.sequences.iter().enumerate() {
        let records = expected.test_records(&seq.test_id);
        if records.len() != seq.calls.len() + 1 {
            return Err(LabError::ConfigMismatch(format!(
                "expected snapshot has {} records for {} with {} calls",
                records.len(),
                seq.test_id,
                seq.calls.len()
            )));
        }
        let expected_return = |k: usize| -> &Value {
            seq.expected_returns
                .as_ref()
                .and_then(|r| r.get(k))
                .unwrap_or(&records[k + 1].returned)
        };

        let (killed, executed) = match mode {
            Mode::Baseline => {
                let mut handle = corpus::instantiate(&suite.class_name, mutant, &seq.ctor_input)?;
                let mut killed = false;
                for (k, (method, args)) in seq.calls.iter().enumerate() {
                    if corpus::invoke(&mut handle, method, args)? != *expected_return(k) {
                        killed = true;
                        break;
                    }
                }
                (killed, handle.executed_methods().clone())
            }
            Mode::Amplified => {
                let mut driver = TestDriver::start(adapter, mutant, &seq.test_id, &seq.ctor_input)?;
                let mut diverged = Vec::new();
                diff_records(&records[0], &driver.records()[0], &expected.observers, DiffScope::All, &mut diverged);
                let mut killed = !diverged.is_empty();
                for (k, (method, args)) in seq.calls.iter().enumerate() {
                    if killed {
                        break;
                    }
                    let returned = driver.call(method, args)?;
                    let actual = driver.records().last().expect("one record per call");
                    diff_records(&records[k + 1], actual, &expected.observers, DiffScope::All, &mut diverged);
                    killed = returned != *expected_return(k) || !diverged.is_empty();
                }
                (killed, driver.handle().executed_methods().clone())
            }
        };
        covered |= target.is_some_and(|t| executed.contains(t));
        if killed {
            killing_test_index = Some(index);
            break;
        }
    }

    Ok(RunOutcome {
        class_name: suite.class_name.clone(),
        mutant: mutant.clone(),
        seed: suite.seed,
        limit: suite.limit,
        mode,
        killed: killing_test_index.is_some(),
        killing_test_index,
        executed_tests: killing_test_index.map_or(suite.sequences.len(), |i| i + 1),
        covered,
        wall_time_s: started.elapsed().as_secs_f64(),
    })
}

/// Inputs of one experiment. Every listed class is paired with every listed
/// seed and limit; mutants default to all registered mutants of each class.
#[derive(Debug, Clone)]
pub struct ExperimentPlan {
    pub adapters: Vec<AdapterSpec>,
    pub mutants: Option<Vec<VariantId>>,
    pub seeds: Vec<u64>,
    pub limits: Vec<usize>,
    pub modes: Vec<Mode>,
    pub generator: GeneratorConfig,
}

impl ExperimentPlan {
    /// Desk-scale plan over the given adapters.
    pub fn desk(adapters: Vec<AdapterSpec>) -> Self {
        ExperimentPlan {
            adapters,
            mutants: None,
            seeds: DESK_SEEDS.collect(),
            limits: DESK_LIMITS.to_vec(),
            modes: Mode::BOTH.to_vec(),
            generator: GeneratorConfig::default(),
        }
    }
}

/// Master suite size per class: 1024 for the toy, 128 for collections, and
/// never below the largest requested limit.
pub fn master_size(class_name: &str, limits: &[usize]) -> usize {
    let base = if class_name == "ArrayCalculator" {
        TOY_MASTER_SIZE
    } else {
        COLLECTION_MASTER_SIZE
    };
    limits.iter().copied().fold(base, usize::max)
}

/// A suite with baseline expected returns and its baseline snapshot.
#[derive(Debug, Clone)]
pub struct Baseline {
    pub suite: Suite,
    pub snapshot: Snapshot,
}

/// Generates, splits and records baselines for one class and seed.
pub fn prepare_baselines(
    adapter: &AdapterSpec,
    seed: u64,
    limits: &[usize],
    generator: &GeneratorConfig,
) -> Result<BTreeMap<usize, Baseline>, LabError> {
    let class = adapter.class;
    let master = sequence::generate_master_suite_with(class, seed, master_size(class.class_name, limits), generator)?;
    sequence::split_prefix_suites(&master, limits)?
        .into_iter()
        .map(|(limit, split)| {
            let suite = sequence::record_expected_returns(&split, &VariantId::Baseline)?;
            let snapshot = record_snapshot(adapter, &suite, &VariantId::Baseline)?;
            Ok((limit, Baseline { suite, snapshot }))
        })
        .collect()
}

/// Strength figures for one (seed, limit, mode).
#[derive(Debug, Clone, PartialEq)]
pub struct SeedAggregate {
    pub seed: u64,
    pub limit: usize,
    pub mode: Mode,
    pub killed: usize,
    pub covered: usize,
    pub strength_pct: f64,
    /// Nothing covered, so strength is reported as 0.
    pub undefined: bool,
    pub executed_tests: usize,
    pub wall_time_s: f64,
}

/// Means over seeds for one (limit, mode).
#[derive(Debug, Clone, PartialEq)]
pub struct LimitAggregate {
    pub limit: usize,
    pub mode: Mode,
    pub seeds: usize,
    pub executed_tests: f64,
    pub killed_mutants: f64,
    pub strength_pct: f64,
    pub undefined_seeds: usize,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub outcomes: Vec<RunOutcome>,
    pub per_seed: Vec<SeedAggregate>,
    pub per_limit: Vec<LimitAggregate>,
}

impl ExperimentResult {
    pub fn limit_aggregate(&self, limit: usize, mode: Mode) -> Option<&LimitAggregate> {
        self.per_limit.iter().find(|a| a.limit == limit && a.mode == mode)
    }

    pub fn seed_aggregate(&self, seed: u64, limit: usize, mode: Mode) -> Option<&SeedAggregate> {
        self.per_seed
            .iter()
            .find(|a| a.seed == seed && a.limit == limit && a.mode == mode)
    }
}

pub fn strength_pct(killed: usize, covered: usize) -> f64 {
    if covered == 0 {
        0.0
    } else {
        100.0 * killed as f64 / covered as f64
    }
}

fn outcome_key(o: &RunOutcome) -> (usize, u64, usize, Mode, String) {
    (o.limit, o.seed, class_rank(&o.class_name), o.mode, o.mutant.to_string())
}

fn class_rank(name: &str) -> usize {
    corpus::list_classes()
        .iter()
        .position(|c| c.class_name == name)
        .unwrap_or(usize::MAX)
}

/// Deterministic fold of outcomes into per-seed and per-limit aggregates.
pub fn aggregate(mut outcomes: Vec<RunOutcome>) -> ExperimentResult {
    outcomes.sort_by_key(outcome_key);

    let mut cells: BTreeMap<(usize, Mode, u64), SeedAggregate> = BTreeMap::new();
    for o in &outcomes {
        let a = cells.entry((o.limit, o.mode, o.seed)).or_insert(SeedAggregate {
            seed: o.seed,
            limit: o.limit,
            mode: o.mode,
            killed: 0,
            covered: 0,
            strength_pct: 0.0,
            undefined: false,
            executed_tests: 0,
            wall_time_s: 0.0,
        });
        a.killed += usize::from(o.killed);
        a.covered += usize::from(o.covered);
        a.executed_tests += o.executed_tests;
        a.wall_time_s += o.wall_time_s;
    }
    for a in cells.values_mut() {
        a.strength_pct = strength_pct(a.killed, a.covered);
        a.undefined = a.covered == 0;
    }

    let mut grouped: BTreeMap<(usize, Mode), Vec<&SeedAggregate>> = BTreeMap::new();
    for ((limit, mode, _), a) in &cells {
        grouped.entry((*limit, *mode)).or_default().push(a);
    }
    let per_limit = grouped
        .into_iter()
        .map(|((limit, mode), seeds)| {
            let n = seeds.len() as f64;
            let mean = |f: &dyn Fn(&SeedAggregate) -> f64| seeds.iter().map(|a| f(a)).sum::<f64>() / n;
            LimitAggregate {
                limit,
                mode,
                seeds: seeds.len(),
                executed_tests: mean(&|a| a.executed_tests as f64),
                killed_mutants: mean(&|a| a.killed as f64),
                strength_pct: mean(&|a| a.strength_pct),
                undefined_seeds: seeds.iter().filter(|a| a.undefined).count(),
                wall_time_s: mean(&|a| a.wall_time_s),
            }
        })
        .collect();

    ExperimentResult {
        outcomes,
        per_seed: cells.into_values().collect(),
        per_limit,
    }
}

/// Runs the full (mutant, seed, limit, mode) cross-product in parallel.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<ExperimentResult, LabError> {
    let setups: Vec<(usize, u64)> = (0..plan.adapters.len())
        .flat_map(|a| plan.seeds.iter().map(move |&s| (a, s)))
        .collect();
    let baselines: BTreeMap<(usize, u64), BTreeMap<usize, Baseline>> = setups
        .par_iter()
        .map(|&(a, seed)| Ok(((a, seed), prepare_baselines(&plan.adapters[a], seed, &plan.limits, &plan.generator)?)))
        .collect::<Result<_, LabError>>()?;

    let mut cells = Vec::new();
    for (a, adapter) in plan.adapters.iter().enumerate() {
        let class_name = adapter.class.class_name;
        let variants: Vec<VariantId> = match &plan.mutants {
            Some(list) => list
                .iter()
                .filter(|v| mutants::method_of(v).is_ok_and(|(c, _)| c == class_name))
                .cloned()
                .collect(),
            None => mutants::list_mutants(Some(class_name))?.iter().map(|m| m.variant()).collect(),
        };
        for variant in variants {
            for &seed in &plan.seeds {
                for &limit in &plan.limits {
                    for &mode in &plan.modes {
                        cells.push((a, variant.clone(), seed, limit, mode));
                    }
                }
            }
        }
    }

    let outcomes = cells
        .par_iter()
        .map(|(a, variant, seed, limit, mode)| {
            let b = &baselines[&(*a, *seed)][limit];
            run_suite_against(variant, &b.suite, *mode, &b.snapshot, &plan.adapters[*a])
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(aggregate(outcomes))
}
