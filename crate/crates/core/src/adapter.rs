//! Test drivers: forward calls to the SUT and, after every call, read all
//! configured observers into a state record.
//!
//! Drivers are interpreted from an [`AdapterSpec`] rather than generated as
//! source. The spec comes from one row of the adapter config file:
//!
//! ```text
//! # class_name,dev_methods,observer_methods
//! ArrayCalculator,,is_empty get_size get_first_element get_last_element get_average get_sum
//! ```
//!
//! Observer order fixes snapshot column order.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::corpus::{self, ClassDescriptor, MethodDescriptor, MethodKind, ObjectHandle, SutError};
use crate::diff::{diff_snapshots, DiffError, DiffReport, DiffScope};
use crate::mutants::VariantId;
use crate::sequence::Suite;
use crate::snapshot::{self, encode_value, Snapshot, SnapshotError, SnapshotMeta, StateRecord, INIT_CALL};
use crate::value::Value;

/// Environment toggle: `0` records a new expected file, `1` compares.
pub const COMPARE_ENV: &str = "AMPLIFIED_ORACLE_COMPARE";

/// The shipped config covering every corpus class.
pub const DEFAULT_CONFIG: &str = include_str!("../data/adapters.csv");

#[derive(Debug, Error)]
pub enum AdapterError {
    #[error("line {line}: malformed config row: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: unknown class {class:?}")]
    UnknownClass { line: usize, class: String },
    #[error("line {line}: {class} has no method {method:?}")]
    UnknownMethod { line: usize, class: String, method: String },
    #[error("line {line}: {method:?} is a {kind}, not an observer")]
    NotAnObserver { line: usize, method: String, kind: MethodKind },
    #[error("line {line}: observer {method:?} takes arguments")]
    ParameterizedObserver { line: usize, method: String },
    #[error("expected snapshot {0} does not exist")]
    MissingExpectedFile(PathBuf),
    #[error("expected snapshot is corrupt at line {line}: {reason}")]
    CorruptSnapshotFile { line: usize, reason: String },
    #[error("invalid {COMPARE_ENV} value {0:?} (expected 0 or 1)")]
    InvalidToggle(String),
    #[error(transparent)]
    Snapshot(#[from] SnapshotError),
    #[error(transparent)]
    Diff(#[from] DiffError),
    #[error(transparent)]
    Sut(#[from] SutError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdapterConfigRow {
    pub line: usize,
    pub class_name: String,
    /// Listed for development only; ignored at runtime.
    pub dev_methods: Vec<String>,
    pub observer_methods: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareMode {
    Record,
    Compare,
}

impl CompareMode {
    /// Reads [`COMPARE_ENV`]; unset or empty means no preference.
    pub fn from_env() -> Result<Option<CompareMode>, AdapterError> {
        match std::env::var(COMPARE_ENV) {
            Ok(v) => Self::parse_toggle(&v),
            Err(_) => Ok(None),
        }
    }

    pub fn parse_toggle(v: &str) -> Result<Option<CompareMode>, AdapterError> {
        match v.trim() {
            "" => Ok(None),
            "0" => Ok(Some(CompareMode::Record)),
            "1" => Ok(Some(CompareMode::Compare)),
            other => Err(AdapterError::InvalidToggle(other.to_owned())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdapterSpec {
    pub driver_name: String,
    pub class: &'static ClassDescriptor,
    pub observers: Vec<MethodDescriptor>,
    pub compare_mode: CompareMode,
    pub config_digest: String,
}

impl AdapterSpec {
    pub fn observer_names(&self) -> Vec<String> {
        self.observers.iter().map(|m| m.name.to_owned()).collect()
    }

    /// Human-readable driver description, one `key,value...` line per fact.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "driver,{}\nclass,{}\nconfig_digest,{}\n",
            self.driver_name, self.class.class_name, self.config_digest
        );
        for o in &self.observers {
            out.push_str(&format!("observer,{}\n", o.name));
        }
        for m in &self.class.methods {
            let params: Vec<String> = m.param_domains.iter().map(|d| d.to_string()).collect();
            out.push_str(&format!("forward,{},{},{}\n", m.name, m.kind, params.join(" ; ")));
        }
        out
    }
}

pub fn parse_adapter_config(text: &str) -> Result<Vec<AdapterConfigRow>, AdapterError> {
    let mut rows = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() != 3 {
            return Err(AdapterError::MalformedLine {
                line,
                reason: format!("expected 3 comma-separated fields, found {}", fields.len()),
            });
        }
        let words = |s: &str| s.split_whitespace().map(str::to_owned).collect::<Vec<_>>();
        let row = AdapterConfigRow {
            line,
            class_name: fields[0].trim().to_owned(),
            dev_methods: words(fields[1]),
            observer_methods: words(fields[2]),
        };
        validate_row(&row)?;
        if !seen.insert(row.class_name.clone()) {
            return Err(AdapterError::MalformedLine {
                line,
                reason: format!("duplicate row for {}", row.class_name),
            });
        }
        rows.push(row);
    }
    Ok(rows)
}

fn validate_row(row: &AdapterConfigRow) -> Result<Vec<MethodDescriptor>, AdapterError> {
    let line = row.line;
    let class = corpus::class(&row.class_name).map_err(|_| AdapterError::UnknownClass {
        line,
        class: row.class_name.clone(),
    })?;
    if row.observer_methods.is_empty() {
        return Err(AdapterError::MalformedLine {
            line,
            reason: "no observer methods".into(),
        });
    }
    let mut seen = BTreeSet::new();
    let mut observers = Vec::new();
    for name in &row.observer_methods {
        let m = class.method(name).ok_or_else(|| AdapterError::UnknownMethod {
            line,
            class: row.class_name.clone(),
            method: name.clone(),
        })?;
        if m.kind != MethodKind::Observer {
            return Err(AdapterError::NotAnObserver {
                line,
                method: name.clone(),
                kind: m.kind,
            });
        }
        if !m.param_domains.is_empty() {
            return Err(AdapterError::ParameterizedObserver {
                line,
                method: name.clone(),
            });
        }
        if !seen.insert(name) {
            return Err(AdapterError::MalformedLine {
                line,
                reason: format!("observer {name} listed twice"),
            });
        }
        observers.push(m.clone());
    }
    Ok(observers)
}

/// Hex SHA-256 of `class,observer observer ...`. Dev methods do not count.
pub fn config_digest(class_name: &str, observers: &[String]) -> String {
    let canonical = format!("{},{}", class_name, observers.join(" "));
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

pub fn generate_adapter(row: &AdapterConfigRow) -> Result<AdapterSpec, AdapterError> {
    let observers = validate_row(row)?;
    let class = corpus::class(&row.class_name)?;
    Ok(AdapterSpec {
        driver_name: format!("{}TestDriver", class.class_name),
        class,
        config_digest: config_digest(class.class_name, &row.observer_methods),
        observers,
        compare_mode: CompareMode::Compare,
    })
}

/// Parses a config and builds one spec per row.
pub fn load_adapters(text: &str) -> Result<Vec<AdapterSpec>, AdapterError> {
    parse_adapter_config(text)?.iter().map(generate_adapter).collect()
}

/// Adapter for `class_name` from the shipped config.
pub fn default_adapter(class_name: &str) -> Result<AdapterSpec, AdapterError> {
    load_adapters(DEFAULT_CONFIG)?
        .into_iter()
        .find(|a| a.class.class_name == class_name)
        .ok_or_else(|| AdapterError::UnknownClass {
            line: 0,
            class: class_name.to_owned(),
        })
}

/// `method(arg1 arg2 ...)` with canonically encoded arguments.
pub fn render_call(method: &str, args: &[Value]) -> String {
    let args: Vec<String> = args.iter().map(encode_value).collect();
    format!("{method}({})", args.join(" "))
}

/// Reads every observer of `spec`, in order, into a record of the call that
/// just happened.
#[allow(clippy::too_many_arguments)]
pub fn write_internal_state(
    spec: &AdapterSpec,
    handle: &mut ObjectHandle,
    called_method: &str,
    args: &[Value],
    returned: Value,
    test_id: &str,
    input: &Value,
    step: usize,
) -> StateRecord {
    let observations = spec
        .observers
        .iter()
        .map(|o| corpus::invoke(handle, o.name, &[]).expect("observers are validated zero-arg methods"))
        .collect();
    let call = if called_method == INIT_CALL {
        INIT_CALL.to_owned()
    } else {
        render_call(called_method, args)
    };
    StateRecord {
        test_id: test_id.to_owned(),
        input: input.clone(),
        step,
        call,
        returned,
        observations,
    }
}

/// One test's execution through an adapter.
pub struct TestDriver<'a> {
    spec: &'a AdapterSpec,
    handle: ObjectHandle,
    test_id: String,
    input: Value,
    records: Vec<StateRecord>,
}

impl<'a> TestDriver<'a> {
    /// Constructs the object and records the step-0 state.
    pub fn start(spec: &'a AdapterSpec, variant: &VariantId, test_id: &str, input: &Value) -> Result<Self, SutError> {
        let mut handle = corpus::instantiate(spec.class.class_name, variant, input)?;
        let init = write_internal_state(spec, &mut handle, INIT_CALL, &[], Value::Unit, test_id, input, 0);
        Ok(TestDriver {
            spec,
            handle,
            test_id: test_id.to_owned(),
            input: input.clone(),
            records: vec![init],
        })
    }

    pub fn call(&mut self, method: &str, args: &[Value]) -> Result<Value, SutError> {
        let returned = corpus::invoke(&mut self.handle, method, args)?;
        let step = self.records.len();
        let record = write_internal_state(
            self.spec,
            &mut self.handle,
            method,
            args,
            returned.clone(),
            &self.test_id,
            &self.input,
            step,
        );
        self.records.push(record);
        Ok(returned)
    }

    pub fn records(&self) -> &[StateRecord] {
        &self.records
    }

    pub fn handle(&self) -> &ObjectHandle {
        &self.handle
    }

    pub fn finish(self) -> (Vec<StateRecord>, ObjectHandle) {
        (self.records, self.handle)
    }
}

/// Runs every sequence of `suite` through drivers on `variant`.
pub fn record_snapshot(spec: &AdapterSpec, suite: &Suite, variant: &VariantId) -> Result<Snapshot, AdapterError> {
    if suite.class_name != spec.class.class_name {
        return Err(AdapterError::Diff(DiffError::ConfigMismatch(format!(
            "suite is for {}, adapter for {}",
            suite.class_name, spec.class.class_name
        ))));
    }
    let mut records = Vec::new();
    for seq in &suite.sequences {
        let mut driver = TestDriver::start(spec, variant, &seq.test_id, &seq.ctor_input)?;
        for (method, args) in &seq.calls {
            driver.call(method, args)?;
        }
        records.extend(driver.finish().0);
    }
    let meta = SnapshotMeta {
        class_name: spec.class.class_name.to_owned(),
        variant: variant.clone(),
        seed: suite.seed,
        limit: suite.limit,
        config_digest: spec.config_digest.clone(),
    };
    Ok(Snapshot::new(meta, spec.observer_names(), records))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchOutcome {
    Saved,
    Match,
    Mismatch(Box<DiffReport>),
}

/// Saves `current` as the expected file (Record) or compares against it.
///
/// The mode is `mode` if given, else [`COMPARE_ENV`], else the spec's default.
pub fn match_internal_state_snapshot(
    spec: &AdapterSpec,
    current: &Snapshot,
    expected_path: &Path,
    mode: Option<CompareMode>,
) -> Result<MatchOutcome, AdapterError> {
    let mode = match mode {
        Some(m) => m,
        None => CompareMode::from_env()?.unwrap_or(spec.compare_mode),
    };
    match mode {
        CompareMode::Record => {
            snapshot::write_snapshot(current, expected_path)?;
            Ok(MatchOutcome::Saved)
        }
        CompareMode::Compare => {
            if !expected_path.exists() {
                return Err(AdapterError::MissingExpectedFile(expected_path.to_owned()));
            }
            let expected = snapshot::read_snapshot(expected_path).map_err(|e| match e {
                SnapshotError::Corrupt { line, reason } => AdapterError::CorruptSnapshotFile { line, reason },
                other => AdapterError::Snapshot(other),
            })?;
            let report = diff_snapshots(&expected, current, DiffScope::All)?;
            Ok(if report.is_match() {
                MatchOutcome::Match
            } else {
                MatchOutcome::Mismatch(Box::new(report))
            })
        }
    }
}
