//! Snapshot comparison: the regression oracle verdict.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::snapshot::{encode_value, Snapshot, SnapshotMeta, StateRecord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiffError {
    #[error("snapshots are not comparable: {0}")]
    ConfigMismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffScope {
    All,
    ReturnsOnly,
    ObserversOnly,
}

impl DiffScope {
    fn returns(self) -> bool {
        matches!(self, DiffScope::All | DiffScope::ReturnsOnly)
    }

    fn observers(self) -> bool {
        matches!(self, DiffScope::All | DiffScope::ObserversOnly)
    }
}

/// Which cell of an aligned record pair differs.
///
/// `Input` and `Call` flag records that align by position but came from
/// different sequences; they are reported in every scope.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DivergenceSource {
    Input,
    Call,
    ReturnValue,
    Observer(String),
    MissingRecord,
    ExtraRecord,
}

impl fmt::Display for DivergenceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivergenceSource::Input => f.write_str("input"),
            DivergenceSource::Call => f.write_str("call"),
            DivergenceSource::ReturnValue => f.write_str("return"),
            DivergenceSource::Observer(name) => write!(f, "obs:{name}"),
            DivergenceSource::MissingRecord => f.write_str("missing_record"),
            DivergenceSource::ExtraRecord => f.write_str("extra_record"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub test_id: String,
    pub step: usize,
    pub source: DivergenceSource,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "Match",
            Verdict::Mismatch => "Mismatch",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffReport {
    pub expected_meta: SnapshotMeta,
    pub actual_meta: SnapshotMeta,
    pub divergences: Vec<Divergence>,
    pub verdict: Verdict,
}

impl DiffReport {
    pub fn is_match(&self) -> bool {
        self.verdict == Verdict::Match
    }

    /// `test_id,step,source,expected,actual` per divergence, then
    /// `verdict,<Match|Mismatch>,<count>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in &self.divergences {
            out.push_str(&format!("{},{},{},{},{}\n", d.test_id, d.step, d.source, d.expected, d.actual));
        }
        out.push_str(&format!("verdict,{},{}\n", self.verdict, self.divergences.len()));
        out
    }
}

fn check_comparable(expected: &Snapshot, actual: &Snapshot) -> Result<(), DiffError> {
    let (e, a) = (&expected.meta, &actual.meta);
    if e.class_name != a.class_name {
        return Err(DiffError::ConfigMismatch(format!("class {} vs {}", e.class_name, a.class_name)));
    }
    if expected.observers != actual.observers {
        return Err(DiffError::ConfigMismatch(format!(
            "observers [{}] vs [{}]",
            expected.observers.join(" "),
            actual.observers.join(" ")
        )));
    }
    if e.config_digest != a.config_digest {
        return Err(DiffError::ConfigMismatch(format!(
            "config digest {} vs {}",
            e.config_digest, a.config_digest
        )));
    }
    Ok(())
}

pub fn diff_snapshots(expected: &Snapshot, actual: &Snapshot, scope: DiffScope) -> Result<DiffReport, DiffError> {
    check_comparable(expected, actual)?;
    let divergences = diff_record_lists(&expected.records, &actual.records, &expected.observers, scope);
    let verdict = if divergences.is_empty() {
        Verdict::Match
    } else {
        Verdict::Mismatch
    };
    Ok(DiffReport {
        expected_meta: expected.meta.clone(),
        actual_meta: actual.meta.clone(),
        divergences,
        verdict,
    })
}

/// Aligns two `(test_id, step)`-sorted record lists and diffs them.
pub fn diff_record_lists(
    expected: &[StateRecord],
    actual: &[StateRecord],
    observers: &[String],
    scope: DiffScope,
) -> Vec<Divergence> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < expected.len() || j < actual.len() {
        let order = match (expected.get(i), actual.get(j)) {
            (Some(e), Some(a)) => (&e.test_id, e.step).cmp(&(&a.test_id, a.step)),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match order {
            Ordering::Less => {
                let e = &expected[i];
                out.push(presence(e, DivergenceSource::MissingRecord, "present", "absent"));
                i += 1;
            }
            Ordering::Greater => {
                let a = &actual[j];
                out.push(presence(a, DivergenceSource::ExtraRecord, "absent", "present"));
                j += 1;
            }
            Ordering::Equal => {
                diff_records(&expected[i], &actual[j], observers, scope, &mut out);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn presence(r: &StateRecord, source: DivergenceSource, expected: &str, actual: &str) -> Divergence {
    Divergence {
        test_id: r.test_id.clone(),
        step: r.step,
        source,
        expected: expected.to_owned(),
        actual: actual.to_owned(),
    }
}

/// Appends one divergence per differing in-scope cell of an aligned pair.
pub fn diff_records(
    expected: &StateRecord,
    actual: &StateRecord,
    observers: &[String],
    scope: DiffScope,
    out: &mut Vec<Divergence>,
) {
    let mut cell = |source: DivergenceSource, e: String, a: String| {
        if e != a {
            out.push(Divergence {
                test_id: expected.test_id.clone(),
                step: expected.step,
                source,
                expected: e,
                actual: a,
            });
        }
    };
    cell(
        DivergenceSource::Input,
        encode_value(&expected.input),
        encode_value(&actual.input),
    );
    cell(DivergenceSource::Call, expected.call.clone(), actual.call.clone());
    if scope.returns() {
        cell(
            DivergenceSource::ReturnValue,
            encode_value(&expected.returned),
            encode_value(&actual.returned),
        );
    }
    if scope.observers() {
        for (k, name) in observers.iter().enumerate() {
            let e = expected.observations.get(k).map(encode_value).unwrap_or_default();
            let a = actual.observations.get(k).map(encode_value).unwrap_or_default();
            cell(DivergenceSource::Observer(name.clone()), e, a);
        }
    }
}

/// Earliest divergence of each diverging test. Ties within a step resolve
/// to column order, which is the report order.
pub fn first_divergence_per_test(report: &DiffReport) -> BTreeMap<String, Divergence> {
    let mut firsts: BTreeMap<String, Divergence> = BTreeMap::new();
    for d in &report.divergences {
        match firsts.get(&d.test_id) {
            Some(best) if best.step <= d.step => {}
            _ => {
                firsts.insert(d.test_id.clone(), d.clone());
            }
        }
    }
    firsts
}
