//! CSV reports of an experiment.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::{ExperimentResult, Mode, RunOutcome};
use crate::snapshot::{self, SnapshotError};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot create {path}: {source}")]
    IoFailure {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Write(#[from] SnapshotError),
}

const OUTCOME_HEADER: &str = "class,mutant,mode,covered,killed,killing_test_index,executed_tests,wall_time_s";

/// Raw outcomes, one line each, in the given order.
pub fn outcomes_csv<'a>(outcomes: impl IntoIterator<Item = &'a RunOutcome>) -> String {
    let mut out = format!("{OUTCOME_HEADER}\n");
    for o in outcomes {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{:.6}\n",
            o.class_name,
            o.mutant,
            o.mode,
            o.covered,
            o.killed,
            o.killing_test_index.map_or(String::new(), |i| i.to_string()),
            o.executed_tests,
            o.wall_time_s
        ));
    }
    out
}

fn limits(result: &ExperimentResult) -> Vec<usize> {
    result
        .per_limit
        .iter()
        .map(|a| a.limit)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Metric rows with a without/with column pair per limit.
pub fn table1_csv(result: &ExperimentResult) -> String {
    let limits = limits(result);
    let mut out = String::from("metric");
    for l in &limits {
        out.push_str(&format!(",l{l}_without,l{l}_with"));
    }
    out.push('\n');
    if limits.is_empty() {
        return out;
    }
    type Metric = fn(&super::LimitAggregate) -> String;
    let rows: [(&str, Metric); 4] = [
        ("execution_time_s", |a| format!("{:.3}", a.wall_time_s)),
        ("executed_tests", |a| format!("{:.1}", a.executed_tests)),
        ("killed_mutants", |a| format!("{:.1}", a.killed_mutants)),
        ("test_strength_pct", |a| format!("{:.1}", a.strength_pct)),
    ];
    for (name, metric) in rows {
        out.push_str(name);
        for &l in &limits {
            for mode in Mode::BOTH {
                out.push(',');
                if let Some(a) = result.limit_aggregate(l, mode) {
                    out.push_str(&metric(a));
                }
            }
        }
        out.push('\n');
    }
    out
}

pub fn strength_curve_csv(result: &ExperimentResult) -> String {
    let mut out = String::from("limit,mode,mean_strength_pct\n");
    for a in &result.per_limit {
        out.push_str(&format!("{},{},{:.4}\n", a.limit, a.mode, a.strength_pct));
    }
    out
}

/// Writes `s<seed>_l<limit>/outcomes.csv` per cell plus `table1.csv` and
/// `strength_curve.csv` under `out_dir`.
pub fn emit_reports(result: &ExperimentResult, out_dir: &Path) -> Result<(), ReportError> {
    let mkdir = |p: &Path| {
        std::fs::create_dir_all(p).map_err(|source| ReportError::IoFailure {
            path: p.to_owned(),
            source,
        })
    };
    mkdir(out_dir)?;
    let cells: BTreeSet<(u64, usize)> = result.outcomes.iter().map(|o| (o.seed, o.limit)).collect();
    for (seed, limit) in cells {
        let dir = out_dir.join(format!("s{seed}_l{limit}"));
        mkdir(&dir)?;
        let rows = result.outcomes.iter().filter(|o| o.seed == seed && o.limit == limit);
        snapshot::write_atomic(&dir.join("outcomes.csv"), &outcomes_csv(rows))?;
    }
    snapshot::write_atomic(&out_dir.join("table1.csv"), &table1_csv(result))?;
    snapshot::write_atomic(&out_dir.join("strength_curve.csv"), &strength_curve_csv(result))?;
    Ok(())
}
