//! On-disk regression oracle: one CSV file of state records per suite run.
//!
//! ```text
//! #meta,<class>,<variant>,<seed>,<limit>,<config_digest>
//! test_id,input,step,call,returned,obs:<name>,obs:<name>,...
//! <one line per record>
//! ```
//!
//! UTF-8 with LF line endings. Cells are canonical [`Value`] encodings
//! (see [`codec`]) except `test_id`, `step` and `call`, which never contain
//! commas or newlines. Step 0 is the post-construction record (`<init>`).

mod codec;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub use codec::{decode_value, encode_value, MalformedValue};

use crate::mutants::VariantId;
use crate::value::Value;

pub const INIT_CALL: &str = "<init>";
const FIXED_COLUMNS: [&str; 5] = ["test_id", "input", "step", "call", "returned"];

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("i/o failure on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("corrupt snapshot file at line {line}: {reason}")]
    Corrupt { line: usize, reason: String },
    #[error("cell {0:?} contains a comma or newline")]
    InvalidCell(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnapshotMeta {
    pub class_name: String,
    pub variant: VariantId,
    pub seed: u64,
    pub limit: usize,
    pub config_digest: String,
}

/// One row: the state after `step` calls of test `test_id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateRecord {
    pub test_id: String,
    pub input: Value,
    pub step: usize,
    /// `method(arg1 arg2 ...)`, or `<init>` for step 0.
    pub call: String,
    pub returned: Value,
    /// Observer readouts, in the adapter's observer order.
    pub observations: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub meta: SnapshotMeta,
    pub observers: Vec<String>,
    pub records: Vec<StateRecord>,
}

impl Snapshot {
    /// Builds a snapshot, ordering records by `(test_id, step)`.
    pub fn new(meta: SnapshotMeta, observers: Vec<String>, mut records: Vec<StateRecord>) -> Self {
        records.sort_by(|a, b| (&a.test_id, a.step).cmp(&(&b.test_id, b.step)));
        Snapshot {
            meta,
            observers,
            records,
        }
    }

    /// Records of one test, assuming the sorted-order invariant.
    pub fn test_records(&self, test_id: &str) -> &[StateRecord] {
        let start = self.records.partition_point(|r| r.test_id.as_str() < test_id);
        let end = self.records[start..].partition_point(|r| r.test_id == test_id) + start;
        &self.records[start..end]
    }

    pub fn to_csv(&self) -> Result<String, SnapshotError> {
        let m = &self.meta;
        let mut out = String::new();
        for cell in [&m.class_name, &m.variant.to_string(), &m.config_digest] {
            check_cell(cell)?;
        }
        out.push_str(&format!(
            "#meta,{},{},{},{},{}\n",
            m.class_name, m.variant, m.seed, m.limit, m.config_digest
        ));
        out.push_str(&FIXED_COLUMNS.join(","));
        for name in &self.observers {
            check_cell(name)?;
            out.push_str(",obs:");
            out.push_str(name);
        }
        out.push('\n');
        for r in &self.records {
            check_cell(&r.test_id)?;
            check_cell(&r.call)?;
            out.push_str(&format!(
                "{},{},{},{},{}",
                r.test_id,
                encode_value(&r.input),
                r.step,
                r.call,
                encode_value(&r.returned)
            ));
            for v in &r.observations {
                out.push(',');
                out.push_str(&encode_value(v));
            }
            out.push('\n');
        }
        Ok(out)
    }

    pub fn from_csv(text: &str) -> Result<Snapshot, SnapshotError> {
        let corrupt = |line: usize, reason: String| SnapshotError::Corrupt { line, reason };
        let body = text
            .strip_suffix('\n')
            .ok_or_else(|| corrupt(1, "missing trailing newline".into()))?;
        let mut lines = body.split('\n').enumerate().map(|(i, l)| (i + 1, l));

        let (_, meta_line) = lines.next().expect("split yields at least one item");
        let meta_fields: Vec<&str> = meta_line.split(',').collect();
        if meta_fields.len() != 6 || meta_fields[0] != "#meta" {
            return Err(corrupt(1, format!("bad meta line {meta_line:?}")));
        }
        let variant =
            VariantId::parse(meta_fields[2]).map_err(|e| corrupt(1, e.to_string()))?;
        let meta = SnapshotMeta {
            class_name: meta_fields[1].to_owned(),
            variant,
            seed: meta_fields[3].parse().map_err(|_| corrupt(1, "bad seed".into()))?,
            limit: meta_fields[4].parse().map_err(|_| corrupt(1, "bad limit".into()))?,
            config_digest: meta_fields[5].to_owned(),
        };

        let (_, header) = lines.next().ok_or_else(|| corrupt(2, "missing header".into()))?;
        let columns: Vec<&str> = header.split(',').collect();
        if columns.len() < FIXED_COLUMNS.len() || columns[..FIXED_COLUMNS.len()] != FIXED_COLUMNS {
            return Err(corrupt(2, format!("bad header {header:?}")));
        }
        let observers = columns[FIXED_COLUMNS.len()..]
            .iter()
            .map(|c| {
                c.strip_prefix("obs:")
                    .filter(|n| !n.is_empty())
                    .map(str::to_owned)
                    .ok_or_else(|| corrupt(2, format!("bad observer column {c:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;

        let mut records: Vec<StateRecord> = Vec::new();
        for (line_no, line) in lines {
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != FIXED_COLUMNS.len() + observers.len() {
                return Err(corrupt(
                    line_no,
                    format!("expected {} cells, found {}", FIXED_COLUMNS.len() + observers.len(), cells.len()),
                ));
            }
            let value = |s: &str| decode_value(s).map_err(|e| corrupt(line_no, e.to_string()));
            if cells[0].is_empty() {
                return Err(corrupt(line_no, "empty test id".into()));
            }
            let step: usize = cells[2]
                .parse()
                .ok()
                .filter(|s: &usize| s.to_string() == cells[2])
                .ok_or_else(|| corrupt(line_no, format!("bad step {:?}", cells[2])))?;
            let record = StateRecord {
                test_id: cells[0].to_owned(),
                input: value(cells[1])?,
                step,
                call: cells[3].to_owned(),
                returned: value(cells[4])?,
                observations: cells[5..].iter().map(|c| value(c)).collect::<Result<_, _>>()?,
            };
            if let Some(prev) = records.last() {
                if (&prev.test_id, prev.step) >= (&record.test_id, record.step) {
                    return Err(corrupt(line_no, "records out of (test_id, step) order".into()));
                }
            }
            records.push(record);
        }
        Ok(Snapshot {
            meta,
            observers,
            records,
        })
    }
}

fn check_cell(s: &str) -> Result<(), SnapshotError> {
    if s.contains([',', '\n', '\r']) {
        Err(SnapshotError::InvalidCell(s.to_owned()))
    } else {
        Ok(())
    }
}

/// Writes `contents` to `path` through a temporary file and rename.
pub(crate) fn write_atomic(path: &Path, contents: &str) -> Result<(), SnapshotError> {
    let io = |source| SnapshotError::Io {
        path: path.to_owned(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_owned(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir).map_err(io)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn write_snapshot(snapshot: &Snapshot, path: &Path) -> Result<(), SnapshotError> {
    write_atomic(path, &snapshot.to_csv()?)
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot, SnapshotError> {
    let text = fs::read_to_string(path).map_err(|source| SnapshotError::Io {
        path: path.to_owned(),
        source,
    })?;
    Snapshot::from_csv(&text)
}

/// `<root>/<class>/<variant>/s<seed>_l<limit>.csv`, with `/` in mutant ids
/// replaced by `_`.
pub fn default_path(root: &Path, meta: &SnapshotMeta) -> PathBuf {
    root.join(&meta.class_name)
        .join(meta.variant.to_string().replace('/', "_"))
        .join(format!("s{}_l{}.csv", meta.seed, meta.limit))
}
