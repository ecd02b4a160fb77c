//! Seeded random test sequences and prefix-split suites.
//!
//! Suite file format:
//!
//! ```text
//! suite,<class>,<seed>,<limit>
//! test,<test_id>,<ctor_input>
//! call,<method>,<args as a list value>[,<expected_return>]
//! ```

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::corpus::{self, ClassDescriptor, SutError};
use crate::mutants::VariantId;
use crate::snapshot::{self, decode_value, encode_value, SnapshotError};
use crate::value::Value;

pub const DEFAULT_MASTER_SIZE: usize = 1024;
pub const DEFAULT_LIMITS: [usize; 9] = [2, 4, 8, 16, 32, 64, 128, 256, 512];

#[derive(Debug, Error)]
pub enum SequenceError {
    #[error("{class} has an empty domain for {what}")]
    EmptyDomain { class: String, what: String },
    #[error("{class} declares no methods")]
    NoMethods { class: String },
    #[error("limit {limit} exceeds master size {master}")]
    LimitExceedsMaster { limit: usize, master: usize },
    #[error("invalid call-count range {0:?}")]
    BadCallRange(RangeInclusive<usize>),
    #[error("malformed suite file at line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error(transparent)]
    Sut(#[from] SutError),
    #[error(transparent)]
    Io(#[from] SnapshotError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSequence {
    pub test_id: String,
    pub class_name: String,
    pub ctor_input: Value,
    pub calls: Vec<(String, Vec<Value>)>,
    /// Baseline return per call, once recorded.
    pub expected_returns: Option<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Suite {
    pub class_name: String,
    pub seed: u64,
    pub limit: usize,
    pub sequences: Vec<TestSequence>,
}

impl Suite {
    /// A hand-written suite of one sequence.
    pub fn single(class_name: &str, test_id: &str, ctor_input: Value, calls: Vec<(String, Vec<Value>)>) -> Suite {
        Suite::from_sequences(
            class_name,
            0,
            vec![TestSequence {
                test_id: test_id.to_owned(),
                class_name: class_name.to_owned(),
                ctor_input,
                calls,
                expected_returns: None,
            }],
        )
    }

    pub fn from_sequences(class_name: &str, seed: u64, sequences: Vec<TestSequence>) -> Suite {
        Suite {
            class_name: class_name.to_owned(),
            seed,
            limit: sequences.len(),
            sequences,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite,{},{},{}\n", self.class_name, self.seed, self.limit);
        for seq in &self.sequences {
            out.push_str(&format!("test,{},{}\n", seq.test_id, encode_value(&seq.ctor_input)));
            for (k, (method, args)) in seq.calls.iter().enumerate() {
                out.push_str(&format!("call,{},{}", method, encode_value(&Value::List(args.clone()))));
                if let Some(ret) = seq.expected_returns.as_ref().and_then(|r| r.get(k)) {
                    out.push(',');
                    out.push_str(&encode_value(ret));
                }
                out.push('\n');
            }
        }
        out
    }

    /// Parses and validates a suite file against the corpus descriptors.
    pub fn from_text(text: &str) -> Result<Suite, SequenceError> {
        let bad = |line: usize, reason: String| SequenceError::Malformed { line, reason };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or_else(|| bad(1, "empty file".into()))?;
        let h: Vec<&str> = header.split(',').collect();
        if h.len() != 4 || h[0] != "suite" {
            return Err(bad(1, "expected suite,<class>,<seed>,<limit>".into()));
        }
        let class = corpus::class(h[1]).map_err(|e| bad(1, e.to_string()))?;
        let seed: u64 = h[2].parse().map_err(|_| bad(1, format!("bad seed {:?}", h[2])))?;
        let limit: usize = h[3].parse().map_err(|_| bad(1, format!("bad limit {:?}", h[3])))?;

        let mut sequences: Vec<TestSequence> = Vec::new();
        let mut returns: Vec<Vec<Value>> = Vec::new();
        for (line, raw) in lines {
            let f: Vec<&str> = raw.split(',').collect();
            let value = |s: &str| decode_value(s).map_err(|e| bad(line, e.to_string()));
            match f[0] {
                "test" if f.len() == 3 => {
                    let ctor_input = value(f[2])?;
                    if !class.constructor_domain.contains(&ctor_input) {
                        return Err(bad(line, format!("constructor input {} outside {}", f[2], class.constructor_domain)));
                    }
                    if sequences.iter().any(|s| s.test_id == f[1]) {
                        return Err(bad(line, format!("duplicate test id {}", f[1])));
                    }
                    sequences.push(TestSequence {
                        test_id: f[1].to_owned(),
                        class_name: class.class_name.to_owned(),
                        ctor_input,
                        calls: Vec::new(),
                        expected_returns: None,
                    });
                    returns.push(Vec::new());
                }
                "call" if f.len() == 3 || f.len() == 4 => {
                    let seq = sequences.last_mut().ok_or_else(|| bad(line, "call before any test".into()))?;
                    let args = match value(f[2])? {
                        Value::List(items) => items,
                        other => return Err(bad(line, format!("arguments {other} are not a list"))),
                    };
                    let desc = class
                        .method(f[1])
                        .ok_or_else(|| bad(line, format!("{} has no method {}", class.class_name, f[1])))?;
                    corpus::check_args(class, desc, &args).map_err(|e| bad(line, e.to_string()))?;
                    let rets = returns.last_mut().expect("pushed with the sequence");
                    if f.len() == 4 {
                        if rets.len() != seq.calls.len() {
                            return Err(bad(line, "expected returns must cover every call".into()));
                        }
                        rets.push(value(f[3])?);
                    } else if !rets.is_empty() {
                        return Err(bad(line, "expected returns must cover every call".into()));
                    }
                    seq.calls.push((f[1].to_owned(), args));
                }
                _ => return Err(bad(line, format!("unrecognized line {raw:?}"))),
            }
        }
        for (seq, rets) in sequences.iter_mut().zip(returns) {
            if !rets.is_empty() {
                if rets.len() != seq.calls.len() {
                    return Err(bad(0, format!("{} has partial expected returns", seq.test_id)));
                }
                seq.expected_returns = Some(rets);
            }
        }
        if sequences.len() != limit {
            return Err(bad(1, format!("header limit {limit} but {} sequences", sequences.len())));
        }
        Ok(Suite {
            class_name: class.class_name.to_owned(),
            seed,
            limit,
            sequences,
        })
    }
}

pub fn write_suite(suite: &Suite, path: &Path) -> Result<(), SequenceError> {
    Ok(snapshot::write_atomic(path, &suite.to_text())?)
}

pub fn read_suite(path: &Path) -> Result<Suite, SequenceError> {
    let text = std::fs::read_to_string(path).map_err(|source| SnapshotError::Io {
        path: path.to_owned(),
        source,
    })?;
    Suite::from_text(&text)
}

/// Number of calls per sequence, drawn uniformly from `calls`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub calls: RangeInclusive<usize>,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig { calls: 3..=10 }
    }
}

pub fn test_id(class_name: &str, seed: u64, index: usize) -> String {
    format!("{class_name}_s{seed}_t{index:04}")
}

pub fn generate_master_suite(class: &ClassDescriptor, seed: u64, master_size: usize) -> Result<Suite, SequenceError> {
    generate_master_suite_with(class, seed, master_size, &GeneratorConfig::default())
}

pub fn generate_master_suite_with(
    class: &ClassDescriptor,
    seed: u64,
    master_size: usize,
    config: &GeneratorConfig,
) -> Result<Suite, SequenceError> {
    if config.calls.is_empty() {
        return Err(SequenceError::BadCallRange(config.calls.clone()));
    }
    if class.methods.is_empty() {
        return Err(SequenceError::NoMethods {
            class: class.class_name.to_owned(),
        });
    }
    let empty = |what: String| SequenceError::EmptyDomain {
        class: class.class_name.to_owned(),
        what,
    };
    if class.constructor_domain.is_empty() {
        return Err(empty("constructor".into()));
    }
    for m in &class.methods {
        if m.param_domains.iter().any(|d| d.is_empty()) {
            return Err(empty(m.name.to_owned()));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sequences = (0..master_size)
        .map(|index| {
            let ctor_input = class.constructor_domain.sample(&mut rng);
            let n = rng.gen_range(config.calls.clone());
            let calls = (0..n)
                .map(|_| {
                    let m = class.methods.choose(&mut rng).expect("non-empty");
                    let args = m.param_domains.iter().map(|d| d.sample(&mut rng)).collect();
                    (m.name.to_owned(), args)
                })
                .collect();
            TestSequence {
                test_id: test_id(class.class_name, seed, index),
                class_name: class.class_name.to_owned(),
                ctor_input,
                calls,
                expected_returns: None,
            }
        })
        .collect();
    Ok(Suite {
        class_name: class.class_name.to_owned(),
        seed,
        limit: master_size,
        sequences,
    })
}

pub fn split_prefix_suites(master: &Suite, limits: &[usize]) -> Result<BTreeMap<usize, Suite>, SequenceError> {
    limits
        .iter()
        .map(|&limit| {
            if limit > master.sequences.len() {
                return Err(SequenceError::LimitExceedsMaster {
                    limit,
                    master: master.sequences.len(),
                });
            }
            Ok((
                limit,
                Suite {
                    class_name: master.class_name.clone(),
                    seed: master.seed,
                    limit,
                    sequences: master.sequences[..limit].to_vec(),
                },
            ))
        })
        .collect()
}

/// Runs each sequence directly on `variant` and stores its return trace.
pub fn record_expected_returns(suite: &Suite, variant: &VariantId) -> Result<Suite, SutError> {
    let mut out = suite.clone();
    for seq in &mut out.sequences {
        let mut handle = corpus::instantiate(&seq.class_name, variant, &seq.ctor_input)?;
        let returns = seq
            .calls
            .iter()
            .map(|(m, args)| corpus::invoke(&mut handle, m, args))
            .collect::<Result<Vec<_>, _>>()?;
        seq.expected_returns = Some(returns);
    }
    Ok(out)
}
