//! Catalog of behavioral variants of the corpus classes.
//!
//! Each mutant replaces the behavior of exactly one method of one class and
//! is selected when an object is instantiated. Every entry carries a stored
//! witness: a constructor input and call sequence on which the mutant's
//! observable state departs from baseline.

use std::fmt;
use std::sync::LazyLock;

use thiserror::Error;

use crate::corpus;
use crate::snapshot::decode_value;
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VariantId {
    Baseline,
    /// `<class>/<tag>`, e.g. `ArrayCalculator/M1`.
    Mutant(String),
}

impl VariantId {
    pub fn mutant(id: &str) -> Self {
        VariantId::Mutant(id.to_owned())
    }

    /// Parses `baseline` or a registered mutant id.
    pub fn parse(s: &str) -> Result<Self, RegistryError> {
        if s == "baseline" {
            return Ok(VariantId::Baseline);
        }
        lookup(s)
            .map(|m| VariantId::Mutant(m.id.to_owned()))
            .ok_or_else(|| RegistryError::UnknownVariant(s.to_owned()))
    }
}

impl fmt::Display for VariantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariantId::Baseline => f.write_str("baseline"),
            VariantId::Mutant(id) => f.write_str(id),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutantSpec {
    pub id: &'static str,
    pub tag: &'static str,
    pub target_class: &'static str,
    pub target_method: &'static str,
    pub operator_tag: &'static str,
    pub description: &'static str,
}

impl MutantSpec {
    pub fn variant(&self) -> VariantId {
        VariantId::mutant(self.id)
    }
}

/// A constructor input plus calls that expose a mutant.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub input: Value,
    pub calls: Vec<(String, Vec<Value>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("unknown variant {0:?}")]
    UnknownVariant(String),
    #[error("the baseline variant has no target method")]
    BaselineHasNoTarget,
}

struct Entry {
    spec: MutantSpec,
    witness_input: &'static str,
    witness_calls: &'static [(&'static str, &'static str)],
}

macro_rules! mutant {
    ($class:literal, $tag:literal, $method:literal, $op:literal, $desc:literal,
     $input:literal, [$(($call:literal, $args:literal)),* $(,)?]) => {
        Entry {
            spec: MutantSpec {
                id: concat!($class, "/", $tag),
                tag: $tag,
                target_class: $class,
                target_method: $method,
                operator_tag: $op,
                description: $desc,
            },
            witness_input: $input,
            witness_calls: &[$(($call, $args)),*],
        }
    };
}

static REGISTRY: &[Entry] = &[
    mutant!("Stack", "M1", "push", "statement-reorder",
        "new element is placed below the current top", "[1]", [("push", "[2]")]),
    mutant!("Stack", "M2", "pop", "boundary",
        "pop of the last element returns it but leaves it in place", "[5]", [("pop", "[]")]),
    mutant!("Stack", "M3", "peek", "off-by-one",
        "peek reads the bottom slot instead of the top", "[1 2]", [("size", "[]")]),
    mutant!("Stack", "M4", "search", "off-by-one",
        "search reports 0-based distance", "[1 2]", [("search", "[2]")]),
    mutant!("Stack", "M5", "is_empty", "boundary",
        "is_empty also holds for a single element", "[7]", [("size", "[]")]),
    mutant!("ArrayList", "M1", "add_at", "boundary",
        "inserting at index == size is rejected", "[1]", [("add_at", "[1 5]")]),
    mutant!("ArrayList", "M2", "remove_at", "off-by-one",
        "returns the element at index but drops its successor", "[1 2 3]", [("remove_at", "[0]")]),
    mutant!("ArrayList", "M3", "index_of", "loop-direction",
        "index_of scans from the back", "[4 0 4]", [("index_of", "[4]")]),
    mutant!("ArrayList", "M4", "set", "return-value",
        "set returns the new value instead of the old one", "[1]", [("set", "[0 5]")]),
    mutant!("ArrayList", "M5", "contains", "boundary",
        "contains skips the last element", "[1 2]", [("contains", "[2]")]),
    mutant!("LinkedList", "M1", "add_first", "swapped-branch",
        "add_first on a non-empty list links after the head", "[1 2]", [("add_first", "[9]")]),
    mutant!("LinkedList", "M2", "remove_last", "wrong-reference",
        "remove_last returns the tail but unlinks the head", "[1 2]", [("remove_last", "[]")]),
    mutant!("LinkedList", "M3", "get_last", "off-by-one",
        "get_last reads the node before the tail when size >= 3", "[1 2 3]", [("size", "[]")]),
    mutant!("LinkedList", "M4", "remove", "loop-direction",
        "remove deletes the last occurrence instead of the first", "[1 2 1]", [("remove", "[1]")]),
    mutant!("LinkedList", "M5", "contains", "boundary",
        "contains skips the tail node", "[1 2]", [("contains", "[2]")]),
    mutant!("HashMap", "M1", "put", "removed-statement",
        "put on an existing key returns the old value without updating it", "[1]", [("put", "[1 3]")]),
    mutant!("HashMap", "M2", "remove", "removed-statement",
        "remove of a lone bucket entry decrements size but keeps the entry", "[1]", [("remove", "[1]")]),
    mutant!("HashMap", "M3", "get", "off-by-one",
        "get probes the neighbouring bucket", "[1]", [("get", "[1]")]),
    mutant!("HashMap", "M4", "size", "return-value",
        "size counts occupied buckets instead of entries", "[0 4]", [("is_empty", "[]")]),
    mutant!("TreeMap", "M1", "first_key", "wrong-reference",
        "first_key returns the root key instead of the leftmost", "[2 1]", [("size", "[]")]),
    mutant!("TreeMap", "M2", "floor_key", "boundary",
        "floor_key uses < instead of <=", "[3]", [("floor_key", "[3]")]),
    mutant!("TreeMap", "M3", "put", "return-value",
        "put always reports no previous value", "[1]", [("put", "[1 2]")]),
    mutant!("TreeMap", "M4", "remove", "removed-statement",
        "removing a node with two children discards its right subtree", "[2 1 3]", [("remove", "[2]")]),
    mutant!("HashSet", "M1", "add", "return-value",
        "add reports true for an element already present", "[1]", [("add", "[1]")]),
    mutant!("HashSet", "M2", "remove", "extra-side-effect",
        "remove also deletes the successor element", "[1 2]", [("remove", "[1]")]),
    mutant!("HashSet", "M3", "contains", "boundary",
        "contains rejects non-positive elements", "[0]", [("contains", "[0]")]),
    mutant!("HashSet", "M4", "clear", "negated-condition",
        "clear does nothing on a singleton set", "[1]", [("clear", "[]")]),
    mutant!("TreeSet", "M1", "last", "off-by-one",
        "last returns the second largest element when size >= 3", "[1 2 3]", [("size", "[]")]),
    mutant!("TreeSet", "M2", "ceiling", "boundary",
        "ceiling uses > instead of >=", "[3]", [("ceiling", "[3]")]),
    mutant!("TreeSet", "M3", "add", "off-by-one",
        "a new maximum x is stored as x - 1", "[1]", [("add", "[5]")]),
    mutant!("TreeSet", "M4", "remove", "negated-condition",
        "removing the minimum reports success but keeps it", "[1 2]", [("remove", "[1]")]),
    mutant!("ArrayCalculator", "M1", "get_last_element", "off-by-one",
        "returns the element at size - 2 when size >= 2", "[1 2 3]", [("get_sum", "[]")]),
    mutant!("ArrayCalculator", "M2", "reverse_data", "statement-reorder",
        "rotates left by one instead of reversing", "[1 2 3]", [("reverse_data", "[]")]),
    mutant!("ArrayCalculator", "M3", "sort_asc", "negated-condition",
        "sorts in descending order", "[3 1 2]", [("sort_asc", "[]"), ("get_first_element", "[]")]),
];

static ORDERED: LazyLock<Vec<&'static Entry>> = LazyLock::new(|| {
    // registry order follows corpus class order, then tag
    let classes = corpus::list_classes();
    let mut entries: Vec<&Entry> = REGISTRY.iter().collect();
    entries.sort_by_key(|e| {
        let pos = classes.iter().position(|c| c.class_name == e.spec.target_class);
        (pos, e.spec.tag)
    });
    entries
});

/// All mutants, or those of one class, in deterministic order.
pub fn list_mutants(filter: Option<&str>) -> Result<Vec<MutantSpec>, RegistryError> {
    if let Some(class) = filter {
        corpus::class(class).map_err(|_| RegistryError::UnknownClass(class.to_owned()))?;
    }
    Ok(ORDERED
        .iter()
        .filter(|e| filter.is_none_or(|c| e.spec.target_class == c))
        .map(|e| e.spec.clone())
        .collect())
}

pub fn lookup(id: &str) -> Option<&'static MutantSpec> {
    REGISTRY.iter().find(|e| e.spec.id == id).map(|e| &e.spec)
}

/// The single method whose behavior the mutant replaces.
pub fn method_of(variant: &VariantId) -> Result<(&'static str, &'static str), RegistryError> {
    match variant {
        VariantId::Baseline => Err(RegistryError::BaselineHasNoTarget),
        VariantId::Mutant(id) => lookup(id)
            .map(|m| (m.target_class, m.target_method))
            .ok_or_else(|| RegistryError::UnknownVariant(id.clone())),
    }
}

pub fn witness(id: &str) -> Option<Witness> {
    let entry = REGISTRY.iter().find(|e| e.spec.id == id)?;
    let decode = |s: &str| decode_value(s).expect("registry witness values are canonical");
    let calls = entry
        .witness_calls
        .iter()
        .map(|(m, args)| {
            let args = match decode(args) {
                Value::List(items) => items,
                other => panic!("witness args must be a list, got {other}"),
            };
            ((*m).to_owned(), args)
        })
        .collect();
    Some(Witness {
        input: decode(entry.witness_input),
        calls,
    })
}

/// Line format of `mutants list`: tab-separated id, class, method, operator, description.
pub fn list_line(m: &MutantSpec) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}",
        m.id, m.target_class, m.target_method, m.operator_tag, m.description
    )
}
