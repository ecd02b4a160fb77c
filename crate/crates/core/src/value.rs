//! Observable values produced by SUT methods.

use std::fmt;

/// A single observable datum: a method return value or an observer readout.
///
/// Equality follows the canonical text encoding: all NaNs compare equal to
/// each other and `-0.0` is distinct from `0.0`.
#[derive(Debug, Clone)]
pub enum Value {
    Unit,
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
    List(Vec<Value>),
    /// "Nothing to return", e.g. the average of an empty array.
    Absent,
    /// A failure raised by the SUT, captured as data.
    Error(String),
}

impl Value {
    pub fn int_list<I: IntoIterator<Item = i64>>(items: I) -> Value {
        Value::List(items.into_iter().map(Value::Int).collect())
    }

    pub fn error(code: &str) -> Value {
        Value::Error(code.to_owned())
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(*i),
            _ => None,
        }
    }

    /// Elements of an integer list, or `None` if this is not a list of ints.
    pub fn as_int_list(&self) -> Option<Vec<i64>> {
        match self {
            Value::List(items) => items.iter().map(Value::as_int).collect(),
            _ => None,
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        use Value::*;
        match (self, other) {
            (Unit, Unit) | (Absent, Absent) => true,
            (Bool(a), Bool(b)) => a == b,
            (Int(a), Int(b)) => a == b,
            (Float(a), Float(b)) => (a.is_nan() && b.is_nan()) || a.to_bits() == b.to_bits(),
            (Text(a), Text(b)) => a == b,
            (List(a), List(b)) => a == b,
            (Error(a), Error(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Value {}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::snapshot::encode_value(self))
    }
}

/// SUT-level failure codes. These are the only codes the corpus produces.
pub mod codes {
    pub const INDEX_OUT_OF_RANGE: &str = "index_out_of_range";
    pub const EMPTY_STACK: &str = "empty_stack";
    pub const NO_SUCH_ELEMENT: &str = "no_such_element";

    pub const ALL: &[&str] = &[INDEX_OUT_OF_RANGE, EMPTY_STACK, NO_SUCH_ELEMENT];
}
