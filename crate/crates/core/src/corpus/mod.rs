//! Systems under test: a small collection library plus the `ArrayCalculator`
//! toy, behind one dynamic-invocation interface.
//!
//! Every class is described by a [`ClassDescriptor`] carrying the method
//! kinds and the bounded value domains used for generation and validation.
//! Behavioral variants (mutants) are selected when an object is instantiated;
//! see [`crate::mutants`] for the catalog.

mod array_calculator;
mod array_list;
mod hash_map;
mod hash_set;
mod linked_list;
mod stack;
mod tree_map;
mod tree_set;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::LazyLock;

use rand::Rng;
use thiserror::Error;

use crate::mutants::VariantId;
use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodKind {
    /// Changes state; "setter".
    Mutator,
    /// Reads state without changing it; "getter".
    Observer,
    /// Changes state and returns information about it; "getter-setter".
    Hybrid,
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodKind::Mutator => "mutator",
            MethodKind::Observer => "observer",
            MethodKind::Hybrid => "hybrid",
        })
    }
}

/// A bounded value generator. Bounds are inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Int { lo: i64, hi: i64 },
    IntList { lo: i64, hi: i64, min_len: usize, max_len: usize },
}

impl Domain {
    pub fn is_empty(&self) -> bool {
        match *self {
            Domain::Int { lo, hi } => lo > hi,
            Domain::IntList { lo, hi, min_len, max_len } => min_len > max_len || (lo > hi && min_len > 0),
        }
    }

    pub fn contains(&self, v: &Value) -> bool {
        match (*self, v) {
            (Domain::Int { lo, hi }, Value::Int(i)) => (lo..=hi).contains(i),
            (Domain::IntList { lo, hi, min_len, max_len }, v) => match v.as_int_list() {
                Some(items) => {
                    (min_len..=max_len).contains(&items.len())
                        && items.iter().all(|i| (lo..=hi).contains(i))
                }
                None => false,
            },
            _ => false,
        }
    }

    /// Uniform sample. The caller checks [`Domain::is_empty`] first.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Value {
        match *self {
            Domain::Int { lo, hi } => Value::Int(rng.gen_range(lo..=hi)),
            Domain::IntList { lo, hi, min_len, max_len } => {
                let len = rng.gen_range(min_len..=max_len);
                Value::int_list((0..len).map(|_| rng.gen_range(lo..=hi)).collect::<Vec<_>>())
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Int { lo, hi } => write!(f, "int {lo}..{hi}"),
            Domain::IntList { lo, hi, min_len, max_len } => {
                write!(f, "int list {lo}..{hi} len {min_len}..{max_len}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodDescriptor {
    pub name: &'static str,
    pub kind: MethodKind,
    pub param_domains: Vec<Domain>,
    pub returns_value: bool,
}

impl MethodDescriptor {
    fn new(name: &'static str, kind: MethodKind, params: &[Domain], returns_value: bool) -> Self {
        MethodDescriptor {
            name,
            kind,
            param_domains: params.to_vec(),
            returns_value,
        }
    }

    /// A zero-argument observer, the only kind a test driver may use.
    pub fn is_pure_observer(&self) -> bool {
        self.kind == MethodKind::Observer && self.param_domains.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDescriptor {
    pub class_name: &'static str,
    pub constructor_domain: Domain,
    pub methods: Vec<MethodDescriptor>,
}

impl ClassDescriptor {
    pub fn method(&self, name: &str) -> Option<&MethodDescriptor> {
        self.methods.iter().find(|m| m.name == name)
    }

    pub fn observers(&self) -> impl Iterator<Item = &MethodDescriptor> {
        self.methods.iter().filter(|m| m.kind == MethodKind::Observer)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SutError {
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("unknown variant {0:?}")]
    UnknownVariant(String),
    #[error("constructor input {input} is outside the domain of {class}")]
    IllTypedInput { class: String, input: String },
    #[error("{class} has no method {method:?}")]
    UnknownMethod { class: String, method: String },
    #[error("arguments {args} do not match {class}.{method}")]
    IllTypedArgs { class: String, method: String, args: String },
}

/// Element domain shared by the collection classes.
const ELEMENT: Domain = Domain::Int { lo: 0, hi: 9 };
const INDEX: Domain = Domain::Int { lo: 0, hi: 5 };
const KEY: Domain = Domain::Int { lo: 0, hi: 7 };
const MAP_VALUE: Domain = Domain::Int { lo: 0, hi: 3 };
const ELEMENTS_CTOR: Domain = Domain::IntList { lo: 0, hi: 9, min_len: 0, max_len: 4 };
const KEYS_CTOR: Domain = Domain::IntList { lo: 0, hi: 7, min_len: 0, max_len: 4 };

static CORPUS: LazyLock<Vec<ClassDescriptor>> = LazyLock::new(build_corpus);

fn build_corpus() -> Vec<ClassDescriptor> {
    use MethodKind::*;
    let m = MethodDescriptor::new;
    vec![
        ClassDescriptor {
            class_name: "Stack",
            constructor_domain: ELEMENTS_CTOR,
            methods: vec![
                m("push", Mutator, &[ELEMENT], false),
                m("pop", Hybrid, &[], true),
                m("peek", Observer, &[], true),
                m("is_empty", Observer, &[], true),
                m("size", Observer, &[], true),
                m("search", Observer, &[ELEMENT], true),
                m("clear", Mutator, &[], false),
                m("to_list", Observer, &[], true),
            ],
        },
        ClassDescriptor {
            class_name: "ArrayList",
            constructor_domain: ELEMENTS_CTOR,
            methods: vec![
                m("add", Mutator, &[ELEMENT], false),
                m("add_at", Mutator, &[INDEX, ELEMENT], false),
                m("get", Observer, &[INDEX], true),
                m("set", Hybrid, &[INDEX, ELEMENT], true),
                m("remove_at", Hybrid, &[INDEX], true),
                m("index_of", Observer, &[ELEMENT], true),
                m("contains", Observer, &[ELEMENT], true),
                m("size", Observer, &[], true),
                m("is_empty", Observer, &[], true),
                m("clear", Mutator, &[], false),
                m("to_list", Observer, &[], true),
            ],
        },
        ClassDescriptor {
            class_name: "LinkedList",
            constructor_domain: ELEMENTS_CTOR,
            methods: vec![
                m("add_first", Mutator, &[ELEMENT], false),
                m("add_last", Mutator, &[ELEMENT], false),
                m("remove_first", Hybrid, &[], true),
                m("remove_last", Hybrid, &[], true),
                m("get_first", Observer, &[], true),
                m("get_last", Observer, &[], true),
                m("contains", Observer, &[ELEMENT], true),
                m("remove", Hybrid, &[ELEMENT], true),
                m("size", Observer, &[], true),
                m("is_empty", Observer, &[], true),
                m("to_list", Observer, &[], true),
            ],
        },
        ClassDescriptor {
            class_name: "HashMap",
            constructor_domain: KEYS_CTOR,
            methods: vec![
                m("put", Hybrid, &[KEY, MAP_VALUE], true),
                m("get", Observer, &[KEY], true),
                m("remove", Hybrid, &[KEY], true),
                m("contains_key", Observer, &[KEY], true),
                m("size", Observer, &[], true),
                m("is_empty", Observer, &[], true),
                m("keys", Observer, &[], true),
                m("values", Observer, &[], true),
                m("clear", Mutator, &[], false),
            ],
        },
        ClassDescriptor {
            class_name: "TreeMap",
            constructor_domain: KEYS_CTOR,
            methods: vec![
                m("put", Hybrid, &[KEY, MAP_VALUE], true),
                m("get", Observer, &[KEY], true),
                m("remove", Hybrid, &[KEY], true),
                m("contains_key", Observer, &[KEY], true),
                m("first_key", Observer, &[], true),
                m("last_key", Observer, &[], true),
                m("floor_key", Observer, &[KEY], true),
                m("size", Observer, &[], true),
                m("is_empty", Observer, &[], true),
                m("keys", Observer, &[], true),
                m("values", Observer, &[], true),
            ],
        },
        ClassDescriptor {
            class_name: "HashSet",
            constructor_domain: ELEMENTS_CTOR,
            methods: vec![
                m("add", Hybrid, &[ELEMENT], true),
                m("remove", Hybrid, &[ELEMENT], true),
                m("contains", Observer, &[ELEMENT], true),
                m("size", Observer, &[], true),
                m("is_empty", Observer, &[], true),
                m("to_list", Observer, &[], true),
                m("clear", Mutator, &[], false),
            ],
        },
        ClassDescriptor {
            class_name: "TreeSet",
            constructor_domain: ELEMENTS_CTOR,
            methods: vec![
                m("add", Hybrid, &[ELEMENT], true),
                m("remove", Hybrid, &[ELEMENT], true),
                m("contains", Observer, &[ELEMENT], true),
                m("first", Observer, &[], true),
                m("last", Observer, &[], true),
                m("ceiling", Observer, &[ELEMENT], true),
                m("size", Observer, &[], true),
                m("is_empty", Observer, &[], true),
                m("to_list", Observer, &[], true),
            ],
        },
        ClassDescriptor {
            class_name: "ArrayCalculator",
            constructor_domain: Domain::IntList { lo: -10, hi: 10, min_len: 0, max_len: 6 },
            methods: vec![
                m("is_empty", Observer, &[], true),
                m("get_size", Observer, &[], true),
                m("get_average", Observer, &[], true),
                m("get_sum", Observer, &[], true),
                m("get_first_element", Observer, &[], true),
                m("get_last_element", Observer, &[], true),
                m("reverse_data", Mutator, &[], false),
                m(
                    "append_data",
                    Mutator,
                    &[Domain::IntList { lo: -10, hi: 10, min_len: 0, max_len: 3 }],
                    false,
                ),
                m("sort_asc", Mutator, &[], false),
            ],
        },
    ]
}

/// The bundled classes, in order: the seven collections, then `ArrayCalculator`.
pub fn list_classes() -> Vec<ClassDescriptor> {
    CORPUS.clone()
}

pub fn class(name: &str) -> Result<&'static ClassDescriptor, SutError> {
    CORPUS
        .iter()
        .find(|c| c.class_name == name)
        .ok_or_else(|| SutError::UnknownClass(name.to_owned()))
}

/// Names of the seven collection classes, excluding the toy.
pub fn collection_class_names() -> Vec<&'static str> {
    CORPUS
        .iter()
        .map(|c| c.class_name)
        .filter(|n| *n != "ArrayCalculator")
        .collect()
}

/// Class-specific behavior behind the dynamic interface.
///
/// `call` receives arguments already validated against the descriptor and
/// returns `None` only for an undeclared method.
pub(crate) trait SutObject: Send {
    fn call(&mut self, method: &str, args: &[Value]) -> Option<Value>;
    fn executed(&self) -> &BTreeSet<&'static str>;
}

/// Records which public methods ran, including internal self-calls.
#[derive(Debug, Default, Clone)]
pub(crate) struct Hits(BTreeSet<&'static str>);

impl Hits {
    pub(crate) fn hit(&mut self, method: &'static str) {
        self.0.insert(method);
    }

    pub(crate) fn set(&self) -> &BTreeSet<&'static str> {
        &self.0
    }
}

pub(crate) fn int_arg(args: &[Value], i: usize) -> i64 {
    args[i].as_int().expect("argument validated as int")
}

/// A live instance of one corpus class bound to one variant.
pub struct ObjectHandle {
    class: &'static ClassDescriptor,
    variant: VariantId,
    object: Box<dyn SutObject>,
}

impl fmt::Debug for ObjectHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjectHandle")
            .field("class", &self.class.class_name)
            .field("variant", &self.variant)
            .finish_non_exhaustive()
    }
}

impl ObjectHandle {
    pub fn class(&self) -> &'static ClassDescriptor {
        self.class
    }

    pub fn variant(&self) -> &VariantId {
        &self.variant
    }

    /// Public methods executed so far on this instance, including calls a
    /// method makes to other public methods of the same object.
    pub fn executed_methods(&self) -> &BTreeSet<&'static str> {
        self.object.executed()
    }
}

pub fn instantiate(class_name: &str, variant: &VariantId, input: &Value) -> Result<ObjectHandle, SutError> {
    let class = class(class_name)?;
    let tag = match variant {
        VariantId::Baseline => None,
        VariantId::Mutant(id) => {
            let spec = crate::mutants::lookup(id).ok_or_else(|| SutError::UnknownVariant(id.clone()))?;
            if spec.target_class != class_name {
                return Err(SutError::UnknownVariant(id.clone()));
            }
            Some(spec.tag)
        }
    };
    if !class.constructor_domain.contains(input) {
        return Err(SutError::IllTypedInput {
            class: class_name.to_owned(),
            input: input.to_string(),
        });
    }
    let items = input.as_int_list().expect("constructor domains are int lists");
    let object: Box<dyn SutObject> = match class_name {
        "Stack" => Box::new(stack::Stack::new(&items, tag)),
        "ArrayList" => Box::new(array_list::ArrayList::new(&items, tag)),
        "LinkedList" => Box::new(linked_list::LinkedList::new(&items, tag)),
        "HashMap" => Box::new(hash_map::HashMap::new(&items, tag)),
        "TreeMap" => Box::new(tree_map::TreeMap::new(&items, tag)),
        "HashSet" => Box::new(hash_set::HashSet::new(&items, tag)),
        "TreeSet" => Box::new(tree_set::TreeSet::new(&items, tag)),
        "ArrayCalculator" => Box::new(array_calculator::ArrayCalculator::new(items, tag)),
        other => unreachable!("descriptor without implementation: {other}"),
    };
    Ok(ObjectHandle {
        class,
        variant: variant.clone(),
        object,
    })
}

/// Invokes `method` on the handle. SUT failures come back as `Value::Error`.
pub fn invoke(handle: &mut ObjectHandle, method: &str, args: &[Value]) -> Result<Value, SutError> {
    let class = handle.class;
    let desc = class.method(method).ok_or_else(|| SutError::UnknownMethod {
        class: class.class_name.to_owned(),
        method: method.to_owned(),
    })?;
    check_args(class, desc, args)?;
    Ok(handle
        .object
        .call(method, args)
        .expect("declared methods are implemented"))
}

pub fn check_args(class: &ClassDescriptor, desc: &MethodDescriptor, args: &[Value]) -> Result<(), SutError> {
    let ok = args.len() == desc.param_domains.len()
        && desc.param_domains.iter().zip(args).all(|(d, a)| d.contains(a));
    if ok {
        Ok(())
    } else {
        Err(SutError::IllTypedArgs {
            class: class.class_name.to_owned(),
            method: desc.name.to_owned(),
            args: Value::List(args.to_vec()).to_string(),
        })
    }
}
