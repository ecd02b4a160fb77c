//! Independent oracles shared by the integration tests and the acceptance
//! harness. Nothing here calls into the crate's SUT implementations.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use amplify::sequence::{self, GeneratorConfig, Suite, TestSequence};
use amplify::Value;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const AC: &str = "ArrayCalculator";
pub const AC_OBSERVERS: [&str; 6] = [
    "is_empty",
    "get_size",
    "get_first_element",
    "get_last_element",
    "get_average",
    "get_sum",
];

/// `ArrayCalculator` transcribed line by line from the reference listing,
/// with the three toy mutants as switches.
#[derive(Debug, Clone)]
pub struct CalcOracle {
    data: Vec<i64>,
    mutant: Option<u8>,
}

impl CalcOracle {
    pub fn new(data: Vec<i64>, mutant: Option<u8>) -> Self {
        CalcOracle { data, mutant }
    }

    fn get_size(&self) -> i64 {
        let mut n = 0;
        for _ in &self.data {
            n += 1;
        }
        n
    }

    fn is_empty(&self) -> bool {
        self.get_size() == 0
    }

    pub fn call(&mut self, method: &str, args: &[Value]) -> Value {
        match method {
            "is_empty" => Value::Bool(self.is_empty()),
            "get_size" => Value::Int(self.get_size()),
            "get_sum" => {
                let mut total = 0;
                for x in &self.data {
                    total += x;
                }
                Value::Int(total)
            }
            "get_average" => {
                if self.is_empty() {
                    return Value::Absent;
                }
                let mut total = 0;
                for x in &self.data {
                    total += x;
                }
                Value::Float(total as f64 / self.get_size() as f64)
            }
            "get_first_element" => {
                if self.is_empty() {
                    return Value::Absent;
                }
                Value::Int(self.data[0])
            }
            "get_last_element" => {
                if self.is_empty() {
                    return Value::Absent;
                }
                let size = self.get_size() as usize;
                if self.mutant == Some(1) && size >= 2 {
                    return Value::Int(self.data[size - 2]);
                }
                Value::Int(self.data[size - 1])
            }
            "reverse_data" => {
                if self.mutant == Some(2) {
                    if !self.data.is_empty() {
                        let head = self.data.remove(0);
                        self.data.push(head);
                    }
                    return Value::Unit;
                }
                if self.get_size() > 0 {
                    let mut start = 0;
                    let mut end = self.data.len() - 1;
                    while start < end {
                        self.data.swap(start, end);
                        start += 1;
                        end -= 1;
                    }
                }
                Value::Unit
            }
            "append_data" => {
                for v in args[0].as_int_list().expect("int list") {
                    self.data.push(v);
                }
                Value::Unit
            }
            "sort_asc" => {
                self.data.sort_unstable();
                if self.mutant == Some(3) {
                    self.data.reverse();
                }
                Value::Unit
            }
            other => panic!("ArrayCalculator has no {other}"),
        }
    }

    pub fn observe(&mut self) -> Vec<Value> {
        AC_OBSERVERS.iter().map(|o| self.call(o, &[])).collect()
    }
}

/// One cell of an expected snapshot difference: (test_id, step, column).
pub type Cell = (String, usize, String);

/// Replays a suite on the oracle for baseline and one toy mutant.
///
/// Returns the cells where the two traces differ, with columns named
/// `return` or `obs:<name>`, and for each test whether a direct return
/// value differed.
pub fn calc_divergences(suite: &Suite, mutant: u8) -> (BTreeSet<Cell>, BTreeMap<String, bool>) {
    let mut cells = BTreeSet::new();
    let mut return_diff = BTreeMap::new();
    for seq in &suite.sequences {
        let input = seq.ctor_input.as_int_list().expect("int list");
        let mut base = CalcOracle::new(input.clone(), None);
        let mut mutated = CalcOracle::new(input, Some(mutant));
        let mut any_return = false;
        let compare_obs = |step: usize, a: &mut CalcOracle, b: &mut CalcOracle, cells: &mut BTreeSet<Cell>| {
            for ((name, x), y) in AC_OBSERVERS.iter().zip(a.observe()).zip(b.observe()) {
                if x != y {
                    cells.insert((seq.test_id.clone(), step, format!("obs:{name}")));
                }
            }
        };
        compare_obs(0, &mut base, &mut mutated, &mut cells);
        for (k, (m, args)) in seq.calls.iter().enumerate() {
            let x = base.call(m, args);
            let y = mutated.call(m, args);
            if x != y {
                any_return = true;
                cells.insert((seq.test_id.clone(), k + 1, "return".into()));
            }
            compare_obs(k + 1, &mut base, &mut mutated, &mut cells);
        }
        return_diff.insert(seq.test_id.clone(), any_return);
    }
    (cells, return_diff)
}

/// The two hand-written toy tests plus two seeded random sequences of four
/// calls each.
pub fn toy_suite(seed: u64) -> Suite {
    let fixed = Value::int_list([1, 2, 3, 4, 5]);
    let manual = |i: usize, method: &str| TestSequence {
        test_id: format!("{AC}_manual_t{i:04}"),
        class_name: AC.into(),
        ctor_input: fixed.clone(),
        calls: vec![(method.into(), vec![])],
        expected_returns: None,
    };
    let class = amplify::corpus::class(AC).unwrap();
    let random = sequence::generate_master_suite_with(class, seed, 2, &GeneratorConfig { calls: 4..=4 }).unwrap();
    let mut sequences = vec![manual(0, "get_average"), manual(1, "get_sum")];
    sequences.extend(random.sequences);
    Suite::from_sequences(AC, seed, sequences)
}

/// Reference semantics of the collection classes on std containers.
#[derive(Debug, Clone)]
pub enum Model {
    Stack(Vec<i64>),
    ArrayList(Vec<i64>),
    LinkedList(VecDeque<i64>),
    HashMap(BTreeMap<i64, i64>),
    TreeMap(BTreeMap<i64, i64>),
    HashSet(BTreeSet<i64>),
    TreeSet(BTreeSet<i64>),
    Calc(CalcOracle),
}

fn err(code: &str) -> Value {
    Value::Error(code.into())
}

fn opt(v: Option<i64>) -> Value {
    v.map_or(Value::Absent, Value::Int)
}

fn or_err(v: Option<i64>, code: &str) -> Value {
    v.map_or(err(code), Value::Int)
}

fn list<'a>(it: impl IntoIterator<Item = &'a i64>) -> Value {
    Value::List(it.into_iter().map(|&x| Value::Int(x)).collect())
}

impl Model {
    pub fn new(class: &str, input: &Value) -> Model {
        let items = input.as_int_list().expect("int list");
        let keyed = || items.iter().map(|&k| (k, k.rem_euclid(4))).collect::<BTreeMap<_, _>>();
        match class {
            "Stack" => Model::Stack(items),
            "ArrayList" => Model::ArrayList(items),
            "LinkedList" => Model::LinkedList(items.into()),
            "HashMap" => Model::HashMap(keyed()),
            "TreeMap" => Model::TreeMap(keyed()),
            "HashSet" => Model::HashSet(items.into_iter().collect()),
            "TreeSet" => Model::TreeSet(items.into_iter().collect()),
            "ArrayCalculator" => Model::Calc(CalcOracle::new(items, None)),
            other => panic!("no model for {other}"),
        }
    }

    pub fn call(&mut self, method: &str, args: &[Value]) -> Value {
        let a = |i: usize| args[i].as_int().expect("int arg");
        match self {
            Model::Stack(v) => match method {
                "push" => {
                    v.push(a(0));
                    Value::Unit
                }
                "pop" => or_err(v.pop(), "empty_stack"),
                "peek" => or_err(v.last().copied(), "empty_stack"),
                "is_empty" => Value::Bool(v.is_empty()),
                "size" => Value::Int(v.len() as i64),
                "search" => Value::Int(v.iter().rev().position(|&x| x == a(0)).map_or(-1, |p| p as i64 + 1)),
                "clear" => {
                    v.clear();
                    Value::Unit
                }
                "to_list" => list(v.iter()),
                _ => panic!("{method}"),
            },
            Model::ArrayList(v) => {
                let idx = |i: usize| a(i) as usize;
                match method {
                    "add" => {
                        v.push(a(0));
                        Value::Unit
                    }
                    "add_at" if idx(0) <= v.len() => {
                        v.insert(idx(0), a(1));
                        Value::Unit
                    }
                    "add_at" => err("index_out_of_range"),
                    "get" => or_err(v.get(idx(0)).copied(), "index_out_of_range"),
                    "set" if idx(0) < v.len() => Value::Int(std::mem::replace(&mut v[idx(0)], a(1))),
                    "remove_at" if idx(0) < v.len() => Value::Int(v.remove(idx(0))),
                    "set" | "remove_at" => err("index_out_of_range"),
                    "index_of" => Value::Int(v.iter().position(|&x| x == a(0)).map_or(-1, |p| p as i64)),
                    "contains" => Value::Bool(v.contains(&a(0))),
                    "size" => Value::Int(v.len() as i64),
                    "is_empty" => Value::Bool(v.is_empty()),
                    "clear" => {
                        v.clear();
                        Value::Unit
                    }
                    "to_list" => list(v.iter()),
                    _ => panic!("{method}"),
                }
            }
            Model::LinkedList(v) => match method {
                "add_first" => {
                    v.push_front(a(0));
                    Value::Unit
                }
                "add_last" => {
                    v.push_back(a(0));
                    Value::Unit
                }
                "remove_first" => or_err(v.pop_front(), "no_such_element"),
                "remove_last" => or_err(v.pop_back(), "no_such_element"),
                "get_first" => or_err(v.front().copied(), "no_such_element"),
                "get_last" => or_err(v.back().copied(), "no_such_element"),
                "contains" => Value::Bool(v.contains(&a(0))),
                "remove" => Value::Bool(match v.iter().position(|&x| x == a(0)) {
                    Some(p) => v.remove(p).is_some(),
                    None => false,
                }),
                "size" => Value::Int(v.len() as i64),
                "is_empty" => Value::Bool(v.is_empty()),
                "to_list" => list(v.iter()),
                _ => panic!("{method}"),
            },
            Model::HashMap(m) | Model::TreeMap(m) => match method {
                "put" => opt(m.insert(a(0), a(1))),
                "get" => opt(m.get(&a(0)).copied()),
                "remove" => opt(m.remove(&a(0))),
                "contains_key" => Value::Bool(m.contains_key(&a(0))),
                "size" => Value::Int(m.len() as i64),
                "is_empty" => Value::Bool(m.is_empty()),
                "keys" => list(m.keys()),
                "values" => list(m.values()),
                "clear" => {
                    m.clear();
                    Value::Unit
                }
                "first_key" => opt(m.keys().next().copied()),
                "last_key" => opt(m.keys().next_back().copied()),
                "floor_key" => opt(m.range(..=a(0)).next_back().map(|(k, _)| *k)),
                _ => panic!("{method}"),
            },
            Model::HashSet(s) | Model::TreeSet(s) => match method {
                "add" => Value::Bool(s.insert(a(0))),
                "remove" => Value::Bool(s.remove(&a(0))),
                "contains" => Value::Bool(s.contains(&a(0))),
                "size" => Value::Int(s.len() as i64),
                "is_empty" => Value::Bool(s.is_empty()),
                "to_list" => list(s.iter()),
                "clear" => {
                    s.clear();
                    Value::Unit
                }
                "first" => or_err(s.first().copied(), "no_such_element"),
                "last" => or_err(s.last().copied(), "no_such_element"),
                "ceiling" => opt(s.range(a(0)..).next().copied()),
                _ => panic!("{method}"),
            },
            Model::Calc(c) => c.call(method, args),
        }
    }
}

/// A random Value of bounded depth, covering every variant and the float
/// and text edge cases.
pub fn random_value<R: Rng>(rng: &mut R, depth: u32) -> Value {
    let top = if depth == 0 { 7 } else { 8 };
    match rng.gen_range(0..top) {
        0 => Value::Unit,
        1 => Value::Bool(rng.gen()),
        2 => Value::Int(match rng.gen_range(0..4) {
            0 => rng.gen(),
            1 => i64::MIN,
            2 => i64::MAX,
            _ => rng.gen_range(-20..20),
        }),
        3 => Value::Float(match rng.gen_range(0..8) {
            0 => f64::NAN,
            1 => f64::INFINITY,
            2 => f64::NEG_INFINITY,
            3 => -0.0,
            4 => f64::from_bits(rng.gen()),
            5 => rng.gen_range(-1e3..1e3),
            6 => f64::MIN_POSITIVE / 3.0,
            _ => rng.gen_range(-100..100) as f64,
        }),
        4 => Value::Text(random_text(rng)),
        5 => Value::Absent,
        6 => Value::Error(random_text(rng)),
        _ => {
            let n = rng.gen_range(0..4);
            Value::List((0..n).map(|_| random_value(rng, depth - 1)).collect())
        }
    }
}

fn random_text<R: Rng>(rng: &mut R) -> String {
    const ALPHABET: &[char] = &['a', 'Z', '0', ' ', ',', '\n', '\r', '"', '%', '>', '<', '[', ']', ':', 'é', '→'];
    let n = rng.gen_range(0..8);
    (0..n).map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())]).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
