//! Separate-chaining hash map from int keys to int values.
//!
//! Constructor keys `k` are inserted with value `k mod 4`. `keys` and
//! `values` read out in ascending key order so readouts do not depend on
//! bucket layout.

use std::collections::BTreeSet;

use super::{int_arg, Hits, SutObject};
use crate::value::Value;

const INITIAL_BUCKETS: usize = 4;

/// The bucket array and entry counter, shared with `HashSet`.
#[derive(Clone)]
pub(crate) struct ChainTable {
    pub(crate) buckets: Vec<Vec<(i64, i64)>>,
    pub(crate) size: usize,
}

impl ChainTable {
    pub(crate) fn new() -> Self {
        ChainTable {
            buckets: vec![Vec::new(); INITIAL_BUCKETS],
            size: 0,
        }
    }

    pub(crate) fn bucket_of(&self, key: i64) -> usize {
        key.rem_euclid(self.buckets.len() as i64) as usize
    }

    pub(crate) fn find(&self, key: i64) -> Option<i64> {
        self.buckets[self.bucket_of(key)]
            .iter()
            .find(|(k, _)| *k == key)
            .map(|&(_, v)| v)
    }

    /// Returns the previous value. `overwrite = false` keeps an existing value.
    pub(crate) fn insert(&mut self, key: i64, value: i64, overwrite: bool) -> Option<i64> {
        let b = self.bucket_of(key);
        if let Some(entry) = self.buckets[b].iter_mut().find(|(k, _)| *k == key) {
            let old = entry.1;
            if overwrite {
                entry.1 = value;
            }
            return Some(old);
        }
        self.buckets[b].push((key, value));
        self.size += 1;
        if self.size * 4 > self.buckets.len() * 3 {
            self.rehash(self.buckets.len() * 2);
        }
        None
    }

    pub(crate) fn remove(&mut self, key: i64) -> Option<i64> {
        let b = self.bucket_of(key);
        let pos = self.buckets[b].iter().position(|(k, _)| *k == key)?;
        self.size = self.size.saturating_sub(1);
        Some(self.buckets[b].remove(pos).1)
    }

    fn rehash(&mut self, n: usize) {
        let entries: Vec<_> = self.buckets.drain(..).flatten().collect();
        self.buckets = vec![Vec::new(); n];
        for (k, v) in entries {
            let b = self.bucket_of(k);
            self.buckets[b].push((k, v));
        }
    }

    pub(crate) fn clear(&mut self) {
        self.buckets = vec![Vec::new(); INITIAL_BUCKETS];
        self.size = 0;
    }

    /// Entries sorted by key.
    pub(crate) fn sorted(&self) -> Vec<(i64, i64)> {
        let mut all: Vec<_> = self.buckets.iter().flatten().copied().collect();
        all.sort();
        all
    }
}

pub(crate) struct HashMap {
    table: ChainTable,
    mutant: Option<&'static str>,
    hits: Hits,
}

impl HashMap {
    pub(crate) fn new(keys: &[i64], mutant: Option<&'static str>) -> Self {
        let mut table = ChainTable::new();
        for &k in keys {
            table.insert(k, k.rem_euclid(4), true);
        }
        HashMap {
            table,
            mutant,
            hits: Hits::default(),
        }
    }

    fn is(&self, tag: &str) -> bool {
        self.mutant == Some(tag)
    }

    fn put(&mut self, key: i64, value: i64) -> Value {
        self.hits.hit("put");
        let overwrite = !self.is("M1");
        self.table.insert(key, value, overwrite).map_or(Value::Absent, Value::Int)
    }

    fn get(&mut self, key: i64) -> Value {
        self.hits.hit("get");
        let probe = if self.is("M3") { key + 1 } else { key };
        let b = self.table.bucket_of(probe);
        self.table.buckets[b]
            .iter()
            .find(|(k, _)| *k == key)
            .map_or(Value::Absent, |&(_, v)| Value::Int(v))
    }

    fn remove(&mut self, key: i64) -> Value {
        self.hits.hit("remove");
        if self.is("M2") {
            let b = self.table.bucket_of(key);
            if self.table.buckets[b].len() == 1 && self.table.buckets[b][0].0 == key {
                // counter drops but the lone entry stays linked
                self.table.size = self.table.size.saturating_sub(1);
                return Value::Int(self.table.buckets[b][0].1);
            }
        }
        self.table.remove(key).map_or(Value::Absent, Value::Int)
    }

    fn size(&mut self) -> i64 {
        self.hits.hit("size");
        if self.is("M4") {
            self.table.buckets.iter().filter(|b| !b.is_empty()).count() as i64
        } else {
            self.table.size as i64
        }
    }
}

impl SutObject for HashMap {
    fn call(&mut self, method: &str, args: &[Value]) -> Option<Value> {
        Some(match method {
            "put" => self.put(int_arg(args, 0), int_arg(args, 1)),
            "get" => self.get(int_arg(args, 0)),
            "remove" => self.remove(int_arg(args, 0)),
            "contains_key" => {
                self.hits.hit("contains_key");
                Value::Bool(self.table.find(int_arg(args, 0)).is_some())
            }
            "size" => Value::Int(self.size()),
            "is_empty" => {
                self.hits.hit("is_empty");
                Value::Bool(self.table.size == 0)
            }
            "keys" => {
                self.hits.hit("keys");
                Value::int_list(self.table.sorted().into_iter().map(|(k, _)| k).collect::<Vec<_>>())
            }
            "values" => {
                self.hits.hit("values");
                Value::int_list(self.table.sorted().into_iter().map(|(_, v)| v).collect::<Vec<_>>())
            }
            "clear" => {
                self.hits.hit("clear");
                self.table.clear();
                Value::Unit
            }
            _ => return None,
        })
    }

    fn executed(&self) -> &BTreeSet<&'static str> {
        self.hits.set()
    }
}
