//! Hash set over the same chaining table as `HashMap`.

use std::collections::BTreeSet;

use super::hash_map::ChainTable;
use super::{int_arg, Hits, SutObject};
use crate::value::Value;

pub(crate) struct HashSet {
    table: ChainTable,
    mutant: Option<&'static str>,
    hits: Hits,
}

impl HashSet {
    pub(crate) fn new(items: &[i64], mutant: Option<&'static str>) -> Self {
        let mut table = ChainTable::new();
        for &x in items {
            table.insert(x, 0, true);
        }
        HashSet {
            table,
            mutant,
            hits: Hits::default(),
        }
    }

    fn is(&self, tag: &str) -> bool {
        self.mutant == Some(tag)
    }

    fn add(&mut self, x: i64) -> bool {
        self.hits.hit("add");
        let fresh = self.table.insert(x, 0, true).is_none();
        fresh || self.is("M1")
    }

    fn remove(&mut self, x: i64) -> bool {
        self.hits.hit("remove");
        let removed = self.table.remove(x).is_some();
        if self.is("M2") && removed {
            self.table.remove(x + 1);
        }
        removed
    }

    fn contains(&mut self, x: i64) -> bool {
        self.hits.hit("contains");
        if self.is("M3") && x <= 0 {
            return false;
        }
        self.table.find(x).is_some()
    }

    fn clear(&mut self) {
        self.hits.hit("clear");
        if self.is("M4") && self.table.size == 1 {
            return;
        }
        self.table.clear();
    }
}

impl SutObject for HashSet {
    fn call(&mut self, method: &str, args: &[Value]) -> Option<Value> {
        Some(match method {
            "add" => Value::Bool(self.add(int_arg(args, 0))),
            "remove" => Value::Bool(self.remove(int_arg(args, 0))),
            "contains" => Value::Bool(self.contains(int_arg(args, 0))),
            "size" => {
                self.hits.hit("size");
                Value::Int(self.table.size as i64)
            }
            "is_empty" => {
                self.hits.hit("is_empty");
                Value::Bool(self.table.size == 0)
            }
            "to_list" => {
                self.hits.hit("to_list");
                Value::int_list(self.table.sorted().into_iter().map(|(k, _)| k).collect::<Vec<_>>())
            }
            "clear" => {
                self.clear();
                Value::Unit
            }
            _ => return None,
        })
    }

    fn executed(&self) -> &BTreeSet<&'static str> {
        self.hits.set()
    }
}
