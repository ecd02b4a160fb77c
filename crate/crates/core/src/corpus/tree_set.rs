//! Ordered set on the `TreeMap` search tree.

use std::collections::BTreeSet;

use super::tree_map::Bst;
use super::{int_arg, Hits, SutObject};
use crate::value::{codes, Value};

pub(crate) struct TreeSet {
    tree: Bst,
    mutant: Option<&'static str>,
    hits: Hits,
}

impl TreeSet {
    pub(crate) fn new(items: &[i64], mutant: Option<&'static str>) -> Self {
        let mut tree = Bst::default();
        for &x in items {
            tree.insert(x, 0);
        }
        TreeSet {
            tree,
            mutant,
            hits: Hits::default(),
        }
    }

    fn is(&self, tag: &str) -> bool {
        self.mutant == Some(tag)
    }

    fn add(&mut self, x: i64) -> bool {
        self.hits.hit("add");
        if self.tree.get(x).is_some() {
            return false;
        }
        let stored = match self.tree.max_key() {
            Some(max) if self.is("M3") && x > max => x - 1,
            _ => x,
        };
        self.tree.insert(stored, 0);
        true
    }

    fn remove(&mut self, x: i64) -> bool {
        self.hits.hit("remove");
        if self.is("M4") && self.tree.min_key() == Some(x) {
            return true;
        }
        self.tree.remove(x, false).is_some()
    }

    fn last(&mut self) -> Value {
        self.hits.hit("last");
        if self.is("M1") && self.tree.len >= 3 {
            let keys = self.tree.keys();
            return Value::Int(keys[keys.len() - 2]);
        }
        self.tree.max_key().map_or(Value::error(codes::NO_SUCH_ELEMENT), Value::Int)
    }
}

impl SutObject for TreeSet {
    fn call(&mut self, method: &str, args: &[Value]) -> Option<Value> {
        Some(match method {
            "add" => Value::Bool(self.add(int_arg(args, 0))),
            "remove" => Value::Bool(self.remove(int_arg(args, 0))),
            "contains" => {
                self.hits.hit("contains");
                Value::Bool(self.tree.get(int_arg(args, 0)).is_some())
            }
            "first" => {
                self.hits.hit("first");
                self.tree.min_key().map_or(Value::error(codes::NO_SUCH_ELEMENT), Value::Int)
            }
            "last" => self.last(),
            "ceiling" => {
                self.hits.hit("ceiling");
                let strict = self.is("M2");
                self.tree.ceiling(int_arg(args, 0), strict).map_or(Value::Absent, Value::Int)
            }
            "size" => {
                self.hits.hit("size");
                Value::Int(self.tree.len as i64)
            }
            "is_empty" => {
                self.hits.hit("is_empty");
                Value::Bool(self.tree.len == 0)
            }
            "to_list" => {
                self.hits.hit("to_list");
                Value::int_list(self.tree.keys())
            }
            _ => return None,
        })
    }

    fn executed(&self) -> &BTreeSet<&'static str> {
        self.hits.set()
    }
}
