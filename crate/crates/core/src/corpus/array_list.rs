//! Growable array list with explicit element shifting.

use std::collections::BTreeSet;

use super::{int_arg, Hits, SutObject};
use crate::value::{codes, Value};

pub(crate) struct ArrayList {
    buf: Vec<i64>,
    len: usize,
    mutant: Option<&'static str>,
    hits: Hits,
}

impl ArrayList {
    pub(crate) fn new(items: &[i64], mutant: Option<&'static str>) -> Self {
        let mut buf = vec![0; items.len().max(4)];
        buf[..items.len()].copy_from_slice(items);
        ArrayList {
            buf,
            len: items.len(),
            mutant,
            hits: Hits::default(),
        }
    }

    fn is(&self, tag: &str) -> bool {
        self.mutant == Some(tag)
    }

    fn ensure_capacity(&mut self) {
        if self.len == self.buf.len() {
            self.buf.resize(self.buf.len() * 2, 0);
        }
    }

    fn add(&mut self, x: i64) {
        self.hits.hit("add");
        self.ensure_capacity();
        self.buf[self.len] = x;
        self.len += 1;
    }

    fn add_at(&mut self, index: usize, x: i64) -> Value {
        self.hits.hit("add_at");
        let out_of_range = if self.is("M1") { index >= self.len } else { index > self.len };
        if out_of_range {
            return Value::error(codes::INDEX_OUT_OF_RANGE);
        }
        self.ensure_capacity();
        let mut i = self.len;
        while i > index {
            self.buf[i] = self.buf[i - 1];
            i -= 1;
        }
        self.buf[index] = x;
        self.len += 1;
        Value::Unit
    }

    fn get(&mut self, index: usize) -> Value {
        self.hits.hit("get");
        if index >= self.len {
            return Value::error(codes::INDEX_OUT_OF_RANGE);
        }
        Value::Int(self.buf[index])
    }

    fn set(&mut self, index: usize, x: i64) -> Value {
        self.hits.hit("set");
        if index >= self.len {
            return Value::error(codes::INDEX_OUT_OF_RANGE);
        }
        let old = self.buf[index];
        self.buf[index] = x;
        Value::Int(if self.is("M4") { x } else { old })
    }

    fn remove_at(&mut self, index: usize) -> Value {
        self.hits.hit("remove_at");
        if index >= self.len {
            return Value::error(codes::INDEX_OUT_OF_RANGE);
        }
        let removed = self.buf[index];
        let start = if self.is("M2") && index + 1 < self.len { index + 1 } else { index };
        for i in start..self.len - 1 {
            self.buf[i] = self.buf[i + 1];
        }
        self.len -= 1;
        Value::Int(removed)
    }

    fn index_of(&mut self, x: i64) -> i64 {
        self.hits.hit("index_of");
        let found = if self.is("M3") {
            (0..self.len).rev().find(|&i| self.buf[i] == x)
        } else {
            (0..self.len).find(|&i| self.buf[i] == x)
        };
        found.map_or(-1, |i| i as i64)
    }

    fn contains(&mut self, x: i64) -> bool {
        self.hits.hit("contains");
        let scan = if self.is("M5") { self.len.saturating_sub(1) } else { self.len };
        self.buf[..scan].contains(&x)
    }
}

impl SutObject for ArrayList {
    fn call(&mut self, method: &str, args: &[Value]) -> Option<Value> {
        let idx = |i| int_arg(args, i) as usize;
        Some(match method {
            "add" => {
                self.add(int_arg(args, 0));
                Value::Unit
            }
            "add_at" => self.add_at(idx(0), int_arg(args, 1)),
            "get" => self.get(idx(0)),
            "set" => self.set(idx(0), int_arg(args, 1)),
            "remove_at" => self.remove_at(idx(0)),
            "index_of" => Value::Int(self.index_of(int_arg(args, 0))),
            "contains" => Value::Bool(self.contains(int_arg(args, 0))),
            "size" => {
                self.hits.hit("size");
                Value::Int(self.len as i64)
            }
            "is_empty" => {
                self.hits.hit("is_empty");
                Value::Bool(self.len == 0)
            }
            "clear" => {
                self.hits.hit("clear");
                self.len = 0;
                Value::Unit
            }
            "to_list" => {
                self.hits.hit("to_list");
                Value::int_list(self.buf[..self.len].to_vec())
            }
            _ => return None,
        })
    }

    fn executed(&self) -> &BTreeSet<&'static str> {
        self.hits.set()
    }
}
