//! Array-backed LIFO stack. The top is the last occupied slot.

use std::collections::BTreeSet;

use super::{int_arg, Hits, SutObject};
use crate::value::{codes, Value};

const INITIAL_CAPACITY: usize = 4;

pub(crate) struct Stack {
    slots: Vec<i64>,
    top: usize,
    mutant: Option<&'static str>,
    hits: Hits,
}

impl Stack {
    pub(crate) fn new(items: &[i64], mutant: Option<&'static str>) -> Self {
        let mut slots = vec![0; INITIAL_CAPACITY.max(items.len())];
        slots[..items.len()].copy_from_slice(items);
        Stack {
            slots,
            top: items.len(),
            mutant,
            hits: Hits::default(),
        }
    }

    fn is(&self, tag: &str) -> bool {
        self.mutant == Some(tag)
    }

    fn grow_if_full(&mut self) {
        if self.top == self.slots.len() {
            self.slots.resize(self.slots.len() * 2, 0);
        }
    }

    fn push(&mut self, x: i64) {
        self.hits.hit("push");
        self.grow_if_full();
        if self.is("M1") && self.top > 0 {
            // new element lands below the current top
            self.slots[self.top] = self.slots[self.top - 1];
            self.slots[self.top - 1] = x;
        } else {
            self.slots[self.top] = x;
        }
        self.top += 1;
    }

    fn pop(&mut self) -> Value {
        self.hits.hit("pop");
        if self.top == 0 {
            return Value::error(codes::EMPTY_STACK);
        }
        let value = self.slots[self.top - 1];
        let shrink = if self.is("M2") { self.top > 1 } else { self.top >= 1 };
        if shrink {
            self.top -= 1;
        }
        Value::Int(value)
    }

    fn peek(&mut self) -> Value {
        self.hits.hit("peek");
        if self.top == 0 {
            return Value::error(codes::EMPTY_STACK);
        }
        let index = if self.is("M3") { 0 } else { self.top - 1 };
        Value::Int(self.slots[index])
    }

    fn is_empty(&mut self) -> bool {
        self.hits.hit("is_empty");
        if self.is("M5") {
            self.top <= 1
        } else {
            self.top == 0
        }
    }

    /// 1-based distance from the top of the topmost occurrence, or -1.
    fn search(&mut self, x: i64) -> i64 {
        self.hits.hit("search");
        for i in (0..self.top).rev() {
            if self.slots[i] == x {
                let distance = (self.top - i) as i64;
                return if self.is("M4") { distance - 1 } else { distance };
            }
        }
        -1
    }

    fn clear(&mut self) {
        self.hits.hit("clear");
        self.top = 0;
    }
}

impl SutObject for Stack {
    fn call(&mut self, method: &str, args: &[Value]) -> Option<Value> {
        Some(match method {
            "push" => {
                self.push(int_arg(args, 0));
                Value::Unit
            }
            "pop" => self.pop(),
            "peek" => self.peek(),
            "is_empty" => Value::Bool(self.is_empty()),
            "size" => {
                self.hits.hit("size");
                Value::Int(self.top as i64)
            }
            "search" => Value::Int(self.search(int_arg(args, 0))),
            "clear" => {
                self.clear();
                Value::Unit
            }
            "to_list" => {
                self.hits.hit("to_list");
                Value::int_list(self.slots[..self.top].to_vec())
            }
            _ => return None,
        })
    }

    fn executed(&self) -> &BTreeSet<&'static str> {
        self.hits.set()
    }
}
