//! Doubly linked list over an index arena.

use std::collections::BTreeSet;

use super::{int_arg, Hits, SutObject};
use crate::value::{codes, Value};

#[derive(Clone, Copy)]
struct Node {
    value: i64,
    prev: Option<usize>,
    next: Option<usize>,
}

pub(crate) struct LinkedList {
    nodes: Vec<Node>,
    free: Vec<usize>,
    head: Option<usize>,
    tail: Option<usize>,
    len: usize,
    mutant: Option<&'static str>,
    hits: Hits,
}

impl LinkedList {
    pub(crate) fn new(items: &[i64], mutant: Option<&'static str>) -> Self {
        let mut list = LinkedList {
            nodes: Vec::new(),
            free: Vec::new(),
            head: None,
            tail: None,
            len: 0,
            mutant,
            hits: Hits::default(),
        };
        for &x in items {
            list.link_after(list.tail, x);
        }
        list
    }

    fn is(&self, tag: &str) -> bool {
        self.mutant == Some(tag)
    }

    fn alloc(&mut self, value: i64) -> usize {
        let node = Node { value, prev: None, next: None };
        match self.free.pop() {
            Some(i) => {
                self.nodes[i] = node;
                i
            }
            None => {
                self.nodes.push(node);
                self.nodes.len() - 1
            }
        }
    }

    /// Inserts after `at`, or at the front when `at` is `None`.
    fn link_after(&mut self, at: Option<usize>, value: i64) {
        let n = self.alloc(value);
        let next = match at {
            Some(a) => self.nodes[a].next,
            None => self.head,
        };
        self.nodes[n].prev = at;
        self.nodes[n].next = next;
        match at {
            Some(a) => self.nodes[a].next = Some(n),
            None => self.head = Some(n),
        }
        match next {
            Some(x) => self.nodes[x].prev = Some(n),
            None => self.tail = Some(n),
        }
        self.len += 1;
    }

    fn unlink(&mut self, n: usize) -> i64 {
        let Node { value, prev, next } = self.nodes[n];
        match prev {
            Some(p) => self.nodes[p].next = next,
            None => self.head = next,
        }
        match next {
            Some(x) => self.nodes[x].prev = prev,
            None => self.tail = prev,
        }
        self.free.push(n);
        self.len -= 1;
        value
    }

    fn iter_forward(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(self.head, |&n| self.nodes[n].next)
    }

    fn add_first(&mut self, x: i64) {
        self.hits.hit("add_first");
        if self.is("M1") && self.len > 0 {
            self.link_after(self.head, x);
        } else {
            self.link_after(None, x);
        }
    }

    fn add_last(&mut self, x: i64) {
        self.hits.hit("add_last");
        self.link_after(self.tail, x);
    }

    fn remove_first(&mut self) -> Value {
        self.hits.hit("remove_first");
        match self.head {
            Some(h) => Value::Int(self.unlink(h)),
            None => Value::error(codes::NO_SUCH_ELEMENT),
        }
    }

    fn remove_last(&mut self) -> Value {
        self.hits.hit("remove_last");
        let (Some(h), Some(t)) = (self.head, self.tail) else {
            return Value::error(codes::NO_SUCH_ELEMENT);
        };
        if self.is("M2") && self.len >= 2 {
            let value = self.nodes[t].value;
            self.unlink(h);
            return Value::Int(value);
        }
        Value::Int(self.unlink(t))
    }

    fn get_first(&mut self) -> Value {
        self.hits.hit("get_first");
        self.head
            .map_or(Value::error(codes::NO_SUCH_ELEMENT), |h| Value::Int(self.nodes[h].value))
    }

    fn get_last(&mut self) -> Value {
        self.hits.hit("get_last");
        let Some(t) = self.tail else {
            return Value::error(codes::NO_SUCH_ELEMENT);
        };
        let node = if self.is("M3") && self.len >= 3 {
            self.nodes[t].prev.expect("len >= 3")
        } else {
            t
        };
        Value::Int(self.nodes[node].value)
    }

    fn contains(&mut self, x: i64) -> bool {
        self.hits.hit("contains");
        let skip_tail = self.is("M5");
        let tail = self.tail;
        self.iter_forward()
            .filter(|&n| !(skip_tail && Some(n) == tail))
            .any(|n| self.nodes[n].value == x)
    }

    /// Removes the first occurrence of `x`.
    fn remove(&mut self, x: i64) -> bool {
        self.hits.hit("remove");
        let found = if self.is("M4") {
            let all: Vec<usize> = self.iter_forward().collect();
            all.into_iter().rev().find(|&n| self.nodes[n].value == x)
        } else {
            self.iter_forward().find(|&n| self.nodes[n].value == x)
        };
        match found {
            Some(n) => {
                self.unlink(n);
                true
            }
            None => false,
        }
    }
}

impl SutObject for LinkedList {
    fn call(&mut self, method: &str, args: &[Value]) -> Option<Value> {
        Some(match method {
            "add_first" => {
                self.add_first(int_arg(args, 0));
                Value::Unit
            }
            "add_last" => {
                self.add_last(int_arg(args, 0));
                Value::Unit
            }
            "remove_first" => self.remove_first(),
            "remove_last" => self.remove_last(),
            "get_first" => self.get_first(),
            "get_last" => self.get_last(),
            "contains" => Value::Bool(self.contains(int_arg(args, 0))),
            "remove" => Value::Bool(self.remove(int_arg(args, 0))),
            "size" => {
                self.hits.hit("size");
                Value::Int(self.len as i64)
            }
            "is_empty" => {
                self.hits.hit("is_empty");
                Value::Bool(self.len == 0)
            }
            "to_list" => {
                self.hits.hit("to_list");
                Value::int_list(self.iter_forward().map(|n| self.nodes[n].value).collect::<Vec<_>>())
            }
            _ => return None,
        })
    }

    fn executed(&self) -> &BTreeSet<&'static str> {
        self.hits.set()
    }
}
