//! Unbalanced binary search tree map; also the backing tree of `TreeSet`.
//!
//! Constructor keys `k` are inserted with value `k mod 4`.

use std::collections::BTreeSet;

use super::{int_arg, Hits, SutObject};
use crate::value::Value;

type Link = Option<Box<Node>>;

#[derive(Clone)]
struct Node {
    key: i64,
    value: i64,
    left: Link,
    right: Link,
}

#[derive(Clone, Default)]
pub(crate) struct Bst {
    root: Link,
    pub(crate) len: usize,
}

impl Bst {
    /// Returns the previous value for `key`, if any.
    pub(crate) fn insert(&mut self, key: i64, value: i64) -> Option<i64> {
        let mut link = &mut self.root;
        while let Some(node) = link {
            if key == node.key {
                return Some(std::mem::replace(&mut node.value, value));
            }
            link = if key < node.key { &mut node.left } else { &mut node.right };
        }
        *link = Some(Box::new(Node { key, value, left: None, right: None }));
        self.len += 1;
        None
    }

    pub(crate) fn get(&self, key: i64) -> Option<i64> {
        let mut cur = &self.root;
        while let Some(node) = cur {
            if key == node.key {
                return Some(node.value);
            }
            cur = if key < node.key { &node.left } else { &node.right };
        }
        None
    }

    /// Removes `key`. With `drop_right`, a node with two children is replaced
    /// by its left subtree alone and the right subtree is lost.
    pub(crate) fn remove(&mut self, key: i64, drop_right: bool) -> Option<i64> {
        let removed = remove_in(&mut self.root, key, drop_right)?;
        self.len -= 1;
        Some(removed)
    }

    pub(crate) fn root_key(&self) -> Option<i64> {
        self.root.as_ref().map(|n| n.key)
    }

    pub(crate) fn entries(&self) -> Vec<(i64, i64)> {
        fn walk(link: &Link, out: &mut Vec<(i64, i64)>) {
            if let Some(n) = link {
                walk(&n.left, out);
                out.push((n.key, n.value));
                walk(&n.right, out);
            }
        }
        let mut out = Vec::with_capacity(self.len);
        walk(&self.root, &mut out);
        out
    }

    pub(crate) fn keys(&self) -> Vec<i64> {
        self.entries().into_iter().map(|(k, _)| k).collect()
    }

    pub(crate) fn min_key(&self) -> Option<i64> {
        let mut cur = self.root.as_ref()?;
        while let Some(l) = cur.left.as_ref() {
            cur = l;
        }
        Some(cur.key)
    }

    pub(crate) fn max_key(&self) -> Option<i64> {
        let mut cur = self.root.as_ref()?;
        while let Some(r) = cur.right.as_ref() {
            cur = r;
        }
        Some(cur.key)
    }

    /// Greatest key `<= key`, or `< key` when `strict`.
    pub(crate) fn floor(&self, key: i64, strict: bool) -> Option<i64> {
        let mut best = None;
        let mut cur = &self.root;
        while let Some(n) = cur {
            let fits = if strict { n.key < key } else { n.key <= key };
            if fits {
                best = Some(n.key);
                cur = &n.right;
            } else {
                cur = &n.left;
            }
        }
        best
    }

    /// Least key `>= key`, or `> key` when `strict`.
    pub(crate) fn ceiling(&self, key: i64, strict: bool) -> Option<i64> {
        let mut best = None;
        let mut cur = &self.root;
        while let Some(n) = cur {
            let fits = if strict { n.key > key } else { n.key >= key };
            if fits {
                best = Some(n.key);
                cur = &n.left;
            } else {
                cur = &n.right;
            }
        }
        best
    }
}

fn remove_in(link: &mut Link, key: i64, drop_right: bool) -> Option<i64> {
    let node = link.as_mut()?;
    if key < node.key {
        return remove_in(&mut node.left, key, drop_right);
    }
    if key > node.key {
        return remove_in(&mut node.right, key, drop_right);
    }
    let mut node = link.take().expect("matched above");
    let removed = node.value;
    *link = match (node.left.take(), node.right.take()) {
        (None, None) => None,
        (Some(l), None) => Some(l),
        (None, Some(r)) => Some(r),
        (Some(l), Some(_)) if drop_right => Some(l),
        (Some(l), Some(r)) => {
            let mut right = Some(r);
            let (k, v) = take_min(&mut right);
            Some(Box::new(Node { key: k, value: v, left: Some(l), right }))
        }
    };
    Some(removed)
}

fn take_min(link: &mut Link) -> (i64, i64) {
    if link.as_ref().expect("non-empty subtree").left.is_some() {
        return take_min(&mut link.as_mut().expect("checked").left);
    }
    let node = link.take().expect("checked");
    *link = node.right;
    (node.key, node.value)
}

pub(crate) struct TreeMap {
    tree: Bst,
    mutant: Option<&'static str>,
    hits: Hits,
}

impl TreeMap {
    pub(crate) fn new(keys: &[i64], mutant: Option<&'static str>) -> Self {
        let mut tree = Bst::default();
        for &k in keys {
            tree.insert(k, k.rem_euclid(4));
        }
        TreeMap {
            tree,
            mutant,
            hits: Hits::default(),
        }
    }

    fn is(&self, tag: &str) -> bool {
        self.mutant == Some(tag)
    }

    fn put(&mut self, key: i64, value: i64) -> Value {
        self.hits.hit("put");
        let old = self.tree.insert(key, value);
        if self.is("M3") {
            return Value::Absent;
        }
        old.map_or(Value::Absent, Value::Int)
    }

    fn remove(&mut self, key: i64) -> Value {
        self.hits.hit("remove");
        let drop_right = self.is("M4");
        self.tree.remove(key, drop_right).map_or(Value::Absent, Value::Int)
    }

    fn first_key(&mut self) -> Value {
        self.hits.hit("first_key");
        let key = if self.is("M1") { self.tree.root_key() } else { self.tree.min_key() };
        key.map_or(Value::Absent, Value::Int)
    }
}

impl SutObject for TreeMap {
    fn call(&mut self, method: &str, args: &[Value]) -> Option<Value> {
        Some(match method {
            "put" => self.put(int_arg(args, 0), int_arg(args, 1)),
            "get" => {
                self.hits.hit("get");
                self.tree.get(int_arg(args, 0)).map_or(Value::Absent, Value::Int)
            }
            "remove" => self.remove(int_arg(args, 0)),
            "contains_key" => {
                self.hits.hit("contains_key");
                Value::Bool(self.tree.get(int_arg(args, 0)).is_some())
            }
            "first_key" => self.first_key(),
            "last_key" => {
                self.hits.hit("last_key");
                self.tree.max_key().map_or(Value::Absent, Value::Int)
            }
            "floor_key" => {
                self.hits.hit("floor_key");
                let strict = self.is("M2");
                self.tree.floor(int_arg(args, 0), strict).map_or(Value::Absent, Value::Int)
            }
            "size" => {
                self.hits.hit("size");
                Value::Int(self.tree.len as i64)
            }
            "is_empty" => {
                self.hits.hit("is_empty");
                Value::Bool(self.tree.len == 0)
            }
            "keys" => {
                self.hits.hit("keys");
                Value::int_list(self.tree.keys())
            }
            "values" => {
                self.hits.hit("values");
                Value::int_list(self.tree.entries().into_iter().map(|(_, v)| v).collect::<Vec<_>>())
            }
            _ => return None,
        })
    }

    fn executed(&self) -> &BTreeSet<&'static str> {
        self.hits.set()
    }
}
