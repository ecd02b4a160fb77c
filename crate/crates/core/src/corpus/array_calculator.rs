//! The `ArrayCalculator` toy class.
//!
//! Mutants: `M1` reads the wrong position in `get_last_element`, `M2` rotates
//! instead of reversing, `M3` sorts descending.

use std::collections::BTreeSet;

use super::{Hits, SutObject};
use crate::value::Value;

pub(crate) struct ArrayCalculator {
    data: Vec<i64>,
    mutant: Option<&'static str>,
    hits: Hits,
}

impl ArrayCalculator {
    pub(crate) fn new(data: Vec<i64>, mutant: Option<&'static str>) -> Self {
        ArrayCalculator {
            data,
            mutant,
            hits: Hits::default(),
        }
    }

    fn is(&self, tag: &str) -> bool {
        self.mutant == Some(tag)
    }

    fn is_empty(&mut self) -> bool {
        self.hits.hit("is_empty");
        self.get_size() == 0
    }

    fn get_size(&mut self) -> usize {
        self.hits.hit("get_size");
        self.data.len()
    }

    fn get_average(&mut self) -> Value {
        self.hits.hit("get_average");
        if self.is_empty() {
            return Value::Absent;
        }
        let total: i64 = self.data.iter().sum();
        Value::Float(total as f64 / self.get_size() as f64)
    }

    fn get_sum(&mut self) -> i64 {
        self.hits.hit("get_sum");
        self.data.iter().sum()
    }

    fn get_first_element(&mut self) -> Value {
        self.hits.hit("get_first_element");
        if self.is_empty() {
            Value::Absent
        } else {
            Value::Int(self.data[0])
        }
    }

    fn get_last_element(&mut self) -> Value {
        self.hits.hit("get_last_element");
        if self.is_empty() {
            return Value::Absent;
        }
        let size = self.get_size();
        if self.is("M1") && size >= 2 {
            return Value::Int(self.data[size - 2]);
        }
        Value::Int(self.data[size - 1])
    }

    fn reverse_data(&mut self) {
        self.hits.hit("reverse_data");
        if self.is("M2") {
            if !self.data.is_empty() {
                self.data.rotate_left(1);
            }
            return;
        }
        let size = self.get_size();
        if size == 0 {
            return;
        }
        let (mut start, mut end) = (0, size - 1);
        while start < end {
            self.data.swap(start, end);
            start += 1;
            end -= 1;
        }
    }

    fn append_data(&mut self, new_data: &[i64]) {
        self.hits.hit("append_data");
        for &element in new_data {
            self.data.push(element);
        }
    }

    fn sort_asc(&mut self) {
        self.hits.hit("sort_asc");
        if self.is("M3") {
            self.data.sort_by(|a, b| b.cmp(a));
        } else {
            self.data.sort();
        }
    }
}

impl SutObject for ArrayCalculator {
    fn call(&mut self, method: &str, args: &[Value]) -> Option<Value> {
        Some(match method {
            "is_empty" => Value::Bool(self.is_empty()),
            "get_size" => Value::Int(self.get_size() as i64),
            "get_average" => self.get_average(),
            "get_sum" => Value::Int(self.get_sum()),
            "get_first_element" => self.get_first_element(),
            "get_last_element" => self.get_last_element(),
            "reverse_data" => {
                self.reverse_data();
                Value::Unit
            }
            "append_data" => {
                let items = args[0].as_int_list().expect("validated list argument");
                self.append_data(&items);
                Value::Unit
            }
            "sort_asc" => {
                self.sort_asc();
                Value::Unit
            }
            _ => return None,
        })
    }

    fn executed(&self) -> &BTreeSet<&'static str> {
        self.hits.set()
    }
}
