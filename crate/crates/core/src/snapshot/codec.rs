//! Canonical text encoding of [`Value`]s.
//!
//! | value          | encoding                         |
//! |----------------|----------------------------------|
//! | `Unit`         | `<unit>`                         |
//! | `Absent`       | `<none>`                         |
//! | `Bool`         | `true` / `false`                 |
//! | `Int`          | decimal, e.g. `-12`              |
//! | `Float`        | shortest round-trip, always with a `.`: `3.0`, `1.5e-7`, `nan`, `inf`, `-inf`, `-0.0` |
//! | `Text`         | `"..."`, percent-escaping `% , " CR LF` |
//! | `List`         | `[a b c]`                        |
//! | `Error(code)`  | `<error:code>`, percent-escaping `% , > CR LF` |
//!
//! No encoding contains a comma or a newline, so CSV containers need no quoting.
//! Decoding only accepts canonical text: `decode(s)` succeeds iff `encode(decode(s)) == s`.

use thiserror::Error;

use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed value {text:?}: {reason}")]
pub struct MalformedValue {
    pub text: String,
    pub reason: String,
}

pub fn encode_value(v: &Value) -> String {
    let mut out = String::new();
    encode_into(v, &mut out);
    out
}

fn encode_into(v: &Value, out: &mut String) {
    match v {
        Value::Unit => out.push_str("<unit>"),
        Value::Absent => out.push_str("<none>"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Int(i) => out.push_str(&i.to_string()),
        Value::Float(f) => out.push_str(&encode_float(*f)),
        Value::Text(s) => {
            out.push('"');
            escape_into(s, '"', out);
            out.push('"');
        }
        Value::Error(code) => {
            out.push_str("<error:");
            escape_into(code, '>', out);
            out.push('>');
        }
        Value::List(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                encode_into(item, out);
            }
            out.push(']');
        }
    }
}

fn encode_float(f: f64) -> String {
    if f.is_nan() {
        return "nan".into();
    }
    if f.is_infinite() {
        return if f > 0.0 { "inf".into() } else { "-inf".into() };
    }
    // Debug formatting is the shortest representation that round-trips.
    let s = format!("{f:?}");
    match s.find('e') {
        Some(pos) if !s[..pos].contains('.') => format!("{}.0{}", &s[..pos], &s[pos..]),
        Some(_) => s,
        None if s.contains('.') => s,
        None => format!("{s}.0"),
    }
}

fn escape_into(s: &str, terminator: char, out: &mut String) {
    for c in s.chars() {
        match c {
            '%' | ',' | '\n' | '\r' => out.push_str(&format!("%{:02X}", c as u32)),
            c if c == terminator => out.push_str(&format!("%{:02X}", c as u32)),
            c => out.push(c),
        }
    }
}

pub fn decode_value(text: &str) -> Result<Value, MalformedValue> {
    let fail = |reason: &str| MalformedValue {
        text: text.to_owned(),
        reason: reason.to_owned(),
    };
    let mut parser = Parser { src: text, pos: 0 };
    let value = parser.value().map_err(|r| fail(&r))?;
    if parser.pos != text.len() {
        return Err(fail("trailing characters"));
    }
    if encode_value(&value) != text {
        return Err(fail("not in canonical form"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn value(&mut self) -> Result<Value, String> {
        let rest = self.rest();
        if rest.starts_with('[') {
            self.pos += 1;
            let mut items = Vec::new();
            if self.rest().starts_with(']') {
                self.pos += 1;
                return Ok(Value::List(items));
            }
            loop {
                items.push(self.value()?);
                match self.rest().chars().next() {
                    Some(' ') => self.pos += 1,
                    Some(']') => {
                        self.pos += 1;
                        return Ok(Value::List(items));
                    }
                    _ => return Err("unterminated list".into()),
                }
            }
        }
        if rest.starts_with('"') {
            self.pos += 1;
            let body = self.take_until('"')?;
            return unescape(body).map(Value::Text);
        }
        if rest.starts_with("<error:") {
            self.pos += "<error:".len();
            let body = self.take_until('>')?;
            return unescape(body).map(Value::Error);
        }
        for (lit, v) in [("<unit>", Value::Unit), ("<none>", Value::Absent)] {
            if rest.starts_with(lit) {
                self.pos += lit.len();
                return Ok(v);
            }
        }
        let end = rest.find([' ', ']']).unwrap_or(rest.len());
        let token = &rest[..end];
        self.pos += end;
        scalar(token)
    }

    fn take_until(&mut self, terminator: char) -> Result<&'a str, String> {
        let rest = self.rest();
        let end = rest
            .find(terminator)
            .ok_or_else(|| format!("missing closing {terminator:?}"))?;
        self.pos += end + terminator.len_utf8();
        Ok(&rest[..end])
    }
}

fn scalar(token: &str) -> Result<Value, String> {
    match token {
        "" => Err("empty token".into()),
        "true" => Ok(Value::Bool(true)),
        "false" => Ok(Value::Bool(false)),
        "nan" => Ok(Value::Float(f64::NAN)),
        "inf" => Ok(Value::Float(f64::INFINITY)),
        "-inf" => Ok(Value::Float(f64::NEG_INFINITY)),
        t if t.contains('.') => t
            .parse::<f64>()
            .map(Value::Float)
            .map_err(|e| format!("bad float: {e}")),
        t => t
            .parse::<i64>()
            .map(Value::Int)
            .map_err(|e| format!("bad int: {e}")),
    }
}

fn unescape(s: &str) -> Result<String, String> {
    let bytes = s.as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'%' {
            let hex = s.get(i + 1..i + 3).ok_or("truncated escape")?;
            let b = u8::from_str_radix(hex, 16).map_err(|_| format!("bad escape %{hex}"))?;
            out.push(b);
            i += 3;
        } else {
            out.push(bytes[i]);
            i += 1;
        }
    }
    String::from_utf8(out).map_err(|_| "invalid utf-8 after unescape".into())
}
