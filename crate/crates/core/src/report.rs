//! Line-oriented `key value` reports.
//!
//! The canonical form lists keys in sorted order, one per line, with a
//! single space between key and value. Parsing canonical text and emitting
//! it again reproduces the input byte for byte.

use std::collections::BTreeMap;
use std::fmt::{self, Display, Write as _};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    /// Insertion order, used by the human-readable form.
    order: Vec<String>,
    values: BTreeMap<String, String>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    /// Adds a field. Keys are unique and free of whitespace; values are a
    /// single line.
    pub fn insert(&mut self, key: impl Into<String>, value: impl Display) {
        let key = key.into();
        let value = value.to_string();
        assert!(
            !key.is_empty() && !key.contains(char::is_whitespace),
            "report key `{key}` must be a non-empty token"
        );
        assert!(
            !value.contains('\n'),
            "report value for `{key}` spans lines"
        );
        if self.values.insert(key.clone(), value).is_none() {
            self.order.push(key);
        } else {
            panic!("report key `{key}` given twice");
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Fields whose key starts with `prefix`, in key order.
    pub fn with_prefix<'a>(
        &'a self,
        prefix: &'a str,
    ) -> impl Iterator<Item = (&'a str, &'a str)> + 'a {
        self.values
            .range(prefix.to_string()..)
            .take_while(move |(k, _)| k.starts_with(prefix))
            .map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn to_canonical(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.values {
            let _ = writeln!(out, "{k} {v}");
        }
        out
    }

    pub fn parse_canonical(text: &str) -> Result<Report> {
        let mut report = Report::new();
        let mut last: Option<&str> = None;
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let (key, value) = line
                .split_once(' ')
                .ok_or_else(|| Error::parse(line_no, "expected `key value`"))?;
            if key.is_empty() {
                return Err(Error::parse(line_no, "empty key"));
            }
            if last.is_some_and(|l| l >= key) {
                return Err(Error::parse(
                    line_no,
                    format!("key `{key}` out of order or repeated"),
                ));
            }
            last = Some(key);
            report.insert(key, value);
        }
        if !text.is_empty() && !text.ends_with('\n') {
            return Err(Error::parse(text.lines().count(), "missing final newline"));
        }
        Ok(report)
    }

    /// Aligned `key  value` lines in insertion order.
    pub fn to_human(&self) -> String {
        let width = self.order.iter().map(String::len).max().unwrap_or(0);
        let mut out = String::new();
        for k in &self.order {
            let _ = writeln!(out, "{k:<width$}  {}", self.values[k]);
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

/// Zero-padded index so that keys sort numerically.
pub fn indexed(prefix: &str, i: impl Into<u128>, width: usize) -> String {
    format!("{prefix}.{:0width$}", i.into())
}
