//! Total binary operations on a vertex set, stored as an n-by-n table.
//!
//! A table is accepted regardless of which axioms it satisfies; all axiom
//! logic lives in [`crate::axioms`] so that broken operations can be
//! represented, inspected, and reported on.
//!
//! Text format: a header line with the sorted vertex labels, then one line
//! per row with n entry labels (row `u`, column `v` holds `u * v`). Blank
//! lines and `#` comments are ignored.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("table must have at least one vertex")]
    Empty,
    #[error("header labels must be strictly increasing")]
    UnsortedHeader,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("expected {expected} entry rows, found {found}")]
    WrongRowCount { expected: usize, found: usize },
}

/// An operation table `u * v` over sorted vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OperationTable {
    labels: Vec<String>,
    entries: Vec<usize>,
}

impl OperationTable {
    /// Builds a table from sorted labels and row-major entries.
    pub fn new(labels: Vec<String>, entries: Vec<usize>) -> Result<OperationTable, TableError> {
        let n = labels.len();
        if n == 0 {
            return Err(TableError::Empty);
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(TableError::UnsortedHeader);
        }
        if entries.len() != n * n {
            return Err(TableError::WrongRowCount {
                expected: n,
                found: entries.len() / n.max(1),
            });
        }
        assert!(entries.iter().all(|&e| e < n), "entry index out of range");
        Ok(OperationTable { labels, entries })
    }

    /// Builds a table by evaluating `op(u, v)` over all ordered pairs.
    pub fn from_fn(labels: Vec<String>, op: impl Fn(usize, usize) -> usize) -> OperationTable {
        let n = labels.len();
        let mut entries = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                entries.push(op(u, v));
            }
        }
        OperationTable::new(labels, entries).expect("generated table is well formed")
    }

    pub fn parse(text: &str) -> Result<OperationTable, TableError> {
        let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<String> = line.split_whitespace().map(str::to_string).collect();
            rows.push((lineno + 1, tokens));
        }
        let Some((_, header)) = rows.first() else {
            return Err(TableError::Empty);
        };
        let labels = header.clone();
        let n = labels.len();
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(TableError::UnsortedHeader);
        }
        let index: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if rows.len() - 1 != n {
            return Err(TableError::WrongRowCount {
                expected: n,
                found: rows.len() - 1,
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        for (lineno, tokens) in &rows[1..] {
            if tokens.len() != n {
                return Err(TableError::Parse {
                    line: *lineno,
                    msg: format!("expected {n} entries, found {}", tokens.len()),
                });
            }
            for tok in tokens {
                let &i = index.get(tok.as_str()).ok_or_else(|| TableError::Parse {
                    line: *lineno,
                    msg: format!("unknown label `{tok}`"),
                })?;
                entries.push(i);
            }
        }
        OperationTable::new(labels, entries)
    }

    /// Canonical text: header line, then n entry rows.
    pub fn to_text(&self) -> String {
        let n = self.size();
        let mut out = self.labels.join(" ");
        out.push('\n');
        for u in 0..n {
            let row: Vec<&str> = (0..n).map(|v| self.labels[self.get(u, v)].as_str()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    /// The product `u * v`.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> usize {
        self.entries[u * self.labels.len() + v]
    }

    pub(crate) fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// The graph this operation lives on: edges are exactly the pairs with
    /// `u != u * v == v`.
    pub fn derived_graph(&self) -> Graph {
        let n = self.size();
        let mut edges = BTreeSet::new();
        for u in 0..n {
            for v in 0..n {
                if u != v && self.get(u, v) == v {
                    edges.insert((u.min(v), u.max(v)));
                }
            }
        }
        Graph::from_indexed(self.labels.clone(), edges)
    }

    /// The iterated product: `u *^0 v = u` and `u *^{i+1} v = (u *^i v) * v`.
    pub fn iterate(&self, u: usize, v: usize, i: usize) -> usize {
        let mut x = u;
        for _ in 0..i {
            x = self.get(x, v);
        }
        x
    }

    /// Repeated multiplication by `v` starting from `u`, cut off after
    /// `max_steps` products or on reaching `v`.
    pub fn walk(&self, u: usize, v: usize, max_steps: usize) -> Walk {
        let mut sequence = vec![u];
        let mut x = u;
        while x != v && sequence.len() <= max_steps {
            x = self.get(x, v);
            sequence.push(x);
        }
        let terminated = x == v;
        let mut seen = BTreeSet::new();
        let is_path = sequence.iter().all(|&w| seen.insert(w));
        Walk {
            source: u,
            target: v,
            sequence,
            terminated,
            is_path,
        }
    }

    /// The preimage set `{w : u * w = v}`, sorted.
    pub fn fiber(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.size()).filter(|&w| self.get(u, w) == v).collect()
    }

    /// Deterministic 64-bit FNV-1a digest of labels and entries, as hex.
    pub fn digest(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |byte: u8| {
            h ^= u64::from(byte);
            h = h.wrapping_mul(0x100000001b3);
        };
        for l in &self.labels {
            l.bytes().for_each(&mut eat);
            eat(0);
        }
        for &e in &self.entries {
            (e as u64).to_le_bytes().iter().copied().for_each(&mut eat);
        }
        format!("{h:016x}")
    }
}

/// The vertex sequence `u, u * v, (u * v) * v, ...` together with whether it
/// reached `v` and whether all entries are distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub source: usize,
    pub target: usize,
    pub sequence: Vec<usize>,
    pub terminated: bool,
    pub is_path: bool,
}

impl Walk {
    /// Number of products taken.
    pub fn steps(&self) -> usize {
        self.sequence.len() - 1
    }
}
