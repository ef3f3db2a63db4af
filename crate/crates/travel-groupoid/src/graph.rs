//! Finite simple undirected graphs with string-labelled vertices.
//!
//! Vertices are stored in sorted label order and addressed by dense index,
//! so every derived artifact (tables, tree listings, serializations) comes
//! out in one canonical order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Errors from graph construction and edge-list parsing.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("loop edge at `{0}` is not allowed")]
    Loop(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
}

/// A finite simple undirected graph. No loops, no multiple edges.
///
/// Labels are sorted; `index_of` and `label` translate between the two
/// addressings. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from vertex labels and label pairs. Duplicate labels
    /// and duplicate edges collapse; loops and unknown endpoints are errors.
    pub fn new(labels: &[&str], edges: &[(&str, &str)]) -> Result<Graph, GraphError> {
        let mut sorted: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        sorted.sort();
        sorted.dedup();
        if sorted.is_empty() {
            return Err(GraphError::Empty);
        }
        let index: BTreeMap<&str, usize> = sorted
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            let i = *index
                .get(a)
                .ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
            let j = *index
                .get(b)
                .ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
            if i == j {
                return Err(GraphError::Loop(a.to_string()));
            }
            set.insert((i.min(j), i.max(j)));
        }
        Ok(Self::from_indexed(sorted, set))
    }

    /// Internal constructor: `labels` sorted and unique, `edges` canonical
    /// index pairs with both endpoints in range.
    pub(crate) fn from_indexed(labels: Vec<String>, edges: BTreeSet<(usize, usize)>) -> Graph {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let n = labels.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            debug_assert!(u < v && v < n);
            adj[u].push(v);
            adj[v].push(u);
        }
        Graph {
            labels,
            edges: edges.into_iter().collect(),
            adj,
        }
    }

    /// Parses edge-list text: one edge per line as two whitespace-separated
    /// labels; a single label declares an isolated vertex; `#` comments and
    /// blank lines are ignored.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut vertices: BTreeSet<String> = BTreeSet::new();
        let mut pairs: Vec<(String, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                [v] => {
                    vertices.insert(v.to_string());
                }
                [a, b] => {
                    if a == b {
                        return Err(GraphError::Parse {
                            line: lineno + 1,
                            msg: format!("loop edge `{a} {b}` is not allowed"),
                        });
                    }
                    vertices.insert(a.to_string());
                    vertices.insert(b.to_string());
                    pairs.push((a.to_string(), b.to_string()));
                }
                _ => {
                    return Err(GraphError::Parse {
                        line: lineno + 1,
                        msg: format!("expected one or two labels, found {}", tokens.len()),
                    });
                }
            }
        }
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let labels: Vec<String> = vertices.into_iter().collect();
        let index: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut set = BTreeSet::new();
        for (a, b) in &pairs {
            let i = index[a.as_str()];
            let j = index[b.as_str()];
            set.insert((i.min(j), i.max(j)));
        }
        Ok(Self::from_indexed(labels, set))
    }

    /// Canonical edge-list text: isolated vertices first, then edges sorted
    /// by (min-label, max-label). Parsing this back reproduces the graph.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for v in 0..self.vertex_count() {
            if self.adj[v].is_empty() {
                out.push_str(&self.labels[v]);
                out.push('\n');
            }
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", self.labels[u], self.labels[v]));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
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

    /// Canonical edge set: pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of `v` in ascending index order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].binary_search(&v).is_ok()
    }

    /// True iff every vertex is reachable from the first vertex.
    pub fn is_connected(&self) -> bool {
        let d = self.distances(0);
        d.dist.iter().all(|x| x.is_some())
    }

    /// Breadth-first shortest-path distances from `source`.
    pub fn distances(&self, source: usize) -> DistanceMap {
        assert!(source < self.vertex_count());
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        DistanceMap { source, dist }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_edge_list())
    }
}

/// Shortest-path distances from a fixed source; `None` marks unreachable
/// vertices, so everything is `Some` exactly when the graph is connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMap {
    pub source: usize,
    pub dist: Vec<Option<usize>>,
}

impl DistanceMap {
    pub fn get(&self, v: usize) -> Option<usize> {
        self.dist[v]
    }
}
