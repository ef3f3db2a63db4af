//! Spanning trees of a host graph: validation, v-spanning predicates, the
//! next-vertex function along tree paths, and exhaustive enumeration.
//!
//! Enumeration branches on each edge (take it into the tree or discard it),
//! which is contraction/deletion expressed on a union-find partition. It is
//! exponential and guarded by a vertex cap; it exists to supply ground truth
//! at desk scale, not to be fast.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::Graph;

/// Default vertex cap for spanning-tree enumeration.
pub const DEFAULT_VERTEX_CAP: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("a spanning tree on {n} vertices needs {} edges, found {found}", n - 1)]
    WrongEdgeCount { n: usize, found: usize },
    #[error("edge ({0}, {1}) is not an edge of the host graph")]
    NotHostEdge(String, String),
    #[error("edge set contains a cycle")]
    Cycle,
    #[error("edge set does not reach every vertex")]
    Disconnected,
    #[error("enumeration cap exceeded: {n} vertices, cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// A validated spanning tree of some host graph, stored as canonical index
/// pairs. The host is not referenced; `matches_host` re-checks compatibility
/// when a tree crosses an API boundary.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SpanningTree {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SpanningTree {
    /// Checks that `edges` is a spanning tree of `g` and wraps it. The error
    /// identifies the first failing condition: foreign edge, cardinality,
    /// cycle, then connectivity.
    pub fn validate(g: &Graph, edges: &[(usize, usize)]) -> Result<SpanningTree, TreeError> {
        let n = g.vertex_count();
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n || b >= n || !g.has_edge(a, b) {
                let la = if a < n { g.label(a).to_string() } else { a.to_string() };
                let lb = if b < n { g.label(b).to_string() } else { b.to_string() };
                return Err(TreeError::NotHostEdge(la, lb));
            }
            set.insert((a.min(b), a.max(b)));
        }
        if set.len() != n - 1 {
            return Err(TreeError::WrongEdgeCount { n, found: set.len() });
        }
        let mut dsu = Dsu::new(n);
        for &(a, b) in &set {
            if !dsu.union(a, b) {
                return Err(TreeError::Cycle);
            }
        }
        if (0..n).any(|v| dsu.find(v) != dsu.find(0)) {
            return Err(TreeError::Disconnected);
        }
        Ok(SpanningTree {
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub(crate) fn from_canonical_edges(n: usize, edges: Vec<(usize, usize)>) -> SpanningTree {
        debug_assert_eq!(edges.len(), n.saturating_sub(1));
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        SpanningTree { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Canonical edge list: pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        let e = (u.min(v), u.max(v));
        self.edges.binary_search(&e).is_ok()
    }

    /// True iff this tree uses only edges of `g` and has matching order.
    pub fn matches_host(&self, g: &Graph) -> bool {
        self.n == g.vertex_count() && self.edges.iter().all(|&(a, b)| g.has_edge(a, b))
    }

    /// True iff the tree contains every host edge incident to `v`.
    pub fn is_v_spanning(&self, g: &Graph, v: usize) -> bool {
        g.neighbors(v).iter().all(|&w| self.contains_edge(v, w))
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// The unique path from `u` to `v` (inclusive).
    pub fn path(&self, u: usize, v: usize) -> Vec<usize> {
        assert!(u < self.n && v < self.n);
        if u == v {
            return vec![u];
        }
        let adj = self.adjacency();
        // Depth-first from u; a tree has one path to each vertex.
        let mut parent = vec![usize::MAX; self.n];
        let mut stack = vec![u];
        parent[u] = u;
        while let Some(x) = stack.pop() {
            if x == v {
                break;
            }
            for &w in &adj[x] {
                if parent[w] == usize::MAX {
                    parent[w] = x;
                    stack.push(w);
                }
            }
        }
        assert!(parent[v] != usize::MAX, "tree is not spanning");
        let mut path = vec![v];
        let mut x = v;
        while x != u {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        path
    }

    /// The neighbor of `u` on the unique `u`-`v` path. Requires `u != v`;
    /// the diagonal of an operation table is handled by its builder.
    pub fn next_vertex(&self, u: usize, v: usize) -> usize {
        assert_ne!(u, v, "next_vertex requires distinct endpoints");
        self.path(u, v)[1]
    }

    /// Distance between two vertices in the tree metric.
    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.path(u, v).len() - 1
    }
}

/// Every spanning tree of `g`, each exactly once, sorted by edge list.
/// Returns an empty list when `g` is disconnected (no tree spans it).
pub fn enumerate_spanning_trees(g: &Graph, cap: usize) -> Result<Vec<SpanningTree>, TreeError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(TreeError::CapExceeded { n, cap });
    }
    if !g.is_connected() {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![SpanningTree::from_canonical_edges(1, Vec::new())]);
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    branch(g.edges(), 0, n, &Dsu::new(n), &mut chosen, &mut out);
    out.sort();
    Ok(out)
}

fn branch(
    edges: &[(usize, usize)],
    idx: usize,
    n: usize,
    dsu: &Dsu,
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<SpanningTree>,
) {
    if chosen.len() == n - 1 {
        let mut tree = chosen.clone();
        tree.sort();
        out.push(SpanningTree::from_canonical_edges(n, tree));
        return;
    }
    if idx == edges.len() || edges.len() - idx < n - 1 - chosen.len() {
        return;
    }
    let (a, b) = edges[idx];
    if dsu.connected(a, b) {
        // Within one component the edge would close a cycle: delete it.
        branch(edges, idx + 1, n, dsu, chosen, out);
    } else {
        let mut merged = dsu.clone();
        merged.union(a, b);
        chosen.push((a, b));
        branch(edges, idx + 1, n, &merged, chosen, out);
        chosen.pop();
        branch(edges, idx + 1, n, dsu, chosen, out);
    }
}

/// All `v`-spanning trees of `g`: spanning trees containing every edge
/// incident to `v`.
pub fn v_spanning_trees(g: &Graph, v: usize, cap: usize) -> Result<Vec<SpanningTree>, TreeError> {
    Ok(enumerate_spanning_trees(g, cap)?
        .into_iter()
        .filter(|t| t.is_v_spanning(g, v))
        .collect())
}

/// Number of `v`-spanning trees of `g`.
pub fn count_v_spanning_trees(g: &Graph, v: usize, cap: usize) -> Result<usize, TreeError> {
    Ok(v_spanning_trees(g, v, cap)?.len())
}

#[derive(Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn connected(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Returns false when `a` and `b` were already in one component.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
