//! Construction of smooth travel groupoids from a seed spanning tree.
//!
//! Given a connected graph, a root `o`, and an `o`-spanning seed tree, a
//! `u`-spanning tree is derived for every vertex `u` by edge swaps: each
//! non-tree edge `{u, x}` incident to `u` is added, and the unique cycle it
//! closes (the tree path `u .. x` plus the new edge) is broken by removing
//! the path edge incident to `x`. The upward table then reads `u * v` off
//! the tree of `u`; the downward table reads it off the tree of `v`.
//!
//! Swaps are processed in ascending order of the far endpoint. The result
//! does not depend on that order; the order fixes byte-identical output and
//! the test suite verifies the independence rather than assuming it.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::Graph;
use crate::table::OperationTable;
use crate::tree::{SpanningTree, TreeError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("seed tree is not a spanning tree of this graph")]
    SeedNotSpanning,
    #[error("seed tree is not `{root}`-spanning: an edge incident to `{root}` is missing")]
    SeedNotRootSpanning { root: String },
    #[error("tree for `{vertex}` is not `{vertex}`-spanning")]
    NotVertexSpanning { vertex: String },
    #[error("family must provide one tree per vertex: expected {expected}, found {found}")]
    WrongFamilySize { expected: usize, found: usize },
    #[error("swap order must be a permutation of the pending edges at `{vertex}`")]
    InvalidSwapOrder { vertex: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("tree block `{vertex}`: {source}")]
    TreeBlock { vertex: String, source: TreeError },
}

/// A `v`-spanning tree for every vertex. `root` is set when the family was
/// produced from a seed; independently assembled families carry `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeFamily {
    root: Option<usize>,
    trees: Vec<SpanningTree>,
}

impl TreeFamily {
    /// Wraps an independently chosen family, checking that tree `v` is a
    /// `v`-spanning tree of `g` for every `v`.
    pub fn from_trees(g: &Graph, trees: Vec<SpanningTree>) -> Result<TreeFamily, ConstructionError> {
        let n = g.vertex_count();
        if trees.len() != n {
            return Err(ConstructionError::WrongFamilySize {
                expected: n,
                found: trees.len(),
            });
        }
        for (v, t) in trees.iter().enumerate() {
            if !t.matches_host(g) {
                return Err(ConstructionError::SeedNotSpanning);
            }
            if !t.is_v_spanning(g, v) {
                return Err(ConstructionError::NotVertexSpanning {
                    vertex: g.label(v).to_string(),
                });
            }
        }
        Ok(TreeFamily { root: None, trees })
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn tree(&self, v: usize) -> &SpanningTree {
        &self.trees[v]
    }

    pub fn trees(&self) -> &[SpanningTree] {
        &self.trees
    }

    /// Text form: one block per vertex, `tree <label>` then its edges in
    /// canonical order, blocks separated by blank lines.
    pub fn to_text(&self, g: &Graph) -> String {
        let mut out = String::new();
        for (v, t) in self.trees.iter().enumerate() {
            if v > 0 {
                out.push('\n');
            }
            out.push_str(&format!("tree {}\n", g.label(v)));
            for &(a, b) in t.edges() {
                out.push_str(&format!("{} {}\n", g.label(a), g.label(b)));
            }
        }
        out
    }

    /// Parses a full family: one block per vertex of `g`, each vertex once.
    pub fn parse(g: &Graph, text: &str) -> Result<TreeFamily, ConstructionError> {
        let blocks = parse_tree_blocks(g, text)?;
        let n = g.vertex_count();
        let mut slots: Vec<Option<SpanningTree>> = vec![None; n];
        for (v, t) in blocks {
            if slots[v].is_some() {
                return Err(ConstructionError::Parse {
                    line: 0,
                    msg: format!("duplicate tree block for `{}`", g.label(v)),
                });
            }
            slots[v] = Some(t);
        }
        let trees: Vec<SpanningTree> = slots
            .into_iter()
            .enumerate()
            .map(|(v, s)| {
                s.ok_or_else(|| ConstructionError::Parse {
                    line: 0,
                    msg: format!("missing tree block for `{}`", g.label(v)),
                })
            })
            .collect::<Result<_, _>>()?;
        Self::from_trees(g, trees)
    }
}

/// Parses `tree <label>` blocks, validating each edge list as a spanning
/// tree of `g`. Used both for full families and for single-block seed files.
pub fn parse_tree_blocks(
    g: &Graph,
    text: &str,
) -> Result<Vec<(usize, SpanningTree)>, ConstructionError> {
    let mut out = Vec::new();
    let mut current: Option<(usize, Vec<(usize, usize)>)> = None;
    let close = |cur: Option<(usize, Vec<(usize, usize)>)>,
                     out: &mut Vec<(usize, SpanningTree)>|
     -> Result<(), ConstructionError> {
        if let Some((v, edges)) = cur {
            let tree = SpanningTree::validate(g, &edges).map_err(|source| {
                ConstructionError::TreeBlock {
                    vertex: g.label(v).to_string(),
                    source,
                }
            })?;
            out.push((v, tree));
        }
        Ok(())
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["tree", label] => {
                close(current.take(), &mut out)?;
                let v = g.index_of(label).ok_or_else(|| ConstructionError::Parse {
                    line: lineno + 1,
                    msg: format!("unknown vertex `{label}`"),
                })?;
                current = Some((v, Vec::new()));
            }
            [a, b] => {
                let Some((_, edges)) = current.as_mut() else {
                    return Err(ConstructionError::Parse {
                        line: lineno + 1,
                        msg: "edge line before any `tree <vertex>` header".into(),
                    });
                };
                let ia = g.index_of(a).ok_or_else(|| ConstructionError::Parse {
                    line: lineno + 1,
                    msg: format!("unknown vertex `{a}`"),
                })?;
                let ib = g.index_of(b).ok_or_else(|| ConstructionError::Parse {
                    line: lineno + 1,
                    msg: format!("unknown vertex `{b}`"),
                })?;
                edges.push((ia, ib));
            }
            _ => {
                return Err(ConstructionError::Parse {
                    line: lineno + 1,
                    msg: "expected `tree <vertex>` or an edge of two labels".into(),
                });
            }
        }
    }
    close(current.take(), &mut out)?;
    Ok(out)
}

/// The breadth-first tree from `root` with neighbors explored in label
/// order. Every neighbor of `root` is parented by `root`, so the result is
/// always a `root`-spanning tree.
pub fn default_seed(g: &Graph, root: usize) -> Result<SpanningTree, ConstructionError> {
    if !g.is_connected() {
        return Err(ConstructionError::Disconnected);
    }
    let n = g.vertex_count();
    let mut edges = BTreeSet::new();
    let mut visited = vec![false; n];
    visited[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !visited[w] {
                visited[w] = true;
                edges.insert((u.min(w), u.max(w)));
                queue.push_back(w);
            }
        }
    }
    Ok(SpanningTree::from_canonical_edges(n, edges.into_iter().collect()))
}

/// Pending swap list for `u`: host edges at `u` missing from the tree,
/// listed by ascending far endpoint.
fn pending_endpoints(g: &Graph, tree: &SpanningTree, u: usize) -> Vec<usize> {
    g.neighbors(u)
        .iter()
        .copied()
        .filter(|&x| !tree.contains_edge(u, x))
        .collect()
}

/// Derives the `u`-spanning tree from `seed` by processing the pending
/// edges at `u` in ascending order of the far endpoint.
pub fn derive_vertex_tree(g: &Graph, seed: &SpanningTree, u: usize) -> SpanningTree {
    let order = pending_endpoints(g, seed, u);
    derive_with_order(g, seed, u, &order)
}

/// Same derivation with an explicit processing order; `order` must be a
/// permutation of the pending far endpoints. The resulting tree is the same
/// for every permutation.
pub fn derive_vertex_tree_ordered(
    g: &Graph,
    seed: &SpanningTree,
    u: usize,
    order: &[usize],
) -> Result<SpanningTree, ConstructionError> {
    let mut canonical = pending_endpoints(g, seed, u);
    let mut given: Vec<usize> = order.to_vec();
    canonical.sort_unstable();
    given.sort_unstable();
    if canonical != given {
        return Err(ConstructionError::InvalidSwapOrder {
            vertex: g.label(u).to_string(),
        });
    }
    Ok(derive_with_order(g, seed, u, order))
}

fn derive_with_order(g: &Graph, seed: &SpanningTree, u: usize, order: &[usize]) -> SpanningTree {
    let n = g.vertex_count();
    let mut edges: BTreeSet<(usize, usize)> = seed.edges().iter().copied().collect();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in seed.edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    for &x in order {
        // The cycle closed by {u, x} is the tree path u .. x plus that edge;
        // drop the path edge at x, i.e. {parent(x), x} seen from u.
        let parent = parents_from(&adj, u);
        let p = parent[x];
        debug_assert!(p != u, "pending edge already in tree");
        edges.remove(&(p.min(x), p.max(x)));
        adj[p].retain(|&w| w != x);
        adj[x].retain(|&w| w != p);
        edges.insert((u.min(x), u.max(x)));
        adj[u].push(x);
        adj[x].push(u);
    }
    SpanningTree::from_canonical_edges(n, edges.into_iter().collect())
}

fn parents_from(adj: &[Vec<usize>], root: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; adj.len()];
    parent[root] = root;
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        for &w in &adj[x] {
            if parent[w] == usize::MAX {
                parent[w] = x;
                stack.push(w);
            }
        }
    }
    parent
}

/// Runs the derivation for every vertex, seeding from a `root`-spanning
/// tree, and verifies each result is vertex-spanning.
pub fn build_tree_family(
    g: &Graph,
    root: usize,
    seed: &SpanningTree,
) -> Result<TreeFamily, ConstructionError> {
    if !seed.matches_host(g) {
        return Err(ConstructionError::SeedNotSpanning);
    }
    if !seed.is_v_spanning(g, root) {
        return Err(ConstructionError::SeedNotRootSpanning {
            root: g.label(root).to_string(),
        });
    }
    let mut trees = Vec::with_capacity(g.vertex_count());
    for u in 0..g.vertex_count() {
        let tree = if u == root {
            seed.clone()
        } else {
            derive_vertex_tree(g, seed, u)
        };
        if !tree.is_v_spanning(g, u) {
            return Err(ConstructionError::NotVertexSpanning {
                vertex: g.label(u).to_string(),
            });
        }
        trees.push(tree);
    }
    Ok(TreeFamily {
        root: Some(root),
        trees,
    })
}

/// Upward table: `u * v` is the first step from `u` toward `v` in the tree
/// of `u`; the diagonal is fixed.
pub fn upward_groupoid(g: &Graph, family: &TreeFamily) -> OperationTable {
    OperationTable::from_fn(g.labels().to_vec(), |u, v| {
        if u == v {
            u
        } else {
            family.tree(u).next_vertex(u, v)
        }
    })
}

/// Downward table: `u * v` is the first step from `u` toward `v` in the
/// tree of `v`. Always a travel groupoid when the family is vertex-spanning.
pub fn downward_groupoid(g: &Graph, family: &TreeFamily) -> OperationTable {
    OperationTable::from_fn(g.labels().to_vec(), |u, v| {
        if u == v {
            u
        } else {
            family.tree(v).next_vertex(u, v)
        }
    })
}

/// End-to-end construction: derive the family from `root` (default: the
/// smallest label) and `seed` (default: the breadth-first tree), then build
/// the upward table. The result is a smooth travel groupoid on `g`.
pub fn construct_smooth(
    g: &Graph,
    root: Option<usize>,
    seed: Option<SpanningTree>,
) -> Result<(TreeFamily, OperationTable), ConstructionError> {
    if !g.is_connected() {
        return Err(ConstructionError::Disconnected);
    }
    let root = root.unwrap_or(0);
    let seed = match seed {
        Some(t) => t,
        None => default_seed(g, root)?,
    };
    let family = build_tree_family(g, root, &seed)?;
    let table = upward_groupoid(g, &family);
    Ok((family, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::axiom_report;

    fn c4() -> Graph {
        Graph::new(
            &["v1", "v2", "v3", "v4"],
            &[("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v1", "v4")],
        )
        .unwrap()
    }

    fn c4_seed() -> SpanningTree {
        // {v1v2, v1v4, v3v4}
        SpanningTree::validate(&c4(), &[(0, 1), (0, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn default_seed_on_star_is_the_star() {
        let star =
            Graph::new(&["c", "x", "y", "z"], &[("c", "x"), ("c", "y"), ("c", "z")]).unwrap();
        let seed = default_seed(&star, 0).unwrap();
        assert_eq!(seed.edges(), star.edges());
    }

    #[test]
    fn default_seed_on_c4_explores_in_label_order() {
        let seed = default_seed(&c4(), 0).unwrap();
        // v2 and v4 hang off v1; v3 is reached from v2 first.
        assert_eq!(seed.edges(), &[(0, 1), (0, 3), (1, 2)]);
    }

    #[test]
    fn default_seed_on_tree_is_the_tree() {
        let g = Graph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("b", "d")]).unwrap();
        for root in 0..4 {
            assert_eq!(default_seed(&g, root).unwrap().edges(), g.edges());
        }
    }

    #[test]
    fn default_seed_requires_connected() {
        let g = Graph::new(&["a", "b"], &[]).unwrap();
        assert_eq!(default_seed(&g, 0), Err(ConstructionError::Disconnected));
    }

    #[test]
    fn derive_is_identity_when_nothing_pends() {
        let g = c4();
        let seed = c4_seed();
        // v4: both incident edges already in the seed.
        assert_eq!(derive_vertex_tree(&g, &seed, 3), seed);
        // root itself: a root-spanning seed never has pending edges.
        let bfs = default_seed(&g, 0).unwrap();
        assert_eq!(derive_vertex_tree(&g, &bfs, 0), bfs);
    }

    #[test]
    fn derive_swaps_the_cycle_edge_at_the_far_endpoint() {
        let g = c4();
        let t = derive_vertex_tree(&g, &c4_seed(), 1);
        // add {v2, v3}; cycle v2-v1-v4-v3; drop the path edge at v3 = {v3, v4}
        assert_eq!(t.edges(), &[(0, 1), (0, 3), (1, 2)]);
    }

    #[test]
    fn family_on_c4_matches_hand_trace() {
        let g = c4();
        let fam = build_tree_family(&g, 0, &c4_seed()).unwrap();
        assert_eq!(fam.root(), Some(0));
        assert_eq!(fam.tree(0).edges(), &[(0, 1), (0, 3), (2, 3)]);
        assert_eq!(fam.tree(1).edges(), &[(0, 1), (0, 3), (1, 2)]);
        assert_eq!(fam.tree(2).edges(), &[(0, 3), (1, 2), (2, 3)]);
        assert_eq!(fam.tree(3).edges(), &[(0, 1), (0, 3), (2, 3)]);
        for v in 0..4 {
            assert!(fam.tree(v).is_v_spanning(&g, v));
        }
    }

    #[test]
    fn family_on_tree_input_repeats_the_tree() {
        let g = Graph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("b", "d")]).unwrap();
        let seed = SpanningTree::validate(&g, g.edges()).unwrap();
        let fam = build_tree_family(&g, 1, &seed).unwrap();
        for v in 0..4 {
            assert_eq!(fam.tree(v).edges(), g.edges());
        }
    }

    #[test]
    fn upward_table_on_c4() {
        let g = c4();
        let fam = build_tree_family(&g, 0, &c4_seed()).unwrap();
        let t = upward_groupoid(&g, &fam);
        assert_eq!(t.get(0, 2), 3); // v1 * v3 = v4 along v1-v4-v3
        assert_eq!(t.get(1, 3), 0); // v2 * v4 = v1 along v2-v1-v4
        for u in 0..4 {
            assert_eq!(t.get(u, u), u);
        }
        let r = axiom_report(&t);
        assert!(r.is_travel && r.is_smooth && r.is_non_confusing);
    }

    #[test]
    fn downward_equals_upward_on_a_shared_tree() {
        let g = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let seed = SpanningTree::validate(&g, g.edges()).unwrap();
        let fam = build_tree_family(&g, 0, &seed).unwrap();
        assert_eq!(upward_groupoid(&g, &fam), downward_groupoid(&g, &fam));
    }

    #[test]
    fn downward_on_triangle_steps_straight_to_target() {
        let g = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let trees: Vec<SpanningTree> = (0..3)
            .map(|v| crate::tree::v_spanning_trees(&g, v, 8).unwrap().remove(0))
            .collect();
        let fam = TreeFamily::from_trees(&g, trees).unwrap();
        let t = downward_groupoid(&g, &fam);
        for u in 0..3 {
            for v in 0..3 {
                if u != v {
                    assert_eq!(t.get(u, v), v);
                }
            }
        }
        assert!(axiom_report(&t).is_travel);
    }

    #[test]
    fn construct_smooth_trivial_cases() {
        let one = Graph::new(&["z"], &[]).unwrap();
        let (_, t) = construct_smooth(&one, None, None).unwrap();
        assert_eq!(t.get(0, 0), 0);
        assert!(axiom_report(&t).is_smooth);

        let path = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let (fam, t) = construct_smooth(&path, None, None).unwrap();
        assert_eq!(t.get(0, 2), 1);
        assert_eq!(t.get(2, 0), 1);
        for v in 0..3 {
            assert_eq!(fam.tree(v).edges(), path.edges());
        }
    }

    #[test]
    fn construct_smooth_rejects_bad_inputs() {
        let g = Graph::new(&["a", "b", "c"], &[("a", "b")]).unwrap();
        assert_eq!(
            construct_smooth(&g, None, None).unwrap_err(),
            ConstructionError::Disconnected
        );

        let g = c4();
        // {v1v2, v2v3, v3v4} misses edge {v1, v4}, so it is not v1-spanning.
        let seed = SpanningTree::validate(&g, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(
            construct_smooth(&g, Some(0), Some(seed)).unwrap_err(),
            ConstructionError::SeedNotRootSpanning { root: "v1".into() }
        );
    }

    #[test]
    fn ordered_derivation_validates_the_order() {
        let g = c4();
        let seed = c4_seed();
        assert_eq!(
            derive_vertex_tree_ordered(&g, &seed, 1, &[0]).unwrap_err(),
            ConstructionError::InvalidSwapOrder { vertex: "v2".into() }
        );
        let t = derive_vertex_tree_ordered(&g, &seed, 1, &[2]).unwrap();
        assert_eq!(t, derive_vertex_tree(&g, &seed, 1));
    }

    #[test]
    fn family_text_round_trip() {
        let g = c4();
        let fam = build_tree_family(&g, 0, &c4_seed()).unwrap();
        let text = fam.to_text(&g);
        let back = TreeFamily::parse(&g, &text).unwrap();
        assert_eq!(back.trees(), fam.trees());
        assert_eq!(back.root(), None); // provenance is not serialized
    }

    #[test]
    fn seed_block_parsing() {
        let g = c4();
        let blocks = parse_tree_blocks(&g, "tree v1\nv1 v2\nv1 v4\nv3 v4\n").unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].0, 0);
        assert_eq!(blocks[0].1.edges(), c4_seed().edges());

        let err = parse_tree_blocks(&g, "tree v1\nv1 v2\n").unwrap_err();
        assert!(matches!(err, ConstructionError::TreeBlock { .. }));
    }
}
