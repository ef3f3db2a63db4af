//! Brute-force ground truth at desk scale.
//!
//! Enumerates every travel groupoid on a small connected graph, filters the
//! non-confusing ones, and checks the counting identity: the number of
//! non-confusing travel groupoids on `G` equals the product over vertices
//! `v` of the number of `v`-spanning trees, with the downward construction
//! giving the bijection.
//!
//! The search space is kept honest by a budget on the raw candidate count
//! `prod_u deg(u)^(n-1)`: the diagonal is fixed and every off-diagonal
//! entry of a travel groupoid on `G` must be a neighbor of its row vertex,
//! since `u * (u * v) = u * v` makes `{u, u * v}` a derived edge.
//! Exceeding the budget is an error, never a silent truncation.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::axioms::{is_non_confusing, passes_travel_axioms};
use crate::construction::{downward_groupoid, TreeFamily};
use crate::graph::Graph;
use crate::table::OperationTable;
use crate::tree::{v_spanning_trees, SpanningTree, TreeError};

/// Default budget for the raw candidate count of a groupoid enumeration.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("candidate space {required} exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("enumeration cap exceeded: {n} vertices, cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("vertex count {n} out of range (1..={max})")]
    SizeOutOfRange { n: usize, max: usize },
}

impl From<TreeError> for OracleError {
    fn from(e: TreeError) -> Self {
        match e {
            TreeError::CapExceeded { n, cap } => OracleError::CapExceeded { n, cap },
            other => unreachable!("unexpected tree error during enumeration: {other}"),
        }
    }
}

/// Raw candidate count `prod_u deg(u)^(n-1)`, saturating.
pub fn candidate_space(g: &Graph) -> u128 {
    let n = g.vertex_count();
    let mut space: u128 = 1;
    for u in 0..n {
        for _ in 0..n - 1 {
            space = space.saturating_mul(g.degree(u) as u128);
        }
    }
    space
}

/// Every travel groupoid on `g`: tables with fixed diagonal, off-diagonal
/// entries in the row vertex's neighborhood, passing t1 and t2, whose
/// derived graph is exactly `g`. Deterministic order.
pub fn enumerate_travel_groupoids(
    g: &Graph,
    budget: u128,
) -> Result<Vec<OperationTable>, OracleError> {
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    let space = candidate_space(g);
    if space > budget {
        return Err(OracleError::BudgetExceeded {
            required: space,
            budget,
        });
    }
    let n = g.vertex_count();
    // Edge cells are forced to the far endpoint; only cells for
    // non-adjacent ordered pairs remain open.
    let mut entries = vec![usize::MAX; n * n];
    for u in 0..n {
        entries[u * n + u] = u;
        for &v in g.neighbors(u) {
            entries[u * n + v] = v;
        }
    }
    let open: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| entries[u * n + v] == usize::MAX)
        .collect();
    let mut out = Vec::new();
    fill(g, n, &open, 0, &mut entries, &mut out);
    Ok(out)
}

fn fill(
    g: &Graph,
    n: usize,
    open: &[(usize, usize)],
    k: usize,
    entries: &mut Vec<usize>,
    out: &mut Vec<OperationTable>,
) {
    if k == open.len() {
        let table = OperationTable::new(g.labels().to_vec(), entries.clone())
            .expect("search fills a complete table");
        debug_assert!(passes_travel_axioms(&table));
        debug_assert_eq!(&table.derived_graph(), g);
        out.push(table);
        return;
    }
    let (u, v) = open[k];
    for &x in g.neighbors(u) {
        // t2 between this cell and (x, v): each forbids the other's return.
        if entries[x * n + v] == u {
            continue;
        }
        entries[u * n + v] = x;
        fill(g, n, open, k + 1, entries, out);
        entries[u * n + v] = usize::MAX;
    }
}

/// The travel groupoids on `g` with no confusing pair.
pub fn enumerate_non_confusing(
    g: &Graph,
    budget: u128,
) -> Result<Vec<OperationTable>, OracleError> {
    Ok(enumerate_travel_groupoids(g, budget)?
        .into_iter()
        .filter(is_non_confusing_ref)
        .collect())
}

fn is_non_confusing_ref(t: &OperationTable) -> bool {
    is_non_confusing(t)
}

/// Outcome of the counting identity check on one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingReport {
    /// Number of `v`-spanning trees per vertex, in vertex order.
    pub per_vertex_counts: Vec<u64>,
    /// Product of the per-vertex counts.
    pub product: u128,
    /// Size of the enumerated non-confusing census.
    pub enumerated: u64,
    /// `product == enumerated`.
    pub counts_match: bool,
    /// The downward construction over all tree combinations hit the census
    /// exactly once each.
    pub downward_bijection: bool,
}

/// Checks that the non-confusing census has exactly `prod_v #(v-spanning
/// trees)` members and that the downward construction enumerates it
/// bijectively.
pub fn verify_counting_theorem(
    g: &Graph,
    budget: u128,
    cap: usize,
) -> Result<CountingReport, OracleError> {
    let census = enumerate_non_confusing(g, budget)?;
    let census_set: BTreeSet<&[usize]> = census.iter().map(|t| t.entries()).collect();
    let n = g.vertex_count();
    let mut lists: Vec<Vec<SpanningTree>> = Vec::with_capacity(n);
    for v in 0..n {
        lists.push(v_spanning_trees(g, v, cap)?);
    }
    let per_vertex_counts: Vec<u64> = lists.iter().map(|l| l.len() as u64).collect();
    let product = per_vertex_counts
        .iter()
        .fold(1u128, |acc, &c| acc.saturating_mul(u128::from(c)));

    let mut distinct: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut all_in_census = true;
    let mut combos: u128 = 0;
    let mut pick = vec![0usize; n];
    'outer: loop {
        let trees: Vec<SpanningTree> = (0..n).map(|v| lists[v][pick[v]].clone()).collect();
        let family = TreeFamily::from_trees(g, trees).expect("lists hold v-spanning trees");
        let table = downward_groupoid(g, &family);
        all_in_census &= census_set.contains(table.entries());
        distinct.insert(table.entries().to_vec());
        combos += 1;
        // odometer over the per-vertex tree lists
        for v in (0..n).rev() {
            pick[v] += 1;
            if pick[v] < lists[v].len() {
                continue 'outer;
            }
            pick[v] = 0;
        }
        break;
    }
    debug_assert_eq!(combos, product);
    let downward_bijection =
        all_in_census && distinct.len() as u128 == product && census.len() as u128 == product;
    Ok(CountingReport {
        counts_match: product == census.len() as u128,
        per_vertex_counts,
        product,
        enumerated: census.len() as u64,
        downward_bijection,
    })
}

fn make_labels(n: usize) -> Vec<String> {
    let width = n.to_string().len();
    (1..=n).map(|i| format!("v{i:0width$}")).collect()
}

/// All connected labeled graphs on `n` vertices (`n <= 7`), distinct as
/// edge sets, in deterministic order.
pub fn generate_connected_graphs(n: usize) -> Result<ConnectedGraphs, OracleError> {
    const MAX: usize = 7;
    if n == 0 || n > MAX {
        return Err(OracleError::SizeOutOfRange { n, max: MAX });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let end = 1u64 << pairs.len();
    Ok(ConnectedGraphs {
        n,
        pairs,
        mask: 0,
        end,
    })
}

pub struct ConnectedGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    mask: u64,
    end: u64,
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.mask < self.end {
            let mask = self.mask;
            self.mask += 1;
            if mask_connected(self.n, &self.pairs, mask) {
                let edges: BTreeSet<(usize, usize)> = self
                    .pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                return Some(Graph::from_indexed(make_labels(self.n), edges));
            }
        }
        None
    }
}

fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let mut adj = [0u8; 8];
    for (k, &(a, b)) in pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    let full = ((1u16 << n) - 1) as u8;
    let mut seen: u8 = 1;
    loop {
        let mut next = seen;
        for (v, &bits) in adj.iter().enumerate().take(n) {
            if seen >> v & 1 == 1 {
                next |= bits;
            }
        }
        if next == seen {
            return seen == full;
        }
        seen = next;
    }
}

/// Deterministic random connected graph: a uniform random labeled tree
/// skeleton plus each remaining pair independently at probability 1/2.
pub fn random_connected_graph(n: usize, seed: u64) -> Graph {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = make_labels(n);
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    if n == 2 {
        edges.insert((0, 1));
    } else if n >= 3 {
        for e in random_tree(&mut rng, n) {
            edges.insert(e);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if !edges.contains(&(i, j)) && rng.gen_bool(0.5) {
                edges.insert((i, j));
            }
        }
    }
    Graph::from_indexed(labels, edges)
}

/// Uniform labeled tree on `n >= 3` vertices by decoding a random sequence
/// of length `n - 2` over the vertex set.
fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let leaf = *leaves.iter().next().expect("a tree always has a leaf");
        leaves.remove(&leaf);
        edges.push((leaf.min(s), leaf.max(s)));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    let mut rest = leaves.into_iter();
    let (a, b) = (rest.next().unwrap(), rest.next().unwrap());
    edges.push((a.min(b), a.max(b)));
    edges
}
