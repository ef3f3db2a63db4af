//! Invariant suites cross-checking each module against independent routes:
//! a determinant-based spanning-tree count, walk/metric identities, checker
//! equivalences on exhaustively enumerated tables, and structural
//! invariants of the constructed tree families.

use proptest::prelude::*;

use travel_groupoid::axioms::{
    axiom_report, check_travel_identities, is_non_confusing, passes_travel_axioms,
};
use travel_groupoid::construction::{construct_smooth, default_seed, derive_vertex_tree};
use travel_groupoid::graph::Graph;
use travel_groupoid::oracle::{
    candidate_space, enumerate_non_confusing, enumerate_travel_groupoids,
    generate_connected_graphs, random_connected_graph, DEFAULT_BUDGET,
};
use travel_groupoid::table::OperationTable;
use travel_groupoid::tree::{enumerate_spanning_trees, v_spanning_trees, SpanningTree};

/// Spanning-tree count by the determinant of a Laplacian minor, evaluated
/// with fraction-free integer elimination. Independent of the
/// contraction/deletion enumerator it checks.
fn spanning_tree_count_det(g: &Graph) -> i128 {
    let n = g.vertex_count();
    if n == 1 {
        return 1;
    }
    let m = n - 1;
    let mut a = vec![vec![0i128; m]; m];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = g.degree(i + 1) as i128;
        for (j, cell) in row.iter_mut().enumerate() {
            if i != j && g.has_edge(i + 1, j + 1) {
                *cell = -1;
            }
        }
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..m {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..m).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[m - 1][m - 1]
}

#[test]
fn tree_enumeration_matches_determinant_on_all_small_graphs() {
    for n in 1..=5 {
        for g in generate_connected_graphs(n).unwrap() {
            let trees = enumerate_spanning_trees(&g, 8).unwrap();
            assert_eq!(trees.len() as i128, spanning_tree_count_det(&g), "{g:?}");
            for t in &trees {
                SpanningTree::validate(&g, t.edges()).unwrap();
                for v in 0..n {
                    let direct = g.neighbors(v).iter().all(|&w| t.contains_edge(v, w));
                    assert_eq!(t.is_v_spanning(&g, v), direct);
                }
            }
        }
    }
}

#[test]
fn tree_enumeration_matches_determinant_on_random_graphs() {
    for n in [6, 7] {
        for seed in 0..30 {
            let g = random_connected_graph(n, seed);
            let trees = enumerate_spanning_trees(&g, 8).unwrap();
            assert_eq!(trees.len() as i128, spanning_tree_count_det(&g));
        }
    }
}

#[test]
fn complete_graph_tree_count_is_cayley() {
    let labels: Vec<String> = (1..=7).map(|i| format!("v{i}")).collect();
    let labels_ref: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut edges = Vec::new();
    for i in 0..7 {
        for j in i + 1..7 {
            edges.push((labels_ref[i], labels_ref[j]));
        }
    }
    let k7 = Graph::new(&labels_ref, &edges).unwrap();
    // 7^5 labeled trees on 7 vertices
    assert_eq!(enumerate_spanning_trees(&k7, 8).unwrap().len(), 16807);
}

#[test]
fn next_vertex_satisfies_the_metric_equations() {
    for seed in 0..60 {
        let n = 2 + (seed as usize % 7); // 2..=8
        let g = random_connected_graph(n, seed);
        let t = default_seed(&g, 0).unwrap();
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                let next = t.next_vertex(u, v);
                assert_eq!(t.distance(u, next), 1);
                assert_eq!(t.distance(next, v), t.distance(u, v) - 1);
            }
        }
    }
}

#[test]
fn bfs_distances_change_by_at_most_one_across_edges() {
    for seed in 0..20 {
        let g = random_connected_graph(2 + (seed as usize % 6), seed);
        for s in 0..g.vertex_count() {
            let d = g.distances(s);
            assert_eq!(d.get(s), Some(0));
            for &(u, v) in g.edges() {
                let a = d.get(u).unwrap() as i64;
                let b = d.get(v).unwrap() as i64;
                assert!((a - b).abs() <= 1);
            }
        }
    }
}

/// Travel tables on every graph with up to four vertices, plus the
/// budget-feasible five-vertex graphs when asked.
fn travel_tables_up_to(n_max: usize) -> Vec<(Graph, Vec<OperationTable>)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for g in generate_connected_graphs(n).unwrap() {
            if candidate_space(&g) > DEFAULT_BUDGET {
                continue;
            }
            let tables = enumerate_travel_groupoids(&g, DEFAULT_BUDGET).unwrap();
            out.push((g, tables));
        }
    }
    out
}

#[test]
fn non_confusing_iff_every_walk_is_a_short_path() {
    let mut tables_seen = 0usize;
    for (g, tables) in travel_tables_up_to(5) {
        let n = g.vertex_count();
        for t in tables {
            tables_seen += 1;
            let mut all_paths = true;
            for u in 0..n {
                for v in 0..n {
                    if u == v {
                        continue;
                    }
                    let w = t.walk(u, v, n);
                    all_paths &= w.terminated && w.is_path && w.steps() < n;
                }
            }
            assert_eq!(is_non_confusing(&t), all_paths);
        }
    }
    assert!(tables_seen > 1000, "corpus too small: {tables_seen}");
}

#[test]
fn travel_identities_hold_on_every_enumerated_table() {
    for (_, tables) in travel_tables_up_to(4) {
        for t in tables {
            assert_eq!(check_travel_identities(&t).unwrap(), vec![]);
        }
    }
}

#[test]
fn first_step_is_adjacent_in_the_derived_graph() {
    for (_, tables) in travel_tables_up_to(4) {
        for t in tables {
            let d = t.derived_graph();
            for u in 0..t.size() {
                for v in 0..t.size() {
                    if u != v {
                        assert!(d.has_edge(u, t.get(u, v)));
                    }
                }
            }
        }
    }
}

/// Some five-vertex graph carries a travel groupoid with a confusing pair;
/// its walk must run forever. (Any cycle reachable outside the closed
/// neighborhood of the target vertex allows one, e.g. a triangle with a
/// two-edge tail.)
#[test]
fn confusing_travel_tables_exist_and_their_walks_do_not_terminate() {
    let mut found = None;
    'search: for g in generate_connected_graphs(5).unwrap() {
        if candidate_space(&g) > DEFAULT_BUDGET {
            continue;
        }
        for t in enumerate_travel_groupoids(&g, DEFAULT_BUDGET).unwrap() {
            if !is_non_confusing(&t) {
                found = Some(t);
                break 'search;
            }
        }
    }
    let t = found.expect("a confusing travel table on five vertices");
    let pair = axiom_report(&t)
        .confusing_pairs
        .first()
        .expect("report agrees")
        .pair;
    let w = t.walk(pair.0, pair.1, t.size());
    assert!(!w.terminated);
    let w = t.walk(pair.0, pair.1, 1000);
    assert!(!w.terminated, "confusing walk must never reach its target");
}

/// Vertices that share a first hop out of `u` sit in the same branch of the
/// tree of `u` (component after deleting `u` and its tree edges).
#[test]
fn shared_first_hop_implies_shared_branch() {
    fn branch_ids(t: &SpanningTree, u: usize) -> Vec<usize> {
        let n = t.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in t.edges() {
            if a != u && b != u {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut c = 0;
        for s in 0..n {
            if s == u || comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = c;
            while let Some(x) = stack.pop() {
                for &w in &adj[x] {
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        stack.push(w);
                    }
                }
            }
            c += 1;
        }
        comp
    }

    for n in 2..=5 {
        for g in generate_connected_graphs(n).unwrap() {
            let (family, table) = construct_smooth(&g, None, None).unwrap();
            for u in 0..n {
                let comp = branch_ids(family.tree(u), u);
                for v in 0..n {
                    for w in 0..n {
                        if v != u && w != u && table.get(u, v) == table.get(u, w) {
                            assert_eq!(comp[v], comp[w]);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn constructed_tables_never_step_back_to_the_source() {
    for n in 2..=5 {
        for g in generate_connected_graphs(n).unwrap() {
            let (_, table) = construct_smooth(&g, None, None).unwrap();
            for u in 0..n {
                for v in 0..n {
                    if u != v {
                        assert_ne!(table.get(table.get(u, v), v), u);
                    }
                }
            }
        }
    }
}

#[test]
fn constructed_tables_appear_in_the_non_confusing_census() {
    for n in 1..=4 {
        for g in generate_connected_graphs(n).unwrap() {
            let census = enumerate_non_confusing(&g, DEFAULT_BUDGET).unwrap();
            for root in 0..n {
                for seed in v_spanning_trees(&g, root, 8).unwrap() {
                    let (_, table) = construct_smooth(&g, Some(root), Some(seed)).unwrap();
                    assert!(census.contains(&table));
                }
            }
        }
    }
}

#[test]
fn derivation_keeps_every_pending_edge_and_stays_spanning() {
    for seed in 0..40 {
        let n = 3 + (seed as usize % 5);
        let g = random_connected_graph(n, seed);
        let bfs = default_seed(&g, 0).unwrap();
        for u in 0..n {
            let t = derive_vertex_tree(&g, &bfs, u);
            assert!(t.is_v_spanning(&g, u));
            SpanningTree::validate(&g, t.edges()).unwrap();
        }
    }
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=8, any::<u64>()).prop_map(|(n, seed)| random_connected_graph(n, seed))
}

fn arb_table() -> impl Strategy<Value = OperationTable> {
    (1usize..=6)
        .prop_flat_map(|n| proptest::collection::vec(0..n, n * n))
        .prop_map(|entries| {
            let n = (entries.len() as f64).sqrt() as usize;
            let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            OperationTable::new(labels, entries).unwrap()
        })
}

proptest! {
    #[test]
    fn edge_list_round_trip(g in arb_graph()) {
        let text = g.to_edge_list();
        let back = Graph::parse(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_edge_list(), text);
    }

    #[test]
    fn table_text_round_trip(t in arb_table()) {
        let text = t.to_text();
        let back = OperationTable::parse(&text).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn walk_prefixes_are_consistent(t in arb_table(), u in 0usize..6, v in 0usize..6, k in 0usize..12, extra in 0usize..12) {
        let n = t.size();
        let (u, v) = (u % n, v % n);
        let short = t.walk(u, v, k);
        let long = t.walk(u, v, k + extra);
        prop_assert_eq!(&long.sequence[..short.sequence.len()], &short.sequence[..]);
        for (i, &x) in short.sequence.iter().enumerate() {
            prop_assert_eq!(t.iterate(u, v, i), x);
        }
    }

    #[test]
    fn travel_axiom_scan_agrees_with_report(t in arb_table()) {
        let r = axiom_report(&t);
        prop_assert_eq!(passes_travel_axioms(&t), r.is_travel);
        prop_assert_eq!(is_non_confusing(&t), r.confusing_pairs.is_empty());
    }
}
