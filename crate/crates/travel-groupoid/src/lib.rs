//! Travel groupoids on finite connected graphs.
//!
//! A travel groupoid is a binary operation `*` on the vertex set of a graph
//! that encodes next-hop routing: `u * v` is the first step from `u` toward
//! `v`, axiom (t1) makes every step reversible in one hop, and (t2) forbids
//! immediate two-step returns. Smoothness (t4) additionally makes routing
//! consistent across targets that share a first hop, which forces every
//! iterated walk to be a loop-free path.
//!
//! This crate provides:
//!
//! * [`graph`] — labelled simple graphs, edge-list parsing, BFS distances,
//!   spanning-tree validation and enumeration ([`tree`]);
//! * [`table`] — operation tables, derived graphs, iterated products and
//!   walks; [`axioms`] — exhaustive checkers for t1-t4 and confusing pairs;
//! * [`construction`] — builds a smooth travel groupoid on any connected
//!   graph by deriving a `v`-spanning tree for every vertex from one seed
//!   tree and routing upward along it;
//! * [`oracle`] — brute-force enumeration of (non-confusing) travel
//!   groupoids on small graphs and the spanning-tree counting identity.
//!
//! The `travel-groupoid` binary exposes the same functionality as
//! subcommands (`build`, `verify`, `path`, `count`, `enumerate`).

pub mod axioms;
pub mod construction;
pub mod graph;
pub mod oracle;
pub mod table;
pub mod tree;

pub use axioms::{
    axiom_report, check_reversal_identity, check_travel_identities, is_non_confusing,
    passes_smoothness, passes_travel_axioms, smooth_via_fibers, AxiomReport, ConfusingPair,
    IdentityViolation, PreconditionError, ReversalViolation,
};
pub use construction::{
    build_tree_family, construct_smooth, default_seed, derive_vertex_tree,
    derive_vertex_tree_ordered, downward_groupoid, parse_tree_blocks, upward_groupoid,
    ConstructionError, TreeFamily,
};
pub use graph::{DistanceMap, Graph, GraphError};
pub use oracle::{
    candidate_space, enumerate_non_confusing, enumerate_travel_groupoids,
    generate_connected_graphs, random_connected_graph, verify_counting_theorem, CountingReport,
    OracleError, DEFAULT_BUDGET,
};
pub use table::{OperationTable, TableError, Walk};
pub use tree::{
    count_v_spanning_trees, enumerate_spanning_trees, v_spanning_trees, SpanningTree, TreeError,
    DEFAULT_VERTEX_CAP,
};
