//! Command-line front end for building, verifying, and counting travel
//! groupoids on finite connected graphs.
//!
//! Exit codes: 0 success; 1 verified table is not a smooth travel groupoid;
//! 2 parse error or unknown label; 3 disconnected graph; 4 invalid seed
//! tree; 5 budget or cap exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use travel_groupoid::axioms::axiom_report;
use travel_groupoid::construction::{
    construct_smooth, parse_tree_blocks, ConstructionError, TreeFamily,
};
use travel_groupoid::graph::{Graph, GraphError};
use travel_groupoid::oracle::{
    candidate_space, enumerate_travel_groupoids, verify_counting_theorem, OracleError,
    DEFAULT_BUDGET,
};
use travel_groupoid::table::{OperationTable, TableError};
use travel_groupoid::tree::{count_v_spanning_trees, TreeError, DEFAULT_VERTEX_CAP};
use travel_groupoid::{is_non_confusing, SpanningTree};

#[derive(Parser)]
#[command(name = "travel-groupoid", version, about = "Smooth travel groupoids on finite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a smooth travel groupoid from an edge-list file
    Build {
        /// Graph in edge-list format
        graph: PathBuf,
        /// Root vertex (default: smallest label)
        #[arg(long)]
        root: Option<String>,
        /// Seed tree file: a single `tree <root>` block
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Emit the derived tree family as DOT instead of text blocks
        #[arg(long)]
        dot: bool,
    },
    /// Check the travel/simple/smooth/non-confusing axioms of a table file
    Verify {
        /// Operation table in table text format
        table: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the iterated walk between two vertices of a table
    Path {
        table: PathBuf,
        from: String,
        to: String,
        /// Maximum number of products (default: vertex count)
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Count v-spanning trees per vertex and their product
    Count {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        cap: usize,
    },
    /// Enumerate all travel groupoids on a small graph
    Enumerate {
        graph: PathBuf,
        /// List only the non-confusing tables
        #[arg(long)]
        non_confusing_only: bool,
        /// Budget for the raw candidate space
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Vertex cap for the spanning-tree count in the summary
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        cap: usize,
        /// Dump every listed table in table text format
        #[arg(long)]
        full: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        fail(2, e.to_string())
    }
}

impl From<TableError> for Failure {
    fn from(e: TableError) -> Self {
        fail(2, e.to_string())
    }
}

impl From<TreeError> for Failure {
    fn from(e: TreeError) -> Self {
        match e {
            TreeError::CapExceeded { .. } => fail(5, e.to_string()),
            _ => fail(4, e.to_string()),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Disconnected => fail(3, e.to_string()),
            ConstructionError::Parse { .. } => fail(2, e.to_string()),
            _ => fail(4, e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Disconnected => fail(3, e.to_string()),
            OracleError::SizeOutOfRange { .. } => fail(2, e.to_string()),
            _ => fail(5, e.to_string()),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build {
            graph,
            root,
            tree,
            format,
            dot,
        } => cmd_build(&graph, root.as_deref(), tree.as_ref(), format, dot),
        Command::Verify { table, format } => cmd_verify(&table, format),
        Command::Path {
            table,
            from,
            to,
            max_steps,
        } => cmd_path(&table, &from, &to, max_steps),
        Command::Count { graph, cap } => cmd_count(&graph, cap),
        Command::Enumerate {
            graph,
            non_confusing_only,
            budget,
            cap,
            full,
        } => cmd_enumerate(&graph, non_confusing_only, budget, cap, full),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

#[derive(Serialize)]
struct TreeJson {
    vertex: String,
    edges: Vec<[String; 2]>,
}

#[derive(Serialize)]
struct TableJson {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct BuildJson {
    root: String,
    trees: Vec<TreeJson>,
    table: TableJson,
}

fn table_json(t: &OperationTable) -> TableJson {
    let n = t.size();
    TableJson {
        header: t.labels().to_vec(),
        rows: (0..n)
            .map(|u| (0..n).map(|v| t.label(t.get(u, v)).to_string()).collect())
            .collect(),
    }
}

fn cmd_build(
    graph_path: &PathBuf,
    root: Option<&str>,
    tree_path: Option<&PathBuf>,
    format: Format,
    dot: bool,
) -> Result<u8, Failure> {
    let g = Graph::parse(&read(graph_path)?)?;
    let mut root_idx = root
        .map(|label| {
            g.index_of(label)
                .ok_or_else(|| fail(2, format!("unknown root vertex `{label}`")))
        })
        .transpose()?;
    let seed: Option<SpanningTree> = match tree_path {
        None => None,
        Some(path) => {
            let mut blocks = parse_tree_blocks(&g, &read(path)?)?;
            if blocks.len() != 1 {
                return Err(fail(4, "seed file must contain exactly one tree block"));
            }
            let (block_root, tree) = blocks.remove(0);
            match root_idx {
                Some(r) if r != block_root => {
                    return Err(fail(
                        4,
                        format!(
                            "--root {} does not match the seed block for `{}`",
                            g.label(r),
                            g.label(block_root)
                        ),
                    ));
                }
                _ => root_idx = Some(block_root),
            }
            Some(tree)
        }
    };
    let (family, table) = construct_smooth(&g, root_idx, seed)?;
    let root_label = g.label(root_idx.unwrap_or(0)).to_string();
    match format {
        Format::Json => {
            let out = BuildJson {
                root: root_label,
                trees: family
                    .trees()
                    .iter()
                    .enumerate()
                    .map(|(v, t)| TreeJson {
                        vertex: g.label(v).to_string(),
                        edges: t
                            .edges()
                            .iter()
                            .map(|&(a, b)| [g.label(a).to_string(), g.label(b).to_string()])
                            .collect(),
                    })
                    .collect(),
                table: table_json(&table),
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
        Format::Text => {
            println!("root {root_label}");
            if dot {
                print!("{}", family_dot(&g, &family));
            } else {
                print!("{}", family.to_text(&g));
            }
            println!();
            println!("table");
            print!("{}", table.to_text());
        }
    }
    Ok(0)
}

fn family_dot(g: &Graph, family: &TreeFamily) -> String {
    let mut out = String::new();
    for (v, t) in family.trees().iter().enumerate() {
        out.push_str(&format!("graph tree_{} {{\n", v + 1));
        out.push_str(&format!("  // tree of \"{}\"\n", g.label(v)));
        for &(a, b) in t.edges() {
            out.push_str(&format!("  \"{}\" -- \"{}\";\n", g.label(a), g.label(b)));
        }
        out.push_str("}\n");
    }
    out
}

fn cmd_verify(table_path: &PathBuf, format: Format) -> Result<u8, Failure> {
    let table = OperationTable::parse(&read(table_path)?)?;
    let report = axiom_report(&table);
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report.view()).expect("serializable")
        ),
    }
    Ok(if report.is_travel && report.is_smooth { 0 } else { 1 })
}

fn cmd_path(
    table_path: &PathBuf,
    from: &str,
    to: &str,
    max_steps: Option<usize>,
) -> Result<u8, Failure> {
    let table = OperationTable::parse(&read(table_path)?)?;
    let u = table
        .index_of(from)
        .ok_or_else(|| fail(2, format!("unknown vertex `{from}`")))?;
    let v = table
        .index_of(to)
        .ok_or_else(|| fail(2, format!("unknown vertex `{to}`")))?;
    let walk = table.walk(u, v, max_steps.unwrap_or(table.size()));
    let labels: Vec<&str> = walk.sequence.iter().map(|&w| table.label(w)).collect();
    let suffix = if walk.terminated && walk.is_path {
        "(path)"
    } else if !walk.terminated {
        "(no path within bound)"
    } else {
        "(walk, not a path)"
    };
    println!("{} {}", labels.join(" "), suffix);
    Ok(0)
}

fn cmd_count(graph_path: &PathBuf, cap: usize) -> Result<u8, Failure> {
    let g = Graph::parse(&read(graph_path)?)?;
    println!("vertex v_spanning_trees");
    let mut product: u128 = 1;
    for v in 0..g.vertex_count() {
        let count = count_v_spanning_trees(&g, v, cap)?;
        println!("{} {}", g.label(v), count);
        product = product.saturating_mul(count as u128);
    }
    println!("product {product}");
    Ok(0)
}

fn cmd_enumerate(
    graph_path: &PathBuf,
    non_confusing_only: bool,
    budget: u128,
    cap: usize,
    full: bool,
) -> Result<u8, Failure> {
    let g = Graph::parse(&read(graph_path)?)?;
    let tables = enumerate_travel_groupoids(&g, budget)?;
    let report = verify_counting_theorem(&g, budget, cap)?;
    println!(
        "graph: {} vertices, {} edges, candidate space {}",
        g.vertex_count(),
        g.edge_count(),
        candidate_space(&g)
    );
    let mut listed = 0usize;
    for t in &tables {
        let nc = is_non_confusing(t);
        if non_confusing_only && !nc {
            continue;
        }
        listed += 1;
        let r = axiom_report(t);
        let yn = |b: bool| if b { "yes" } else { "no" };
        println!(
            "table {} digest={} travel={} simple={} smooth={} non_confusing={}",
            listed,
            t.digest(),
            yn(r.is_travel),
            yn(r.is_simple),
            yn(r.is_smooth),
            yn(r.is_non_confusing)
        );
        if full {
            print!("{}", t.to_text());
        }
    }
    println!(
        "total travel={} non_confusing={} v_tree_product={} match={}",
        tables.len(),
        report.enumerated,
        report.product,
        if report.counts_match && report.downward_bijection {
            "yes"
        } else {
            "no"
        }
    );
    Ok(0)
}
