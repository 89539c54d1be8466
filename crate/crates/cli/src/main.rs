//! `brp`: exact broadcast-routing values on outerplanar networks, with a
//! brute-force oracle, an instance generator, and structural validation.

mod dot;
mod instance;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use brp_core::generate::random_outerplanar;
use brp_core::graph::biconnected_components;
use brp_core::oracle::{count_rooted_acyclic, oracle_k, DEFAULT_BOUND};
use brp_core::outerplanar::recognize;
use brp_core::reductions::simplify;
use brp_core::solver::{solve_brp, solve_rbrp, Solution};
use brp_core::{Error, VertexId, Weight, WeightedGraph};

use instance::InstanceFile;

#[derive(Parser)]
#[command(
    name = "brp",
    version,
    about = "Exact broadcast-routing values on outerplanar networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance exactly; prints the value and witnesses as JSON.
    Solve {
        /// Instance file (JSON).
        file: PathBuf,
        /// Root vertex name; the best root is chosen when omitted.
        #[arg(long)]
        root: Option<String>,
        /// Write the witness orientation to this path as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Brute-force reference value by enumerating every orientation.
    Oracle {
        file: PathBuf,
        /// Root vertex name; scans all roots when omitted.
        #[arg(long)]
        root: Option<String>,
        /// Largest vertex count the enumeration accepts.
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        max_n: usize,
        /// Count rooted acyclic orientations instead of solving.
        #[arg(long)]
        count: bool,
    },
    /// Generate a random outerplanar instance as JSON on stdout.
    Gen {
        /// Cycle length.
        #[arg(long)]
        n: usize,
        /// Number of non-crossing chords.
        #[arg(long)]
        chords: usize,
        #[arg(long)]
        seed: u64,
        /// Weights are drawn uniformly from 0..=wmax.
        #[arg(long, default_value_t = 10)]
        wmax: u64,
    },
    /// Validate an instance file and report its structure.
    Check {
        file: PathBuf,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotOuterplanar { .. } => 3,
            Error::Disconnected => 4,
            Error::OracleBound { .. } => 5,
            Error::WeightParse { .. }
            | Error::NegativeWeight(_)
            | Error::EmptyGraph
            | Error::SingleVertex
            | Error::DuplicateVertex(_)
            | Error::DuplicateEdge(_)
            | Error::UnknownEndpoint { .. }
            | Error::UnknownVertex(_)
            | Error::InvalidInput(_)
            | Error::InfeasibleChords { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::input(e.to_string())
    }
}

#[derive(Serialize)]
struct ArcOut {
    edge: String,
    tail: String,
    head: String,
}

#[derive(Serialize)]
struct ItemOut {
    coefficient: String,
    arcs: Vec<String>,
}

#[derive(Serialize)]
struct PackingOut {
    value: String,
    items: Vec<ItemOut>,
}

#[derive(Serialize)]
struct CertificateOut {
    root: String,
    deltas: Vec<String>,
    sinks: Vec<String>,
}

#[derive(Serialize)]
struct SolveOut {
    root: String,
    k: String,
    orientation: Vec<ArcOut>,
    packing: PackingOut,
    certificates: Vec<CertificateOut>,
}

fn solve_out(g: &WeightedGraph, sol: &Solution) -> SolveOut {
    SolveOut {
        root: g.name(sol.root).to_string(),
        k: sol.k.to_string(),
        orientation: g
            .edge_ids()
            .filter_map(|e| {
                let tail = sol.orientation.tail(g, e)?;
                let head = sol.orientation.head(g, e)?;
                Some(ArcOut {
                    edge: g.edge(e).name.clone(),
                    tail: g.name(tail).to_string(),
                    head: g.name(head).to_string(),
                })
            })
            .collect(),
        packing: PackingOut {
            value: sol.packing.value.to_string(),
            items: sol
                .packing
                .items
                .iter()
                .map(|item| ItemOut {
                    coefficient: item.coefficient.to_string(),
                    arcs: item.arcs.iter().map(|&e| g.edge(e).name.clone()).collect(),
                })
                .collect(),
        },
        certificates: sol
            .certificates
            .iter()
            .map(|c| CertificateOut {
                root: g.name(c.root).to_string(),
                deltas: c.deltas.iter().map(|d| d.to_string()).collect(),
                sinks: c.sinks.iter().map(|&v| g.name(v).to_string()).collect(),
            })
            .collect(),
    }
}

fn load(path: &PathBuf) -> Result<WeightedGraph, Failure> {
    let text = fs::read_to_string(path)?;
    let file: InstanceFile = serde_json::from_str(&text)?;
    Ok(file.to_graph()?)
}

fn resolve_root(g: &WeightedGraph, name: &str) -> Result<VertexId, Failure> {
    g.vertex_by_name(name)
        .ok_or_else(|| Failure::input(format!("unknown vertex {name:?}")))
}

fn run_solve(file: &PathBuf, root: Option<&str>, dot_path: Option<&PathBuf>) -> Result<(), Failure> {
    let g = load(file)?;
    let sol = match root {
        Some(name) => solve_rbrp(&g, resolve_root(&g, name)?)?,
        None => solve_brp(&g)?,
    };
    println!("{}", serde_json::to_string_pretty(&solve_out(&g, &sol))?);
    eprintln!(
        "k = {} at root {} ({} vertices, {} edges, {} blocks)",
        sol.k,
        g.name(sol.root),
        g.n(),
        g.m(),
        sol.certificates.len()
    );
    if let Some(path) = dot_path {
        fs::write(path, dot::render(&g, &sol))?;
    }
    Ok(())
}

fn run_oracle(file: &PathBuf, root: Option<&str>, max_n: usize, count: bool) -> Result<(), Failure> {
    let g = load(file)?;
    if count {
        let total = count_rooted_acyclic(&g, max_n)?;
        println!("{}", serde_json::json!({ "count": total }));
        return Ok(());
    }
    let (best_root, k) = match root {
        Some(name) => {
            let r = resolve_root(&g, name)?;
            let k = oracle_k(&g, r, max_n)?;
            (r, k)
        }
        None => {
            let mut best: Option<(VertexId, Weight)> = None;
            for r in g.vertices() {
                let k = oracle_k(&g, r, max_n)?;
                if best.as_ref().is_none_or(|(_, bk)| *bk < k) {
                    best = Some((r, k));
                }
            }
            best.ok_or_else(|| Failure::from(Error::EmptyGraph))?
        }
    };
    println!(
        "{}",
        serde_json::json!({ "root": g.name(best_root), "k": k.to_string() })
    );
    Ok(())
}

fn run_gen(n: usize, chords: usize, seed: u64, wmax: u64) -> Result<(), Failure> {
    let g = random_outerplanar(n, chords, seed, wmax)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&InstanceFile::from_graph(&g))?
    );
    eprintln!(
        "{} vertices, {} edges ({} chords), seed {}",
        g.n(),
        g.m(),
        chords,
        seed
    );
    Ok(())
}

fn run_check(file: &PathBuf) -> Result<(), Failure> {
    let g = load(file)?;
    if !g.is_connected() {
        return Err(Error::Disconnected.into());
    }
    let (simple, map) = simplify(&g);
    let (blocks, cut_vertices) = biconnected_components(&simple)?;
    for block in &blocks {
        if block.graph.m() > 1 {
            recognize(&block.graph)?;
        }
    }
    let merged = (g.m() - map.dropped_loops.len()) - simple.m();
    println!(
        "{}",
        serde_json::json!({
            "vertices": g.n(),
            "edges": g.m(),
            "dropped_loops": map.dropped_loops.len(),
            "merged_parallels": merged,
            "blocks": blocks.len(),
            "cut_vertices": cut_vertices.iter().map(|&v| g.name(v)).collect::<Vec<_>>(),
            "outerplanar": true,
        })
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve { file, root, dot } => run_solve(file, root.as_deref(), dot.as_ref()),
        Command::Oracle {
            file,
            root,
            max_n,
            count,
        } => run_oracle(file, root.as_deref(), *max_n, *count),
        Command::Gen {
            n,
            chords,
            seed,
            wmax,
        } => run_gen(*n, *chords, *seed, *wmax),
        Command::Check { file } => run_check(file),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
