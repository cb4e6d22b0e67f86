use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use spack_core::colorer::{color_graph, ColorError, ColorOptions, ColorRun, DEFAULT_RESTARTS};
use spack_core::exact::{chi_rho, decide, ChiRho, DecisionStatus, DEFAULT_NODE_BUDGET};
use spack_core::graph::Graph;
use spack_core::io::{
    encode_graph, encode_graph6, generate, read_colorings, read_graphs, ColoringDocument, Family,
    FamilyName, GraphFormat, InputError,
};
use spack_core::verify::{derive_subdivision_coloring, verify, PackingSequence};

const OK: u8 = 0;
const FAILED: u8 = 1;
const BAD_INPUT: u8 = 2;
const UNDECIDED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "spack",
    version,
    about = "(1,1,2,2)-packing colorings of subcubic graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Graph file, or `-` for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    /// Input format; guessed from the first line when omitted.
    #[arg(long)]
    format: Option<GraphFormat>,
}

#[derive(Subcommand)]
enum Command {
    /// Color every input graph with classes 1_a, 1_b, 2_a, 2_b.
    Color {
        #[command(flatten)]
        input: Input,
        /// Hand cubic components (and stuck runs) to the exact search.
        #[arg(long)]
        fallback_exact: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        exact_budget: u64,
        /// Cap on committed moves per exchange run.
        #[arg(long)]
        max_moves: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: u32,
        /// Log every committed move on stderr.
        #[arg(long)]
        trace: bool,
        /// Emit self-contained documents that carry the graph in graph6.
        #[arg(long)]
        json: bool,
    },
    /// Check colorings against graphs; violations are printed as a JSON list.
    Verify {
        #[arg(long, default_value = "-")]
        graph: String,
        #[arg(long, default_value = "-")]
        coloring: String,
        #[arg(long)]
        format: Option<GraphFormat>,
    },
    /// Decide whether each input graph has a packing coloring for a radius sequence.
    Exact {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        seq: PackingSequence,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Packing chromatic number, searched up to `max_k`.
    ChiRho {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_k: u32,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Subdivide every edge; with a (1,1,2,2) coloring, also lift it to (1,2,3,4,5).
    Subdivide {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        with_coloring: Option<String>,
    },
    /// Generate a graph of a test family.
    Gen {
        #[arg(long)]
        family: FamilyName,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Edge target for random-subcubic; defaults to about 1.25 n.
        #[arg(long)]
        m: Option<usize>,
        /// Reject cubic results (random-subcubic).
        #[arg(long)]
        non_cubic: bool,
        #[arg(long, env = "SPACK_SEED", default_value_t = 0)]
        seed: u64,
        /// Number of graphs, using consecutive seeds.
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value = "g6")]
        format: GraphFormat,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("coloring JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

fn read_source(path: &str) -> Result<String, CliError> {
    let wrap = |source| CliError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(wrap)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(wrap)
    }
}

fn load_graphs(input: &Input) -> Result<Vec<Graph>, CliError> {
    Ok(read_graphs(&read_source(&input.input)?, input.format)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Color {
            input,
            fallback_exact,
            exact_budget,
            max_moves,
            restarts,
            trace,
            json,
        } => {
            let options = ColorOptions {
                fallback_exact,
                exact_budget,
                max_moves,
                restarts,
                ..ColorOptions::default()
            };
            load_graphs(&input).map(|graphs| run_color(&graphs, &options, trace, json))
        }
        Command::Verify {
            graph,
            coloring,
            format,
        } => run_verify(&graph, &coloring, format),
        Command::Exact { input, seq, budget } => {
            load_graphs(&input).map(|graphs| run_exact(&graphs, &seq, budget))
        }
        Command::ChiRho {
            input,
            max_k,
            budget,
        } => load_graphs(&input).map(|graphs| run_chi_rho(&graphs, max_k, budget)),
        Command::Subdivide {
            input,
            with_coloring,
        } => run_subdivide(&input, with_coloring.as_deref()),
        Command::Gen {
            family,
            n,
            m,
            non_cubic,
            seed,
            count,
            format,
        } => run_gen(family, n, m, non_cubic, seed, count, format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("spack: {e}");
            ExitCode::from(BAD_INPUT)
        }
    }
}

fn emit(lines: &[String]) {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for line in lines {
        // a closed pipe downstream is not our failure
        if writeln!(out, "{line}").is_err() {
            return;
        }
    }
}

fn run_color(graphs: &[Graph], options: &ColorOptions, trace: bool, json: bool) -> u8 {
    let results: Vec<Result<ColorRun, ColorError>> =
        graphs.par_iter().map(|g| color_graph(g, options)).collect();
    let mut lines = Vec::new();
    let mut code = OK;
    for (index, (g, result)) in graphs.iter().zip(results).enumerate() {
        match result {
            Ok(run) => {
                if trace {
                    for (c, component) in run.components.iter().enumerate() {
                        for entry in &component.trace {
                            eprintln!("graph {index} component {c}: {entry}");
                        }
                    }
                }
                if json {
                    lines.push(ColoringDocument::with_graph(g, run.coloring).to_json());
                } else {
                    lines.push(run.coloring.to_json());
                }
            }
            Err(ColorError::CubicComponents(failures)) => {
                code = code.max(FAILED);
                for f in &failures {
                    eprintln!(
                        "graph {index}: cubic component {:?} not colored ({})",
                        f.vertices, f.reason
                    );
                }
                if json {
                    let report =
                        json!({ "graph6": encode_graph6(g), "cubic_components": failures });
                    lines.push(report.to_string());
                }
            }
            Err(ColorError::NotSubcubic(e)) => {
                eprintln!("graph {index}: {e}");
                code = BAD_INPUT;
            }
            Err(e) => {
                eprintln!("graph {index}: {e}");
                code = code.max(FAILED);
            }
        }
    }
    emit(&lines);
    code
}

fn run_verify(
    graph_path: &str,
    coloring_path: &str,
    format: Option<GraphFormat>,
) -> Result<u8, CliError> {
    let pairs: Vec<(Graph, ColoringDocument)> = if graph_path == "-" && coloring_path == "-" {
        // one stream carrying self-contained documents
        let docs = read_colorings(&read_source("-")?)?;
        let mut pairs = Vec::with_capacity(docs.len());
        for (i, doc) in docs.into_iter().enumerate() {
            let g = doc
                .graph()
                .ok_or_else(|| CliError::Usage(format!("document {i} has no graph6 field")))?
                .map_err(|e| CliError::Usage(format!("document {i}: {e}")))?;
            pairs.push((g, doc));
        }
        pairs
    } else {
        let graphs = read_graphs(&read_source(graph_path)?, format)?;
        let docs = read_colorings(&read_source(coloring_path)?)?;
        if graphs.len() != docs.len() {
            return Err(CliError::Usage(format!(
                "{} graphs but {} colorings",
                graphs.len(),
                docs.len()
            )));
        }
        graphs.into_iter().zip(docs).collect()
    };
    if pairs.is_empty() {
        return Err(CliError::Usage("no coloring to verify".into()));
    }
    let mut code = OK;
    let mut lines = Vec::new();
    for (i, (g, doc)) in pairs.iter().enumerate() {
        let problems = match verify(g, &doc.coloring) {
            Ok(()) => Vec::new(),
            Err(report) => {
                code = FAILED;
                eprint!("coloring {i}:\n{report}");
                report.problems()
            }
        };
        lines.push(serde_json::to_string(&problems)?);
    }
    emit(&lines);
    Ok(code)
}

fn run_exact(graphs: &[Graph], seq: &PackingSequence, budget: u64) -> u8 {
    let outcomes: Vec<_> = graphs.par_iter().map(|g| decide(g, seq, budget)).collect();
    let mut lines = Vec::new();
    let mut code = OK;
    for outcome in outcomes {
        eprintln!("{} nodes explored", outcome.nodes_explored);
        match outcome.status {
            DecisionStatus::Sat(c) => {
                lines.push("SAT".to_string());
                lines.push(c.to_json());
            }
            DecisionStatus::Unsat => {
                lines.push("UNSAT".to_string());
                code = code.max(FAILED);
            }
            DecisionStatus::BudgetExceeded => {
                lines.push("BUDGET".to_string());
                code = UNDECIDED;
            }
        }
    }
    emit(&lines);
    code
}

fn run_chi_rho(graphs: &[Graph], max_k: u32, budget: u64) -> u8 {
    let values: Vec<_> = graphs
        .par_iter()
        .map(|g| chi_rho(g, max_k, budget))
        .collect();
    let mut code = OK;
    let lines: Vec<String> = values
        .into_iter()
        .map(|v| match v {
            ChiRho::Known { k, .. } => k.to_string(),
            ChiRho::Unknown => {
                code = UNDECIDED;
                "UNKNOWN".to_string()
            }
        })
        .collect();
    emit(&lines);
    code
}

fn run_subdivide(input: &Input, coloring_path: Option<&str>) -> Result<u8, CliError> {
    if input.input == "-" && coloring_path == Some("-") {
        return Err(CliError::Usage(
            "graph and coloring cannot both come from stdin".into(),
        ));
    }
    let graphs = load_graphs(input)?;
    let docs = match coloring_path {
        Some(path) => {
            let docs = read_colorings(&read_source(path)?)?;
            if docs.len() != graphs.len() {
                return Err(CliError::Usage(format!(
                    "{} graphs but {} colorings",
                    graphs.len(),
                    docs.len()
                )));
            }
            Some(docs)
        }
        None => None,
    };
    let mut lines = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        match &docs {
            None => lines.push(encode_graph6(&g.subdivide().graph)),
            Some(docs) => {
                let (sub, derived) = derive_subdivision_coloring(g, &docs[i].coloring)
                    .map_err(|e| CliError::Usage(format!("coloring {i}: {e}")))?;
                lines.push(encode_graph6(&sub.graph));
                lines.push(derived.to_json());
            }
        }
    }
    emit(&lines);
    Ok(OK)
}

fn run_gen(
    name: FamilyName,
    n: usize,
    m: Option<usize>,
    non_cubic: bool,
    seed: u64,
    count: u64,
    format: GraphFormat,
) -> Result<u8, CliError> {
    let family = Family::from_name(name, n, m, non_cubic);
    let mut lines = Vec::new();
    for i in 0..count {
        let g =
            generate(family, seed.wrapping_add(i)).map_err(|e| CliError::Usage(e.to_string()))?;
        lines.push(encode_graph(&g, format).trim_end().to_string());
    }
    emit(&lines);
    Ok(OK)
}
