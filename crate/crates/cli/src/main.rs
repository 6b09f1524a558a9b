//! `flames`: flame analysis for rooted multidigraphs.
//!
//! Exit codes: 0 success / true, 1 domain-negative (not a flame, not
//! insertable, verification failed), 2 input error, 3 internal invariant
//! breach.

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use flames_core::{
    build_order, can_insert, extract_minimal_preserver, fill_closure, insert_with_helpers,
    is_flame, lambda, largest_tight_set, max_path_system, parse_edge_ids, parse_graph,
    random_digraph, verify_layered_chain, witness_family, EdgeSet, EdgeSubset, Error, Precedence,
    RootedDigraph, StepRole, Subdigraph,
};

use output::{
    emit, ChainOut, CheckReport, CheckVertex, EdgeOut, ExtractReport, FillReport, Format,
    GraphReport, InsertReport, LayerOut, OrderReport, OrderStep, TightReport, WitnessOut,
};

#[derive(Parser)]
#[command(
    name = "flames",
    version,
    about = "Flame analysis for rooted multidigraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a graph is a flame (exit 0 yes, 1 no)
    Check {
        graph: PathBuf,
        /// Also print a maximum witness path system per vertex
        #[arg(long)]
        witness: bool,
    },
    /// Order the edges of a flame so that every prefix is a flame
    Order {
        graph: PathBuf,
        /// `lex`, `random:<seed>`, or `file:<path>` (one edge id per line)
        #[arg(long, default_value = "lex")]
        precedence: String,
        /// Re-check every prefix of the emitted order
        #[arg(long)]
        verify: bool,
    },
    /// Extract an edge-minimal subgraph preserving all root connectivities
    Extract {
        graph: PathBuf,
        /// `lex`, `random:<seed>`, or `file:<path>`
        #[arg(long, default_value = "lex")]
        deletion_order: String,
    },
    /// Smallest fillable superset of a vertex set
    Fill {
        graph: PathBuf,
        /// Comma-separated vertex tokens
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
    },
    /// Largest tight set of a vertex
    Tight {
        graph: PathBuf,
        #[arg(long)]
        vertex: String,
    },
    /// Test flame-preserving insertion of one edge into an edge subset
    Insert {
        graph: PathBuf,
        /// Edge-subset file holding the current flame
        #[arg(long)]
        flame: PathBuf,
        /// Edge id to insert
        #[arg(long)]
        edge: String,
        /// Emit a helper-assisted insertion sequence instead of a yes/no
        #[arg(long)]
        with_helpers: bool,
    },
    /// Generate a seeded random graph
    Gen {
        #[arg(long)]
        vertices: usize,
        #[arg(long, default_value_t = 0)]
        edges: usize,
        #[arg(long)]
        seed: u64,
        /// Post-process into a flame via minimal-preserver extraction
        #[arg(long)]
        flame: bool,
    },
    /// Verify a layered chain of edge subsets
    VerifyChain {
        graph: PathBuf,
        /// Comma-separated list of edge-subset files, one per layer
        #[arg(long, value_delimiter = ',', required = true)]
        layers: Vec<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = exit_code_for(&err);
            if code == 3 {
                eprintln!("this is a bug: an internal invariant broke; please report it together with the input");
            }
            process::exit(code);
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(core) if core.is_internal() => 3,
        Some(
            Error::NotAFlame
            | Error::NotWitnessable(_)
            | Error::NotFillable
            | Error::DoesNotEnterTight(_),
        ) => 1,
        _ => 2,
    }
}

fn load_graph(path: &Path) -> Result<RootedDigraph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read graph file `{}`", path.display()))?;
    Ok(parse_graph(&text)?)
}

fn load_edge_ids(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read edge-subset file `{}`", path.display()))?;
    Ok(parse_edge_ids(&text)?)
}

fn parse_precedence(d: &RootedDigraph, spec: &str) -> Result<Precedence> {
    if spec == "lex" {
        return Ok(Precedence::lexicographic(d));
    }
    if let Some(seed) = spec.strip_prefix("random:") {
        let seed: u64 = seed
            .parse()
            .with_context(|| format!("bad seed in precedence `{spec}`"))?;
        return Ok(Precedence::seeded(d, seed));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let ids = load_edge_ids(Path::new(path))?;
        let sequence = ids
            .iter()
            .map(|id| {
                d.edge_by_name(id)
                    .ok_or_else(|| Error::UnknownEdge(id.clone()))
            })
            .collect::<flames_core::Result<Vec<_>>>()?;
        return Ok(Precedence::from_sequence(d, &sequence)?);
    }
    bail!("unknown precedence `{spec}` (expected lex, random:<seed>, or file:<path>)")
}

fn role_name(role: StepRole) -> String {
    match role {
        StepRole::Target => "target".to_string(),
        StepRole::Helper => "helper".to_string(),
    }
}

fn run(cli: Cli) -> Result<i32> {
    let format = cli.format;
    match cli.command {
        Command::Check { graph, witness } => {
            let d = load_graph(&graph)?;
            let mut vertices = Vec::new();
            let mut flame = true;
            for v in d.non_root_vertices() {
                let indegree = d.indegree(v);
                let lam = lambda(&d, v);
                flame &= lam == indegree;
                vertices.push(CheckVertex {
                    name: d.vertex_name(v).to_string(),
                    indegree,
                    lambda: lam,
                    full: lam == indegree,
                });
            }
            let witnesses = witness.then(|| {
                d.non_root_vertices()
                    .map(|v| WitnessOut {
                        target: d.vertex_name(v).to_string(),
                        paths: max_path_system(&d, v)
                            .paths()
                            .iter()
                            .map(|p| {
                                p.edges()
                                    .iter()
                                    .map(|&e| d.edge_name(e).to_string())
                                    .collect()
                            })
                            .collect(),
                    })
                    .collect()
            });
            let report = CheckReport {
                flame,
                vertices,
                witnesses,
            };
            emit(format, &report, || report.render());
            Ok(if flame { 0 } else { 1 })
        }

        Command::Order {
            graph,
            precedence,
            verify,
        } => {
            let d = load_graph(&graph)?;
            let prec = parse_precedence(&d, &precedence)?;
            let order = build_order(&d, &prec)?;
            let verified = if verify {
                let mut cur = EdgeSubset::empty(&d);
                for step in &order.steps {
                    cur.insert(step.edge);
                    if !is_flame(&cur) {
                        return Err(Error::Internal(format!(
                            "prefix ending at `{}` is not a flame",
                            d.edge_name(step.edge)
                        ))
                        .into());
                    }
                }
                Some(true)
            } else {
                None
            };
            let report = OrderReport {
                order: order
                    .steps
                    .iter()
                    .map(|s| OrderStep {
                        edge: d.edge_name(s.edge).to_string(),
                        role: role_name(s.role),
                    })
                    .collect(),
                verified,
            };
            emit(format, &report, || report.render());
            Ok(0)
        }

        Command::Extract {
            graph,
            deletion_order,
        } => {
            let d = load_graph(&graph)?;
            let prec = parse_precedence(&d, &deletion_order)?;
            let kept = extract_minimal_preserver(&d, &prec)?;
            let report = ExtractReport {
                edges: kept
                    .members()
                    .iter()
                    .map(|&e| d.edge_name(e).to_string())
                    .collect(),
            };
            emit(format, &report, || report.render());
            Ok(0)
        }

        Command::Fill { graph, set } => {
            let d = load_graph(&graph)?;
            let x = d.vertex_set_from_names(set.iter().map(String::as_str))?;
            let closure = fill_closure(&d, &x)?;
            let report = FillReport {
                set: set.clone(),
                closure: closure
                    .iter()
                    .map(|&v| d.vertex_name(v).to_string())
                    .collect(),
            };
            emit(format, &report, || report.render());
            Ok(0)
        }

        Command::Tight { graph, vertex } => {
            let d = load_graph(&graph)?;
            let v = d
                .vertex_by_name(&vertex)
                .ok_or(Error::UnknownVertex(vertex.clone()))?;
            let result = largest_tight_set(&d, v)?;
            let report = TightReport {
                vertex,
                tight_set: result
                    .tight_set
                    .iter()
                    .map(|&w| d.vertex_name(w).to_string())
                    .collect(),
                cut: result
                    .cut
                    .iter()
                    .map(|&e| d.edge_name(e).to_string())
                    .collect(),
            };
            emit(format, &report, || report.render());
            Ok(0)
        }

        Command::Insert {
            graph,
            flame,
            edge,
            with_helpers,
        } => {
            let d = load_graph(&graph)?;
            let ids = load_edge_ids(&flame)?;
            let members: EdgeSet = d.edge_set_from_names(ids.iter().map(String::as_str))?;
            let subset = EdgeSubset::new(&d, members)?;
            let e = d
                .edge_by_name(&edge)
                .ok_or(Error::UnknownEdge(edge.clone()))?;
            if with_helpers {
                let w = witness_family(&d)?;
                let sequence = insert_with_helpers(&subset, e, &w)?;
                let last = sequence.len() - 1;
                let report = InsertReport {
                    edge,
                    insertable: true,
                    sequence: Some(
                        sequence
                            .iter()
                            .enumerate()
                            .map(|(i, &ed)| OrderStep {
                                edge: d.edge_name(ed).to_string(),
                                role: role_name(if i == last {
                                    StepRole::Target
                                } else {
                                    StepRole::Helper
                                }),
                            })
                            .collect(),
                    ),
                };
                emit(format, &report, || report.render());
                Ok(0)
            } else {
                let insertable = can_insert(&subset, e)?;
                let report = InsertReport {
                    edge,
                    insertable,
                    sequence: None,
                };
                emit(format, &report, || report.render());
                Ok(if insertable { 0 } else { 1 })
            }
        }

        Command::Gen {
            vertices,
            edges,
            seed,
            flame,
        } => {
            let d = random_digraph(vertices, edges, seed);
            let kept: EdgeSet = if flame {
                extract_minimal_preserver(&d, &Precedence::lexicographic(&d))?
                    .members()
                    .clone()
            } else {
                d.edges().collect()
            };
            let report = GraphReport {
                root: d.vertex_name(d.root()).to_string(),
                edges: kept
                    .iter()
                    .map(|&e| {
                        let rec = d.edge_record(e);
                        EdgeOut {
                            id: rec.id,
                            tail: rec.tail,
                            head: rec.head,
                        }
                    })
                    .collect(),
            };
            emit(format, &report, || report.render());
            Ok(0)
        }

        Command::VerifyChain { graph, layers } => {
            let d = load_graph(&graph)?;
            let mut layer_sets = Vec::with_capacity(layers.len());
            for path in &layers {
                let ids = load_edge_ids(path)?;
                layer_sets.push(d.edge_set_from_names(ids.iter().map(String::as_str))?);
            }
            let chain = verify_layered_chain(&d, &layer_sets)?;
            let report = ChainOut {
                pass: chain.pass(),
                layers: chain
                    .layers
                    .iter()
                    .map(|l| LayerOut {
                        index: l.index,
                        flame: l.flame,
                        connectivity: l.connectivity,
                        branching: l.branching,
                        spanning_arborescence: l.spanning_arborescence,
                        pass: l.pass(),
                    })
                    .collect(),
            };
            emit(format, &report, || report.render());
            Ok(if chain.pass() { 0 } else { 1 })
        }
    }
}
