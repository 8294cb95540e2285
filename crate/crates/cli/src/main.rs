//! The `qlan` command line: build QLAN resource states, run topology
//! procedures, plan demands, verify the rewrite rules against the
//! stabilizer oracle, and export graphs as JSON or DOT.
//!
//! Every command is a thin wrapper over `qlan-core`; no domain logic
//! lives here. Output is deterministic: identical invocations produce
//! byte-identical artifacts. Exit codes: 0 success, 1 domain error
//! (including failed checks), 2 usage error.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qlan_core::io::{graph_to_dot, state_to_dot, GraphDoc, ReductionDoc, ReportDoc};
use qlan_core::model::{build_chain_state, build_tree_like_state, build_tree_like_state_padded};
use qlan_core::oracle::{enumerate_graphs, sample_graphs, valid_steps, verify_rule};
use qlan_core::topology::{
    lc_reduce_enhanced_ring, min_vertex_cover, plan_for_demand, roll,
    schmidt_measure_enhanced_ring, to_bus, to_enhanced_ring, Demand, TopologyReport,
};
use qlan_core::{Graph, MeasurementPlan, OracleLimits, QlanState, VertexId};

#[derive(Parser)]
#[command(
    name = "qlan",
    version,
    about = "Graph-state topology machinery for quantum LANs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a resource state.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Apply a measurement plan to a graph or state document.
    Measure {
        /// Graph document (JSON) path, or - for standard input.
        #[arg(long, value_name = "PATH")]
        input: String,
        /// Measurement plan (JSON) path, or - for standard input.
        #[arg(long, value_name = "PATH")]
        plan: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Collapse a chain state into the client bus (a path).
    Bus {
        #[command(flatten)]
        source: StateSource,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Split a chain state into disjoint client pairs.
    Epr {
        #[command(flatten)]
        source: StateSource,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Link two clients by entanglement rolling.
    Roll {
        #[command(flatten)]
        source: StateSource,
        /// First client vertex id.
        #[arg(long)]
        ci: VertexId,
        /// Second client vertex id.
        #[arg(long)]
        cj: VertexId,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Measure every orchestrator in Y, producing the enhanced ring.
    Ring {
        #[command(flatten)]
        source: StateSource,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Reduce the enhanced ring to its sparse representative.
    Reduce {
        #[command(flatten)]
        source: StateSource,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Bracket the Schmidt measure of the enhanced ring.
    Schmidt {
        #[command(flatten)]
        source: StateSource,
        #[command(flatten)]
        out: JsonOutputOpts,
    },
    /// Pauli persistency (minimum vertex cover) of a graph document.
    Persistency {
        /// Graph document (JSON) path, or - for standard input.
        #[arg(long, value_name = "PATH")]
        input: String,
        #[command(flatten)]
        out: JsonOutputOpts,
    },
    /// Compile a demand of client pairs into one measurement plan.
    Plan {
        #[command(flatten)]
        source: StateSource,
        /// Demand document (JSON) path, or - for standard input.
        #[arg(long, value_name = "PATH")]
        demand: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Verify the rewrite rules against the stabilizer oracle.
    Verify {
        /// Largest vertex count to check.
        #[arg(long = "n-max", value_name = "N", default_value_t = 4)]
        n_max: usize,
        /// Check every graph on 1..=n-max vertices.
        #[arg(long)]
        exhaustive: bool,
        /// Check this many seeded random graphs on n-max vertices.
        #[arg(long, value_name = "COUNT", conflicts_with = "exhaustive")]
        samples: Option<usize>,
        /// Seed for --samples.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: JsonOutputOpts,
    },
    /// Re-emit a graph document as normalized JSON or DOT.
    Export {
        /// Graph document (JSON) path, or - for standard input.
        #[arg(long, value_name = "PATH")]
        input: String,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Subcommand)]
enum BuildKind {
    /// Chain state: k clients, k-1 orchestrators of two clients each.
    Chain {
        /// Number of clients (at least 2).
        #[arg(long)]
        k: usize,
    },
    /// Tree-like state: stars of k_c clients sharing k_b_min bridges.
    Tree {
        /// Clients per star.
        #[arg(long)]
        kc: usize,
        /// Shared clients between consecutive stars.
        #[arg(long)]
        kbmin: usize,
        /// Number of stars.
        #[arg(long = "no")]
        stars: usize,
    },
    /// Smallest tree-like state serving k clients, padded with
    /// fictitious clients.
    Padded {
        /// Number of real clients.
        #[arg(long)]
        k: usize,
        /// Clients per star.
        #[arg(long)]
        kc: usize,
        /// Shared clients between consecutive stars.
        #[arg(long)]
        kbmin: usize,
    },
}

/// Where a command gets its QLAN state: a document, chain parameters,
/// or tree parameters.
#[derive(Args)]
struct StateSource {
    /// State document (JSON) path, or - for standard input.
    #[arg(long, value_name = "PATH")]
    input: Option<String>,
    /// Build a chain state with this many clients.
    #[arg(long, value_name = "K")]
    k: Option<usize>,
    /// Clients per star of a tree-like state.
    #[arg(long, value_name = "KC")]
    kc: Option<usize>,
    /// Shared clients between consecutive stars.
    #[arg(long, value_name = "KB")]
    kbmin: Option<usize>,
    /// Number of stars.
    #[arg(long = "no", value_name = "NO")]
    stars: Option<usize>,
}

impl StateSource {
    fn resolve(&self) -> Result<QlanState, CliError> {
        match (&self.input, self.k, self.kc, self.kbmin, self.stars) {
            (Some(path), None, None, None, None) => {
                let doc: GraphDoc = parse_json(&read_source(path)?)?;
                doc.to_state().map_err(domain)
            }
            (None, Some(k), None, None, None) => build_chain_state(k).map_err(domain),
            (None, None, Some(kc), Some(kb), Some(stars)) => {
                build_tree_like_state(kc, kb, stars).map_err(domain)
            }
            _ => Err(CliError::Usage(
                "give exactly one state source: --input PATH, --k K, or --kc/--kbmin/--no".into(),
            )),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Full JSON document.
    Json,
    /// DOT rendering of the subject graph (lossy).
    Dot,
}

#[derive(Args)]
struct OutputOpts {
    /// Write output here instead of standard output.
    #[arg(long, value_name = "PATH", global = true)]
    output: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Args)]
struct JsonOutputOpts {
    /// Write output here instead of standard output.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Domain(String),
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

fn read_source(source: &str) -> Result<String, CliError> {
    if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Domain(format!("reading standard input: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(source).map_err(|e| CliError::Domain(format!("reading {source}: {e}")))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Domain(format!("parsing JSON: {e}")))
}

fn json_pretty<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    text
}

fn write_out(path: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| CliError::Domain(format!("writing {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn emit_state(state: &QlanState, out: &OutputOpts) -> Result<(), CliError> {
    let content = match out.format {
        Format::Json => json_pretty(&GraphDoc::from_state(state)),
        Format::Dot => state_to_dot(state),
    };
    write_out(&out.output, &content)
}

fn emit_report(report: &TopologyReport, out: &OutputOpts) -> Result<(), CliError> {
    let content = match out.format {
        Format::Json => json_pretty(&ReportDoc::from(report)),
        Format::Dot => graph_to_dot(&report.final_graph),
    };
    write_out(&out.output, &content)?;
    if report.passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        Err(CliError::Domain(format!(
            "checks failed: {}",
            failed.join(", ")
        )))
    }
}

fn oracle_limits_from_env() -> Result<OracleLimits, CliError> {
    let mut limits = OracleLimits::default();
    for (name, slot) in [
        ("QLAN_DENSE_CAP", &mut limits.dense_cap),
        ("QLAN_ORBIT_CAP", &mut limits.orbit_cap),
    ] {
        if let Ok(raw) = std::env::var(name) {
            *slot = raw
                .parse()
                .map_err(|_| CliError::Usage(format!("{name} must be an integer, got {raw:?}")))?;
        }
    }
    Ok(limits)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Build { kind, out } => {
            let state = match kind {
                BuildKind::Chain { k } => build_chain_state(k).map_err(domain)?,
                BuildKind::Tree { kc, kbmin, stars } => {
                    build_tree_like_state(kc, kbmin, stars).map_err(domain)?
                }
                BuildKind::Padded { k, kc, kbmin } => {
                    build_tree_like_state_padded(k, kc, kbmin).map_err(domain)?
                }
            };
            emit_state(&state, &out)
        }
        Command::Measure { input, plan, out } => {
            if input == "-" && plan == "-" {
                return Err(CliError::Usage(
                    "--input and --plan cannot both read standard input".into(),
                ));
            }
            let doc: GraphDoc = parse_json(&read_source(&input)?)?;
            let graph = doc.to_graph().map_err(domain)?;
            let plan: MeasurementPlan = parse_json(&read_source(&plan)?)?;
            plan.validate().map_err(domain)?;
            let (final_graph, trajectory) = plan.apply(&graph).map_err(domain)?;
            let initial = if doc.roles.is_some() {
                GraphDoc::from_state(&doc.to_state().map_err(domain)?)
            } else {
                GraphDoc::from_graph(&graph)
            };
            let report = ReportDoc {
                initial,
                plan,
                final_graph: GraphDoc::from_graph(&final_graph),
                trajectory: trajectory.iter().map(GraphDoc::from_graph).collect(),
                checks: Vec::new(),
                notes: Vec::new(),
            };
            let content = match out.format {
                Format::Json => json_pretty(&report),
                Format::Dot => graph_to_dot(&final_graph),
            };
            write_out(&out.output, &content)
        }
        Command::Bus { source, out } => {
            let state = source.resolve()?;
            emit_report(&to_bus(&state).map_err(domain)?, &out)
        }
        Command::Epr { source, out } => {
            let state = source.resolve()?;
            emit_report(
                &qlan_core::topology::extract_epr_pairs(&state).map_err(domain)?,
                &out,
            )
        }
        Command::Roll {
            source,
            ci,
            cj,
            out,
        } => {
            let state = source.resolve()?;
            emit_report(&roll(&state, ci, cj).map_err(domain)?, &out)
        }
        Command::Ring { source, out } => {
            let state = source.resolve()?;
            emit_report(&to_enhanced_ring(&state).map_err(domain)?, &out)
        }
        Command::Reduce { source, out } => {
            let state = source.resolve()?;
            let reduction = lc_reduce_enhanced_ring(&state).map_err(domain)?;
            let content = match out.format {
                Format::Json => json_pretty(&ReductionDoc::new(&reduction, None)),
                Format::Dot => graph_to_dot(&reduction.reduced),
            };
            write_out(&out.output, &content)
        }
        Command::Schmidt { source, out } => {
            let state = source.resolve()?;
            let bounds = schmidt_measure_enhanced_ring(&state).map_err(domain)?;
            let summary = serde_json::json!({
                "lower": bounds.lower,
                "upper": bounds.upper,
                "exact": bounds.exact(),
            });
            write_out(&out.output, &json_pretty(&summary))
        }
        Command::Persistency { input, out } => {
            let doc: GraphDoc = parse_json(&read_source(&input)?)?;
            let graph: Graph = doc.to_graph().map_err(domain)?;
            let (size, cover) = min_vertex_cover(&graph).map_err(domain)?;
            let summary = serde_json::json!({
                "persistency": size,
                "cover": cover,
            });
            write_out(&out.output, &json_pretty(&summary))
        }
        Command::Plan {
            source,
            demand,
            out,
        } => {
            if source.input.as_deref() == Some("-") && demand == "-" {
                return Err(CliError::Usage(
                    "--input and --demand cannot both read standard input".into(),
                ));
            }
            let state = source.resolve()?;
            let demand: Demand = parse_json(&read_source(&demand)?)?;
            emit_report(&plan_for_demand(&state, &demand).map_err(domain)?, &out)
        }
        Command::Verify {
            n_max,
            exhaustive,
            samples,
            seed,
            out,
        } => {
            let limits = oracle_limits_from_env()?;
            let graphs: Vec<Graph> = if exhaustive {
                let mut all = Vec::new();
                for n in 1..=n_max {
                    all.extend(enumerate_graphs(n).map_err(domain)?);
                }
                all
            } else if let Some(count) = samples {
                sample_graphs(n_max, count, seed).map_err(domain)?
            } else {
                return Err(CliError::Usage(
                    "choose a verification mode: --exhaustive or --samples COUNT".into(),
                ));
            };
            let mut steps = 0usize;
            let mut branches = 0usize;
            let mut skipped = 0usize;
            let mut failures: Vec<String> = Vec::new();
            for g in &graphs {
                for step in valid_steps(g) {
                    let verdict = verify_rule(g, &step, &limits).map_err(domain)?;
                    steps += 1;
                    for b in &verdict.branches {
                        branches += 1;
                        if b.skipped {
                            skipped += 1;
                        }
                    }
                    if !verdict.pass {
                        failures.push(format!(
                            "graph {:?} step {:?} {:?} support {:?}",
                            g.edges(),
                            step.basis,
                            step.target,
                            step.support
                        ));
                    }
                }
            }
            failures.truncate(5);
            let pass = failures.is_empty();
            let summary = serde_json::json!({
                "mode": if exhaustive { "exhaustive" } else { "samples" },
                "n_max": n_max,
                "graphs": graphs.len(),
                "steps": steps,
                "branches": branches,
                "skipped_branches": skipped,
                "failure_examples": failures,
                "pass": pass,
            });
            write_out(&out.output, &json_pretty(&summary))?;
            if pass {
                Ok(())
            } else {
                Err(CliError::Domain("rule verification failed".into()))
            }
        }
        Command::Export { input, out } => {
            let doc: GraphDoc = parse_json(&read_source(&input)?)?;
            let content = if doc.roles.is_some() {
                let state = doc.to_state().map_err(domain)?;
                match out.format {
                    Format::Json => json_pretty(&GraphDoc::from_state(&state)),
                    Format::Dot => state_to_dot(&state),
                }
            } else {
                let graph = doc.to_graph().map_err(domain)?;
                match out.format {
                    Format::Json => json_pretty(&GraphDoc::from_graph(&graph)),
                    Format::Dot => graph_to_dot(&graph),
                }
            };
            write_out(&out.output, &content)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
