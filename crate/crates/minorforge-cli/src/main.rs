//! Command-line front-end: exact invariants, certified clique minors,
//! inequality checks, extremal-family recognition, corpus sweeps and format
//! conversion.
//!
//! stdout carries machine-readable JSON only; all diagnostics (and the
//! optional `--pretty` tables) go to stderr. Exit codes: 0 success, 1 usage
//! error, 2 parse error, 3 anomaly (an applicable inequality failed, which
//! signals a bug, never a property of the input).

use clap::{Args, Parser, Subcommand, ValueEnum};
use minorforge::sweep::{CorpusSource, SweepConfig, SweepFilter};
use minorforge::{
    check, classify_equality, compute_bundle, dm_clique_minor, from_edge_list_text, from_graph6,
    hadwiger_value, run_sweep, to_edge_list_text, to_graph6, validate_certificate,
    CertificateVerdict, Error, Graph, TheoremId,
};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_ANOMALY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "minorforge",
    about = "Exact graph invariants, certified clique minors, and inequality sweeps on small graphs",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    G6,
    Edges,
}

#[derive(Args)]
struct GraphInput {
    /// A graph6 string, `-` for stdin, or a file path.
    graph: String,
    /// Force the input format instead of auto-detecting.
    #[arg(long, value_enum)]
    format: Option<GraphFormat>,
}

#[derive(Args)]
struct PrettyFlag {
    /// Render a human-readable summary to stderr as well.
    #[arg(long)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Exact invariant bundle (α, ω, h with certificate, flags) as JSON.
    Invariants {
        #[command(flatten)]
        input: GraphInput,
        /// Also compute the chromatic number.
        #[arg(long)]
        chi: bool,
        #[command(flatten)]
        pretty: PrettyFlag,
    },
    /// Constructive clique-minor certificate with validation verdict.
    Minor {
        #[command(flatten)]
        input: GraphInput,
        /// Also compute the exact Hadwiger number for comparison.
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        pretty: PrettyFlag,
    },
    /// Inequality reports for one graph.
    Check {
        #[command(flatten)]
        input: GraphInput,
        /// Theorem id (DM, WOODALL, MAIN, COROLLARY, ALPHA2, OMEGA2, WOOD)
        /// or `all`; may be repeated.
        #[arg(long = "theorem")]
        theorems: Vec<String>,
        /// Fault-injection hook for exercising the anomaly exit path: feeds a
        /// corrupted bundle (h forced to 1) into the checkers.
        #[arg(long, hide = true)]
        corrupt_bundle: bool,
        #[command(flatten)]
        pretty: PrettyFlag,
    },
    /// Extremal-family evidence (forest with perfect matching / twin cliques).
    Recognize {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        pretty: PrettyFlag,
    },
    /// Verify inequalities over a corpus and print the aggregate report.
    Sweep {
        /// Exhaustive labeled enumeration on n vertices (n ≤ 7).
        #[arg(long, conflicts_with = "stream")]
        n: Option<usize>,
        /// graph6 stream: one graph per line; `-` for stdin.
        #[arg(long)]
        stream: Option<String>,
        /// Theorem id or `all`; may be repeated.
        #[arg(long = "theorem")]
        theorems: Vec<String>,
        /// Worker threads (default: MINORFORGE_WORKERS or all cores).
        #[arg(long)]
        workers: Option<usize>,
        /// Filter spec: min_edges=K, require_non_complete, alpha_eq=K,
        /// omega_eq=K, connected_only; may be repeated.
        #[arg(long = "filter")]
        filters: Vec<String>,
        #[command(flatten)]
        pretty: PrettyFlag,
    },
    /// Convert a graph between formats.
    Convert {
        #[command(flatten)]
        input: GraphInput,
        /// Target format.
        #[arg(long, value_enum)]
        to: GraphFormat,
    },
}

enum Failure {
    Usage(String),
    Parse(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            // The text parsers wrap size/edge violations with positions, so
            // bare variants here came from flag values, not input text.
            Error::Graph6Parse { .. } | Error::EdgeListParse { .. } => {
                Failure::Parse(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn graph6_payload_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// The argument is treated as a graph6 literal when every byte is in
/// 63..=126 and the length matches the vertex count declared by its first
/// byte; otherwise it names a file.
fn looks_like_graph6(arg: &str) -> bool {
    let bytes = arg.as_bytes();
    if bytes.is_empty() || !bytes.iter().all(|b| (63..=126).contains(b)) {
        return false;
    }
    let n = (bytes[0] - 63) as usize;
    n <= 62 && bytes.len() == 1 + graph6_payload_len(n)
}

fn parse_text(text: &str, format: Option<GraphFormat>) -> Result<Graph, Failure> {
    let format = format.unwrap_or_else(|| {
        // Edge lists start with a digit or '#', both below byte 63.
        match text.trim_start().bytes().next() {
            Some(b) if b >= 63 => GraphFormat::G6,
            _ => GraphFormat::Edges,
        }
    });
    match format {
        GraphFormat::G6 => from_graph6(text).map_err(Failure::from),
        GraphFormat::Edges => from_edge_list_text(text).map_err(Failure::from),
    }
}

fn load_graph(input: &GraphInput) -> Result<Graph, Failure> {
    if input.graph == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(format!("failed to read stdin: {e}")))?;
        return parse_text(&text, input.format);
    }
    if input.format != Some(GraphFormat::Edges) && looks_like_graph6(&input.graph) {
        return from_graph6(&input.graph).map_err(Failure::from);
    }
    let path = PathBuf::from(&input.graph);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_text(&text, input.format)
}

fn parse_theorem_set(specs: &[String]) -> Result<Vec<TheoremId>, Failure> {
    let mut out = Vec::new();
    for spec in specs {
        if spec.eq_ignore_ascii_case("all") {
            out.extend(TheoremId::ALL);
        } else {
            out.push(spec.parse::<TheoremId>().map_err(Failure::Usage)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_filters(specs: &[String]) -> Result<SweepFilter, Failure> {
    let mut filter = SweepFilter::default();
    for spec in specs {
        let (key, value) = match spec.split_once('=') {
            Some((k, v)) => (k.trim(), Some(v.trim())),
            None => (spec.trim(), None),
        };
        let need_value = || {
            value
                .ok_or_else(|| Failure::Usage(format!("filter {key} needs a value")))?
                .parse::<u32>()
                .map_err(|_| Failure::Usage(format!("filter {key}: bad integer {value:?}")))
        };
        match key {
            "min_edges" => filter.min_edges = Some(need_value()? as usize),
            "alpha_eq" => filter.alpha_eq = Some(need_value()?),
            "omega_eq" => filter.omega_eq = Some(need_value()?),
            "require_non_complete" => filter.require_non_complete = true,
            "connected_only" => filter.connected_only = true,
            other => return Err(Failure::Usage(format!("unknown filter {other:?}"))),
        }
    }
    Ok(filter)
}

fn resolve_workers(cli_value: Option<usize>) -> usize {
    cli_value
        .or_else(|| {
            std::env::var("MINORFORGE_WORKERS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0)
}

fn emit(json: &serde_json::Value) {
    println!("{json}");
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Invariants { input, chi, pretty } => {
            let g = load_graph(&input)?;
            let bundle = compute_bundle(&g, chi)?;
            if pretty.pretty {
                eprintln!(
                    "n={} m={} α={} ω={} h={} χ={} connected={} bipartite={} forest={}",
                    bundle.n,
                    bundle.m,
                    bundle.alpha,
                    bundle.omega,
                    bundle.h,
                    bundle.chi.map_or("-".to_string(), |c| c.to_string()),
                    bundle.connected,
                    bundle.bipartite,
                    bundle.forest
                );
            }
            emit(&serde_json::to_value(&bundle).expect("bundle serializes"));
            Ok(0)
        }
        Command::Minor { input, exact, pretty } => {
            let g = load_graph(&input)?;
            let cert = dm_clique_minor(&g)?;
            let verdict = validate_certificate(&g, &cert);
            let alpha = minorforge::independence_number(&g) as usize;
            let order = cert.order();
            let bound_lhs = (2 * alpha - 1) * order;
            let (valid, violation) = match &verdict {
                CertificateVerdict::Valid { .. } => (true, None),
                CertificateVerdict::Invalid(v) => (false, Some(v.to_string())),
            };
            let mut json = serde_json::json!({
                "certificate": cert,
                "valid": valid,
                "violation": violation,
                "order": order,
                "alpha": alpha,
                "n": g.n(),
                "bound_lhs": bound_lhs,
                "bound_holds": bound_lhs >= g.n(),
            });
            if exact {
                json["exact_h"] = serde_json::json!(hadwiger_value(&g)?);
            }
            if pretty.pretty {
                eprintln!(
                    "order {order} certificate, valid={valid}, (2α−1)·k = {bound_lhs} ≥ n = {}",
                    g.n()
                );
            }
            emit(&json);
            Ok(if valid { 0 } else { EXIT_ANOMALY })
        }
        Command::Check {
            input,
            theorems,
            corrupt_bundle,
            pretty,
        } => {
            let g = load_graph(&input)?;
            let mut bundle = compute_bundle(&g, true)?;
            if corrupt_bundle {
                bundle.h = 1;
            }
            let set = parse_theorem_set(&theorems)?;
            let set = if set.is_empty() {
                TheoremId::ALL.to_vec()
            } else {
                set
            };
            let reports: Vec<_> = set.into_iter().map(|id| check(id, &g, &bundle)).collect();
            let anomaly = reports.iter().any(|r| r.applicable && !r.holds);
            if pretty.pretty {
                for r in &reports {
                    eprintln!(
                        "{:<9} {} lhs={} rhs={}{}",
                        r.theorem_id.as_str(),
                        if !r.applicable {
                            "n/a     "
                        } else if !r.holds {
                            "VIOLATED"
                        } else if r.equality {
                            "equality"
                        } else {
                            "strict  "
                        },
                        r.lhs,
                        r.rhs,
                        r.reason.as_deref().map(|s| format!(" ({s})")).unwrap_or_default()
                    );
                }
            }
            emit(&serde_json::to_value(&reports).expect("reports serialize"));
            if anomaly {
                eprintln!("anomaly: an applicable inequality failed; this is a bug signal");
                Ok(EXIT_ANOMALY)
            } else {
                Ok(0)
            }
        }
        Command::Recognize { input, pretty } => {
            let g = load_graph(&input)?;
            let bundle = compute_bundle(&g, false)?;
            let classes = classify_equality(&g, &bundle);
            let json = serde_json::json!({
                "h": bundle.h,
                "forest_pm": classes.forest_pm.as_ref().map(|m| serde_json::json!({ "matching": m })),
                "twin_cliques": classes.twin_cliques.as_ref().map(|(a, b)| serde_json::json!({ "cliques": [a, b] })),
            });
            if pretty.pretty {
                let tags = classes.tags();
                if tags.is_empty() {
                    eprintln!("none");
                } else {
                    eprintln!(
                        "{}",
                        tags.iter().map(|t| t.as_str()).collect::<Vec<_>>().join(" ")
                    );
                }
            }
            emit(&json);
            Ok(0)
        }
        Command::Sweep {
            n,
            stream,
            theorems,
            workers,
            filters,
            pretty,
        } => {
            let source = match (n, stream) {
                (Some(n), None) => CorpusSource::ExhaustiveLabeled { n },
                (None, Some(s)) if s == "-" => {
                    let mut text = String::new();
                    std::io::stdin()
                        .read_to_string(&mut text)
                        .map_err(|e| Failure::Usage(format!("failed to read stdin: {e}")))?;
                    CorpusSource::Graph6Text {
                        name: "<stdin>".to_string(),
                        text,
                    }
                }
                (None, Some(s)) => CorpusSource::Graph6File {
                    path: PathBuf::from(s),
                },
                _ => {
                    return Err(Failure::Usage(
                        "sweep needs exactly one of --n or --stream".to_string(),
                    ))
                }
            };
            let config = SweepConfig {
                source,
                filter: parse_filters(&filters)?,
                theorems: parse_theorem_set(&theorems)?,
                workers: resolve_workers(workers),
            };
            let summary = run_sweep(&config)?;
            if pretty.pretty {
                eprintln!(
                    "{}: {} graphs checked, {} filtered, {} skipped, {} witnesses, {} anomalies in {} ms",
                    summary.source,
                    summary.total,
                    summary.filtered_out,
                    summary.skipped,
                    summary.equality_witnesses.len(),
                    summary.anomalies.len(),
                    summary.runtime_ms
                );
                for (id, c) in &summary.theorems {
                    eprintln!(
                        "  {:<9} applicable={} holds={} strict={} equality={}",
                        id.as_str(),
                        c.applicable,
                        c.holds,
                        c.strict,
                        c.equality
                    );
                }
            }
            println!("{}", summary.to_json());
            if summary.has_anomalies() {
                eprintln!("anomaly: inequality violations found; this is a bug signal");
                Ok(EXIT_ANOMALY)
            } else {
                Ok(0)
            }
        }
        Command::Convert { input, to } => {
            let g = load_graph(&input)?;
            let (format, text) = match to {
                GraphFormat::G6 => ("g6", to_graph6(&g)),
                GraphFormat::Edges => ("edges", to_edge_list_text(&g)),
            };
            emit(&serde_json::json!({ "format": format, "text": text }));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version through the error path too.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
    }
}
