use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use plantkb_core::dot::{export_dot, DotMode};
use plantkb_core::lint::{has_errors, render_json, render_text, run_checks, CheckConfig, Code};
use plantkb_core::reasoner::materialize;
use plantkb_core::sparql::{evaluate, format_table, parse_query, serialize_results, ResultFormat};
use plantkb_core::turtle::{parse_turtle, serialize_turtle};
use plantkb_core::Graph;
use plantkb_endpoint::{serve, DatasetConfig};

#[derive(Parser)]
#[command(name = "plantkb", version, about = "Parse, validate, reason over, query and serve OWL ontologies in Turtle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report lint and consistency diagnostics.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Skip the missing-label check.
        #[arg(long)]
        no_labels_check: bool,
        /// Regular expression every class local name must match.
        #[arg(long, value_name = "RE")]
        class_pattern: Option<String>,
        /// Regular expression every property local name must match.
        #[arg(long, value_name = "RE")]
        property_pattern: Option<String>,
    },
    /// Materialize inferences and write the result as Turtle.
    Infer {
        file: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Run a SELECT query.
    Query {
        file: PathBuf,
        #[command(flatten)]
        source: QuerySource,
        /// Query the materialized graph.
        #[arg(long)]
        infer: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Serve the file over the SPARQL protocol.
    Serve {
        file: PathBuf,
        /// Overrides PLANTKB_BIND.
        #[arg(long, value_name = "HOST:PORT")]
        bind: Option<String>,
        #[arg(long)]
        materialize: bool,
    },
    /// Print the class hierarchy or property graph as DOT.
    Export {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ExportMode::Classes)]
        mode: ExportMode,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct QuerySource {
    #[arg(long, value_name = "TEXT")]
    query: Option<String>,
    #[arg(long, value_name = "FILE")]
    query_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportMode {
    Classes,
    Properties,
}

const FINDINGS: u8 = 1;
const FAILURE: u8 = 2;

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Graph, Failure> {
    let text = read(path)?;
    let outcome = parse_turtle(&text, None).map_err(|e| Failure(format!("{}: syntax error at {e}", path.display())))?;
    let mut graph = outcome.graph;
    graph.set_prefixes(outcome.prefix_map);
    Ok(graph)
}

fn validate(
    file: &Path,
    format: ReportFormat,
    no_labels_check: bool,
    class_pattern: Option<&str>,
    property_pattern: Option<&str>,
) -> Result<u8, Failure> {
    let graph = load(file)?;
    let mut cfg = CheckConfig::default();
    if let Some(p) = class_pattern {
        cfg = cfg.with_class_pattern(p)?;
    }
    if let Some(p) = property_pattern {
        cfg = cfg.with_property_pattern(p)?;
    }
    if no_labels_check {
        cfg = cfg.without(Code::Md001);
    }
    let diagnostics = run_checks(&graph, &cfg);
    match format {
        ReportFormat::Text => print!("{}", render_text(&diagnostics)),
        ReportFormat::Json => println!("{}", render_json(&diagnostics)),
    }
    Ok(if has_errors(&diagnostics) { FINDINGS } else { 0 })
}

fn infer(file: &Path, out: &Path) -> Result<u8, Failure> {
    let mut graph = load(file)?;
    let result = materialize(&mut graph);
    let text = serialize_turtle(&graph, graph.prefixes());
    std::fs::write(out, text).map_err(|e| Failure(format!("cannot write {}: {e}", out.display())))?;
    println!("added {} triples in {} iterations", result.added_count(), result.iterations);
    Ok(0)
}

fn query(file: &Path, source: &QuerySource, infer: bool, format: OutputFormat) -> Result<u8, Failure> {
    let mut graph = load(file)?;
    let text = match (&source.query, &source.query_file) {
        (Some(q), _) => q.clone(),
        (None, Some(f)) => read(f)?,
        (None, None) => return Err(Failure("one of --query or --query-file is required".into())),
    };
    let q = parse_query(&text).map_err(|e| Failure(format!("query syntax error at {e}")))?;
    if infer {
        materialize(&mut graph);
    }
    let results = evaluate(&q, &graph);
    match format {
        OutputFormat::Json => print!("{}", serialize_results(&results, ResultFormat::Json)),
        OutputFormat::Csv => print!("{}", serialize_results(&results, ResultFormat::Csv)),
        OutputFormat::Table => print!("{}", format_table(&results)),
    }
    Ok(0)
}

fn run_server(file: &Path, bind: Option<String>, materialize_on_load: bool) -> Result<u8, Failure> {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()),
        )
        .with_writer(std::io::stderr)
        .init();
    let mut cfg = DatasetConfig::new(file);
    cfg.materialize_on_load = materialize_on_load;
    if let Some(b) = bind {
        cfg.bind_address = b;
    }
    let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    runtime.block_on(serve(&cfg))?;
    Ok(0)
}

fn export(file: &Path, mode: ExportMode) -> Result<u8, Failure> {
    let graph = load(file)?;
    let mode = match mode {
        ExportMode::Classes => DotMode::Classes,
        ExportMode::Properties => DotMode::Properties,
    };
    print!("{}", export_dot(&graph, mode));
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Validate { file, format, no_labels_check, class_pattern, property_pattern } => {
            validate(&file, format, no_labels_check, class_pattern.as_deref(), property_pattern.as_deref())
        }
        Command::Infer { file, out } => infer(&file, &out),
        Command::Query { file, source, infer, format } => query(&file, &source, infer, format),
        Command::Serve { file, bind, materialize } => run_server(&file, bind, materialize),
        Command::Export { file, mode } => export(&file, mode),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("plantkb: {msg}");
            ExitCode::from(FAILURE)
        }
    }
}
