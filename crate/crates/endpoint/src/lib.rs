//! HTTP SPARQL endpoint over one immutable in-memory dataset.
//!
//! Routes: `GET|POST /sparql`, `GET /health`, `GET /stats`.

use std::future::Future;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use axum::body::{Body, Bytes};
use axum::extract::{Request, State};
use axum::http::{header, HeaderMap, HeaderValue, Method, StatusCode, Uri};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use plantkb_core::onto::extract_ontology;
use plantkb_core::reasoner::materialize;
use plantkb_core::sparql::{evaluate, parse_query, serialize_results, ResultFormat};
use plantkb_core::turtle::parse_turtle;
use plantkb_core::{Graph, SyntaxError};
use tokio::net::TcpListener;

pub const DEFAULT_BIND: &str = "127.0.0.1:3030";
pub const BIND_ENV: &str = "PLANTKB_BIND";

const TEXT_PLAIN: &str = "text/plain; charset=utf-8";
const SPARQL_QUERY: &str = "application/sparql-query";
const FORM: &str = "application/x-www-form-urlencoded";

#[derive(Debug, thiserror::Error)]
pub enum EndpointError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: syntax error at {error}")]
    Syntax { path: PathBuf, error: SyntaxError },
    #[error("cannot bind {address}: {source}")]
    Bind { address: String, source: std::io::Error },
    #[error("the endpoint only serves read-only datasets")]
    Writable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetConfig {
    pub source_path: PathBuf,
    pub materialize_on_load: bool,
    /// `host:port`.
    pub bind_address: String,
    pub read_only: bool,
}

impl DatasetConfig {
    /// Read-only, unmaterialized, bound to `PLANTKB_BIND` or the default
    /// address.
    pub fn new(source_path: impl Into<PathBuf>) -> Self {
        let bind_address = std::env::var(BIND_ENV)
            .ok()
            .filter(|v| !v.trim().is_empty())
            .unwrap_or_else(|| DEFAULT_BIND.to_string());
        DatasetConfig { source_path: source_path.into(), materialize_on_load: false, bind_address, read_only: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    pub triples: usize,
    pub classes: usize,
    pub properties: usize,
    pub individuals: usize,
}

impl Stats {
    pub fn of(graph: &Graph) -> Self {
        let onto = extract_ontology(graph);
        Stats {
            triples: graph.len(),
            classes: onto.classes.len(),
            properties: onto.properties.len(),
            individuals: onto.individuals.len(),
        }
    }

    pub fn to_json(&self) -> String {
        format!(
            r#"{{"triples":{},"classes":{},"properties":{},"individuals":{}}}"#,
            self.triples, self.classes, self.properties, self.individuals
        )
    }
}

/// The served snapshot. Nothing mutates it after construction.
#[derive(Debug)]
pub struct Dataset {
    graph: Graph,
    stats: Stats,
}

impl Dataset {
    pub fn new(graph: Graph) -> Self {
        let stats = Stats::of(&graph);
        Dataset { graph, stats }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }
}

/// Reads, parses and optionally materializes the configured source.
pub fn load_dataset(cfg: &DatasetConfig) -> Result<Dataset, EndpointError> {
    if !cfg.read_only {
        return Err(EndpointError::Writable);
    }
    let text = std::fs::read_to_string(&cfg.source_path)
        .map_err(|source| EndpointError::Read { path: cfg.source_path.clone(), source })?;
    let outcome =
        parse_turtle(&text, None).map_err(|error| EndpointError::Syntax { path: cfg.source_path.clone(), error })?;
    let mut graph = outcome.graph;
    graph.set_prefixes(outcome.prefix_map);
    if cfg.materialize_on_load {
        materialize(&mut graph);
    }
    Ok(Dataset::new(graph))
}

/// Status, content type and body for one query against `dataset`.
pub fn answer(dataset: &Dataset, query: &str, format: ResultFormat) -> (StatusCode, &'static str, String) {
    match parse_query(query) {
        Ok(q) => {
            let results = evaluate(&q, &dataset.graph);
            (StatusCode::OK, format.media_type(), serialize_results(&results, format))
        }
        Err(e) => (StatusCode::BAD_REQUEST, TEXT_PLAIN, format!("query syntax error at {e}\n")),
    }
}

/// The format the `Accept` header prefers; JSON unless CSV ranks higher.
pub fn negotiate(accept: Option<&str>) -> ResultFormat {
    let Some(accept) = accept else {
        return ResultFormat::Json;
    };
    let (mut json, mut csv) = (None::<f32>, None::<f32>);
    for item in accept.split(',') {
        let mut parts = item.split(';');
        let media = parts.next().unwrap_or("").trim().to_ascii_lowercase();
        let q = parts
            .filter_map(|p| p.trim().strip_prefix("q=").and_then(|v| v.trim().parse::<f32>().ok()))
            .next()
            .unwrap_or(1.0);
        let slot = match media.as_str() {
            "application/sparql-results+json" | "application/json" => &mut json,
            "text/csv" => &mut csv,
            "*/*" | "application/*" => {
                json = Some(json.unwrap_or(0.0).max(q * 0.5));
                continue;
            }
            _ => continue,
        };
        *slot = Some(slot.unwrap_or(0.0).max(q));
    }
    match (json, csv) {
        (j, Some(c)) if c > 0.0 && c > j.unwrap_or(0.0) => ResultFormat::Csv,
        _ => ResultFormat::Json,
    }
}

fn text(status: StatusCode, body: impl Into<String>) -> Response {
    (status, [(header::CONTENT_TYPE, HeaderValue::from_static(TEXT_PLAIN))], body.into()).into_response()
}

fn form_query(raw: &[u8]) -> Option<String> {
    form_urlencoded::parse(raw).find(|(k, _)| k == "query").map(|(_, v)| v.into_owned())
}

async fn run_query(dataset: Arc<Dataset>, query: String, headers: &HeaderMap) -> Response {
    let format = negotiate(headers.get(header::ACCEPT).and_then(|v| v.to_str().ok()));
    let result = tokio::task::spawn_blocking(move || answer(&dataset, &query, format)).await;
    match result {
        Ok((status, media, body)) => {
            (status, [(header::CONTENT_TYPE, HeaderValue::from_static(media))], body).into_response()
        }
        Err(_) => text(StatusCode::INTERNAL_SERVER_ERROR, "query evaluation failed\n"),
    }
}

async fn sparql_get(State(dataset): State<Arc<Dataset>>, uri: Uri, headers: HeaderMap) -> Response {
    match form_query(uri.query().unwrap_or("").as_bytes()) {
        Some(q) => run_query(dataset, q, &headers).await,
        None => text(StatusCode::BAD_REQUEST, "missing `query` parameter\n"),
    }
}

async fn sparql_post(State(dataset): State<Arc<Dataset>>, headers: HeaderMap, body: Bytes) -> Response {
    let media = headers
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .and_then(|v| v.split(';').next())
        .map(|v| v.trim().to_ascii_lowercase())
        .unwrap_or_default();
    let query = match media.as_str() {
        SPARQL_QUERY => match String::from_utf8(body.to_vec()) {
            Ok(q) => q,
            Err(_) => return text(StatusCode::BAD_REQUEST, "query body is not UTF-8\n"),
        },
        FORM => match form_query(&body) {
            Some(q) => q,
            None => return text(StatusCode::BAD_REQUEST, "missing `query` parameter\n"),
        },
        _ => {
            return text(
                StatusCode::UNSUPPORTED_MEDIA_TYPE,
                format!("expected {SPARQL_QUERY} or {FORM}\n"),
            )
        }
    };
    run_query(dataset, query, &headers).await
}

async fn health() -> Response {
    text(StatusCode::OK, "ok")
}

async fn stats(State(dataset): State<Arc<Dataset>>) -> Response {
    (StatusCode::OK, [(header::CONTENT_TYPE, HeaderValue::from_static("application/json"))], dataset.stats.to_json())
        .into_response()
}

async fn not_found() -> Response {
    text(StatusCode::NOT_FOUND, "not found\n")
}

async fn method_not_allowed(method: Method) -> Response {
    text(StatusCode::METHOD_NOT_ALLOWED, format!("method {method} not allowed\n"))
}

async fn log_request(req: Request<Body>, next: Next) -> Response {
    let method = req.method().clone();
    let path = req.uri().path().to_string();
    let start = Instant::now();
    let response = next.run(req).await;
    tracing::info!(
        %method,
        path,
        status = response.status().as_u16(),
        duration_ms = start.elapsed().as_secs_f64() * 1000.0,
        "request"
    );
    response
}

pub fn app(dataset: Arc<Dataset>) -> Router {
    Router::new()
        .route("/sparql", get(sparql_get).post(sparql_post).fallback(method_not_allowed))
        .route("/health", get(health).fallback(method_not_allowed))
        .route("/stats", get(stats).fallback(method_not_allowed))
        .fallback(not_found)
        .with_state(dataset)
        .layer(middleware::from_fn(log_request))
}

/// A loaded dataset with a bound listener, not yet accepting requests.
pub struct Server {
    listener: TcpListener,
    dataset: Arc<Dataset>,
}

impl Server {
    pub fn local_addr(&self) -> SocketAddr {
        self.listener.local_addr().expect("bound listener has an address")
    }

    pub fn dataset(&self) -> &Arc<Dataset> {
        &self.dataset
    }

    /// Serves until `shutdown` completes.
    pub async fn serve_until(self, shutdown: impl Future<Output = ()> + Send + 'static) -> std::io::Result<()> {
        tracing::info!(address = %self.local_addr(), triples = self.dataset.graph.len(), "listening");
        axum::serve(self.listener, app(self.dataset)).with_graceful_shutdown(shutdown).await
    }
}

/// Loads the dataset, then binds. Either step failing leaves no listener.
pub async fn bind(cfg: &DatasetConfig) -> Result<Server, EndpointError> {
    let dataset = Arc::new(load_dataset(cfg)?);
    bind_dataset(dataset, &cfg.bind_address).await
}

pub async fn bind_dataset(dataset: Arc<Dataset>, address: &str) -> Result<Server, EndpointError> {
    let listener = TcpListener::bind(address)
        .await
        .map_err(|source| EndpointError::Bind { address: address.to_string(), source })?;
    Ok(Server { listener, dataset })
}

/// Loads, binds and serves until Ctrl-C.
pub async fn serve(cfg: &DatasetConfig) -> Result<(), EndpointError> {
    let server = bind(cfg).await?;
    let address = cfg.bind_address.clone();
    server
        .serve_until(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
        .map_err(|source| EndpointError::Bind { address, source })
}
