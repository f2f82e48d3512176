use std::sync::Arc;

use axum::body::Body;
use axum::http::{header, Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use plantkb_core::fixtures::{fixture_graph, CLEAN, GOLDEN_QUERIES};
use plantkb_core::reasoner::materialize;
use plantkb_core::turtle::parse_turtle;
use plantkb_endpoint::{app, bind, load_dataset, Dataset, DatasetConfig, EndpointError};
use tower::ServiceExt;

fn fixture_app() -> Router {
    let mut g = fixture_graph(CLEAN).unwrap();
    materialize(&mut g);
    app(Arc::new(Dataset::new(g)))
}

fn encode(q: &str) -> String {
    form_urlencoded::byte_serialize(q.as_bytes()).collect()
}

async fn send(app: &Router, req: Request<Body>) -> (StatusCode, String, String) {
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let ct = resp.headers().get(header::CONTENT_TYPE).map(|v| v.to_str().unwrap().to_string()).unwrap_or_default();
    let body = resp.into_body().collect().await.unwrap().to_bytes();
    (status, ct, String::from_utf8(body.to_vec()).unwrap())
}

fn get(uri: &str) -> Request<Body> {
    Request::get(uri).body(Body::empty()).unwrap()
}

fn post(content_type: &str, body: String) -> Request<Body> {
    Request::post("/sparql").header(header::CONTENT_TYPE, content_type).body(Body::from(body)).unwrap()
}

#[tokio::test]
async fn one_triple_dataset() {
    let g = parse_turtle("<http://ex/s> <http://ex/p> <http://ex/o> .", None).unwrap().graph;
    let app = app(Arc::new(Dataset::new(g)));
    let (status, ct, body) = send(&app, get("/sparql?query=SELECT%20*%20WHERE%20%7B%3Fs%20%3Fp%20%3Fo%7D")).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(ct, "application/sparql-results+json");
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["results"]["bindings"].as_array().unwrap().len(), 1);
    assert_eq!(v["head"]["vars"], serde_json::json!(["o", "p", "s"]));
}

#[tokio::test]
async fn get_and_post_bodies_match() {
    let app = fixture_app();
    for q in GOLDEN_QUERIES {
        let (s1, _, by_get) = send(&app, get(&format!("/sparql?query={}", encode(q.text)))).await;
        let (s2, _, by_raw) = send(&app, post("application/sparql-query", q.text.to_string())).await;
        let (s3, _, by_form) =
            send(&app, post("application/x-www-form-urlencoded", format!("query={}", encode(q.text)))).await;
        assert_eq!([s1, s2, s3], [StatusCode::OK; 3]);
        assert_eq!(by_get, by_raw);
        assert_eq!(by_get, by_form);
    }
    let (_, _, body) = send(&app, post("application/sparql-query", GOLDEN_QUERIES[0].text.to_string())).await;
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["results"]["bindings"].as_array().unwrap().len(), 5);
}

#[tokio::test]
async fn csv_by_accept_header() {
    let app = fixture_app();
    let req = Request::get(format!("/sparql?query={}", encode(GOLDEN_QUERIES[1].text)))
        .header(header::ACCEPT, "text/csv")
        .body(Body::empty())
        .unwrap();
    let (status, ct, body) = send(&app, req).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(ct, "text/csv; charset=utf-8");
    assert_eq!(body.lines().count(), 5);
    assert!(body.starts_with("class\r\n"));
}

#[tokio::test]
async fn malformed_query_is_400_with_position() {
    let app = fixture_app();
    let (status, ct, body) = send(&app, post("application/sparql-query", "SELECT ?x WHERE {".into())).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(ct.starts_with("text/plain"));
    assert!(body.contains("line 1") && body.contains("column"), "{body}");
    let (status, _, body) = send(&app, post("application/sparql-query", "ASK { ?s ?p ?o }".into())).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body.contains("ASK"), "{body}");
}

#[tokio::test]
async fn routing_errors() {
    let app = fixture_app();
    let req = Request::builder().method(Method::DELETE).uri("/sparql").body(Body::empty()).unwrap();
    assert_eq!(send(&app, req).await.0, StatusCode::METHOD_NOT_ALLOWED);
    let req = Request::builder().method(Method::PUT).uri("/sparql").body(Body::empty()).unwrap();
    assert_eq!(send(&app, req).await.0, StatusCode::METHOD_NOT_ALLOWED);
    assert_eq!(send(&app, get("/nowhere")).await.0, StatusCode::NOT_FOUND);
    assert_eq!(send(&app, get("/sparql")).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(send(&app, post("text/plain", "SELECT".into())).await.0, StatusCode::UNSUPPORTED_MEDIA_TYPE);
}

#[tokio::test]
async fn health_and_stats() {
    let app = fixture_app();
    let (status, _, body) = send(&app, get("/health")).await;
    assert_eq!((status, body.as_str()), (StatusCode::OK, "ok"));
    let (status, ct, body) = send(&app, get("/stats")).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(ct, "application/json");
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["classes"], 16);
    for _ in 0..20 {
        send(&app, get(&format!("/sparql?query={}", encode("SELECT * WHERE { ?s ?p ?o }")))).await;
    }
    assert_eq!(send(&app, get("/stats")).await.2, body);
}

#[tokio::test]
async fn startup_failures_leave_no_listener() {
    let mut cfg = DatasetConfig::new("/nonexistent/plantkb.ttl");
    cfg.bind_address = "127.0.0.1:0".into();
    assert!(matches!(bind(&cfg).await, Err(EndpointError::Read { .. })));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.ttl");
    std::fs::write(&path, "<http://ex/s> <http://ex/p> .").unwrap();
    cfg.source_path = path;
    match load_dataset(&cfg) {
        Err(EndpointError::Syntax { error, .. }) => assert_eq!(error.line, 1),
        other => panic!("expected syntax error, got {other:?}"),
    }
}

#[tokio::test]
async fn materialize_on_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.ttl");
    std::fs::write(
        &path,
        "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n<http://ex/A> rdfs:subClassOf <http://ex/B> .\n<http://ex/B> rdfs:subClassOf <http://ex/C> .\n",
    )
    .unwrap();
    let mut cfg = DatasetConfig::new(&path);
    assert_eq!(load_dataset(&cfg).unwrap().stats().triples, 2);
    cfg.materialize_on_load = true;
    assert_eq!(load_dataset(&cfg).unwrap().stats().triples, 3);
}
