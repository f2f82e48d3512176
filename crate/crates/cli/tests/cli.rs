use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use plantkb_core::fixtures::{fixture_graph, CLEAN, GOLDEN_QUERIES};
use plantkb_core::reasoner::materialize;
use plantkb_core::sparql::ResultFormat;
use plantkb_endpoint::{answer, Dataset};
use plantkb_testkit::dot::check_dot;

fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

fn plantkb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plantkb")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

struct Inputs {
    _dir: tempfile::TempDir,
    clean: String,
    defect: String,
    garbage: String,
    out: String,
}

fn inputs() -> Inputs {
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage.ttl");
    std::fs::write(&garbage, "this is not turtle {").unwrap();
    Inputs {
        clean: fixture("arabidopsis.ttl").display().to_string(),
        defect: fixture("defects/CS002.ttl").display().to_string(),
        garbage: garbage.display().to_string(),
        out: dir.path().join("out.ttl").display().to_string(),
        _dir: dir,
    }
}

#[test]
fn exit_code_contract() {
    let i = inputs();
    let q = "SELECT * WHERE { ?s ?p ?o }";
    let cases: Vec<(Vec<&str>, [i32; 3])> = vec![
        (vec!["validate"], [0, 1, 2]),
        (vec!["infer", "--out", &i.out], [0, 0, 2]),
        (vec!["query", "--query", q], [0, 0, 2]),
        (vec!["export", "--mode", "classes"], [0, 0, 2]),
        (vec!["export", "--mode", "properties"], [0, 0, 2]),
    ];
    for (args, want) in cases {
        for (file, expected) in [&i.clean, &i.defect, &i.garbage].into_iter().zip(want) {
            let mut full = vec![args[0], file.as_str()];
            full.extend(&args[1..]);
            let out = plantkb(&full);
            assert_eq!(code(&out), expected, "{full:?}: {}", String::from_utf8_lossy(&out.stderr));
        }
    }
    assert_eq!(code(&plantkb(&["validate", "/nonexistent.ttl"])), 2);
    assert_eq!(code(&plantkb(&["serve", "/nonexistent.ttl", "--bind", "127.0.0.1:0"])), 2);
    assert_eq!(code(&plantkb(&["frobnicate"])), 2);
    assert_eq!(code(&plantkb(&["query", &i.clean])), 2);
}

#[test]
fn validate_reports() {
    let i = inputs();
    let out = plantkb(&["validate", &i.defect]);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("ERROR")).count(), 1);
    assert!(text.contains("ERROR CS002 <"));
    let json = plantkb(&["validate", &i.defect, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v[0]["code"], "CS002");
    assert_eq!(v[0]["severity"], "error");
    assert_eq!(stdout(&plantkb(&["validate", &i.clean])), "");

    let md = fixture("defects/MD001.ttl").display().to_string();
    assert_eq!(code(&plantkb(&["validate", &md])), 1);
    assert_eq!(code(&plantkb(&["validate", &md, "--no-labels-check"])), 0);
    assert_eq!(code(&plantkb(&["validate", &i.clean, "--class-pattern", "[a-z]+"])), 1);
    assert_eq!(code(&plantkb(&["validate", &i.clean, "--property-pattern", "("])), 2);
}

#[test]
fn query_json_matches_endpoint_body() {
    let mut g = fixture_graph(CLEAN).unwrap();
    materialize(&mut g);
    let dataset = Dataset::new(g);
    let clean = fixture("arabidopsis.ttl").display().to_string();
    for q in GOLDEN_QUERIES {
        let out = plantkb(&["query", &clean, "--infer", "--query", q.text, "--format", "json"]);
        assert_eq!(code(&out), 0);
        let (_, _, body) = answer(&dataset, q.text, ResultFormat::Json);
        assert_eq!(stdout(&out), body, "{}", q.name);
    }
    let out = plantkb(&["query", &clean, "--query", GOLDEN_QUERIES[0].text, "--format", "csv"]);
    assert_eq!(stdout(&out).lines().count(), 6);
}

#[test]
fn query_file_and_empty_graph() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.ttl");
    std::fs::write(&empty, "").unwrap();
    let qf = dir.path().join("q.rq");
    std::fs::write(&qf, "SELECT ?s WHERE { ?s ?p ?o }").unwrap();
    let out = plantkb(&["query", empty.to_str().unwrap(), "--query-file", qf.to_str().unwrap(), "--format", "table"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("(0 rows)"));
    let bad = plantkb(&["query", empty.to_str().unwrap(), "--query", "SELECT ?x WHERE {"]);
    assert_eq!(code(&bad), 2);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 1, column"));
}

#[test]
fn infer_chain_and_idempotence() {
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("chain.ttl");
    std::fs::write(
        &chain,
        "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n@prefix ex: <http://ex.test/> .\nex:A rdfs:subClassOf ex:B .\nex:B rdfs:subClassOf ex:C .\n",
    )
    .unwrap();
    let out1 = dir.path().join("m1.ttl");
    let out2 = dir.path().join("m2.ttl");
    let first = plantkb(&["infer", chain.to_str().unwrap(), "--out", out1.to_str().unwrap()]);
    assert_eq!(stdout(&first), "added 1 triples in 2 iterations\n");
    assert!(std::fs::read_to_string(&out1).unwrap().contains("ex:A rdfs:subClassOf ex:B , ex:C ."));
    let second = plantkb(&["infer", out1.to_str().unwrap(), "--out", out2.to_str().unwrap()]);
    assert!(stdout(&second).starts_with("added 0 triples"));

    let clean = fixture("arabidopsis.ttl");
    let out3 = dir.path().join("m3.ttl");
    plantkb(&["infer", clean.to_str().unwrap(), "--out", out3.to_str().unwrap()]);
    let text = std::fs::read_to_string(&out3).unwrap();
    let g = plantkb_core::turtle::parse_turtle(&text, None).unwrap().graph;
    let onto = plantkb_core::onto::extract_ontology(&g);
    for c in onto.classes.values() {
        assert!(c.direct_supers.iter().any(|s| s.as_str() == "http://www.w3.org/2002/07/owl#Thing"), "{}", c.iri);
    }
}

#[test]
fn export_minimal_and_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.ttl");
    std::fs::write(&one, "<http://ex.test/A> a <http://www.w3.org/2002/07/owl#Class> .\n").unwrap();
    let dot = stdout(&plantkb(&["export", one.to_str().unwrap()]));
    let s = check_dot(&dot).unwrap();
    assert_eq!(s.all_nodes().len(), 2);
    assert_eq!(s.edges.len(), 1);

    let clean = fixture("arabidopsis.ttl").display().to_string();
    let a = stdout(&plantkb(&["export", &clean, "--mode", "properties"]));
    assert_eq!(a, stdout(&plantkb(&["export", &clean, "--mode", "properties"])));
    let s = check_dot(&a).unwrap();
    let labels: Vec<&str> =
        s.edges.iter().flat_map(|(_, _, attrs)| attrs.iter()).filter(|(k, _)| k == "label").map(|(_, v)| v.as_str()).collect();
    for p in ["growsIn", "hasPart", "hasVariant", "maxHeight"] {
        assert!(labels.contains(&p));
    }
}

#[test]
fn dataset_arc_is_shareable() {
    let d = Arc::new(Dataset::new(fixture_graph(CLEAN).unwrap()));
    let (status, _, _) = answer(&d, GOLDEN_QUERIES[2].text, ResultFormat::Csv);
    assert_eq!(status.as_u16(), 200);
}
