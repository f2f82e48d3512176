use std::collections::BTreeSet;

use plantkb_core::dot::{export_dot, DotMode};
use plantkb_core::fixtures::{fixture_graph, fixture_text, manifest, CLEAN, GOLDEN_QUERIES, NAMESPACE};
use plantkb_core::lint::{has_errors, render_json, render_text, run_checks, CheckConfig, Code};
use plantkb_core::model::vocab::{owl, rdfs};
use plantkb_core::onto::{class_tree, extract_ontology, instances_of, InstanceMode};
use plantkb_core::reasoner::{check_consistency, materialize};
use plantkb_core::sparql::{evaluate, parse_query};
use plantkb_core::turtle::{parse_turtle, serialize_turtle};
use plantkb_core::{Graph, Iri, Term, Triple};
use plantkb_testkit::dot::check_dot;
use regex::Regex;

fn plant(local: &str) -> Iri {
    Iri::new(format!("{NAMESPACE}{local}")).unwrap()
}

fn names(list: &[&str]) -> BTreeSet<Iri> {
    list.iter().map(|l| plant(l)).collect()
}

fn clean() -> Graph {
    fixture_graph(CLEAN).unwrap()
}

fn materialized() -> Graph {
    let mut g = clean();
    materialize(&mut g);
    g
}

#[test]
fn four_superclasses() {
    let onto = extract_ontology(&clean());
    let tops: BTreeSet<Iri> =
        onto.classes.values().filter(|c| c.direct_supers.is_empty()).map(|c| c.iri.clone()).collect();
    assert_eq!(
        tops,
        names(&["BiologicalDevelopmentalStage", "BiologicalProcess", "BiochemicalProcess", "BiologicalProperty"])
    );
}

#[test]
fn developmental_stage_children() {
    let tree = class_tree(&clean()).unwrap();
    let kids: BTreeSet<Iri> = tree.children_of(&plant("BiologicalDevelopmentalStage")).iter().cloned().collect();
    assert_eq!(kids, names(&["Germination", "LifeSpan", "Seed", "Seedling"]));
    let traits: BTreeSet<Iri> = tree.children_of(&plant("BiologicalProperty")).iter().cloned().collect();
    assert_eq!(
        traits,
        names(&["GeneticResistance", "RegenerativeAbility", "SeedCompatibility", "Tolerance", "Viability"])
    );
}

#[test]
fn chromosome_count_is_five() {
    let g = clean();
    let hits: Vec<Triple> = g
        .iter()
        .filter(|t| t.subject == Term::Iri(plant("ArabidopsisThaliana")) && t.predicate == Term::Iri(plant("chromosomeCount")))
        .collect();
    assert_eq!(hits.len(), 1);
    let lit = hits[0].object.as_literal().unwrap();
    assert_eq!(lit.numeric_value(), Some(5.0));
}

#[test]
fn required_content_present() {
    let g = clean();
    let onto = extract_ontology(&g);
    for p in ["growsIn", "hasPart", "hasVariant", "maxHeight"] {
        let decl = &onto.properties[&plant(p)];
        assert!(decl.label.is_some(), "{p} has no label");
        assert!(!decl.domain.is_empty());
    }
    for c in onto.classes.values() {
        assert!(c.label.is_some(), "{} has no label", c.iri);
    }
    let typed = onto.individuals.values().filter(|i| !i.asserted_types.is_empty()).count();
    assert!(typed >= 2);
    assert!(g.iter().any(|t| t.predicate == Term::Iri(plant("growsIn"))));
}

#[test]
fn clean_fixture_is_clean() {
    let g = clean();
    assert!(check_consistency(&g).is_empty());
    let diags = run_checks(&g, &CheckConfig::default());
    assert!(!has_errors(&diags), "{}", render_text(&diags));
}

#[test]
fn every_class_reaches_thing_after_materialization() {
    let g = materialized();
    let thing = Term::Iri(Iri::new(owl::THING).unwrap());
    let sc = Term::Iri(Iri::new(rdfs::SUB_CLASS_OF).unwrap());
    for c in extract_ontology(&g).classes.keys() {
        let t = Triple { subject: Term::Iri(c.clone()), predicate: sc.clone(), object: thing.clone() };
        assert!(g.contains(&t), "{c} is not below owl:Thing");
    }
}

#[test]
fn sample_inherits_stage_membership() {
    let g = clean();
    let members = instances_of(&g, &plant("BiologicalDevelopmentalStage"), InstanceMode::Inferred);
    assert!(members.contains(&plant("sample1")));
    assert!(!instances_of(&g, &plant("BiologicalDevelopmentalStage"), InstanceMode::Direct).contains(&plant("sample1")));
}

#[test]
fn defect_fixtures_yield_exactly_their_codes() {
    let cfg = CheckConfig::default();
    for entry in manifest() {
        let g = fixture_graph(&entry.name).unwrap();
        let diags = run_checks(&g, &cfg);
        let errors: BTreeSet<String> = diags
            .iter()
            .filter(|d| d.code.severity() == plantkb_core::lint::Severity::Error)
            .map(|d| d.code.as_str().to_string())
            .collect();
        assert_eq!(errors, entry.expected_error_codes, "{}:\n{}", entry.name, render_text(&diags));
        assert_eq!(render_text(&diags), render_text(&run_checks(&g, &cfg)));
        assert_eq!(render_json(&diags), render_json(&run_checks(&fixture_graph(&entry.name).unwrap(), &cfg)));
    }
}

#[test]
fn one_defect_fixture_per_error_code() {
    let covered: BTreeSet<String> = manifest().into_iter().flat_map(|m| m.expected_error_codes).collect();
    let errors: BTreeSet<String> = Code::ALL
        .into_iter()
        .filter(|c| c.severity() == plantkb_core::lint::Severity::Error)
        .map(|c| c.as_str().to_string())
        .collect();
    assert_eq!(covered, errors);
}

#[test]
fn defects_are_minimal_edits() {
    let clean_lines: BTreeSet<&str> = fixture_text(CLEAN).unwrap().lines().collect();
    for entry in manifest().into_iter().filter(|m| m.name != CLEAN) {
        let text = fixture_text(&entry.name).unwrap();
        let changed = text.lines().filter(|l| !clean_lines.contains(l)).count();
        assert!(changed <= 6, "{} changes {changed} lines", entry.name);
    }
}

#[test]
fn class_count_matches_dot_nodes() {
    let text = fixture_text(CLEAN).unwrap();
    let declared = Regex::new(r"(?m)^\S+ a owl:Class\b").unwrap().find_iter(text).count();
    let dot = export_dot(&clean(), DotMode::Classes);
    let summary = check_dot(&dot).unwrap();
    assert_eq!(summary.declared_nodes.len(), declared + 1);
    assert_eq!(summary.all_nodes(), summary.declared_nodes);
    assert!(summary.declared_nodes.contains(owl::THING));
    assert_eq!(dot, export_dot(&clean(), DotMode::Classes));
}

#[test]
fn property_edges_are_labeled() {
    let dot = export_dot(&clean(), DotMode::Properties);
    let summary = check_dot(&dot).unwrap();
    let labels: BTreeSet<String> = summary
        .edges
        .iter()
        .flat_map(|(_, _, attrs)| attrs.iter().filter(|(k, _)| k == "label").map(|(_, v)| v.clone()))
        .collect();
    for p in ["growsIn", "hasPart", "hasVariant", "maxHeight"] {
        assert!(labels.contains(p), "no edge labeled {p}");
    }
}

#[test]
fn golden_queries() {
    let g = materialized();
    let expected = [
        names(&["GeneticResistance", "RegenerativeAbility", "SeedCompatibility", "Tolerance", "Viability"]),
        names(&["Germination", "LifeSpan", "Seed", "Seedling"]),
        names(&["growsIn", "hasPart", "hasVariant", "maxHeight"]),
    ];
    for (q, want) in GOLDEN_QUERIES.iter().zip(expected) {
        let rs = evaluate(&parse_query(q.text).unwrap(), &g);
        let got: Vec<Iri> = rs.rows.iter().map(|r| r[0].as_iri().unwrap().clone()).collect();
        assert_eq!(got.len(), want.len(), "{}", q.name);
        assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), want, "{}", q.name);
    }
}

#[test]
fn serialization_matches_golden_file() {
    let g = clean();
    let out = serialize_turtle(&g, g.prefixes());
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/arabidopsis.ttl");
    if std::env::var_os("PLANTKB_BLESS").is_some() {
        std::fs::write(path, &out).unwrap();
    }
    let golden = std::fs::read_to_string(path).unwrap();
    assert_eq!(out, golden);
    let back = parse_turtle(&out, None).unwrap().graph;
    assert_eq!(back.sorted_triples(), g.sorted_triples());
}
