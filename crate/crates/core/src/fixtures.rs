//! The bundled Arabidopsis Thaliana ontology and its seeded-defect variants.

use std::collections::BTreeSet;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::model::Graph;
use crate::turtle::parse_turtle;

/// Name of the clean fixture.
pub const CLEAN: &str = "arabidopsis";

/// Namespace of the fixture vocabulary, bound to `plant:`.
pub const NAMESPACE: &str = "http://plantkb.example/arabidopsis#";

const MANIFEST: &str = include_str!("../../../fixtures/manifest.json");

const FILES: [(&str, &str); 10] = [
    ("arabidopsis.ttl", include_str!("../../../fixtures/arabidopsis.ttl")),
    ("defects/CN001.ttl", include_str!("../../../fixtures/defects/CN001.ttl")),
    ("defects/CN002.ttl", include_str!("../../../fixtures/defects/CN002.ttl")),
    ("defects/CN003.ttl", include_str!("../../../fixtures/defects/CN003.ttl")),
    ("defects/CS001.ttl", include_str!("../../../fixtures/defects/CS001.ttl")),
    ("defects/CS002.ttl", include_str!("../../../fixtures/defects/CS002.ttl")),
    ("defects/MD001.ttl", include_str!("../../../fixtures/defects/MD001.ttl")),
    ("defects/NC001.ttl", include_str!("../../../fixtures/defects/NC001.ttl")),
    ("defects/NC002.ttl", include_str!("../../../fixtures/defects/NC002.ttl")),
    ("defects/RF001.ttl", include_str!("../../../fixtures/defects/RF001.ttl")),
];

/// A query from the golden suite run against the materialized clean fixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldenQuery {
    pub name: &'static str,
    pub text: &'static str,
}

pub const GOLDEN_QUERIES: [GoldenQuery; 3] = [
    GoldenQuery {
        name: "biological-properties",
        text: "PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>\n\
               PREFIX plant: <http://plantkb.example/arabidopsis#>\n\
               SELECT ?class WHERE { ?class rdfs:subClassOf plant:BiologicalProperty }",
    },
    GoldenQuery {
        name: "developmental-stages",
        text: "PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>\n\
               PREFIX plant: <http://plantkb.example/arabidopsis#>\n\
               SELECT ?class WHERE { ?class rdfs:subClassOf plant:BiologicalDevelopmentalStage }",
    },
    GoldenQuery {
        name: "declared-properties",
        text: "PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>\n\
               SELECT DISTINCT ?property WHERE {\n\
               ?property rdf:type ?kind .\n\
               FILTER(regex(?kind, \"#(Object|Datatype)Property$\"))\n\
               }",
    },
];

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct FixtureManifest {
    pub name: String,
    /// Relative to the `fixtures/` directory.
    pub path: String,
    pub expected_error_codes: BTreeSet<String>,
}

/// Every manifest entry, clean fixture first.
pub fn manifest() -> Vec<FixtureManifest> {
    serde_json::from_str(MANIFEST).expect("bundled manifest is valid")
}

/// Turtle source of a fixture.
pub fn fixture_text(name: &str) -> Result<&'static str> {
    let entry = manifest()
        .into_iter()
        .find(|m| m.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    FILES
        .iter()
        .find(|(path, _)| *path == entry.path)
        .map(|(_, text)| *text)
        .ok_or(Error::UnknownFixture(entry.path))
}

pub fn fixture_graph(name: &str) -> Result<Graph> {
    let outcome = parse_turtle(fixture_text(name)?, None)?;
    let mut graph = outcome.graph;
    graph.set_prefixes(outcome.prefix_map);
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_resolves_and_parses() {
        let entries = manifest();
        assert_eq!(entries.len(), FILES.len());
        assert_eq!(entries[0].name, CLEAN);
        assert!(entries[0].expected_error_codes.is_empty());
        for m in entries {
            fixture_graph(&m.name).unwrap_or_else(|e| panic!("{}: {e}", m.name));
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(fixture_graph("nope"), Err(Error::UnknownFixture(_))));
    }
}
