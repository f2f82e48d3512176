//! Graphviz DOT export of the class hierarchy and of property signatures.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::model::vocab::{owl, rdfs};
use crate::model::{Graph, Iri};
use crate::onto::{extract_ontology, label_of, PropertyKind};
use crate::reasoner::asserted_subclass_edges;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotMode {
    /// Subclass hierarchy rooted at `owl:Thing`; edges point from superclass to subclass.
    Classes,
    /// One edge per property from each domain to each range, labelled with the property name.
    Properties,
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn display_label(graph: &Graph, iri: &Iri) -> String {
    label_of(graph, iri).unwrap_or_else(|| iri.local_name().to_string())
}

pub fn export_dot(graph: &Graph, mode: DotMode) -> String {
    match mode {
        DotMode::Classes => classes(graph),
        DotMode::Properties => properties(graph),
    }
}

fn classes(graph: &Graph) -> String {
    let onto = extract_ontology(graph);
    let thing = Iri::new_unchecked(owl::THING);
    let mut nodes: BTreeSet<Iri> = onto.classes.keys().cloned().collect();
    nodes.insert(thing.clone());

    let asserted = asserted_subclass_edges(graph);
    let mut edges: BTreeSet<(Iri, Iri)> = BTreeSet::new();
    for class in nodes.iter().filter(|c| **c != thing) {
        let supers: Vec<&Iri> = asserted
            .get(class)
            .into_iter()
            .flatten()
            .filter(|s| nodes.contains(*s) && *s != class)
            .collect();
        if supers.is_empty() {
            edges.insert((thing.clone(), class.clone()));
        }
        for s in supers {
            edges.insert((s.clone(), class.clone()));
        }
    }

    let mut out = String::from("digraph classes {\n  rankdir=TB;\n  node [shape=ellipse];\n");
    for n in &nodes {
        writeln!(out, "  {} [label={}];", quote(n.as_str()), quote(&display_label(graph, n))).unwrap();
    }
    for (from, to) in &edges {
        writeln!(out, "  {} -> {};", quote(from.as_str()), quote(to.as_str())).unwrap();
    }
    out.push_str("}\n");
    out
}

fn properties(graph: &Graph) -> String {
    let onto = extract_ontology(graph);
    let thing = Iri::new_unchecked(owl::THING);
    let literal = Iri::new_unchecked(rdfs::LITERAL);

    // node -> is a datatype
    let mut nodes: BTreeMap<Iri, bool> = onto.classes.keys().map(|c| (c.clone(), false)).collect();
    let mut edges: BTreeSet<(Iri, Iri, String)> = BTreeSet::new();
    for prop in onto.properties.values() {
        let datatype = prop.kind == PropertyKind::Datatype;
        let domains: Vec<Iri> = if prop.domain.is_empty() { vec![thing.clone()] } else { prop.domain.iter().cloned().collect() };
        let ranges: Vec<Iri> = match (prop.range.is_empty(), datatype) {
            (false, _) => prop.range.iter().cloned().collect(),
            (true, false) => vec![thing.clone()],
            (true, true) => vec![literal.clone()],
        };
        for d in &domains {
            nodes.entry(d.clone()).or_insert(false);
            for r in &ranges {
                nodes.entry(r.clone()).or_insert(datatype);
                edges.insert((d.clone(), r.clone(), prop.iri.local_name().to_string()));
            }
        }
    }

    let mut out = String::from("digraph properties {\n  rankdir=LR;\n");
    for (n, is_datatype) in &nodes {
        let shape = if *is_datatype { "box" } else { "ellipse" };
        writeln!(out, "  {} [label={}, shape={shape}];", quote(n.as_str()), quote(&display_label(graph, n))).unwrap();
    }
    for (from, to, label) in &edges {
        writeln!(out, "  {} -> {} [label={}];", quote(from.as_str()), quote(to.as_str()), quote(label)).unwrap();
    }
    out.push_str("}\n");
    out
}
