//! Ontology checks for naming conventions, metadata completeness,
//! conciseness and referential correctness.
//!
//! | code  | severity | finding |
//! |-------|----------|---------|
//! | NC001 | error | class local name does not match the class pattern |
//! | NC002 | error | property local name does not match the property pattern |
//! | MD001 | error | class or property without `rdfs:label` |
//! | CN001 | error | asserted subclass edge already implied through another asserted superclass |
//! | CN002 | error | two or more classes share a label |
//! | CN003 | error | class with no instances, no subclasses and no domain/range use |
//! | RF001 | error | domain or range names an undeclared class |
//! | MM001 | warning | subject is both a class and an individual |
//! | CS001 | error | individual belongs to two disjoint classes |
//! | CS002 | error | cycle in the asserted subclass relation |

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use regex::Regex;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::vocab::{owl, rdf, rdfs};
use crate::model::{Graph, Iri, Term};
use crate::onto::{extract_ontology, iri_const, Ontology, PropertyKind};
use crate::reasoner::{asserted_subclass_edges, check_consistency, InconsistencyKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    Cn001,
    Cn002,
    Cn003,
    Cs001,
    Cs002,
    Md001,
    Mm001,
    Nc001,
    Nc002,
    Rf001,
}

impl Code {
    pub const ALL: [Code; 10] = [
        Code::Cn001,
        Code::Cn002,
        Code::Cn003,
        Code::Cs001,
        Code::Cs002,
        Code::Md001,
        Code::Mm001,
        Code::Nc001,
        Code::Nc002,
        Code::Rf001,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Code::Cn001 => "CN001",
            Code::Cn002 => "CN002",
            Code::Cn003 => "CN003",
            Code::Cs001 => "CS001",
            Code::Cs002 => "CS002",
            Code::Md001 => "MD001",
            Code::Mm001 => "MM001",
            Code::Nc001 => "NC001",
            Code::Nc002 => "NC002",
            Code::Rf001 => "RF001",
        }
    }

    pub fn parse(code: &str) -> Option<Code> {
        Code::ALL.into_iter().find(|c| c.as_str() == code)
    }

    pub fn severity(self) -> Severity {
        match self {
            Code::Mm001 => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Code {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "ERROR",
            Severity::Warning => "WARNING",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: Code,
    pub severity: Severity,
    #[serde(serialize_with = "serialize_iri")]
    pub subject: Iri,
    pub message: String,
}

fn serialize_iri<S: Serializer>(iri: &Iri, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(iri.as_str())
}

impl Diagnostic {
    fn new(code: Code, subject: Iri, message: String) -> Self {
        Diagnostic { code, severity: code.severity(), subject, message }
    }
}

impl fmt::Display for Diagnostic {
    /// `SEVERITY CODE <subject>: message`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} <{}>: {}", self.severity, self.code, self.subject, self.message)
    }
}

#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub enabled_codes: BTreeSet<Code>,
    pub class_name_pattern: Regex,
    pub property_name_pattern: Regex,
    pub require_labels: bool,
}

pub const DEFAULT_CLASS_PATTERN: &str = "[A-Z][A-Za-z0-9]*";
pub const DEFAULT_PROPERTY_PATTERN: &str = "[a-z][A-Za-z0-9]*";

/// Compiles `pattern` so that it must match a whole local name.
pub fn name_pattern(pattern: &str) -> Result<Regex> {
    Regex::new(&format!("^(?:{pattern})$")).map_err(|e| Error::InvalidPattern(e.to_string()))
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            enabled_codes: Code::ALL.into_iter().collect(),
            class_name_pattern: name_pattern(DEFAULT_CLASS_PATTERN).unwrap(),
            property_name_pattern: name_pattern(DEFAULT_PROPERTY_PATTERN).unwrap(),
            require_labels: true,
        }
    }
}

impl CheckConfig {
    pub fn with_class_pattern(mut self, pattern: &str) -> Result<Self> {
        self.class_name_pattern = name_pattern(pattern)?;
        Ok(self)
    }

    pub fn with_property_pattern(mut self, pattern: &str) -> Result<Self> {
        self.property_name_pattern = name_pattern(pattern)?;
        Ok(self)
    }

    pub fn without(mut self, code: Code) -> Self {
        self.enabled_codes.remove(&code);
        self
    }
}

/// Runs every enabled check. The list is ordered by code, then subject.
pub fn run_checks(graph: &Graph, cfg: &CheckConfig) -> Vec<Diagnostic> {
    let onto = extract_ontology(graph);
    let mut out = Vec::new();
    naming(&onto, cfg, &mut out);
    if cfg.require_labels {
        missing_labels(&onto, &mut out);
    }
    redundant_edges(graph, &onto, &mut out);
    duplicate_labels(&onto, &mut out);
    orphans(graph, &onto, &mut out);
    dangling_references(&onto, &mut out);
    for iri in onto.classes.keys().filter(|c| onto.individuals.contains_key(*c)) {
        out.push(Diagnostic::new(Code::Mm001, iri.clone(), "used both as a class and as an individual".into()));
    }
    consistency(graph, &mut out);

    out.retain(|d| cfg.enabled_codes.contains(&d.code));
    out.sort_by(|a, b| {
        (a.code.as_str(), &a.subject, &a.message).cmp(&(b.code.as_str(), &b.subject, &b.message))
    });
    out
}

/// Declared classes other than `owl:Thing`.
fn user_classes(onto: &Ontology) -> impl Iterator<Item = &Iri> {
    onto.classes.keys().filter(|c| c.as_str() != owl::THING)
}

fn naming(onto: &Ontology, cfg: &CheckConfig, out: &mut Vec<Diagnostic>) {
    for class in user_classes(onto) {
        let name = class.local_name();
        if !cfg.class_name_pattern.is_match(name) {
            out.push(Diagnostic::new(
                Code::Nc001,
                class.clone(),
                format!("class name `{name}` does not match /{}/", cfg.class_name_pattern),
            ));
        }
    }
    for prop in onto.properties.keys() {
        let name = prop.local_name();
        if !cfg.property_name_pattern.is_match(name) {
            out.push(Diagnostic::new(
                Code::Nc002,
                prop.clone(),
                format!("property name `{name}` does not match /{}/", cfg.property_name_pattern),
            ));
        }
    }
}

fn missing_labels(onto: &Ontology, out: &mut Vec<Diagnostic>) {
    for class in onto.classes.values().filter(|c| c.iri.as_str() != owl::THING) {
        if class.label.is_none() {
            out.push(Diagnostic::new(Code::Md001, class.iri.clone(), "class has no rdfs:label".into()));
        }
    }
    for prop in onto.properties.values() {
        if prop.label.is_none() {
            out.push(Diagnostic::new(Code::Md001, prop.iri.clone(), "property has no rdfs:label".into()));
        }
    }
}

/// An asserted edge `A ⊑ B` is redundant when `B` is reachable from another
/// asserted superclass of `A` without using that edge. Every declared class
/// counts as directly below `owl:Thing`.
fn redundant_edges(graph: &Graph, onto: &Ontology, out: &mut Vec<Diagnostic>) {
    let edges = asserted_subclass_edges(graph);
    let thing = Iri::new_unchecked(owl::THING);
    let successors = |node: &Iri, skip: (&Iri, &Iri)| -> Vec<Iri> {
        let mut next: Vec<Iri> = edges
            .get(node)
            .into_iter()
            .flatten()
            .filter(|to| (node, *to) != skip)
            .cloned()
            .collect();
        if onto.is_class(node) && *node != thing {
            next.push(thing.clone());
        }
        next
    };
    for (a, supers) in &edges {
        for b in supers {
            let via = supers.iter().filter(|c| *c != b).find(|c| {
                let mut seen = BTreeSet::from([(*c).clone()]);
                let mut queue = VecDeque::from([(*c).clone()]);
                while let Some(n) = queue.pop_front() {
                    if n == *b {
                        return true;
                    }
                    for m in successors(&n, (a, b)) {
                        if seen.insert(m.clone()) {
                            queue.push_back(m);
                        }
                    }
                }
                false
            });
            if let Some(c) = via {
                out.push(Diagnostic::new(
                    Code::Cn001,
                    a.clone(),
                    format!("subclass edge to <{b}> is already implied through <{c}>"),
                ));
            }
        }
    }
}

fn normalize_label(label: &str) -> String {
    label.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

fn duplicate_labels(onto: &Ontology, out: &mut Vec<Diagnostic>) {
    let mut by_label: BTreeMap<String, Vec<&Iri>> = BTreeMap::new();
    for class in onto.classes.values() {
        if let Some(label) = &class.label {
            by_label.entry(normalize_label(label)).or_default().push(&class.iri);
        }
    }
    for (label, classes) in by_label.into_iter().filter(|(_, v)| v.len() > 1) {
        for class in &classes {
            let others: Vec<String> = classes.iter().filter(|c| *c != class).map(|c| format!("<{c}>")).collect();
            out.push(Diagnostic::new(
                Code::Cn002,
                (*class).clone(),
                format!("label \"{label}\" is also used by {}", others.join(", ")),
            ));
        }
    }
}

fn orphans(graph: &Graph, onto: &Ontology, out: &mut Vec<Diagnostic>) {
    let uses: Vec<_> = [rdf::TYPE, rdfs::SUB_CLASS_OF, rdfs::DOMAIN, rdfs::RANGE]
        .iter()
        .filter_map(|p| graph.term_id(&iri_const(p)))
        .collect();
    for class in user_classes(onto) {
        let cid = graph.term_id(&Term::Iri(class.clone()));
        let used = uses.iter().any(|&p| graph.count_ids(None, Some(p), cid) > 0);
        if !used {
            out.push(Diagnostic::new(
                Code::Cn003,
                class.clone(),
                "class has no instances or subclasses and is not used in any domain or range".into(),
            ));
        }
    }
}

fn dangling_references(onto: &Ontology, out: &mut Vec<Diagnostic>) {
    let known = |c: &Iri| c.as_str() == owl::THING || onto.is_class(c);
    for prop in onto.properties.values() {
        for d in prop.domain.iter().filter(|d| !known(d)) {
            out.push(Diagnostic::new(Code::Rf001, prop.iri.clone(), format!("domain references undeclared class <{d}>")));
        }
        if prop.kind == PropertyKind::Object {
            for r in prop.range.iter().filter(|r| !known(r)) {
                out.push(Diagnostic::new(Code::Rf001, prop.iri.clone(), format!("range references undeclared class <{r}>")));
            }
        }
    }
}

fn consistency(graph: &Graph, out: &mut Vec<Diagnostic>) {
    for inc in check_consistency(graph) {
        let names: Vec<String> = inc.members.iter().map(|m| format!("<{m}>")).collect();
        match inc.kind {
            InconsistencyKind::DisjointnessViolation => {
                let witness = inc.witness.as_ref().map(|w| &w.subject);
                let subject = witness.and_then(Term::as_iri).unwrap_or(&inc.members[0]).clone();
                let who = witness.map(|w| w.to_string()).unwrap_or_default();
                out.push(Diagnostic::new(
                    Code::Cs001,
                    subject,
                    format!("{who} is an instance of disjoint classes {}", names.join(" and ")),
                ));
            }
            InconsistencyKind::SubclassCycle => out.push(Diagnostic::new(
                Code::Cs002,
                inc.members[0].clone(),
                format!("subclass cycle through {}", names.join(", ")),
            )),
        }
    }
}

/// One rendered line per diagnostic.
pub fn render_text(diagnostics: &[Diagnostic]) -> String {
    diagnostics.iter().map(|d| format!("{d}\n")).collect()
}

/// JSON array of `{code, severity, subject, message}` objects.
pub fn render_json(diagnostics: &[Diagnostic]) -> String {
    serde_json::to_string(diagnostics).expect("diagnostics serialize")
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(|d| d.severity == Severity::Error)
}
