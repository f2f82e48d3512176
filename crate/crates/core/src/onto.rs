//! Ontology view of a graph: declared classes, properties and individuals,
//! and the `owl:Thing`-rooted class tree.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::model::vocab::{owl, rdf, rdfs};
use crate::model::{Graph, Iri, Term, TermId};
use crate::reasoner;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OntologyClass {
    pub iri: Iri,
    pub label: Option<String>,
    /// Every IRI asserted as a direct superclass, declared or not.
    pub direct_supers: BTreeSet<Iri>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PropertyKind {
    Object,
    Datatype,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Characteristic {
    Transitive,
    Symmetric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyDecl {
    pub iri: Iri,
    pub kind: PropertyKind,
    pub label: Option<String>,
    pub domain: BTreeSet<Iri>,
    pub range: BTreeSet<Iri>,
    pub characteristics: BTreeSet<Characteristic>,
    pub inverse_of: Option<Iri>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Individual {
    pub iri: Iri,
    pub asserted_types: BTreeSet<Iri>,
}

/// Classes, properties and individuals keyed by IRI.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ontology {
    pub classes: BTreeMap<Iri, OntologyClass>,
    pub properties: BTreeMap<Iri, PropertyDecl>,
    pub individuals: BTreeMap<Iri, Individual>,
}

impl Ontology {
    pub fn is_class(&self, iri: &Iri) -> bool {
        self.classes.contains_key(iri)
    }
}

pub(crate) fn iri_const(s: &str) -> Term {
    Term::Iri(Iri::new_unchecked(s))
}

/// Objects of `(subject, predicate, ?)` that are IRIs.
fn iri_objects(graph: &Graph, subject: TermId, predicate: Option<TermId>) -> BTreeSet<Iri> {
    let Some(p) = predicate else {
        return BTreeSet::new();
    };
    graph
        .match_ids(Some(subject), Some(p), None)
        .filter_map(|[_, _, o]| graph.term(o).as_iri().cloned())
        .collect()
}

/// IRI subjects of `(?, rdf:type, class)`.
fn typed_subjects(graph: &Graph, class: &str) -> BTreeSet<Iri> {
    let (Some(ty), Some(c)) = (graph.term_id(&iri_const(rdf::TYPE)), graph.term_id(&iri_const(class))) else {
        return BTreeSet::new();
    };
    graph
        .match_ids(None, Some(ty), Some(c))
        .filter_map(|[s, _, _]| graph.term(s).as_iri().cloned())
        .collect()
}

/// Preferred `rdfs:label`: an untagged label, then English, then any other,
/// ties broken by lexical order.
pub fn label_of(graph: &Graph, iri: &Iri) -> Option<String> {
    let s = graph.term_id(&Term::Iri(iri.clone()))?;
    let label = graph.term_id(&iri_const(rdfs::LABEL))?;
    graph
        .match_ids(Some(s), Some(label), None)
        .filter_map(|[_, _, o]| graph.term(o).as_literal())
        .min_by_key(|lit| {
            let rank = match lit.language() {
                None => 0,
                Some(l) if l.eq_ignore_ascii_case("en") || l.to_ascii_lowercase().starts_with("en-") => 1,
                Some(_) => 2,
            };
            (rank, lit.lexical().to_string())
        })
        .map(|lit| lit.lexical().to_string())
}

/// Collects the ontology entities declared in `graph`. Blank-node subjects
/// (anonymous class expressions) are skipped.
pub fn extract_ontology(graph: &Graph) -> Ontology {
    let id = |s: &str| graph.term_id(&iri_const(s));
    let (sub_class_of, domain, range, inverse_of) =
        (id(rdfs::SUB_CLASS_OF), id(rdfs::DOMAIN), id(rdfs::RANGE), id(owl::INVERSE_OF));

    let mut onto = Ontology::default();
    for iri in typed_subjects(graph, owl::CLASS) {
        let sid = graph.term_id(&Term::Iri(iri.clone())).expect("subject is interned");
        let class = OntologyClass {
            label: label_of(graph, &iri),
            direct_supers: iri_objects(graph, sid, sub_class_of),
            iri: iri.clone(),
        };
        onto.classes.insert(iri, class);
    }

    let transitive = typed_subjects(graph, owl::TRANSITIVE_PROPERTY);
    let symmetric = typed_subjects(graph, owl::SYMMETRIC_PROPERTY);
    let datatype_props = typed_subjects(graph, owl::DATATYPE_PROPERTY);
    let object_props = typed_subjects(graph, owl::OBJECT_PROPERTY);
    for (iri, kind) in datatype_props
        .into_iter()
        .map(|i| (i, PropertyKind::Datatype))
        .chain(object_props.into_iter().map(|i| (i, PropertyKind::Object)))
    {
        let sid = graph.term_id(&Term::Iri(iri.clone())).expect("subject is interned");
        let mut characteristics = BTreeSet::new();
        if transitive.contains(&iri) {
            characteristics.insert(Characteristic::Transitive);
        }
        if symmetric.contains(&iri) {
            characteristics.insert(Characteristic::Symmetric);
        }
        let decl = PropertyDecl {
            kind,
            label: label_of(graph, &iri),
            domain: iri_objects(graph, sid, domain),
            range: iri_objects(graph, sid, range),
            characteristics,
            inverse_of: iri_objects(graph, sid, inverse_of).into_iter().next(),
            iri: iri.clone(),
        };
        // A property typed both ways is treated as an object property.
        onto.properties.insert(iri, decl);
    }

    if let Some(ty) = id(rdf::TYPE) {
        let mut typed: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
        for [s, _, o] in graph.match_ids(None, Some(ty), None) {
            if let (Some(s), Some(o)) = (graph.term(s).as_iri(), graph.term(o).as_iri()) {
                typed.entry(s.clone()).or_default().insert(o.clone());
            }
        }
        for (iri, asserted_types) in typed {
            if asserted_types.iter().any(|t| onto.classes.contains_key(t)) {
                onto.individuals.insert(iri.clone(), Individual { iri, asserted_types });
            }
        }
    }
    onto
}

/// The class hierarchy as a tree rooted at `owl:Thing`. A class with several
/// declared parents is listed under each of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTree {
    pub root: Iri,
    pub children: BTreeMap<Iri, Vec<Iri>>,
}

impl ClassTree {
    pub fn children_of(&self, iri: &Iri) -> &[Iri] {
        self.children.get(iri).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Preorder walk from the root as `(class, depth)`; classes with several
    /// parents appear once per parent edge.
    pub fn walk(&self) -> Vec<(Iri, usize)> {
        let mut out = Vec::new();
        let mut stack = vec![(self.root.clone(), 0)];
        while let Some((node, depth)) = stack.pop() {
            for child in self.children_of(&node).iter().rev() {
                stack.push((child.clone(), depth + 1));
            }
            out.push((node, depth));
        }
        out
    }
}

/// Asserted subclass edges between declared classes (child to parents).
/// Edges to `owl:Thing` and to undeclared or anonymous classes are dropped.
fn declared_edges(onto: &Ontology) -> BTreeMap<Iri, BTreeSet<Iri>> {
    onto.classes
        .values()
        .filter(|c| c.iri.as_str() != owl::THING)
        .map(|c| {
            let parents = c
                .direct_supers
                .iter()
                .filter(|p| p.as_str() != owl::THING && onto.classes.contains_key(*p))
                .cloned()
                .collect();
            (c.iri.clone(), parents)
        })
        .collect()
}

/// Builds the class tree; fails with [`Error::SubclassCycle`] listing every
/// cycle among the declared classes.
pub fn class_tree(graph: &Graph) -> Result<ClassTree> {
    let onto = extract_ontology(graph);
    let edges = declared_edges(&onto);
    let cycles = cyclic_components(&edges);
    if !cycles.is_empty() {
        return Err(Error::SubclassCycle(cycles));
    }
    let root = Iri::new_unchecked(owl::THING);
    let mut children: BTreeMap<Iri, Vec<Iri>> = BTreeMap::new();
    children.insert(root.clone(), Vec::new());
    for (child, parents) in &edges {
        if parents.is_empty() {
            children.get_mut(&root).unwrap().push(child.clone());
        }
        for parent in parents {
            children.entry(parent.clone()).or_default().push(child.clone());
        }
    }
    for list in children.values_mut() {
        list.sort();
    }
    Ok(ClassTree { root, children })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceMode {
    /// Only asserted `rdf:type` statements.
    Direct,
    /// Membership under the reasoner's closure.
    Inferred,
}

/// IRI members of class `c`. `Inferred` evaluates on a materialized copy of
/// `graph`, which is a no-op copy when `graph` is already materialized.
pub fn instances_of(graph: &Graph, c: &Iri, mode: InstanceMode) -> BTreeSet<Iri> {
    match mode {
        InstanceMode::Direct => typed_subjects(graph, c.as_str()),
        InstanceMode::Inferred => {
            let mut closed = graph.clone();
            reasoner::materialize(&mut closed);
            typed_subjects(&closed, c.as_str())
        }
    }
}

/// Strongly connected components that contain a cycle (size ≥ 2, or a single
/// node with a self-edge), each sorted, in sorted order.
pub(crate) fn cyclic_components<N: Ord + Clone>(edges: &BTreeMap<N, BTreeSet<N>>) -> Vec<Vec<N>> {
    let mut nodes: BTreeSet<&N> = edges.keys().collect();
    nodes.extend(edges.values().flatten());
    let nodes: Vec<&N> = nodes.into_iter().collect();
    let index: BTreeMap<&N, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let n = nodes.len();
    let mut fwd = vec![Vec::new(); n];
    let mut rev = vec![Vec::new(); n];
    for (from, tos) in edges {
        for to in tos {
            fwd[index[from]].push(index[to]);
            rev[index[to]].push(index[from]);
        }
    }

    // Kosaraju: finish order on the forward graph, then components on the reverse.
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut stack = vec![(start, 0usize)];
        while let Some((v, next)) = stack.last_mut() {
            if let Some(&w) = fwd[*v].get(*next) {
                *next += 1;
                if !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(*v);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for &start in order.iter().rev() {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &rev[v] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        out.push(members);
    }
    let mut cycles: Vec<Vec<N>> = out
        .into_iter()
        .filter(|m| m.len() > 1 || fwd[m[0]].contains(&m[0]))
        .map(|m| {
            let mut v: Vec<N> = m.into_iter().map(|i| nodes[i].clone()).collect();
            v.sort();
            v
        })
        .collect();
    cycles.sort();
    cycles
}
