//! Forward-chaining materialization over a fixed rule set, plus consistency
//! checks (disjointness violations and subclass cycles).
//!
//! | rule | premises | conclusion |
//! |------|----------|------------|
//! | `SUBCLASS_TRANS` | A ⊑ B, B ⊑ C, A ≠ C | A ⊑ C |
//! | `TYPE_INHERIT` | x : A, A ⊑ B | x : B |
//! | `DOMAIN_INFER` | x p y, p domain C | x : C |
//! | `RANGE_INFER` | x p y, p range C, C a class | y : C |
//! | `SUBPROP_INHERIT` | x p y, p ⊑ q | x q y |
//! | `TRANSITIVE_PROP` | p transitive, x p y, y p z | x p z |
//! | `INVERSE_PROP` | x p y, p inverseOf q | y q x |
//! | `SYMMETRIC_PROP` | p symmetric, x p y | y p x |
//! | `THING_MEMBERSHIP` | C a owl:Class, C ≠ owl:Thing | C ⊑ owl:Thing |
//!
//! "C a class" means `C rdf:type owl:Class` holds or C is `owl:Thing`.
//! Conclusions that would put a literal in subject position or a non-IRI in
//! predicate position are not produced.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::model::vocab::{owl, rdf, rdfs};
use crate::model::{Graph, Iri, Term, TermId, Triple};
use crate::onto::{cyclic_components, iri_const};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    SubclassTrans,
    TypeInherit,
    DomainInfer,
    RangeInfer,
    SubpropInherit,
    TransitiveProp,
    InverseProp,
    SymmetricProp,
    ThingMembership,
}

impl RuleId {
    pub const ALL: [RuleId; 9] = [
        RuleId::SubclassTrans,
        RuleId::TypeInherit,
        RuleId::DomainInfer,
        RuleId::RangeInfer,
        RuleId::SubpropInherit,
        RuleId::TransitiveProp,
        RuleId::InverseProp,
        RuleId::SymmetricProp,
        RuleId::ThingMembership,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::SubclassTrans => "SUBCLASS_TRANS",
            RuleId::TypeInherit => "TYPE_INHERIT",
            RuleId::DomainInfer => "DOMAIN_INFER",
            RuleId::RangeInfer => "RANGE_INFER",
            RuleId::SubpropInherit => "SUBPROP_INHERIT",
            RuleId::TransitiveProp => "TRANSITIVE_PROP",
            RuleId::InverseProp => "INVERSE_PROP",
            RuleId::SymmetricProp => "SYMMETRIC_PROP",
            RuleId::ThingMembership => "THING_MEMBERSHIP",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InferenceResult {
    /// Each inferred triple with the rule that first derived it.
    pub added: BTreeMap<Triple, RuleId>,
    /// Evaluation rounds run, including the final round that found nothing new.
    pub iterations: usize,
    pub rule_counts: BTreeMap<RuleId, usize>,
}

impl InferenceResult {
    pub fn added_count(&self) -> usize {
        self.added.len()
    }
}

struct Vocab {
    ty: TermId,
    sub_class_of: TermId,
    sub_property_of: TermId,
    domain: TermId,
    range: TermId,
    inverse_of: TermId,
    class: TermId,
    thing: TermId,
    transitive: TermId,
    symmetric: TermId,
}

impl Vocab {
    fn intern(graph: &mut Graph) -> Self {
        let mut id = |s: &str| graph.intern(&iri_const(s));
        Vocab {
            ty: id(rdf::TYPE),
            sub_class_of: id(rdfs::SUB_CLASS_OF),
            sub_property_of: id(rdfs::SUB_PROPERTY_OF),
            domain: id(rdfs::DOMAIN),
            range: id(rdfs::RANGE),
            inverse_of: id(owl::INVERSE_OF),
            class: id(owl::CLASS),
            thing: id(owl::THING),
            transitive: id(owl::TRANSITIVE_PROPERTY),
            symmetric: id(owl::SYMMETRIC_PROPERTY),
        }
    }
}

struct Round<'g> {
    graph: &'g Graph,
    v: &'g Vocab,
    seen: HashSet<[TermId; 3]>,
    found: Vec<([TermId; 3], RuleId)>,
}

impl Round<'_> {
    fn emit(&mut self, s: TermId, p: TermId, o: TermId, rule: RuleId) {
        if self.graph.contains_ids(s, p, o) || self.graph.term(s).is_literal() || !self.graph.term(p).is_iri() {
            return;
        }
        if self.seen.insert([s, p, o]) {
            self.found.push(([s, p, o], rule));
        }
    }

    fn is_class(&self, c: TermId) -> bool {
        c == self.v.thing || self.graph.contains_ids(c, self.v.ty, self.v.class)
    }

    fn uses(&self, p: TermId) -> Vec<[TermId; 3]> {
        self.graph.match_ids(None, Some(p), None).collect()
    }

    /// Every conclusion that has `(s, p, o)` as one of its premises, with the
    /// remaining premises taken from the current graph.
    fn fire(&mut self, [s, p, o]: [TermId; 3]) {
        let g = self.graph;
        let v = self.v;

        // (s p o) as an ordinary property assertion.
        for [_, _, c] in g.match_ids(Some(p), Some(v.domain), None) {
            self.emit(s, v.ty, c, RuleId::DomainInfer);
        }
        for [_, _, c] in g.match_ids(Some(p), Some(v.range), None) {
            if self.is_class(c) {
                self.emit(o, v.ty, c, RuleId::RangeInfer);
            }
        }
        for [_, _, q] in g.match_ids(Some(p), Some(v.sub_property_of), None) {
            self.emit(s, q, o, RuleId::SubpropInherit);
        }
        for [_, _, q] in g.match_ids(Some(p), Some(v.inverse_of), None) {
            self.emit(o, q, s, RuleId::InverseProp);
        }
        if g.contains_ids(p, v.ty, v.symmetric) {
            self.emit(o, p, s, RuleId::SymmetricProp);
        }
        if g.contains_ids(p, v.ty, v.transitive) {
            for [_, _, z] in g.match_ids(Some(o), Some(p), None) {
                self.emit(s, p, z, RuleId::TransitiveProp);
            }
            for [w, _, _] in g.match_ids(None, Some(p), Some(s)) {
                self.emit(w, p, o, RuleId::TransitiveProp);
            }
        }

        if p == v.sub_class_of {
            for [_, _, c] in g.match_ids(Some(o), Some(v.sub_class_of), None) {
                if c != s {
                    self.emit(s, v.sub_class_of, c, RuleId::SubclassTrans);
                }
            }
            for [a, _, _] in g.match_ids(None, Some(v.sub_class_of), Some(s)) {
                if a != o {
                    self.emit(a, v.sub_class_of, o, RuleId::SubclassTrans);
                }
            }
            for [x, _, _] in g.match_ids(None, Some(v.ty), Some(s)) {
                self.emit(x, v.ty, o, RuleId::TypeInherit);
            }
        }

        if p == v.ty {
            for [_, _, b] in g.match_ids(Some(o), Some(v.sub_class_of), None) {
                self.emit(s, v.ty, b, RuleId::TypeInherit);
            }
            if o == v.class {
                if s != v.thing {
                    self.emit(s, v.sub_class_of, v.thing, RuleId::ThingMembership);
                }
                // s just became a class: ranges naming it now apply.
                for [q, _, _] in g.match_ids(None, Some(v.range), Some(s)) {
                    for [_, _, y] in self.uses(q) {
                        self.emit(y, v.ty, s, RuleId::RangeInfer);
                    }
                }
            }
            if o == v.symmetric {
                for [x, _, y] in self.uses(s) {
                    self.emit(y, s, x, RuleId::SymmetricProp);
                }
            }
            if o == v.transitive {
                for [x, _, y] in self.uses(s) {
                    for [_, _, z] in g.match_ids(Some(y), Some(s), None) {
                        self.emit(x, s, z, RuleId::TransitiveProp);
                    }
                }
            }
        }

        if p == v.domain {
            for [x, _, _] in self.uses(s) {
                self.emit(x, v.ty, o, RuleId::DomainInfer);
            }
        }
        if p == v.range && self.is_class(o) {
            for [_, _, y] in self.uses(s) {
                self.emit(y, v.ty, o, RuleId::RangeInfer);
            }
        }
        if p == v.sub_property_of {
            for [x, _, y] in self.uses(s) {
                self.emit(x, o, y, RuleId::SubpropInherit);
            }
        }
        if p == v.inverse_of {
            for [x, _, y] in self.uses(s) {
                self.emit(y, o, x, RuleId::InverseProp);
            }
        }
    }
}

/// Extends `graph` to the least fixpoint of the rule set using semi-naive
/// evaluation: each round only joins triples new in the previous round
/// against the full graph.
///
/// Panics if the round count exceeds the square of the number of distinct
/// terms, which would indicate a non-terminating rule.
pub fn materialize(graph: &mut Graph) -> InferenceResult {
    let v = Vocab::intern(graph);
    let mut result = InferenceResult::default();
    let mut delta: Vec<[TermId; 3]> = graph.match_ids(None, None, None).collect();
    loop {
        result.iterations += 1;
        let cap = graph.distinct_terms().max(2).pow(2);
        assert!(
            result.iterations <= cap,
            "materialization exceeded {cap} rounds; rule set is not terminating"
        );
        let mut round = Round { graph, v: &v, seen: HashSet::new(), found: Vec::new() };
        for &t in &delta {
            round.fire(t);
        }
        let found = round.found;
        if found.is_empty() {
            break;
        }
        delta = Vec::with_capacity(found.len());
        for (ids @ [s, p, o], rule) in found {
            graph.insert_ids(s, p, o);
            *result.rule_counts.entry(rule).or_default() += 1;
            result.added.insert(graph.decode(ids), rule);
            delta.push(ids);
        }
    }
    result
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum InconsistencyKind {
    DisjointnessViolation,
    SubclassCycle,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Inconsistency {
    pub kind: InconsistencyKind,
    /// The disjoint pair, or the classes of one cycle (sorted).
    pub members: Vec<Iri>,
    /// For disjointness: `(individual, rdf:type, first class)`.
    pub witness: Option<Triple>,
}

/// Asserted `rdfs:subClassOf` edges between IRIs.
pub(crate) fn asserted_subclass_edges(graph: &Graph) -> BTreeMap<Iri, BTreeSet<Iri>> {
    let mut edges: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
    if let Some(sc) = graph.term_id(&iri_const(rdfs::SUB_CLASS_OF)) {
        for [s, _, o] in graph.match_ids(None, Some(sc), None) {
            if let (Some(a), Some(b)) = (graph.term(s).as_iri(), graph.term(o).as_iri()) {
                edges.entry(a.clone()).or_default().insert(b.clone());
            }
        }
    }
    edges
}

/// Disjointness violations under the closure of `graph` and cycles in its
/// asserted subclass relation. Materializes a copy; `graph` is untouched.
pub fn check_consistency(graph: &Graph) -> Vec<Inconsistency> {
    let mut out = Vec::new();

    let mut closed = graph.clone();
    materialize(&mut closed);
    let ids = |s: &str| closed.term_id(&iri_const(s));
    if let (Some(disjoint), Some(ty)) = (ids(owl::DISJOINT_WITH), ids(rdf::TYPE)) {
        let mut pairs: BTreeSet<(TermId, TermId)> = BTreeSet::new();
        for [a, _, b] in closed.match_ids(None, Some(disjoint), None) {
            if closed.term(a).is_iri() && closed.term(b).is_iri() {
                let (x, y) = if closed.term(a) <= closed.term(b) { (a, b) } else { (b, a) };
                pairs.insert((x, y));
            }
        }
        for (a, b) in pairs {
            let in_a: BTreeSet<TermId> = closed.match_ids(None, Some(ty), Some(a)).map(|[s, ..]| s).collect();
            let mut shared: Vec<&Term> = closed
                .match_ids(None, Some(ty), Some(b))
                .map(|[s, ..]| s)
                .filter(|s| in_a.contains(s))
                .map(|s| closed.term(s))
                .collect();
            shared.sort();
            let (ca, cb) = (closed.term(a).as_iri().unwrap(), closed.term(b).as_iri().unwrap());
            for x in shared {
                out.push(Inconsistency {
                    kind: InconsistencyKind::DisjointnessViolation,
                    members: vec![ca.clone(), cb.clone()],
                    witness: Some(Triple {
                        subject: x.clone(),
                        predicate: iri_const(rdf::TYPE),
                        object: Term::Iri(ca.clone()),
                    }),
                });
            }
        }
    }

    for members in cyclic_components(&asserted_subclass_edges(graph)) {
        out.push(Inconsistency { kind: InconsistencyKind::SubclassCycle, members, witness: None });
    }
    out.sort();
    out
}
