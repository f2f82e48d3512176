//! Random instance generators. Every generator is a pure function of the RNG
//! state, so a seed reproduces a case.

use rand::seq::SliceRandom;
use rand::Rng;

use plantkb_core::{BlankNode, Graph, Iri, Literal, PrefixMap, Term, Triple};

pub const EX: &str = "http://ex.test/";
const OTHER: &str = "http://other.test/ns#";
const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
const OWL: &str = "http://www.w3.org/2002/07/owl#";

pub fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

pub fn ex(local: &str) -> Term {
    Term::Iri(iri(&format!("{EX}{local}")))
}

fn triple(s: Term, p: Term, o: Term) -> Triple {
    Triple::new(s, p, o).unwrap()
}

/// Local names covering compactable and non-compactable shapes, including
/// characters that must be escaped inside `<...>`.
const LOCALS: &[&str] = &[
    "a", "b", "Node1", "c.d", "x-y", "_u", "1st", "a%20b", "we{ird}", "p|q", "ca^ret", "back`tick", "q\"t", "bs\\x",
    "é", "trailing.", "", "a:b",
];

fn random_iri<R: Rng>(rng: &mut R) -> Term {
    let local = LOCALS.choose(rng).unwrap();
    let ns = match rng.gen_range(0..3) {
        0 => EX,
        1 => OTHER,
        _ => "urn:x:",
    };
    let text = if ns == "urn:x:" && local.is_empty() { "urn:x:root".to_string() } else { format!("{ns}{local}") };
    Term::Iri(iri(&text))
}

fn random_string<R: Rng>(rng: &mut R) -> String {
    const PIECES: &[&str] = &["a", "plant", " ", "\"", "\\", "\n", "\t", "\r", "é", "😀", "'", "\u{7}", "x y", "#", "@en", ".", ";"];
    let n = rng.gen_range(0..6);
    (0..n).map(|_| *PIECES.choose(rng).unwrap()).collect()
}

fn random_literal<R: Rng>(rng: &mut R) -> Literal {
    match rng.gen_range(0..7) {
        0 => Literal::simple(random_string(rng)),
        1 => Literal::lang_string(random_string(rng), *["en", "en-GB", "fr"].choose(rng).unwrap()).unwrap(),
        2 => Literal::integer(rng.gen_range(-1_000_000i64..1_000_000)),
        3 => {
            let sign = if rng.gen_bool(0.3) { "-" } else { "" };
            let lex = format!("{sign}{}.{:0>2}", rng.gen_range(0..1000), rng.gen_range(0..100));
            Literal::typed(lex, iri(&format!("{XSD}decimal"))).unwrap()
        }
        4 => Literal::boolean(rng.gen_bool(0.5)),
        5 => {
            let v: f64 = rng.gen_range(-1.0e6..1.0e6);
            Literal::typed(format!("{v:e}"), iri(&format!("{XSD}double"))).unwrap()
        }
        _ => Literal::typed(random_string(rng), iri(&format!("{EX}dt"))).unwrap(),
    }
}

/// Prefixes used by [`roundtrip_graph`].
pub fn roundtrip_prefixes() -> PrefixMap {
    let mut pm = PrefixMap::standard();
    pm.insert("ex", iri(EX)).unwrap();
    pm.insert("o", iri(OTHER)).unwrap();
    pm
}

/// Blank-node-free graph of up to `max_triples` triples with IRI and
/// literal objects of at least seven datatypes.
pub fn roundtrip_graph<R: Rng>(rng: &mut R, max_triples: usize) -> Graph {
    let predicates = [RDF_TYPE.to_string(), format!("{EX}p"), format!("{EX}q"), format!("{OTHER}r"), format!("{RDFS}label")];
    let n = rng.gen_range(0..=max_triples);
    let mut g = Graph::new();
    for _ in 0..n {
        let s = random_iri(rng);
        let p = Term::Iri(iri(predicates.choose(rng).unwrap()));
        let o = if rng.gen_bool(0.5) { random_iri(rng) } else { Term::Literal(random_literal(rng)) };
        g.insert(triple(s, p, o)).unwrap();
    }
    g
}

/// Random ontology: a subclass DAG over up to 30 classes, up to 50
/// individuals, and properties with random domain, range, characteristic,
/// inverse and subproperty declarations.
pub fn random_ontology<R: Rng>(rng: &mut R) -> Graph {
    let ty = Term::Iri(iri(RDF_TYPE));
    let rdfs = |l: &str| Term::Iri(iri(&format!("{RDFS}{l}")));
    let owl = |l: &str| Term::Iri(iri(&format!("{OWL}{l}")));
    let mut g = Graph::new();
    let mut add = |s: Term, p: Term, o: Term| {
        g.insert(triple(s, p, o)).unwrap();
    };

    let n_classes = rng.gen_range(1..=30);
    let classes: Vec<Term> = (0..n_classes).map(|i| ex(&format!("C{i}"))).collect();
    for (i, c) in classes.iter().enumerate() {
        if rng.gen_bool(0.85) {
            add(c.clone(), ty.clone(), owl("Class"));
        }
        for parent in classes[..i].iter() {
            if rng.gen_bool((2.0 / (i as f64 + 1.0)).min(0.6)) {
                add(c.clone(), rdfs("subClassOf"), parent.clone());
            }
        }
    }
    if rng.gen_bool(0.2) {
        add(classes[0].clone(), rdfs("subClassOf"), owl("Thing"));
    }

    let n_individuals = rng.gen_range(0..=50);
    let individuals: Vec<Term> = (0..n_individuals)
        .map(|i| {
            if rng.gen_bool(0.1) {
                Term::BlankNode(BlankNode::new(format!("n{i}")).unwrap())
            } else {
                ex(&format!("i{i}"))
            }
        })
        .collect();
    for x in &individuals {
        for _ in 0..rng.gen_range(0..3) {
            add(x.clone(), ty.clone(), classes.choose(rng).unwrap().clone());
        }
    }

    let n_props = rng.gen_range(0..=6);
    let props: Vec<Term> = (0..n_props).map(|i| ex(&format!("p{i}"))).collect();
    for (i, p) in props.iter().enumerate() {
        if rng.gen_bool(0.5) {
            add(p.clone(), rdfs("domain"), classes.choose(rng).unwrap().clone());
        }
        if rng.gen_bool(0.5) {
            let target = if rng.gen_bool(0.15) { owl("Thing") } else { classes.choose(rng).unwrap().clone() };
            add(p.clone(), rdfs("range"), target);
        }
        if rng.gen_bool(0.25) {
            add(p.clone(), ty.clone(), owl("TransitiveProperty"));
        }
        if rng.gen_bool(0.2) {
            add(p.clone(), ty.clone(), owl("SymmetricProperty"));
        }
        if rng.gen_bool(0.2) {
            add(p.clone(), owl("inverseOf"), props.choose(rng).unwrap().clone());
        }
        if i > 0 && rng.gen_bool(0.25) {
            add(p.clone(), rdfs("subPropertyOf"), props[rng.gen_range(0..i)].clone());
        }
    }
    if !props.is_empty() && !individuals.is_empty() {
        for _ in 0..rng.gen_range(0..=40) {
            let p = props.choose(rng).unwrap().clone();
            let x = individuals.choose(rng).unwrap().clone();
            let y = if rng.gen_bool(0.15) {
                Term::Literal(Literal::integer(rng.gen_range(0..5)))
            } else {
                individuals.choose(rng).unwrap().clone()
            };
            add(x, p, y);
        }
    }
    g
}

/// Small-vocabulary graph for query tests: six nodes, three predicates,
/// integer, string and language-tagged objects, a few blank subjects.
pub fn query_graph<R: Rng>(rng: &mut R, max_triples: usize) -> Graph {
    let mut g = Graph::new();
    for _ in 0..rng.gen_range(0..=max_triples) {
        let s = if rng.gen_bool(0.1) {
            Term::BlankNode(BlankNode::new(format!("b{}", rng.gen_range(0..2))).unwrap())
        } else {
            ex(&format!("n{}", rng.gen_range(0..6)))
        };
        let p = ex(&format!("p{}", rng.gen_range(0..3)));
        let o = match rng.gen_range(0..10) {
            0..=5 => ex(&format!("n{}", rng.gen_range(0..6))),
            6 | 7 => Term::Literal(Literal::integer(rng.gen_range(0..5))),
            8 => Term::Literal(Literal::simple(*["a", "b"].choose(rng).unwrap())),
            _ => Term::Literal(Literal::lang_string("a", "en").unwrap()),
        };
        g.insert(triple(s, p, o)).unwrap();
    }
    g
}

/// A query over the [`query_graph`] vocabulary, kept in parts so callers can
/// permute patterns and attach modifiers.
#[derive(Debug, Clone)]
pub struct RandomQuery {
    pub patterns: Vec<[String; 3]>,
    pub filter: Option<String>,
    /// `None` selects `*`.
    pub select: Option<Vec<String>>,
}

impl RandomQuery {
    pub fn text(&self) -> String {
        let order: Vec<usize> = (0..self.patterns.len()).collect();
        self.text_with(&order, false, "")
    }

    /// Query text with patterns in `order`, optional DISTINCT and a trailing
    /// modifier clause.
    pub fn text_with(&self, order: &[usize], distinct: bool, modifiers: &str) -> String {
        let select = match &self.select {
            None => "*".to_string(),
            Some(vars) => vars.iter().map(|v| format!("?{v}")).collect::<Vec<_>>().join(" "),
        };
        let body: Vec<String> = order.iter().map(|&i| self.patterns[i].join(" ")).collect();
        let filter = self.filter.as_ref().map(|f| format!(" FILTER({f})")).unwrap_or_default();
        format!(
            "PREFIX ex: <{EX}>\nSELECT {}{select} WHERE {{ {} .{filter} }} {modifiers}",
            if distinct { "DISTINCT " } else { "" },
            body.join(" . ")
        )
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for p in &self.patterns {
            for t in p {
                if let Some(v) = t.strip_prefix('?') {
                    if !out.iter().any(|o| o == v) {
                        out.push(v.to_string());
                    }
                }
            }
        }
        out
    }
}

fn node_text<R: Rng>(rng: &mut R) -> String {
    format!("ex:n{}", rng.gen_range(0..6))
}

fn object_text<R: Rng>(rng: &mut R) -> String {
    match rng.gen_range(0..6) {
        0..=2 => node_text(rng),
        3 => rng.gen_range(0..5).to_string(),
        4 => format!("\"{}\"", ["a", "b"].choose(rng).unwrap()),
        _ => "\"a\"@en".to_string(),
    }
}

/// 1 to 3 patterns over at most 3 variables, with an optional FILTER.
pub fn random_query<R: Rng>(rng: &mut R) -> RandomQuery {
    let var = |rng: &mut R| format!("?{}", ["a", "b", "c"].choose(rng).unwrap());
    let n = rng.gen_range(1..=3);
    let patterns: Vec<[String; 3]> = (0..n)
        .map(|_| {
            let s = if rng.gen_bool(0.7) { var(rng) } else { node_text(rng) };
            let p = if rng.gen_bool(0.4) { var(rng) } else { format!("ex:p{}", rng.gen_range(0..3)) };
            let o = if rng.gen_bool(0.6) { var(rng) } else { object_text(rng) };
            [s, p, o]
        })
        .collect();
    let mut q = RandomQuery { patterns, filter: None, select: None };
    let vars = q.vars();
    if !vars.is_empty() && rng.gen_bool(0.4) {
        let v = vars.choose(rng).unwrap();
        q.filter = Some(match rng.gen_range(0..4) {
            0 => format!("?{v} {} {}", ["=", "!=", "<", "<=", ">", ">="].choose(rng).unwrap(), rng.gen_range(0..5)),
            1 => format!("?{v} {} {}", ["=", "!="].choose(rng).unwrap(), node_text(rng)),
            2 => format!("regex(?{v}, \"{}\")", ["n[0-2]$", "^a", "p1", "^[0-3]$"].choose(rng).unwrap()),
            _ => format!("?{v} = {}", object_text(rng)),
        });
    }
    if !vars.is_empty() && rng.gen_bool(0.5) {
        let mut chosen: Vec<String> = vars.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
        if chosen.is_empty() {
            chosen.push(vars[0].clone());
        }
        chosen.shuffle(rng);
        q.select = Some(chosen);
    }
    q
}

/// Deterministic graph of exactly `n` triples over `n / 10` subjects, used to
/// measure index selectivity.
pub fn synthetic_graph(n: usize) -> Graph {
    let mut g = Graph::new();
    let subjects = (n / 10).max(1);
    let mut i = 0;
    while g.len() < n {
        let s = ex(&format!("s{}", i % subjects));
        let p = ex(&format!("p{}", (i / subjects) % 7));
        let o = ex(&format!("o{}", i));
        g.insert(triple(s, p, o)).unwrap();
        i += 1;
    }
    g
}
