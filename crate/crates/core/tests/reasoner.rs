use std::collections::BTreeSet;

use plantkb_core::reasoner::{check_consistency, materialize, InconsistencyKind};
use plantkb_core::turtle::parse_turtle;
use plantkb_core::{Graph, Iri, Triple};
use plantkb_testkit::closure::{rule_closure, transitive_closure};
use plantkb_testkit::gen::{ex, random_ontology};
use plantkb_testkit::rng;
use proptest::prelude::*;
use rand::Rng;

const SC: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";

fn set(g: &Graph) -> BTreeSet<Triple> {
    g.iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn materialization_matches_naive_closure(seed in any::<u64>()) {
        let input = random_ontology(&mut rng(seed));
        let mut g = input.clone();
        let result = materialize(&mut g);
        let expected = rule_closure(&set(&input));
        prop_assert_eq!(set(&g), expected.clone());

        let added: BTreeSet<Triple> = result.added.keys().cloned().collect();
        let fresh: BTreeSet<Triple> = expected.difference(&set(&input)).cloned().collect();
        prop_assert_eq!(added, fresh);
        prop_assert_eq!(result.rule_counts.values().sum::<usize>(), result.added_count());
        let cap = g.distinct_terms().max(2).pow(2);
        prop_assert!(result.iterations <= cap);
    }

    #[test]
    fn materialization_is_idempotent(seed in any::<u64>()) {
        let mut g = random_ontology(&mut rng(seed));
        materialize(&mut g);
        let once = g.clone();
        let again = materialize(&mut g);
        prop_assert_eq!(again.added_count(), 0);
        prop_assert_eq!(again.iterations, 1);
        prop_assert_eq!(g, once);
    }

    #[test]
    fn materialization_is_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let full = random_ontology(&mut r);
        let mut part: Graph = full.iter().filter(|_| r.gen_bool(0.6)).collect();
        let mut big = full.clone();
        materialize(&mut part);
        materialize(&mut big);
        prop_assert!(part.iter().all(|t| big.contains(&t)));
    }

    #[test]
    fn subclass_closure_matches_floyd(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..25);
        let mut edges = BTreeSet::new();
        for i in 0..n {
            for j in 0..i {
                if r.gen_bool(0.2) {
                    edges.insert((i, j));
                }
            }
        }
        let sc = Iri::new(SC).unwrap();
        let class = |i: usize| ex(&format!("C{i}")).as_iri().unwrap().clone();
        let mut g: Graph = edges.iter().map(|&(a, b)| Triple::new(class(a), sc.clone(), class(b)).unwrap()).collect();
        materialize(&mut g);
        let expected: BTreeSet<Triple> = transitive_closure(&edges)
            .into_iter()
            .map(|(a, b)| Triple::new(class(a), sc.clone(), class(b)).unwrap())
            .collect();
        prop_assert_eq!(set(&g), expected);
    }
}

#[test]
fn cycles_do_not_produce_reflexive_edges() {
    let mut g = parse_turtle(
        "@prefix ex: <http://ex.test/> . @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n\
         ex:A rdfs:subClassOf ex:B . ex:B rdfs:subClassOf ex:C . ex:C rdfs:subClassOf ex:A .",
        None,
    )
    .unwrap()
    .graph;
    materialize(&mut g);
    assert_eq!(g.len(), 6);
    assert!(g.iter().all(|t| t.subject != t.object));
}

#[test]
fn consistency_reports_each_problem_once() {
    let g = parse_turtle(
        "@prefix ex: <http://ex.test/> . @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n\
         @prefix owl: <http://www.w3.org/2002/07/owl#> .\n\
         ex:A owl:disjointWith ex:B . ex:B owl:disjointWith ex:A .\n\
         ex:x a ex:A , ex:B .\n\
         ex:C rdfs:subClassOf ex:D . ex:D rdfs:subClassOf ex:C .",
        None,
    )
    .unwrap()
    .graph;
    let found = check_consistency(&g);
    assert_eq!(found.len(), 2);
    assert_eq!(found[0].kind, InconsistencyKind::DisjointnessViolation);
    assert_eq!(found[0].members, [ex("A").as_iri().unwrap().clone(), ex("B").as_iri().unwrap().clone()]);
    assert_eq!(found[0].witness.as_ref().unwrap().subject, ex("x"));
    assert_eq!(found[1].kind, InconsistencyKind::SubclassCycle);
    assert_eq!(found[1].members.len(), 2);
}
