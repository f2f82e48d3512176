//! Naive fixpoint of the materialization rules at term level, and a
//! Floyd-Warshall transitive closure.

use std::collections::{BTreeMap, BTreeSet};

use plantkb_core::{Iri, Term, Triple};

const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const SUB_CLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
const SUB_PROPERTY_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
const DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
const RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";
const OWL_CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
const OWL_THING: &str = "http://www.w3.org/2002/07/owl#Thing";
const INVERSE_OF: &str = "http://www.w3.org/2002/07/owl#inverseOf";
const TRANSITIVE: &str = "http://www.w3.org/2002/07/owl#TransitiveProperty";
const SYMMETRIC: &str = "http://www.w3.org/2002/07/owl#SymmetricProperty";

fn iri(s: &str) -> Term {
    Term::Iri(Iri::new(s).unwrap())
}

/// Applies every rule to the whole graph until nothing changes.
pub fn rule_closure(input: &BTreeSet<Triple>) -> BTreeSet<Triple> {
    let ty = iri(RDF_TYPE);
    let sc = iri(SUB_CLASS_OF);
    let thing = iri(OWL_THING);
    let class = iri(OWL_CLASS);
    let (sp, dom, rng) = (iri(SUB_PROPERTY_OF), iri(DOMAIN), iri(RANGE));
    let (inv, trans, sym) = (iri(INVERSE_OF), iri(TRANSITIVE), iri(SYMMETRIC));

    let mut g = input.clone();
    loop {
        let mut new: Vec<(Term, Term, Term)> = Vec::new();
        let mut by_pred: BTreeMap<&Term, Vec<(&Term, &Term)>> = BTreeMap::new();
        let mut succ: BTreeMap<(&Term, &Term), Vec<&Term>> = BTreeMap::new();
        for t in &g {
            by_pred.entry(&t.predicate).or_default().push((&t.subject, &t.object));
            succ.entry((&t.predicate, &t.subject)).or_default().push(&t.object);
        }
        let uses = |p: &Term| by_pred.get(p).cloned().unwrap_or_default();
        let next = |p: &Term, s: &Term| succ.get(&(p, s)).cloned().unwrap_or_default();
        let typed = |x: &Term, c: &Term| g.contains(&Triple { subject: x.clone(), predicate: ty.clone(), object: c.clone() });
        let typed_as = |c: &Term| uses(&ty).into_iter().filter(|(_, o)| *o == c).map(|(s, _)| s).collect::<Vec<_>>();

        for (a, b) in uses(&sc) {
            for c in next(&sc, b) {
                if a != c {
                    new.push((a.clone(), sc.clone(), c.clone()));
                }
            }
        }
        for (x, a) in uses(&ty) {
            for b in next(&sc, a) {
                new.push((x.clone(), ty.clone(), b.clone()));
            }
        }
        for (p, c) in uses(&dom) {
            for (x, _) in uses(p) {
                new.push((x.clone(), ty.clone(), c.clone()));
            }
        }
        for (p, c) in uses(&rng) {
            if *c == thing || typed(c, &class) {
                for (_, y) in uses(p) {
                    new.push((y.clone(), ty.clone(), c.clone()));
                }
            }
        }
        for (p, q) in uses(&sp) {
            for (x, y) in uses(p) {
                new.push((x.clone(), q.clone(), y.clone()));
            }
        }
        for p in typed_as(&trans) {
            for (x, y) in uses(p) {
                for z in next(p, y) {
                    new.push((x.clone(), p.clone(), z.clone()));
                }
            }
        }
        for (p, q) in uses(&inv) {
            for (x, y) in uses(p) {
                new.push((y.clone(), q.clone(), x.clone()));
            }
        }
        for p in typed_as(&sym) {
            for (x, y) in uses(p) {
                new.push((y.clone(), p.clone(), x.clone()));
            }
        }
        for c in typed_as(&class) {
            if *c != thing {
                new.push((c.clone(), sc.clone(), thing.clone()));
            }
        }

        let before = g.len();
        for (s, p, o) in new {
            if !s.is_literal() && p.is_iri() {
                g.insert(Triple { subject: s, predicate: p, object: o });
            }
        }
        if g.len() == before {
            return g;
        }
    }
}

/// Reflexive-free transitive closure of `edges` by Floyd-Warshall. A pair
/// `(a, a)` appears only when `a` lies on a cycle.
pub fn transitive_closure<N: Ord + Clone>(edges: &BTreeSet<(N, N)>) -> BTreeSet<(N, N)> {
    let nodes: Vec<N> = edges
        .iter()
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index = |n: &N| nodes.binary_search(n).unwrap();
    let n = nodes.len();
    let mut reach = vec![vec![false; n]; n];
    for (a, b) in edges {
        reach[index(a)][index(b)] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                let via = reach[k].clone();
                for (cell, &r) in reach[i].iter_mut().zip(&via) {
                    *cell |= r;
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if reach[i][j] {
                out.insert((nodes[i].clone(), nodes[j].clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str, p: &str, o: &str) -> Triple {
        Triple::new(Iri::new(s).unwrap(), Iri::new(p).unwrap(), Iri::new(o).unwrap()).unwrap()
    }

    #[test]
    fn chain() {
        let g: BTreeSet<Triple> =
            [t("http://e/a", SUB_CLASS_OF, "http://e/b"), t("http://e/b", SUB_CLASS_OF, "http://e/c")].into();
        let c = rule_closure(&g);
        assert!(c.contains(&t("http://e/a", SUB_CLASS_OF, "http://e/c")));
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn floyd() {
        let e: BTreeSet<(u8, u8)> = [(1, 2), (2, 3), (3, 4)].into();
        let c = transitive_closure(&e);
        assert_eq!(c.len(), 6);
        assert!(c.contains(&(1, 4)));
        let cyc = transitive_closure(&BTreeSet::from([(1u8, 2u8), (2, 1)]));
        assert!(cyc.contains(&(1, 1)));
    }
}
