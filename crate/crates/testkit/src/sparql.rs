//! Brute-force query semantics: try every assignment of graph terms to the
//! query variables and keep those satisfying all patterns and filters.

use std::collections::BTreeSet;

use plantkb_core::sparql::{FilterExpr, FilterOp, FilterOperand, PatternTerm, Query};
use plantkb_core::{Graph, Term, Triple};

const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
const NUMERIC: &[&str] = &[
    "integer", "decimal", "double", "float", "int", "long", "short", "byte", "nonNegativeInteger",
    "nonPositiveInteger", "positiveInteger", "negativeInteger", "unsignedLong", "unsignedInt", "unsignedShort",
    "unsignedByte",
];

fn number(t: &Term) -> Option<f64> {
    let lit = t.as_literal()?;
    let local = lit.datatype().as_str().strip_prefix(XSD)?;
    if !NUMERIC.contains(&local) {
        return None;
    }
    match lit.lexical() {
        "INF" | "+INF" => Some(f64::INFINITY),
        "-INF" => Some(f64::NEG_INFINITY),
        s => s.parse().ok(),
    }
}

fn passes(f: &FilterExpr, v: &Term) -> bool {
    let c = match &f.right {
        FilterOperand::Pattern(re) => {
            return match v {
                Term::Iri(i) => re.is_match(i.as_str()),
                Term::Literal(l) => re.is_match(l.lexical()),
                Term::BlankNode(_) => false,
            }
        }
        FilterOperand::Term(c) => c,
    };
    match (number(v), number(c)) {
        (Some(a), Some(b)) => match f.op {
            FilterOp::Eq => a == b,
            FilterOp::Ne => a != b && !a.is_nan() && !b.is_nan(),
            FilterOp::Lt => a < b,
            FilterOp::Le => a <= b,
            FilterOp::Gt => a > b,
            FilterOp::Ge => a >= b,
            FilterOp::Regex => false,
        },
        _ => match f.op {
            FilterOp::Eq => v == c,
            FilterOp::Ne => v != c,
            _ => false,
        },
    }
}

/// Projected rows of `query` over `graph` before DISTINCT, ORDER BY and
/// slicing, in no particular order.
pub fn brute_force(query: &Query, graph: &Graph) -> Vec<Vec<Term>> {
    let terms: Vec<Term> = graph
        .iter()
        .flat_map(|t| [t.subject, t.predicate, t.object])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let vars = query.pattern_vars();
    let projection = query.projection();
    if query.filters.iter().any(|f| !vars.contains(&f.left)) {
        return Vec::new();
    }
    if !vars.is_empty() && terms.is_empty() {
        return Vec::new();
    }

    let mut rows = Vec::new();
    let mut counter = vec![0usize; vars.len()];
    loop {
        let value = |name: &str| &terms[counter[vars.iter().position(|v| v == name).unwrap()]];
        let resolve = |pt: &PatternTerm| match pt {
            PatternTerm::Var(v) => value(v).clone(),
            PatternTerm::Term(t) => t.clone(),
        };
        let ok = query.patterns.iter().all(|p| {
            let t = Triple { subject: resolve(&p.subject), predicate: resolve(&p.predicate), object: resolve(&p.object) };
            graph.contains(&t)
        }) && query.filters.iter().all(|f| passes(f, value(&f.left)));
        if ok {
            rows.push(projection.iter().map(|v| value(v).clone()).collect());
        }

        let mut i = 0;
        loop {
            if i == counter.len() {
                return rows;
            }
            counter[i] += 1;
            if counter[i] < terms.len() {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
    }
}
