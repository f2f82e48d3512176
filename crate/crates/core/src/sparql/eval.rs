use std::cmp::Ordering;
use std::collections::HashSet;

use super::{FilterExpr, FilterOp, FilterOperand, PatternTerm, Query, ResultSet};
use crate::model::{Graph, Term, TermId};

/// Rows sampled per pattern when estimating the cost of the next join.
const ESTIMATE_SAMPLE: usize = 32;

#[derive(Clone, Copy)]
enum Slot {
    Var(usize),
    Const(TermId),
}

type Row = Vec<Option<TermId>>;

/// Evaluates `query` against `graph`.
///
/// Patterns are joined greedily, cheapest first, where the cost of a pattern
/// is the index count of its instantiations over a sample of the current
/// rows. Without ORDER BY rows come out in canonical term order, so results
/// never depend on pattern order or dictionary layout.
pub fn evaluate(query: &Query, graph: &Graph) -> ResultSet {
    let vars = query.pattern_vars();
    let slot_of = |v: &str| vars.iter().position(|x| x == v).expect("pattern variable");
    let projection: Vec<usize> = query.projection().iter().map(|v| slot_of(v)).collect();
    let empty = ResultSet { vars: query.projection(), rows: Vec::new() };

    let mut pending = Vec::with_capacity(query.patterns.len());
    for p in &query.patterns {
        let mut slots = [Slot::Var(0); 3];
        for (slot, pos) in slots.iter_mut().zip(p.positions()) {
            *slot = match pos {
                PatternTerm::Var(v) => Slot::Var(slot_of(v)),
                PatternTerm::Term(t) => match graph.term_id(t) {
                    Some(id) => Slot::Const(id),
                    None => return empty,
                },
            };
        }
        pending.push(slots);
    }

    let filters: Vec<(usize, &FilterExpr)> = query
        .filters
        .iter()
        .filter_map(|f| vars.iter().position(|v| *v == f.left).map(|i| (i, f)))
        .collect();
    if filters.len() < query.filters.len() {
        return empty;
    }

    let mut rows: Vec<Row> = vec![vec![None; vars.len()]];
    let mut bound = vec![false; vars.len()];
    let mut applied = vec![false; filters.len()];
    while !pending.is_empty() && !rows.is_empty() {
        let next = (0..pending.len())
            .min_by_key(|&i| (estimate(graph, &rows, &pending[i]), i))
            .expect("pending is non-empty");
        let pattern = pending.remove(next);
        rows = join(graph, rows, &pattern);
        for slot in pattern {
            if let Slot::Var(i) = slot {
                bound[i] = true;
            }
        }
        for (k, (i, f)) in filters.iter().enumerate() {
            if !applied[k] && bound[*i] {
                applied[k] = true;
                rows.retain(|r| filter_holds(f, graph.term(r[*i].expect("bound"))));
            }
        }
    }

    let mut full: Vec<Vec<&Term>> = rows
        .iter()
        .map(|r| r.iter().map(|id| graph.term(id.expect("every variable is bound"))).collect())
        .collect();
    let key = query.order_by.as_ref().map(|o| (slot_of(&o.var), o.descending));
    full.sort_by(|a, b| {
        let by_key = match key {
            Some((i, desc)) => {
                let c = order_cmp(a[i], b[i]);
                if desc { c.reverse() } else { c }
            }
            None => Ordering::Equal,
        };
        by_key
            .then_with(|| cmp_columns(projection.iter().map(|&i| a[i]), projection.iter().map(|&i| b[i])))
            .then_with(|| cmp_columns(a.iter().copied(), b.iter().copied()))
    });

    let mut out: Vec<Vec<Term>> = Vec::with_capacity(full.len());
    let mut seen = HashSet::new();
    for r in &full {
        let row: Vec<Term> = projection.iter().map(|&i| r[i].clone()).collect();
        if query.distinct && !seen.insert(row.clone()) {
            continue;
        }
        out.push(row);
    }
    let start = query.offset.unwrap_or(0).min(out.len());
    let end = query.limit.map_or(out.len(), |n| start.saturating_add(n).min(out.len()));
    ResultSet { vars: query.projection(), rows: out.drain(start..end).collect() }
}

fn instantiate(row: &Row, pattern: &[Slot; 3]) -> [Option<TermId>; 3] {
    pattern.map(|s| match s {
        Slot::Const(id) => Some(id),
        Slot::Var(i) => row[i],
    })
}

fn estimate(graph: &Graph, rows: &[Row], pattern: &[Slot; 3]) -> usize {
    rows.iter()
        .take(ESTIMATE_SAMPLE)
        .map(|r| {
            let [s, p, o] = instantiate(r, pattern);
            graph.count_ids(s, p, o)
        })
        .sum()
}

fn join(graph: &Graph, rows: Vec<Row>, pattern: &[Slot; 3]) -> Vec<Row> {
    let mut out = Vec::new();
    for row in rows {
        let [s, p, o] = instantiate(&row, pattern);
        'matches: for ids in graph.match_ids(s, p, o) {
            let mut next = row.clone();
            for (slot, id) in pattern.iter().zip(ids) {
                if let Slot::Var(i) = *slot {
                    match next[i] {
                        Some(existing) if existing != id => continue 'matches,
                        _ => next[i] = Some(id),
                    }
                }
            }
            out.push(next);
        }
    }
    out
}

fn numeric(t: &Term) -> Option<f64> {
    t.as_literal().and_then(|l| l.numeric_value())
}

pub(super) fn filter_holds(f: &FilterExpr, value: &Term) -> bool {
    match (&f.right, f.op) {
        (FilterOperand::Pattern(re), _) => match value {
            Term::Iri(iri) => re.is_match(iri.as_str()),
            Term::Literal(lit) => re.is_match(lit.lexical()),
            Term::BlankNode(_) => false,
        },
        (FilterOperand::Term(right), op) => {
            if let (Some(a), Some(b)) = (numeric(value), numeric(right)) {
                let Some(c) = a.partial_cmp(&b) else { return false };
                return match op {
                    FilterOp::Eq => c == Ordering::Equal,
                    FilterOp::Ne => c != Ordering::Equal,
                    FilterOp::Lt => c == Ordering::Less,
                    FilterOp::Le => c != Ordering::Greater,
                    FilterOp::Gt => c == Ordering::Greater,
                    FilterOp::Ge => c != Ordering::Less,
                    FilterOp::Regex => false,
                };
            }
            match op {
                FilterOp::Eq => value == right,
                FilterOp::Ne => value != right,
                _ => false,
            }
        }
    }
}

fn rank(t: &Term) -> u8 {
    match t {
        Term::Iri(_) => 0,
        Term::Literal(l) if l.numeric_value().is_some() => 1,
        Term::Literal(_) => 2,
        Term::BlankNode(_) => 3,
    }
}

/// Total order used by ORDER BY: IRIs, then numeric literals by value, then
/// other literals by lexical form, then blank nodes. Ties fall back to term
/// order.
pub fn order_cmp(a: &Term, b: &Term) -> Ordering {
    rank(a).cmp(&rank(b)).then_with(|| {
        let primary = match (a, b) {
            (Term::Iri(x), Term::Iri(y)) => x.as_str().cmp(y.as_str()),
            (Term::Literal(x), Term::Literal(y)) => match (x.numeric_value(), y.numeric_value()) {
                (Some(p), Some(q)) => p.total_cmp(&q),
                _ => x.lexical().cmp(y.lexical()),
            },
            (Term::BlankNode(x), Term::BlankNode(y)) => x.label().cmp(y.label()),
            _ => Ordering::Equal,
        };
        primary.then_with(|| a.cmp(b))
    })
}

fn cmp_columns<'a>(a: impl Iterator<Item = &'a Term>, b: impl Iterator<Item = &'a Term>) -> Ordering {
    a.zip(b)
        .map(|(x, y)| order_cmp(x, y))
        .find(|c| c.is_ne())
        .unwrap_or(Ordering::Equal)
}
