//! The SELECT subset of SPARQL: basic graph patterns, simple FILTERs and
//! solution modifiers.

mod eval;
mod parser;
mod results;

use std::fmt;

use regex::Regex;

use crate::model::{PrefixMap, Term};

pub use eval::{evaluate, order_cmp};
pub use parser::parse_query;
pub use results::{format_table, serialize_results, ResultFormat};

/// A pattern position: a variable name (without `?`) or a constant term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternTerm {
    Var(String),
    Term(Term),
}

impl PatternTerm {
    pub fn as_var(&self) -> Option<&str> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Term(_) => None,
        }
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Var(v) => write!(f, "?{v}"),
            PatternTerm::Term(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QueryPattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl QueryPattern {
    pub fn new(subject: PatternTerm, predicate: PatternTerm, object: PatternTerm) -> Self {
        QueryPattern { subject, predicate, object }
    }

    pub fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.positions().into_iter().filter_map(PatternTerm::as_var)
    }
}

impl fmt::Display for QueryPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.subject, self.predicate, self.object)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Regex,
}

impl FilterOp {
    pub fn as_str(self) -> &'static str {
        match self {
            FilterOp::Eq => "=",
            FilterOp::Ne => "!=",
            FilterOp::Lt => "<",
            FilterOp::Le => "<=",
            FilterOp::Gt => ">",
            FilterOp::Ge => ">=",
            FilterOp::Regex => "regex",
        }
    }

    /// The operator obtained by swapping the operands.
    pub fn flipped(self) -> FilterOp {
        match self {
            FilterOp::Lt => FilterOp::Gt,
            FilterOp::Le => FilterOp::Ge,
            FilterOp::Gt => FilterOp::Lt,
            FilterOp::Ge => FilterOp::Le,
            other => other,
        }
    }
}

#[derive(Debug, Clone)]
pub enum FilterOperand {
    Term(Term),
    Pattern(Regex),
}

/// `left op right`, where `left` is a variable name.
#[derive(Debug, Clone)]
pub struct FilterExpr {
    pub op: FilterOp,
    pub left: String,
    pub right: FilterOperand,
}

impl FilterExpr {
    /// Evaluates the filter for one bound value. Type errors (ordering a
    /// non-numeric value, matching a blank node) yield `false`.
    pub fn holds(&self, value: &Term) -> bool {
        eval::filter_holds(self, value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selection {
    Star,
    Vars(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderKey {
    pub var: String,
    pub descending: bool,
}

#[derive(Debug, Clone)]
pub struct Query {
    pub prefixes: PrefixMap,
    pub selection: Selection,
    pub patterns: Vec<QueryPattern>,
    pub filters: Vec<FilterExpr>,
    pub distinct: bool,
    pub order_by: Option<OrderKey>,
    pub limit: Option<usize>,
    pub offset: Option<usize>,
}

impl Query {
    /// Variables of the WHERE clause in order of first appearance.
    pub fn pattern_vars(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for v in self.patterns.iter().flat_map(QueryPattern::vars) {
            if !out.iter().any(|o| o == v) {
                out.push(v.to_string());
            }
        }
        out
    }

    /// Result columns: the selected variables, or for `*` every pattern
    /// variable sorted by name.
    pub fn projection(&self) -> Vec<String> {
        match &self.selection {
            Selection::Star => {
                let mut vars = self.pattern_vars();
                vars.sort();
                vars
            }
            Selection::Vars(vars) => vars.clone(),
        }
    }
}

/// Solutions with columns `vars`; each row holds one term per column.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ResultSet {
    pub vars: Vec<String>,
    pub rows: Vec<Vec<Term>>,
}

impl ResultSet {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Values of one column, in row order.
    pub fn column(&self, var: &str) -> Option<Vec<&Term>> {
        let i = self.vars.iter().position(|v| v == var)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }
}
