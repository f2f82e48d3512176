use regex::Regex;

use super::{FilterExpr, FilterOp, FilterOperand, OrderKey, PatternTerm, Query, QueryPattern, Selection};
use crate::error::{SyntaxError, SyntaxErrorKind};
use crate::lex::{is_name_start, Cursor, LexResult, Mark, Number};
use crate::model::vocab::{rdf, xsd};
use crate::model::{Iri, Literal, PrefixMap, Term};

/// Keywords that open a construct outside the subset, checked wherever a
/// graph-pattern element may start.
const UNSUPPORTED_IN_GROUP: [&str; 7] = ["OPTIONAL", "UNION", "MINUS", "GRAPH", "SERVICE", "BIND", "VALUES"];

/// Parses query text. Only prefixes declared in the query itself are known.
pub fn parse_query(text: &str) -> Result<Query, SyntaxError> {
    let mut p = QueryParser { cur: Cursor::new(text), prefixes: PrefixMap::new(), base: None };
    p.query()
}

struct QueryParser<'a> {
    cur: Cursor<'a>,
    prefixes: PrefixMap,
    base: Option<String>,
}

fn is_var_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl QueryParser<'_> {
    fn query(&mut self) -> LexResult<Query> {
        self.prologue()?;
        self.cur.skip_trivia();
        let at = self.cur.mark();
        for form in ["CONSTRUCT", "ASK", "DESCRIBE", "INSERT", "DELETE", "LOAD", "CLEAR", "DROP", "CREATE"] {
            if self.cur.starts_with_keyword(form) {
                return Err(self.cur.unsupported(at, form));
            }
        }
        if !self.keyword("SELECT") {
            return Err(self.cur.invalid(at, "expected SELECT"));
        }
        let distinct = self.keyword("DISTINCT");
        self.cur.skip_trivia();
        if self.cur.starts_with_keyword("REDUCED") {
            return Err(self.cur.unsupported(self.cur.mark(), "REDUCED"));
        }
        let (selection, selected_at) = self.selection()?;
        self.cur.skip_trivia();
        if self.cur.starts_with_keyword("FROM") {
            return Err(self.cur.unsupported(self.cur.mark(), "FROM"));
        }
        self.keyword("WHERE");
        let (patterns, filters) = self.group()?;
        let mut query = Query {
            prefixes: std::mem::take(&mut self.prefixes),
            selection,
            patterns,
            filters,
            distinct,
            order_by: None,
            limit: None,
            offset: None,
        };
        self.modifiers(&mut query)?;
        self.cur.skip_trivia();
        if !self.cur.is_eof() {
            return Err(self.cur.invalid(self.cur.mark(), "unexpected input after query"));
        }

        let used = query.pattern_vars();
        if let Selection::Vars(vars) = &query.selection {
            for (v, at) in vars.iter().zip(&selected_at) {
                if !used.contains(v) {
                    return Err(self.cur.invalid(*at, format!("selected variable ?{v} does not occur in the WHERE clause")));
                }
            }
        }
        Ok(query)
    }

    /// Consumes `kw` (case-insensitive) after optional trivia.
    fn keyword(&mut self, kw: &str) -> bool {
        self.cur.skip_trivia();
        if self.cur.starts_with_keyword(kw) {
            self.cur.advance_by(kw.chars().count());
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, what: &str) -> LexResult<()> {
        self.cur.skip_trivia();
        let at = self.cur.mark();
        if self.cur.eat(c) {
            Ok(())
        } else if self.cur.is_eof() {
            Err(self.cur.invalid(at, format!("expected {what}, found end of input")))
        } else {
            Err(self.cur.invalid(at, format!("expected {what}")))
        }
    }

    fn prologue(&mut self) -> LexResult<()> {
        loop {
            if self.keyword("PREFIX") {
                self.cur.skip_trivia();
                let at = self.cur.mark();
                let (label, local) = self.cur.scan_word();
                if local.as_deref() != Some("") {
                    return Err(self.cur.invalid(at, "expected prefix label ending in ':'"));
                }
                self.cur.skip_trivia();
                let ns = self.iri_ref()?;
                self.prefixes.insert(label, ns).map_err(|e| self.cur.invalid(at, e.to_string()))?;
            } else if self.keyword("BASE") {
                self.cur.skip_trivia();
                let iri = self.iri_ref()?;
                self.base = Some(iri.into_string());
            } else {
                return Ok(());
            }
        }
    }

    fn selection(&mut self) -> LexResult<(Selection, Vec<Mark>)> {
        self.cur.skip_trivia();
        if self.cur.eat('*') {
            return Ok((Selection::Star, Vec::new()));
        }
        let mut vars: Vec<String> = Vec::new();
        let mut marks = Vec::new();
        loop {
            self.cur.skip_trivia();
            let at = self.cur.mark();
            match self.cur.peek() {
                Some('?' | '$') => {
                    let v = self.var()?;
                    if vars.contains(&v) {
                        return Err(self.cur.invalid(at, format!("variable ?{v} selected twice")));
                    }
                    vars.push(v);
                    marks.push(at);
                }
                Some('(') => return Err(self.cur.unsupported(at, "projection expression")),
                _ if vars.is_empty() => return Err(self.cur.invalid(at, "expected '*' or a variable after SELECT")),
                _ => return Ok((Selection::Vars(vars), marks)),
            }
        }
    }

    fn var(&mut self) -> LexResult<String> {
        let at = self.cur.mark();
        self.cur.bump();
        let mut name = String::new();
        while let Some(c) = self.cur.peek().filter(|&c| is_var_char(c)) {
            name.push(c);
            self.cur.bump();
        }
        if name.is_empty() || name.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(self.cur.invalid(at, "malformed variable name"));
        }
        Ok(name)
    }

    fn group(&mut self) -> LexResult<(Vec<QueryPattern>, Vec<FilterExpr>)> {
        self.expect('{', "'{' opening the WHERE clause")?;
        let mut patterns = Vec::new();
        let mut filters = Vec::new();
        loop {
            self.cur.skip_trivia();
            let at = self.cur.mark();
            if self.cur.eat('}') {
                return Ok((patterns, filters));
            }
            if self.cur.is_eof() {
                return Err(self.cur.invalid(at, "expected '}' closing the WHERE clause, found end of input"));
            }
            if let Some(kw) = UNSUPPORTED_IN_GROUP.iter().find(|kw| self.cur.starts_with_keyword(kw)) {
                return Err(self.cur.unsupported(at, kw));
            }
            if self.cur.peek() == Some('{') {
                self.cur.bump();
                self.cur.skip_trivia();
                let what = if self.cur.starts_with_keyword("SELECT") { "subquery" } else { "nested group pattern" };
                return Err(self.cur.unsupported(at, what));
            }
            if self.keyword("FILTER") {
                filters.push(self.filter()?);
                continue;
            }
            self.triples_block(&mut patterns)?;
            self.cur.skip_trivia();
            if self.cur.eat('.') {
                continue;
            }
            let next_ok = self.cur.peek() == Some('}')
                || self.cur.starts_with_keyword("FILTER")
                || UNSUPPORTED_IN_GROUP.iter().any(|kw| self.cur.starts_with_keyword(kw))
                || self.cur.is_eof();
            if !next_ok {
                return Err(self.cur.invalid(self.cur.mark(), "expected '.' or '}' after triple pattern"));
            }
        }
    }

    fn triples_block(&mut self, out: &mut Vec<QueryPattern>) -> LexResult<()> {
        let subject = self.node("subject")?;
        loop {
            self.cur.skip_trivia();
            let predicate = self.verb()?;
            loop {
                self.cur.skip_trivia();
                let object = self.node("object")?;
                out.push(QueryPattern::new(subject.clone(), predicate.clone(), object));
                self.cur.skip_trivia();
                if !self.cur.eat(',') {
                    break;
                }
            }
            self.cur.skip_trivia();
            if !self.cur.eat(';') {
                return Ok(());
            }
            self.cur.skip_trivia();
            while self.cur.eat(';') {
                self.cur.skip_trivia();
            }
            if matches!(self.cur.peek(), Some('.' | '}') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> LexResult<PatternTerm> {
        let at = self.cur.mark();
        let term = match self.cur.peek() {
            Some('?' | '$') => PatternTerm::Var(self.var()?),
            Some('<') => PatternTerm::Term(Term::Iri(self.iri_ref()?)),
            Some('^' | '!' | '(') => return Err(self.cur.unsupported(at, "property path")),
            Some(c) if is_name_start(c) || c == ':' => {
                let (prefix, local) = self.cur.scan_word();
                match local {
                    Some(local) => PatternTerm::Term(Term::Iri(self.prefixed_name(at, &prefix, &local)?)),
                    None if prefix == "a" => PatternTerm::Term(Term::Iri(Iri::new_unchecked(rdf::TYPE))),
                    None => return Err(self.cur.invalid(at, format!("unexpected word `{prefix}` in predicate position"))),
                }
            }
            None => return Err(self.cur.invalid(at, "expected predicate, found end of input")),
            Some(_) => return Err(self.cur.invalid(at, "expected predicate")),
        };
        if matches!(self.cur.peek(), Some('/' | '|' | '*' | '+')) {
            return Err(self.cur.unsupported(at, "property path"));
        }
        Ok(term)
    }

    fn node(&mut self, position: &str) -> LexResult<PatternTerm> {
        let at = self.cur.mark();
        match self.cur.peek() {
            Some('?' | '$') => Ok(PatternTerm::Var(self.var()?)),
            Some('_') if self.cur.peek_nth(1) == Some(':') => Err(self.cur.unsupported(at, "blank node in query pattern")),
            Some('[') => Err(self.cur.unsupported(at, "blank node in query pattern")),
            Some('(') => Err(self.cur.unsupported(at, "collection")),
            None => Err(self.cur.invalid(at, format!("expected {position}, found end of input"))),
            Some(_) => match self.constant()? {
                Some(t) => Ok(PatternTerm::Term(t)),
                None => Err(self.cur.invalid(at, format!("expected {position}"))),
            },
        }
    }

    /// IRI, prefixed name, literal, number or boolean. `None` when the input
    /// does not start a constant.
    fn constant(&mut self) -> LexResult<Option<Term>> {
        let at = self.cur.mark();
        let term = match self.cur.peek() {
            Some('<') => Term::Iri(self.iri_ref()?),
            Some('"' | '\'') => self.literal()?,
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' || c == '.' => {
                let lit = match self.cur.scan_number()? {
                    Number::Integer(text) => Literal::typed(text, Iri::new_unchecked(xsd::INTEGER)),
                    Number::Decimal(text) => Literal::typed(text, Iri::new_unchecked(xsd::DECIMAL)),
                };
                Term::Literal(lit.map_err(|e| self.cur.invalid(at, e.to_string()))?)
            }
            Some(c) if is_name_start(c) || c == ':' => {
                let (prefix, local) = self.cur.scan_word();
                match (prefix.as_str(), local) {
                    (_, Some(local)) => Term::Iri(self.prefixed_name(at, &prefix, &local)?),
                    ("true", None) => Term::Literal(Literal::boolean(true)),
                    ("false", None) => Term::Literal(Literal::boolean(false)),
                    (word, None) => return Err(self.cur.invalid(at, format!("unexpected word `{word}`"))),
                }
            }
            _ => return Ok(None),
        };
        Ok(Some(term))
    }

    fn literal(&mut self) -> LexResult<Term> {
        let at = self.cur.mark();
        let lexical = self.cur.scan_string()?;
        if self.cur.eat('@') {
            let tag = self.cur.scan_lang_tag();
            return Literal::lang_string(lexical, tag)
                .map(Term::Literal)
                .map_err(|e| self.cur.invalid(at, e.to_string()));
        }
        if self.cur.starts_with("^^") {
            self.cur.advance_by(2);
            let dt_at = self.cur.mark();
            let datatype = match self.cur.peek() {
                Some('<') => self.iri_ref()?,
                Some(c) if is_name_start(c) || c == ':' => match self.cur.scan_word() {
                    (prefix, Some(local)) => self.prefixed_name(dt_at, &prefix, &local)?,
                    _ => return Err(self.cur.invalid(dt_at, "expected datatype IRI")),
                },
                _ => return Err(self.cur.invalid(dt_at, "expected datatype IRI")),
            };
            return Literal::typed(lexical, datatype)
                .map(Term::Literal)
                .map_err(|e| self.cur.invalid(at, e.to_string()));
        }
        Ok(Term::Literal(Literal::simple(lexical)))
    }

    fn iri_ref(&mut self) -> LexResult<Iri> {
        let at = self.cur.mark();
        if self.cur.peek() != Some('<') {
            return Err(self.cur.invalid(at, "expected IRI"));
        }
        let raw = self.cur.scan_iri_ref()?;
        let text = if raw.contains(':') {
            raw
        } else if let Some(base) = &self.base {
            format!("{base}{raw}")
        } else {
            return Err(self.cur.error(
                at,
                format!("relative IRI <{raw}> without a base"),
                SyntaxErrorKind::RelativeIri(raw),
            ));
        };
        Iri::new(text).map_err(|e| self.cur.invalid(at, e.to_string()))
    }

    fn prefixed_name(&self, at: Mark, prefix: &str, local: &str) -> LexResult<Iri> {
        let Some(ns) = self.prefixes.get(prefix) else {
            return Err(self.cur.error(
                at,
                format!("unknown prefix `{prefix}:`"),
                SyntaxErrorKind::UnknownPrefix(prefix.to_string()),
            ));
        };
        Iri::new(format!("{}{}", ns.as_str(), local)).map_err(|e| self.cur.invalid(at, e.to_string()))
    }

    /// After `FILTER`: either `regex(...)` or a parenthesized comparison or regex.
    fn filter(&mut self) -> LexResult<FilterExpr> {
        self.cur.skip_trivia();
        if self.cur.starts_with_keyword("regex") {
            return self.regex_call();
        }
        self.expect('(', "'(' after FILTER")?;
        self.cur.skip_trivia();
        let expr = if self.cur.starts_with_keyword("regex") { self.regex_call()? } else { self.comparison()? };
        self.cur.skip_trivia();
        let at = self.cur.mark();
        if self.cur.starts_with("&&") || self.cur.starts_with("||") {
            return Err(self.cur.unsupported(at, "FILTER boolean connective"));
        }
        self.expect(')', "')' closing FILTER")?;
        Ok(expr)
    }

    fn regex_call(&mut self) -> LexResult<FilterExpr> {
        self.cur.advance_by(5);
        self.expect('(', "'(' after regex")?;
        self.cur.skip_trivia();
        let at = self.cur.mark();
        if !matches!(self.cur.peek(), Some('?' | '$')) {
            return Err(self.cur.unsupported(at, "regex over an expression"));
        }
        let left = self.var()?;
        self.expect(',', "',' in regex")?;
        self.cur.skip_trivia();
        let pat_at = self.cur.mark();
        if !matches!(self.cur.peek(), Some('"' | '\'')) {
            return Err(self.cur.invalid(pat_at, "expected pattern string"));
        }
        let pattern = self.cur.scan_string()?;
        self.cur.skip_trivia();
        let mut flags = String::new();
        if self.cur.eat(',') {
            self.cur.skip_trivia();
            let flags_at = self.cur.mark();
            if !matches!(self.cur.peek(), Some('"' | '\'')) {
                return Err(self.cur.invalid(flags_at, "expected flags string"));
            }
            flags = self.cur.scan_string()?;
            if let Some(bad) = flags.chars().find(|c| !"ismx".contains(*c)) {
                return Err(self.cur.invalid(flags_at, format!("unsupported regex flag `{bad}`")));
            }
        }
        self.expect(')', "')' closing regex")?;
        let source = if flags.is_empty() { pattern } else { format!("(?{flags}){pattern}") };
        let re = Regex::new(&source).map_err(|e| self.cur.invalid(pat_at, format!("invalid regex: {e}")))?;
        Ok(FilterExpr { op: FilterOp::Regex, left, right: FilterOperand::Pattern(re) })
    }

    fn comparison(&mut self) -> LexResult<FilterExpr> {
        let at = self.cur.mark();
        let left = self.filter_operand()?;
        self.cur.skip_trivia();
        let op_at = self.cur.mark();
        let op = if self.cur.starts_with("!=") {
            FilterOp::Ne
        } else if self.cur.starts_with("<=") {
            FilterOp::Le
        } else if self.cur.starts_with(">=") {
            FilterOp::Ge
        } else if self.cur.starts_with("=") {
            FilterOp::Eq
        } else if self.cur.starts_with("<") {
            FilterOp::Lt
        } else if self.cur.starts_with(">") {
            FilterOp::Gt
        } else {
            return Err(self.cur.invalid(op_at, "expected comparison operator"));
        };
        self.cur.advance_by(op.as_str().len());
        self.cur.skip_trivia();
        let right = self.filter_operand()?;
        match (left, right) {
            (PatternTerm::Var(v), PatternTerm::Term(t)) => Ok(FilterExpr { op, left: v, right: FilterOperand::Term(t) }),
            (PatternTerm::Term(t), PatternTerm::Var(v)) => {
                Ok(FilterExpr { op: op.flipped(), left: v, right: FilterOperand::Term(t) })
            }
            (PatternTerm::Var(_), PatternTerm::Var(_)) => Err(self.cur.unsupported(at, "comparison between two variables")),
            (PatternTerm::Term(_), PatternTerm::Term(_)) => Err(self.cur.unsupported(at, "comparison between two constants")),
        }
    }

    fn filter_operand(&mut self) -> LexResult<PatternTerm> {
        let at = self.cur.mark();
        match self.cur.peek() {
            Some('?' | '$') => return Ok(PatternTerm::Var(self.var()?)),
            Some('!') => return Err(self.cur.unsupported(at, "FILTER negation")),
            Some('(') => return Err(self.cur.unsupported(at, "nested FILTER expression")),
            _ => {}
        }
        if let Some(name) = self.function_name() {
            return Err(self.cur.unsupported(at, &format!("FILTER function {name}")));
        }
        match self.constant()? {
            Some(t) => Ok(PatternTerm::Term(t)),
            None => Err(self.cur.invalid(at, "expected variable or constant in FILTER")),
        }
    }

    /// A bare word directly followed by `(`, as in `bound(?x)`.
    fn function_name(&self) -> Option<String> {
        let rest = self.cur.rest();
        let word: String = rest.chars().take_while(|&c| is_var_char(c)).collect();
        if word.is_empty() || !word.starts_with(is_name_start) {
            return None;
        }
        rest[word.len()..].trim_start().starts_with('(').then_some(word)
    }

    fn modifiers(&mut self, query: &mut Query) -> LexResult<()> {
        loop {
            self.cur.skip_trivia();
            let at = self.cur.mark();
            for kw in ["GROUP", "HAVING"] {
                if self.cur.starts_with_keyword(kw) {
                    return Err(self.cur.unsupported(at, &format!("{kw} (aggregates)")));
                }
            }
            if self.keyword("ORDER") {
                if !self.keyword("BY") {
                    return Err(self.cur.invalid(self.cur.mark(), "expected BY after ORDER"));
                }
                if query.order_by.is_some() {
                    return Err(self.cur.invalid(at, "duplicate ORDER BY"));
                }
                query.order_by = Some(self.order_key()?);
                self.cur.skip_trivia();
                let next = self.cur.mark();
                if matches!(self.cur.peek(), Some('?' | '$'))
                    || self.cur.starts_with_keyword("ASC")
                    || self.cur.starts_with_keyword("DESC")
                {
                    return Err(self.cur.unsupported(next, "multiple ORDER BY keys"));
                }
            } else if self.keyword("LIMIT") {
                if query.limit.is_some() {
                    return Err(self.cur.invalid(at, "duplicate LIMIT"));
                }
                query.limit = Some(self.count()?);
            } else if self.keyword("OFFSET") {
                if query.offset.is_some() {
                    return Err(self.cur.invalid(at, "duplicate OFFSET"));
                }
                query.offset = Some(self.count()?);
            } else {
                return Ok(());
            }
        }
    }

    fn order_key(&mut self) -> LexResult<OrderKey> {
        self.cur.skip_trivia();
        let at = self.cur.mark();
        let descending = if self.keyword("DESC") {
            true
        } else if self.keyword("ASC") {
            false
        } else if matches!(self.cur.peek(), Some('?' | '$')) {
            return Ok(OrderKey { var: self.var()?, descending: false });
        } else {
            return Err(self.cur.invalid(at, "expected ORDER BY key"));
        };
        self.expect('(', "'(' after ASC/DESC")?;
        self.cur.skip_trivia();
        let var_at = self.cur.mark();
        if !matches!(self.cur.peek(), Some('?' | '$')) {
            return Err(self.cur.unsupported(var_at, "ORDER BY expression"));
        }
        let var = self.var()?;
        self.expect(')', "')' after ORDER BY variable")?;
        Ok(OrderKey { var, descending })
    }

    fn count(&mut self) -> LexResult<usize> {
        self.cur.skip_trivia();
        let at = self.cur.mark();
        let digits: String = self.cur.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.cur.invalid(at, "expected a non-negative integer"));
        }
        self.cur.advance_by(digits.len());
        digits.parse().map_err(|_| self.cur.invalid(at, "integer out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::SyntaxErrorKind;

    const OWL: &str = "PREFIX owl: <http://www.w3.org/2002/07/owl#>\n";

    #[test]
    fn minimal_select() {
        let q = parse_query(&format!("{OWL}SELECT ?x WHERE {{ ?x a owl:Class }}")).unwrap();
        assert_eq!(q.patterns.len(), 1);
        assert_eq!(q.projection(), ["x"]);
        assert_eq!(q.patterns[0].to_string(), "?x <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.w3.org/2002/07/owl#Class>");
    }

    #[test]
    fn unclosed_brace() {
        let err = parse_query("SELECT ?x { ?x ?p ?o ").unwrap_err();
        assert_eq!(err.kind, SyntaxErrorKind::Invalid);
        assert_eq!(err.line, 1);
    }

    #[test]
    fn optional_is_named() {
        let err = parse_query("SELECT ?x WHERE { ?x ?y ?z OPTIONAL { ?x ?a ?b } }").unwrap_err();
        assert_eq!(err.kind, SyntaxErrorKind::Unsupported("OPTIONAL".into()));
        assert_eq!(err.column, 28);
    }

    #[test]
    fn other_boundaries() {
        let cases = [
            ("SELECT * { { ?s ?p ?o } UNION { ?s ?p ?o } }", "nested group pattern"),
            ("SELECT * { ?s ?p ?o } GROUP BY ?s", "GROUP (aggregates)"),
            ("SELECT (1 AS ?x) { ?s ?p ?o }", "projection expression"),
            ("ASK { ?s ?p ?o }", "ASK"),
            ("SELECT * { ?s <http://x/p>/<http://x/q> ?o }", "property path"),
            ("SELECT * { ?s ?p ?o FILTER(bound(?s)) }", "FILTER function bound"),
            ("SELECT * { ?s ?p ?o FILTER(?s = 1 && ?o = 2) }", "FILTER boolean connective"),
            ("SELECT * { _:b ?p ?o }", "blank node in query pattern"),
        ];
        for (q, construct) in cases {
            let err = parse_query(q).unwrap_err();
            assert_eq!(err.kind, SyntaxErrorKind::Unsupported(construct.into()), "{q}");
        }
    }

    #[test]
    fn unknown_prefix() {
        let err = parse_query("SELECT ?x WHERE { ?x a owl:Class }").unwrap_err();
        assert_eq!(err.kind, SyntaxErrorKind::UnknownPrefix("owl".into()));
        assert_eq!((err.line, err.column), (1, 24));
    }

    #[test]
    fn selected_variable_must_be_used() {
        let err = parse_query("SELECT ?x ?y WHERE { ?x ?p ?o }").unwrap_err();
        assert_eq!(err.column, 11);
    }

    #[test]
    fn filters_and_modifiers() {
        let q = parse_query(
            "PREFIX ex: <http://ex/>\nselect distinct ?s ?o where {\n ?s ex:p ?o ; ex:q 'x' , \"y\"@en .\n \
             FILTER (5 < ?o) FILTER regex(?s, \"^http\", \"i\")\n} ORDER BY DESC(?o) OFFSET 2 LIMIT 10",
        )
        .unwrap();
        assert!(q.distinct);
        assert_eq!(q.patterns.len(), 3);
        assert_eq!(q.filters.len(), 2);
        assert_eq!(q.filters[0].op, FilterOp::Gt);
        assert_eq!(q.filters[1].op, FilterOp::Regex);
        assert_eq!(q.order_by, Some(OrderKey { var: "o".into(), descending: true }));
        assert_eq!((q.limit, q.offset), (Some(10), Some(2)));
    }

    #[test]
    fn star_projection_is_sorted() {
        let q = parse_query("SELECT * { ?b <http://ex/p> ?a . ?a <http://ex/p> ?c }").unwrap();
        assert_eq!(q.pattern_vars(), ["b", "a", "c"]);
        assert_eq!(q.projection(), ["a", "b", "c"]);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_query("SELECT ?x WHERE {").unwrap_err();
        assert_eq!((err.line, err.column), (1, 17));
        let err = parse_query("SELECT ?x\nWHERE { ?x ?p }").unwrap_err();
        assert_eq!((err.line, err.column), (2, 15));
    }
}
