use std::collections::HashSet;
use std::sync::OnceLock;

use regex::Regex;

use crate::error::{SyntaxError, SyntaxErrorKind};
use crate::lex::{is_name_start, Cursor, LexResult, Mark, Number};
use crate::model::vocab::{rdf, xsd};
use crate::model::{BlankNode, Graph, Iri, Literal, PrefixMap, Term, Triple};

/// A parsed Turtle document.
#[derive(Debug, Clone)]
pub struct ParseOutcome {
    pub graph: Graph,
    pub prefix_map: PrefixMap,
    /// Always equal to `graph.len()`.
    pub triple_count: usize,
}

/// Parses a Turtle document. Relative IRIs resolve against `base` (or a
/// later `@base`); without one they are an error.
pub fn parse_turtle(source: &str, base: Option<&Iri>) -> Result<ParseOutcome, SyntaxError> {
    let mut parser = Parser {
        cur: Cursor::new(source),
        base: base.map(|b| b.as_str().to_string()),
        prefixes: PrefixMap::new(),
        graph: Graph::new(),
        taken_labels: user_labels(source),
        next_blank: 0,
    };
    parser.document()?;
    let Parser { mut graph, prefixes, .. } = parser;
    graph.set_prefixes(prefixes.clone());
    let triple_count = graph.len();
    Ok(ParseOutcome { graph, prefix_map: prefixes, triple_count })
}

/// Any `_:label` occurring in the text. Generated labels avoid these.
fn user_labels(source: &str) -> HashSet<String> {
    static RE: OnceLock<Regex> = OnceLock::new();
    let re = RE.get_or_init(|| Regex::new(r"_:([\w\-.]+)").unwrap());
    re.captures_iter(source)
        .map(|c| c[1].trim_end_matches('.').to_string())
        .collect()
}

struct Parser<'a> {
    cur: Cursor<'a>,
    base: Option<String>,
    prefixes: PrefixMap,
    graph: Graph,
    taken_labels: HashSet<String>,
    next_blank: usize,
}

fn has_scheme(iri: &str) -> bool {
    let Some(colon) = iri.find(':') else {
        return false;
    };
    let scheme = &iri[..colon];
    let mut chars = scheme.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

fn strip_fragment(s: &str) -> &str {
    s.split('#').next().unwrap_or(s)
}

/// Reference resolution without normalization (no dot-segment removal).
fn resolve_against(base: &str, rel: &str) -> String {
    let base_nf = strip_fragment(base);
    if rel.is_empty() {
        return base_nf.to_string();
    }
    if rel.starts_with('#') {
        return format!("{base_nf}{rel}");
    }
    let scheme_end = base.find(':').map_or(0, |i| i + 1);
    if rel.starts_with("//") {
        return format!("{}{}", &base[..scheme_end], rel);
    }
    let after_scheme = &base[scheme_end..];
    let authority_end = if let Some(stripped) = after_scheme.strip_prefix("//") {
        scheme_end + 2 + stripped.find(['/', '?', '#']).unwrap_or(stripped.len())
    } else {
        scheme_end
    };
    if rel.starts_with('/') {
        return format!("{}{}", &base[..authority_end], rel);
    }
    if rel.starts_with('?') {
        let no_query = base_nf.split('?').next().unwrap_or(base_nf);
        return format!("{no_query}{rel}");
    }
    let path_part = base_nf.split('?').next().unwrap_or(base_nf);
    match path_part[authority_end..].rfind('/') {
        Some(i) => format!("{}{}", &path_part[..authority_end + i + 1], rel),
        None if authority_end < path_part.len() || after_scheme.starts_with("//") => {
            format!("{}/{}", &path_part[..authority_end], rel)
        }
        None => format!("{path_part}{rel}"),
    }
}

impl Parser<'_> {
    fn document(&mut self) -> LexResult<()> {
        loop {
            self.cur.skip_trivia();
            if self.cur.is_eof() {
                return Ok(());
            }
            self.statement()?;
        }
    }

    fn statement(&mut self) -> LexResult<()> {
        let at = self.cur.mark();
        if self.cur.peek() == Some('@') {
            self.cur.bump();
            let word = self.cur.scan_lang_tag();
            match word.as_str() {
                "prefix" => self.prefix_decl()?,
                "base" => self.base_decl()?,
                _ => return Err(self.cur.invalid(at, format!("unknown directive @{word}"))),
            }
            return self.expect('.', "'.' after directive");
        }
        if self.cur.starts_with_keyword("PREFIX") {
            self.cur.advance_by(6);
            return self.prefix_decl();
        }
        if self.cur.starts_with_keyword("BASE") {
            self.cur.advance_by(4);
            return self.base_decl();
        }
        self.triples()?;
        self.expect('.', "'.' at end of statement")
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

    fn prefix_decl(&mut self) -> LexResult<()> {
        self.cur.skip_trivia();
        let at = self.cur.mark();
        let (label, local) = self.cur.scan_word();
        if local.as_deref() != Some("") {
            return Err(self.cur.invalid(at, "expected prefix label ending in ':'"));
        }
        self.cur.skip_trivia();
        let iri_at = self.cur.mark();
        if self.cur.peek() != Some('<') {
            return Err(self.cur.invalid(iri_at, "expected namespace IRI"));
        }
        let ns = self.iri_ref()?;
        self.prefixes
            .insert(label, ns)
            .map_err(|e| self.cur.invalid(at, e.to_string()))?;
        Ok(())
    }

    fn base_decl(&mut self) -> LexResult<()> {
        self.cur.skip_trivia();
        let at = self.cur.mark();
        if self.cur.peek() != Some('<') {
            return Err(self.cur.invalid(at, "expected base IRI"));
        }
        let iri = self.iri_ref()?;
        self.base = Some(iri.into_string());
        Ok(())
    }

    fn iri_ref(&mut self) -> LexResult<Iri> {
        let at = self.cur.mark();
        let raw = self.cur.scan_iri_ref()?;
        let text = if has_scheme(&raw) {
            raw
        } else {
            match &self.base {
                Some(base) => resolve_against(base, &raw),
                None => {
                    return Err(self.cur.error(
                        at,
                        format!("relative IRI <{raw}> without a base"),
                        SyntaxErrorKind::RelativeIri(raw),
                    ))
                }
            }
        };
        Iri::new(text).map_err(|e| self.cur.invalid(at, e.to_string()))
    }

    fn prefixed_name(&mut self, at: Mark, prefix: &str, local: &str) -> LexResult<Iri> {
        let Some(ns) = self.prefixes.get(prefix) else {
            return Err(self.cur.error(
                at,
                format!("unknown prefix `{prefix}:`"),
                SyntaxErrorKind::UnknownPrefix(prefix.to_string()),
            ));
        };
        Iri::new(format!("{}{}", ns.as_str(), local)).map_err(|e| self.cur.invalid(at, e.to_string()))
    }

    fn fresh_blank(&mut self) -> Term {
        loop {
            let label = format!("b{}", self.next_blank);
            self.next_blank += 1;
            if !self.taken_labels.contains(&label) {
                return Term::BlankNode(BlankNode::new(label).expect("generated label"));
            }
        }
    }

    fn emit(&mut self, subject: &Term, predicate: &Term, object: Term, at: Mark) -> LexResult<()> {
        let t = Triple { subject: subject.clone(), predicate: predicate.clone(), object };
        self.graph
            .insert(t)
            .map_err(|e| self.cur.invalid(at, e.to_string()))?;
        Ok(())
    }

    fn triples(&mut self) -> LexResult<()> {
        let at = self.cur.mark();
        if self.cur.peek() == Some('[') {
            let subject = self.blank_property_list()?;
            self.cur.skip_trivia();
            if self.cur.peek() == Some('.') {
                return Ok(());
            }
            return self.predicate_object_list(&subject);
        }
        let subject = match self.cur.peek() {
            Some('<') => Term::Iri(self.iri_ref()?),
            Some('_') if self.cur.peek_nth(1) == Some(':') => self.blank_label()?,
            Some('(') => return Err(self.cur.unsupported(at, "collection")),
            Some(c) if is_name_start(c) || c == ':' => {
                let (prefix, local) = self.cur.scan_word();
                match local {
                    Some(local) => Term::Iri(self.prefixed_name(at, &prefix, &local)?),
                    None => return Err(self.cur.invalid(at, format!("unexpected word `{prefix}` in subject position"))),
                }
            }
            Some(_) => return Err(self.cur.invalid(at, "expected subject")),
            None => return Err(self.cur.invalid(at, "expected subject, found end of input")),
        };
        self.predicate_object_list(&subject)
    }

    fn blank_label(&mut self) -> LexResult<Term> {
        let at = self.cur.mark();
        let label = self.cur.scan_blank_label()?;
        BlankNode::new(label)
            .map(Term::BlankNode)
            .map_err(|e| self.cur.invalid(at, e.to_string()))
    }

    fn blank_property_list(&mut self) -> LexResult<Term> {
        self.cur.bump();
        let node = self.fresh_blank();
        self.cur.skip_trivia();
        if self.cur.eat(']') {
            return Ok(node);
        }
        self.predicate_object_list(&node)?;
        self.expect(']', "']' closing blank node")?;
        Ok(node)
    }

    fn predicate_object_list(&mut self, subject: &Term) -> LexResult<()> {
        loop {
            self.cur.skip_trivia();
            let predicate = self.verb()?;
            self.object_list(subject, &predicate)?;
            self.cur.skip_trivia();
            if !self.cur.eat(';') {
                return Ok(());
            }
            loop {
                self.cur.skip_trivia();
                if !self.cur.eat(';') {
                    break;
                }
            }
            if matches!(self.cur.peek(), Some('.') | Some(']') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> LexResult<Term> {
        let at = self.cur.mark();
        match self.cur.peek() {
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            Some(c) if is_name_start(c) || c == ':' => {
                let (prefix, local) = self.cur.scan_word();
                match local {
                    Some(local) => Ok(Term::Iri(self.prefixed_name(at, &prefix, &local)?)),
                    None if prefix == "a" => Ok(Term::Iri(Iri::new_unchecked(rdf::TYPE))),
                    None => Err(self.cur.invalid(at, format!("unexpected word `{prefix}` in predicate position"))),
                }
            }
            None => Err(self.cur.invalid(at, "expected predicate, found end of input")),
            _ => Err(self.cur.invalid(at, "expected predicate")),
        }
    }

    fn object_list(&mut self, subject: &Term, predicate: &Term) -> LexResult<()> {
        loop {
            self.cur.skip_trivia();
            let at = self.cur.mark();
            let object = self.object()?;
            self.emit(subject, predicate, object, at)?;
            self.cur.skip_trivia();
            if !self.cur.eat(',') {
                return Ok(());
            }
        }
    }

    fn object(&mut self) -> LexResult<Term> {
        let at = self.cur.mark();
        match self.cur.peek() {
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            Some('_') if self.cur.peek_nth(1) == Some(':') => self.blank_label(),
            Some('[') => self.blank_property_list(),
            Some('(') => Err(self.cur.unsupported(at, "collection")),
            Some('"') | Some('\'') => self.literal(),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' || c == '.' => {
                let lit = match self.cur.scan_number()? {
                    Number::Integer(text) => Literal::typed(text, Iri::new_unchecked(xsd::INTEGER)),
                    Number::Decimal(text) => Literal::typed(text, Iri::new_unchecked(xsd::DECIMAL)),
                };
                lit.map(Term::Literal).map_err(|e| self.cur.invalid(at, e.to_string()))
            }
            Some(c) if is_name_start(c) || c == ':' => {
                let (prefix, local) = self.cur.scan_word();
                match (prefix.as_str(), local) {
                    (_, Some(local)) => Ok(Term::Iri(self.prefixed_name(at, &prefix, &local)?)),
                    ("true", None) => Ok(Term::Literal(Literal::boolean(true))),
                    ("false", None) => Ok(Term::Literal(Literal::boolean(false))),
                    (word, None) => Err(self.cur.invalid(at, format!("unexpected word `{word}` in object position"))),
                }
            }
            None => Err(self.cur.invalid(at, "expected object, found end of input")),
            _ => Err(self.cur.invalid(at, "expected object")),
        }
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
                Some(c) if is_name_start(c) || c == ':' => {
                    let (prefix, local) = self.cur.scan_word();
                    match local {
                        Some(local) => self.prefixed_name(dt_at, &prefix, &local)?,
                        None => return Err(self.cur.invalid(dt_at, "expected datatype IRI")),
                    }
                }
                _ => return Err(self.cur.invalid(dt_at, "expected datatype IRI")),
            };
            return Literal::typed(lexical, datatype)
                .map(Term::Literal)
                .map_err(|e| self.cur.invalid(at, e.to_string()));
        }
        Ok(Term::Literal(Literal::simple(lexical)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Term {
        Term::Iri(Iri::new(s).unwrap())
    }

    #[test]
    fn minimal_document() {
        let out = parse_turtle("@prefix ex: <http://ex/> . ex:a ex:b ex:c .", None).unwrap();
        assert_eq!(out.triple_count, 1);
        let t = Triple::new(iri("http://ex/a"), iri("http://ex/b"), iri("http://ex/c")).unwrap();
        assert!(out.graph.contains(&t));
    }

    #[test]
    fn undeclared_prefix_fails_on_line_one() {
        let err = parse_turtle("ex:a ex:b ex:c .", None).unwrap_err();
        assert_eq!(err.kind, SyntaxErrorKind::UnknownPrefix("ex".into()));
        assert_eq!((err.line, err.column), (1, 1));
    }

    #[test]
    fn relative_iri_needs_base() {
        let err = parse_turtle("<a> <b> <c> .", None).unwrap_err();
        assert!(matches!(err.kind, SyntaxErrorKind::RelativeIri(_)));
        let base = Iri::new("http://ex/dir/doc").unwrap();
        let out = parse_turtle("<a> <#b> </c> .", Some(&base)).unwrap();
        let t = Triple::new(iri("http://ex/dir/a"), iri("http://ex/dir/doc#b"), iri("http://ex/c")).unwrap();
        assert!(out.graph.contains(&t));
    }

    #[test]
    fn sparql_style_directives() {
        let src = "PREFIX ex: <http://ex/>\nBASE <http://base/>\nex:a <p> <o> .";
        let out = parse_turtle(src, None).unwrap();
        let t = Triple::new(iri("http://ex/a"), iri("http://base/p"), iri("http://base/o")).unwrap();
        assert!(out.graph.contains(&t));
    }

    #[test]
    fn predicate_and_object_lists() {
        let src = "@prefix ex: <http://ex/> .\nex:a a ex:C ; ex:p ex:x , ex:y ; .";
        let out = parse_turtle(src, None).unwrap();
        assert_eq!(out.triple_count, 3);
        assert!(out.graph.contains(&Triple::new(iri("http://ex/a"), iri(rdf::TYPE), iri("http://ex/C")).unwrap()));
    }

    #[test]
    fn literal_shorthands() {
        let src = r#"@prefix ex: <http://ex/> .
ex:a ex:n 5 , -2.50 , true ; ex:s "x\ty" , 'single' , "chat"@fr , "7"^^<http://www.w3.org/2001/XMLSchema#int> ."#;
        let out = parse_turtle(src, None).unwrap();
        assert_eq!(out.triple_count, 7);
        let lits: Vec<Literal> = out
            .graph
            .iter()
            .filter_map(|t| t.object.as_literal().cloned())
            .collect();
        assert!(lits.contains(&Literal::integer(5)));
        assert!(lits.contains(&Literal::typed("-2.50", Iri::new(xsd::DECIMAL).unwrap()).unwrap()));
        assert!(lits.contains(&Literal::boolean(true)));
        assert!(lits.contains(&Literal::simple("x\ty")));
        assert!(lits.contains(&Literal::lang_string("chat", "fr").unwrap()));
    }

    #[test]
    fn anonymous_blank_nodes_get_counter_labels() {
        let src = "@prefix ex: <http://ex/> .\n[] ex:p [ ex:q ex:r ] .\n_:b1 ex:p ex:z .";
        let out = parse_turtle(src, None).unwrap();
        assert_eq!(out.triple_count, 3);
        let mut labels: Vec<String> = out
            .graph
            .iter()
            .flat_map(|t| [t.subject, t.object])
            .filter_map(|t| match t {
                Term::BlankNode(b) => Some(b.label().to_string()),
                _ => None,
            })
            .collect();
        labels.sort();
        labels.dedup();
        // b1 is taken by the document, so generation skips it.
        assert_eq!(labels, vec!["b0", "b1", "b2"]);
    }

    #[test]
    fn unsupported_constructs_are_named() {
        for (src, construct) in [
            ("@prefix ex: <http://ex/> . ex:a ex:b ( ex:c ) .", "collection"),
            ("@prefix ex: <http://ex/> . ex:a ex:b \"\"\"long\"\"\" .", "long (triple-quoted) string"),
            ("@prefix ex: <http://ex/> . ex:a ex:b 1.5e3 .", "numeric exponent"),
        ] {
            let err = parse_turtle(src, None).unwrap_err();
            assert_eq!(err.kind, SyntaxErrorKind::Unsupported(construct.into()), "{src}");
            assert!(err.message.contains(construct));
        }
    }

    #[test]
    fn errors_report_position() {
        let err = parse_turtle("@prefix ex: <http://ex/> .\nex:a ex:b ex:c", None).unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("end of input"));
        let err = parse_turtle("@prefix ex: <http://ex/> .\n\nex:a ex:b \"bad\"^^ex:x ; ;; ex:c } .", None).unwrap_err();
        assert_eq!((err.line, err.column), (3, 33));
    }

    #[test]
    fn bad_numeric_typed_literal() {
        let err = parse_turtle(
            "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> . <http://a> <http://b> \"x\"^^xsd:integer .",
            None,
        )
        .unwrap_err();
        assert_eq!(err.kind, SyntaxErrorKind::Invalid);
    }

    #[test]
    fn resolution_cases() {
        assert_eq!(resolve_against("http://ex/a/b?q#f", "c"), "http://ex/a/c");
        assert_eq!(resolve_against("http://ex", "c"), "http://ex/c");
        assert_eq!(resolve_against("http://ex/a", "?x"), "http://ex/a?x");
        assert_eq!(resolve_against("http://ex/a", "//other/x"), "http://other/x");
        assert_eq!(resolve_against("urn:isbn:1", "#x"), "urn:isbn:1#x");
    }
}
