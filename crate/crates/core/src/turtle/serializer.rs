use std::fmt::Write;

use crate::model::vocab::{rdf, xsd};
use crate::model::{escape_string, Graph, Iri, PrefixMap, Term, Triple};

/// Writes `graph` as Turtle. Output is a pure function of the triple set and
/// `pm`: prefixes in label order, then one block per subject in term order.
pub fn serialize_turtle(graph: &Graph, pm: &PrefixMap) -> String {
    let mut out = String::new();
    for (label, ns) in pm.iter() {
        writeln!(out, "@prefix {label}: <{}> .", escape_iri(ns.as_str())).unwrap();
    }
    let triples = graph.sorted_triples();
    if !triples.is_empty() && !pm.is_empty() {
        out.push('\n');
    }
    let mut i = 0;
    while i < triples.len() {
        let subject = &triples[i].subject;
        let end = i + triples[i..].iter().take_while(|t| &t.subject == subject).count();
        write_subject_block(&mut out, pm, &triples[i..end]);
        i = end;
    }
    out
}

fn write_subject_block(out: &mut String, pm: &PrefixMap, block: &[Triple]) {
    out.push_str(&term(pm, &block[0].subject));
    let mut j = 0;
    let mut first = true;
    while j < block.len() {
        let predicate = &block[j].predicate;
        let end = j + block[j..].iter().take_while(|t| &t.predicate == predicate).count();
        out.push_str(if first { " " } else { " ;\n    " });
        first = false;
        out.push_str(&predicate_text(pm, predicate));
        for (k, t) in block[j..end].iter().enumerate() {
            out.push_str(if k == 0 { " " } else { " , " });
            out.push_str(&term(pm, &t.object));
        }
        j = end;
    }
    out.push_str(" .\n");
}

fn predicate_text(pm: &PrefixMap, predicate: &Term) -> String {
    match predicate {
        Term::Iri(iri) if iri.as_str() == rdf::TYPE => "a".to_string(),
        other => term(pm, other),
    }
}

fn iri_text(pm: &PrefixMap, iri: &Iri) -> String {
    pm.compact(iri)
        .unwrap_or_else(|| format!("<{}>", escape_iri(iri.as_str())))
}

/// Characters Turtle forbids raw inside `<...>` are written as `\u` escapes.
fn escape_iri(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if matches!(c, '"' | '{' | '}' | '|' | '^' | '`' | '\\') || c.is_control() {
            write!(out, "\\u{:04X}", c as u32).unwrap();
        } else {
            out.push(c);
        }
    }
    out
}

fn term(pm: &PrefixMap, t: &Term) -> String {
    match t {
        Term::Iri(iri) => iri_text(pm, iri),
        Term::BlankNode(b) => b.to_string(),
        Term::Literal(lit) => {
            let mut s = format!("\"{}\"", escape_string(lit.lexical()));
            if let Some(lang) = lit.language() {
                s.push('@');
                s.push_str(lang);
            } else if lit.datatype().as_str() != xsd::STRING {
                s.push_str("^^");
                s.push_str(&iri_text(pm, lit.datatype()));
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::turtle::parse_turtle;

    #[test]
    fn empty_graph_is_only_prefixes() {
        assert_eq!(serialize_turtle(&Graph::new(), &PrefixMap::new()), "");
        let text = serialize_turtle(&Graph::new(), &PrefixMap::standard());
        assert!(text.lines().all(|l| l.starts_with("@prefix ")));
        assert_eq!(text.lines().count(), 4);
    }

    #[test]
    fn groups_predicates_and_objects() {
        let src = "@prefix ex: <http://ex/> .\nex:b ex:p ex:y , ex:x .\nex:a a ex:C ; ex:p \"q\\\"uote\"@en .";
        let parsed = parse_turtle(src, None).unwrap();
        let text = serialize_turtle(&parsed.graph, &parsed.prefix_map);
        assert_eq!(
            text,
            "@prefix ex: <http://ex/> .\n\nex:a ex:p \"q\\\"uote\"@en ;\n    a ex:C .\nex:b ex:p ex:x , ex:y .\n"
        );
        let again = parse_turtle(&text, None).unwrap();
        assert_eq!(again.graph, parsed.graph);
    }

    #[test]
    fn unprefixed_iris_are_escaped() {
        let mut g = Graph::new();
        g.insert(
            Triple::new(
                Iri::new("http://ex/a{b}").unwrap(),
                Iri::new("http://ex/p").unwrap(),
                Iri::new("http://ex/o|").unwrap(),
            )
            .unwrap(),
        )
        .unwrap();
        let text = serialize_turtle(&g, &PrefixMap::new());
        assert_eq!(text, "<http://ex/a\\u007Bb\\u007D> <http://ex/p> <http://ex/o\\u007C> .\n");
        assert_eq!(parse_turtle(&text, None).unwrap().graph, g);
    }
}
