use std::fmt;
use std::sync::OnceLock;

use regex::Regex;

use crate::error::{Error, Result};
use crate::model::vocab::{rdf, xsd};

/// An absolute IRI, compared as raw text.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Self> {
        let value = value.into();
        if value.is_empty() {
            return Err(Error::InvalidIri { iri: value, reason: "empty IRI" });
        }
        if value.chars().any(char::is_whitespace) {
            return Err(Error::InvalidIri { iri: value, reason: "IRI contains whitespace" });
        }
        if value.contains(['<', '>']) {
            return Err(Error::InvalidIri { iri: value, reason: "IRI contains an angle bracket" });
        }
        Ok(Iri(value))
    }

    /// Caller guarantees the invariants (used for vocabulary constants).
    pub(crate) fn new_unchecked(value: impl Into<String>) -> Self {
        Iri(value.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// The fragment after the last `#` or `/`.
    pub fn local_name(&self) -> &str {
        match self.0.rfind(['#', '/']) {
            Some(idx) => &self.0[idx + 1..],
            None => &self.0,
        }
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A blank node; the label only identifies it within one graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlankNode(String);

fn blank_label_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^[A-Za-z0-9_]([A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?$").unwrap())
}

impl BlankNode {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if !blank_label_re().is_match(&label) {
            return Err(Error::InvalidBlankNode(label));
        }
        Ok(BlankNode(label))
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BlankNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

/// A data value. Identity is the full `(lexical, datatype, language)` triple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    datatype: Iri,
    language: Option<String>,
}

fn lang_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^[A-Za-z]+(-[A-Za-z0-9]+)*$").unwrap())
}

fn integer_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^[+-]?[0-9]+$").unwrap())
}

fn decimal_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)$").unwrap())
}

impl Literal {
    /// A plain `xsd:string` literal.
    pub fn simple(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: Iri::new_unchecked(xsd::STRING),
            language: None,
        }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Result<Self> {
        let lexical = lexical.into();
        if datatype.as_str() == rdf::LANG_STRING {
            return Err(Error::InvalidLiteral {
                lexical,
                reason: "rdf:langString requires a language tag".into(),
            });
        }
        if let Some(kind) = xsd::numeric_kind(datatype.as_str()) {
            let ok = match kind {
                xsd::NumericKind::Integer => integer_re().is_match(&lexical),
                xsd::NumericKind::Decimal => decimal_re().is_match(&lexical),
                xsd::NumericKind::Floating => {
                    matches!(lexical.as_str(), "INF" | "-INF" | "+INF" | "NaN")
                        || (lexical.trim() == lexical && lexical.parse::<f64>().is_ok())
                }
            };
            if !ok {
                return Err(Error::InvalidLiteral {
                    lexical,
                    reason: format!("not a valid lexical form for <{datatype}>"),
                });
            }
        }
        Ok(Literal { lexical, datatype, language: None })
    }

    pub fn lang_string(lexical: impl Into<String>, language: impl Into<String>) -> Result<Self> {
        let lexical = lexical.into();
        let language = language.into();
        if !lang_re().is_match(&language) {
            return Err(Error::InvalidLiteral {
                lexical,
                reason: format!("malformed language tag `{language}`"),
            });
        }
        Ok(Literal {
            lexical,
            datatype: Iri::new_unchecked(rdf::LANG_STRING),
            language: Some(language),
        })
    }

    pub fn integer(value: i64) -> Self {
        Literal {
            lexical: value.to_string(),
            datatype: Iri::new_unchecked(xsd::INTEGER),
            language: None,
        }
    }

    pub fn boolean(value: bool) -> Self {
        Literal {
            lexical: value.to_string(),
            datatype: Iri::new_unchecked(xsd::BOOLEAN),
            language: None,
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    pub fn is_simple(&self) -> bool {
        self.language.is_none() && self.datatype.as_str() == xsd::STRING
    }

    /// Numeric value for numeric-datatype literals.
    pub fn numeric_value(&self) -> Option<f64> {
        xsd::numeric_kind(self.datatype.as_str())?;
        match self.lexical.as_str() {
            "INF" | "+INF" => Some(f64::INFINITY),
            "-INF" => Some(f64::NEG_INFINITY),
            other => other.parse::<f64>().ok(),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", escape_string(&self.lexical))?;
        if let Some(lang) = &self.language {
            write!(f, "@{lang}")
        } else if self.datatype.as_str() != xsd::STRING {
            write!(f, "^^<{}>", self.datatype)
        } else {
            Ok(())
        }
    }
}

/// Escapes a lexical form for a double-quoted short string.
pub(crate) fn escape_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '\u{8}' => out.push_str("\\b"),
            '\u{c}' => out.push_str("\\f"),
            c if c.is_control() => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Any RDF node. Variant order (IRI, blank node, literal) is the sort order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    BlankNode(BlankNode),
    Literal(Literal),
}

impl Term {
    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank_node(&self) -> bool {
        matches!(self, Term::BlankNode(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<BlankNode> for Term {
    fn from(b: BlankNode) -> Self {
        Term::BlankNode(b)
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Literal(l)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::BlankNode(b) => b.fmt(f),
            Term::Literal(l) => l.fmt(f),
        }
    }
}

/// A subject-predicate-object statement.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Term>, predicate: impl Into<Term>, object: impl Into<Term>) -> Result<Self> {
        let t = Triple {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.subject.is_literal() {
            return Err(Error::MalformedTriple(format!("literal {} in subject position", self.subject)));
        }
        if !self.predicate.is_iri() {
            return Err(Error::MalformedTriple(format!(
                "{} in predicate position is not an IRI",
                self.predicate
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iri_rejects_bad_text() {
        assert!(Iri::new("").is_err());
        assert!(Iri::new("http://ex/a b").is_err());
        assert!(Iri::new("http://ex/<a>").is_err());
        assert_eq!(Iri::new("http://ex/A").unwrap(), Iri::new("http://ex/A").unwrap());
        assert_ne!(Iri::new("http://ex/A").unwrap(), Iri::new("http://ex/a").unwrap());
    }

    #[test]
    fn local_name_splits_on_hash_or_slash() {
        assert_eq!(Iri::new("http://ex/onto#Seed").unwrap().local_name(), "Seed");
        assert_eq!(Iri::new("http://ex/onto/Seed").unwrap().local_name(), "Seed");
        assert_eq!(Iri::new("urn:x").unwrap().local_name(), "urn:x");
    }

    #[test]
    fn numeric_literals_must_parse() {
        let int = Iri::new(xsd::INTEGER).unwrap();
        assert!(Literal::typed("5", int.clone()).is_ok());
        assert!(Literal::typed("five", int).is_err());
        assert!(Literal::typed("2.5", Iri::new(xsd::DECIMAL).unwrap()).is_ok());
        assert!(Literal::typed("1e3", Iri::new(xsd::DOUBLE).unwrap()).is_ok());
        assert!(Literal::typed("1e3", Iri::new(xsd::DECIMAL).unwrap()).is_err());
    }

    #[test]
    fn literal_identity_includes_datatype() {
        let a = Literal::typed("5", Iri::new(xsd::INTEGER).unwrap()).unwrap();
        let b = Literal::simple("5");
        assert_ne!(a, b);
    }

    #[test]
    fn language_tags_are_checked() {
        assert!(Literal::lang_string("seed", "en-GB").is_ok());
        assert!(Literal::lang_string("seed", "en_GB").is_err());
        assert!(Literal::typed("x", Iri::new(rdf::LANG_STRING).unwrap()).is_err());
    }

    #[test]
    fn triple_positions_are_enforced() {
        let iri = Term::Iri(Iri::new("http://ex/a").unwrap());
        let lit = Term::Literal(Literal::simple("x"));
        let blank = Term::BlankNode(BlankNode::new("b0").unwrap());
        assert!(Triple::new(lit.clone(), iri.clone(), iri.clone()).is_err());
        assert!(Triple::new(iri.clone(), lit.clone(), iri.clone()).is_err());
        assert!(Triple::new(iri.clone(), blank.clone(), iri.clone()).is_err());
        assert!(Triple::new(blank, iri.clone(), lit).is_ok());
    }
}
