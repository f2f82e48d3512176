use std::fmt;

use crate::model::Iri;

/// What went wrong at a [`SyntaxError`] position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntaxErrorKind {
    /// Grammar violation.
    Invalid,
    /// A prefixed name used a prefix that was never declared.
    UnknownPrefix(String),
    /// A relative IRI appeared while no base IRI was in scope.
    RelativeIri(String),
    /// A construct outside the supported subset (named in the payload).
    Unsupported(String),
}

/// A positioned parse failure in Turtle or query text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    /// 1-based line.
    pub line: usize,
    /// 1-based column, counted in characters.
    pub column: usize,
    pub message: String,
    /// Source fragment starting at the offending position.
    pub snippet: String,
    pub kind: SyntaxErrorKind,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.snippet.is_empty() {
            write!(f, " (near `{}`)", self.snippet)?;
        }
        Ok(())
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at {0}")]
    Syntax(#[from] SyntaxError),
    #[error("unknown prefix `{0}`")]
    UnknownPrefix(String),
    #[error("invalid qualified name `{0}`")]
    InvalidQName(String),
    #[error("invalid IRI `{iri}`: {reason}")]
    InvalidIri { iri: String, reason: &'static str },
    #[error("invalid blank node label `{0}`")]
    InvalidBlankNode(String),
    #[error("invalid literal `{lexical}`: {reason}")]
    InvalidLiteral { lexical: String, reason: String },
    #[error("malformed triple: {0}")]
    MalformedTriple(String),
    #[error("subclass cycle among {}", format_cycles(.0))]
    SubclassCycle(Vec<Vec<Iri>>),
    #[error("invalid name pattern: {0}")]
    InvalidPattern(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

fn format_cycles(cycles: &[Vec<Iri>]) -> String {
    cycles
        .iter()
        .map(|c| {
            let names: Vec<String> = c.iter().map(|i| format!("<{i}>")).collect();
            format!("{{{}}}", names.join(", "))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
