//! Semantic knowledge-base toolkit for small OWL ontologies: an indexed triple
//! store, Turtle I/O, a forward-chaining reasoner, an ontology linter, a SPARQL
//! subset and class-hierarchy export.

pub mod dot;
pub mod error;
pub mod fixtures;
pub mod lint;
pub mod model;
pub mod onto;
pub mod reasoner;
pub mod sparql;
pub mod turtle;
mod lex;

pub use error::{Error, Result, SyntaxError, SyntaxErrorKind};
pub use model::{BlankNode, Graph, Iri, Literal, PrefixMap, Term, Triple, TriplePattern};
