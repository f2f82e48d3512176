//! RDF terms, triples and the indexed in-memory triple store.

mod graph;
mod prefix;
mod term;
pub mod vocab;

pub use graph::{Graph, IdMatches, IndexKind, Probe, TermId, TriplePattern};
pub use prefix::PrefixMap;
pub use term::{BlankNode, Iri, Literal, Term, Triple};
pub(crate) use term::escape_string;

/// Expands `prefix:local` under `pm`.
pub fn expand_qname(pm: &PrefixMap, qname: &str) -> crate::Result<Iri> {
    pm.expand(qname)
}
