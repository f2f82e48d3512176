use std::collections::BTreeMap;
use std::sync::OnceLock;

use regex::Regex;

use crate::error::{Error, Result};
use crate::model::vocab::{owl, rdf, rdfs, xsd};
use crate::model::Iri;

/// Prefix label to namespace IRI associations. The empty label is the default namespace.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    entries: BTreeMap<String, Iri>,
}

fn local_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^([A-Za-z0-9_]([A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?)?$").unwrap())
}

fn label_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^([A-Za-z]([A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?)?$").unwrap())
}

/// True when `local` can be written after `prefix:` without escapes.
pub(crate) fn is_writable_local(local: &str) -> bool {
    local_re().is_match(local)
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// `rdf`, `rdfs`, `owl` and `xsd`.
    pub fn standard() -> Self {
        let mut pm = Self::new();
        for (label, ns) in [("rdf", rdf::NS), ("rdfs", rdfs::NS), ("owl", owl::NS), ("xsd", xsd::NS)] {
            pm.insert(label, Iri::new_unchecked(ns)).unwrap();
        }
        pm
    }

    /// Declares or redeclares a prefix, returning the namespace it replaced.
    pub fn insert(&mut self, label: impl Into<String>, namespace: Iri) -> Result<Option<Iri>> {
        let label = label.into();
        if !label_re().is_match(&label) {
            return Err(Error::InvalidQName(format!("{label}:")));
        }
        Ok(self.entries.insert(label, namespace))
    }

    pub fn get(&self, label: &str) -> Option<&Iri> {
        self.entries.get(label)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in label order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Expands `prefix:local` to the namespace IRI followed by `local`.
    pub fn expand(&self, qname: &str) -> Result<Iri> {
        let (prefix, local) = qname
            .split_once(':')
            .ok_or_else(|| Error::InvalidQName(qname.to_string()))?;
        let ns = self
            .entries
            .get(prefix)
            .ok_or_else(|| Error::UnknownPrefix(prefix.to_string()))?;
        Iri::new(format!("{}{}", ns.as_str(), local))
    }

    /// Shortest prefixed form of `iri`, choosing the longest matching namespace
    /// (ties broken by label order). `None` when no namespace matches or the
    /// remainder is not a plain local name.
    pub fn compact(&self, iri: &Iri) -> Option<String> {
        let mut best: Option<(&str, &str)> = None;
        for (label, ns) in &self.entries {
            if let Some(local) = iri.as_str().strip_prefix(ns.as_str()) {
                if !is_writable_local(local) {
                    continue;
                }
                match best {
                    Some((_, best_local)) if best_local.len() <= local.len() => {}
                    _ => best = Some((label, local)),
                }
            }
        }
        best.map(|(label, local)| format!("{label}:{local}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn owl_only() -> PrefixMap {
        let mut pm = PrefixMap::new();
        pm.insert("owl", Iri::new("http://www.w3.org/2002/07/owl#").unwrap()).unwrap();
        pm
    }

    #[test]
    fn expands_owl_thing() {
        let iri = owl_only().expand("owl:Thing").unwrap();
        assert_eq!(iri.as_str(), "http://www.w3.org/2002/07/owl#Thing");
    }

    #[test]
    fn unknown_prefix_is_named() {
        assert_eq!(PrefixMap::new().expand("ex:a"), Err(Error::UnknownPrefix("ex".into())));
    }

    #[test]
    fn compact_inverts_expand() {
        let pm = PrefixMap::standard();
        for q in ["owl:Thing", "rdf:type", "xsd:integer", "rdfs:subClassOf"] {
            assert_eq!(pm.compact(&pm.expand(q).unwrap()).as_deref(), Some(q));
        }
    }

    #[test]
    fn compact_prefers_longest_namespace() {
        let mut pm = PrefixMap::new();
        pm.insert("ex", Iri::new("http://ex/").unwrap()).unwrap();
        pm.insert("exa", Iri::new("http://ex/a/").unwrap()).unwrap();
        assert_eq!(pm.compact(&Iri::new("http://ex/a/b").unwrap()).as_deref(), Some("exa:b"));
        assert_eq!(pm.compact(&Iri::new("http://ex/a%20b").unwrap()).as_deref(), None);
    }

    #[test]
    fn empty_label_is_default_namespace() {
        let mut pm = PrefixMap::new();
        pm.insert("", Iri::new("http://ex/").unwrap()).unwrap();
        assert_eq!(pm.expand(":a").unwrap().as_str(), "http://ex/a");
        assert_eq!(pm.compact(&Iri::new("http://ex/a").unwrap()).as_deref(), Some(":a"));
    }
}
