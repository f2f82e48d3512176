use std::collections::btree_set;
use std::collections::{BTreeSet, HashMap};

use crate::error::Result;
use crate::model::{PrefixMap, Term, Triple};

/// Dictionary identifier of a term within one [`Graph`].
pub type TermId = u32;

type Key = (TermId, TermId, TermId);

#[derive(Debug, Clone, Default)]
struct Dictionary {
    terms: Vec<Term>,
    ids: HashMap<Term, TermId>,
}

impl Dictionary {
    fn intern(&mut self, term: &Term) -> TermId {
        if let Some(&id) = self.ids.get(term) {
            return id;
        }
        let id = TermId::try_from(self.terms.len()).expect("term dictionary overflow");
        self.terms.push(term.clone());
        self.ids.insert(term.clone(), id);
        id
    }
}

/// Which ordering a pattern lookup was answered from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexKind {
    Spo,
    Pos,
    Osp,
}

/// A triple pattern over concrete terms; `None` is a wildcard.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TriplePattern {
    pub subject: Option<Term>,
    pub predicate: Option<Term>,
    pub object: Option<Term>,
}

impl TriplePattern {
    pub fn new(subject: Option<Term>, predicate: Option<Term>, object: Option<Term>) -> Self {
        TriplePattern { subject, predicate, object }
    }

    pub fn any() -> Self {
        Self::default()
    }

    pub fn matches(&self, t: &Triple) -> bool {
        fn slot(p: &Option<Term>, v: &Term) -> bool {
            p.as_ref().is_none_or(|p| p == v)
        }
        slot(&self.subject, &t.subject) && slot(&self.predicate, &t.predicate) && slot(&self.object, &t.object)
    }
}

/// Result of an instrumented pattern lookup.
#[derive(Debug, Clone)]
pub struct Probe {
    pub index: IndexKind,
    /// Index entries touched while answering.
    pub visited: usize,
    pub triples: Vec<Triple>,
}

/// Deduplicated triple set with subject-, predicate- and object-first indexes
/// over dictionary-encoded terms.
///
/// Lookups pick the index from the bound-slot signature:
///
/// | bound   | index | key prefix |
/// |---------|-------|------------|
/// | S, SP, SPO | SPO | s, p, o |
/// | P       | POS   | p |
/// | PO      | POS   | p, o |
/// | O       | OSP   | o |
/// | SO      | OSP   | o, s |
/// | none    | SPO   | full scan |
///
/// Every lookup is a contiguous range of one index, so the entries visited are
/// exactly the entries returned.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    dict: Dictionary,
    spo: BTreeSet<Key>,
    pos: BTreeSet<Key>,
    osp: BTreeSet<Key>,
    prefixes: PrefixMap,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    pub fn prefixes(&self) -> &PrefixMap {
        &self.prefixes
    }

    pub fn prefixes_mut(&mut self) -> &mut PrefixMap {
        &mut self.prefixes
    }

    pub fn set_prefixes(&mut self, prefixes: PrefixMap) {
        self.prefixes = prefixes;
    }

    /// Adds `t`; `Ok(true)` iff it was not already present.
    pub fn insert(&mut self, t: Triple) -> Result<bool> {
        t.validate()?;
        let key = (
            self.dict.intern(&t.subject),
            self.dict.intern(&t.predicate),
            self.dict.intern(&t.object),
        );
        Ok(self.insert_key(key))
    }

    /// Caller guarantees the ids were produced by this graph and form a valid triple.
    pub(crate) fn insert_ids(&mut self, s: TermId, p: TermId, o: TermId) -> bool {
        self.insert_key((s, p, o))
    }

    fn insert_key(&mut self, (s, p, o): Key) -> bool {
        if !self.spo.insert((s, p, o)) {
            return false;
        }
        self.pos.insert((p, o, s));
        self.osp.insert((o, s, p));
        true
    }

    /// Removes `t`; true iff it was present.
    pub fn remove(&mut self, t: &Triple) -> bool {
        let (Some(s), Some(p), Some(o)) = (
            self.term_id(&t.subject),
            self.term_id(&t.predicate),
            self.term_id(&t.object),
        ) else {
            return false;
        };
        if !self.spo.remove(&(s, p, o)) {
            return false;
        }
        self.pos.remove(&(p, o, s));
        self.osp.remove(&(o, s, p));
        true
    }

    pub fn contains(&self, t: &Triple) -> bool {
        match (self.term_id(&t.subject), self.term_id(&t.predicate), self.term_id(&t.object)) {
            (Some(s), Some(p), Some(o)) => self.spo.contains(&(s, p, o)),
            _ => false,
        }
    }

    pub fn term_id(&self, term: &Term) -> Option<TermId> {
        self.dict.ids.get(term).copied()
    }

    /// Interns `term` without adding any triple.
    pub(crate) fn intern(&mut self, term: &Term) -> TermId {
        self.dict.intern(term)
    }

    /// Panics if `id` did not come from this graph.
    pub fn term(&self, id: TermId) -> &Term {
        &self.dict.terms[id as usize]
    }

    pub fn decode(&self, [s, p, o]: [TermId; 3]) -> Triple {
        Triple {
            subject: self.term(s).clone(),
            predicate: self.term(p).clone(),
            object: self.term(o).clone(),
        }
    }

    /// All triples in identifier order.
    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.spo.iter().map(|&(s, p, o)| self.decode([s, p, o]))
    }

    /// All triples sorted by term order of subject, predicate, object.
    pub fn sorted_triples(&self) -> Vec<Triple> {
        let mut v: Vec<Triple> = self.iter().collect();
        v.sort();
        v
    }

    /// Distinct terms occurring in at least one triple.
    pub fn distinct_terms(&self) -> usize {
        let mut seen = vec![false; self.dict.terms.len()];
        for &(s, p, o) in &self.spo {
            seen[s as usize] = true;
            seen[p as usize] = true;
            seen[o as usize] = true;
        }
        seen.into_iter().filter(|&b| b).count()
    }

    /// Identifier-level lookup; `None` slots are wildcards.
    pub fn match_ids(&self, s: Option<TermId>, p: Option<TermId>, o: Option<TermId>) -> IdMatches<'_> {
        const MIN: TermId = TermId::MIN;
        const MAX: TermId = TermId::MAX;
        let (set, order, lo, hi) = match (s, p, o) {
            (Some(s), Some(p), Some(o)) => (&self.spo, IndexKind::Spo, (s, p, o), (s, p, o)),
            (Some(s), Some(p), None) => (&self.spo, IndexKind::Spo, (s, p, MIN), (s, p, MAX)),
            (Some(s), None, None) => (&self.spo, IndexKind::Spo, (s, MIN, MIN), (s, MAX, MAX)),
            (Some(s), None, Some(o)) => (&self.osp, IndexKind::Osp, (o, s, MIN), (o, s, MAX)),
            (None, Some(p), None) => (&self.pos, IndexKind::Pos, (p, MIN, MIN), (p, MAX, MAX)),
            (None, Some(p), Some(o)) => (&self.pos, IndexKind::Pos, (p, o, MIN), (p, o, MAX)),
            (None, None, Some(o)) => (&self.osp, IndexKind::Osp, (o, MIN, MIN), (o, MAX, MAX)),
            (None, None, None) => (&self.spo, IndexKind::Spo, (MIN, MIN, MIN), (MAX, MAX, MAX)),
        };
        IdMatches { range: set.range(lo..=hi), order }
    }

    pub fn contains_ids(&self, s: TermId, p: TermId, o: TermId) -> bool {
        self.spo.contains(&(s, p, o))
    }

    /// Number of triples matching an identifier-level pattern.
    pub fn count_ids(&self, s: Option<TermId>, p: Option<TermId>, o: Option<TermId>) -> usize {
        if s.is_none() && p.is_none() && o.is_none() {
            return self.len();
        }
        self.match_ids(s, p, o).count()
    }

    /// Resolves pattern terms to ids; `Err(())` when a bound term is absent
    /// from the dictionary, meaning nothing can match.
    fn resolve(&self, pattern: &TriplePattern) -> Result<[Option<TermId>; 3], ()> {
        let slot = |t: &Option<Term>| match t {
            None => Ok(None),
            Some(t) => self.term_id(t).map(Some).ok_or(()),
        };
        Ok([slot(&pattern.subject)?, slot(&pattern.predicate)?, slot(&pattern.object)?])
    }

    /// Triples unifying with `pattern`.
    pub fn match_pattern(&self, pattern: &TriplePattern) -> Vec<Triple> {
        self.probe(pattern).triples
    }

    /// Like [`Graph::match_pattern`] but also reports the index used and how
    /// many index entries were visited.
    pub fn probe(&self, pattern: &TriplePattern) -> Probe {
        let Ok([s, p, o]) = self.resolve(pattern) else {
            return Probe { index: IndexKind::Spo, visited: 0, triples: Vec::new() };
        };
        let matches = self.match_ids(s, p, o);
        let index = matches.order;
        let mut visited = 0;
        let triples = matches
            .inspect(|_| visited += 1)
            .map(|ids| self.decode(ids))
            .collect();
        Probe { index, visited, triples }
    }

    /// Checks that all three indexes hold the same triple set.
    pub fn indexes_agree(&self) -> bool {
        if self.spo.len() != self.pos.len() || self.spo.len() != self.osp.len() {
            return false;
        }
        let from_pos: BTreeSet<Key> = self.pos.iter().map(|&(p, o, s)| (s, p, o)).collect();
        let from_osp: BTreeSet<Key> = self.osp.iter().map(|&(o, s, p)| (s, p, o)).collect();
        from_pos == self.spo && from_osp == self.spo
    }
}

impl PartialEq for Graph {
    /// Triple-set equality; prefixes and dictionary layout are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().all(|t| other.contains(&t))
    }
}

impl Eq for Graph {}

impl FromIterator<Triple> for Graph {
    /// Panics on a malformed triple.
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        for t in iter {
            g.insert(t).expect("malformed triple");
        }
        g
    }
}

/// Iterator over identifier triples from one index range, yielded in `[s, p, o]` order.
pub struct IdMatches<'a> {
    range: btree_set::Range<'a, Key>,
    order: IndexKind,
}

impl IdMatches<'_> {
    pub fn index(&self) -> IndexKind {
        self.order
    }
}

impl Iterator for IdMatches<'_> {
    type Item = [TermId; 3];

    fn next(&mut self) -> Option<Self::Item> {
        let &(a, b, c) = self.range.next()?;
        Some(match self.order {
            IndexKind::Spo => [a, b, c],
            IndexKind::Pos => [c, a, b],
            IndexKind::Osp => [b, c, a],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{vocab, Iri, Literal};

    fn iri(s: &str) -> Term {
        Term::Iri(Iri::new(s).unwrap())
    }

    fn seed_decl() -> Triple {
        Triple::new(iri("http://ex/Seed"), iri(vocab::rdf::TYPE), iri(vocab::owl::CLASS)).unwrap()
    }

    #[test]
    fn insert_into_empty() {
        let mut g = Graph::new();
        assert!(g.insert(seed_decl()).unwrap());
        assert_eq!(g.len(), 1);
        assert!(!g.insert(seed_decl()).unwrap());
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn insert_rejects_literal_subject() {
        let mut g = Graph::new();
        let t = Triple {
            subject: Term::Literal(Literal::simple("x")),
            predicate: iri("http://ex/p"),
            object: iri("http://ex/o"),
        };
        assert!(g.insert(t).is_err());
        assert!(g.is_empty());
    }

    #[test]
    fn remove_round_trip() {
        let mut g = Graph::new();
        assert!(!g.remove(&seed_decl()));
        g.insert(seed_decl()).unwrap();
        assert!(g.remove(&seed_decl()));
        assert!(!g.remove(&seed_decl()));
        assert!(g.is_empty());
        assert!(g.indexes_agree());
    }

    #[test]
    fn match_on_empty_graph() {
        assert!(Graph::new().match_pattern(&TriplePattern::any()).is_empty());
    }

    #[test]
    fn index_choice_follows_signature() {
        let mut g = Graph::new();
        g.insert(seed_decl()).unwrap();
        let s = Some(iri("http://ex/Seed"));
        let p = Some(iri(vocab::rdf::TYPE));
        let o = Some(iri(vocab::owl::CLASS));
        let cases = [
            (TriplePattern::new(s.clone(), None, None), IndexKind::Spo),
            (TriplePattern::new(None, p.clone(), None), IndexKind::Pos),
            (TriplePattern::new(None, None, o.clone()), IndexKind::Osp),
            (TriplePattern::new(s.clone(), None, o.clone()), IndexKind::Osp),
            (TriplePattern::new(None, p.clone(), o.clone()), IndexKind::Pos),
            (TriplePattern::new(s, p, o), IndexKind::Spo),
        ];
        for (pat, kind) in cases {
            let probe = g.probe(&pat);
            assert_eq!(probe.index, kind, "{pat:?}");
            assert_eq!(probe.triples, vec![seed_decl()]);
            assert_eq!(probe.visited, 1);
        }
    }

    #[test]
    fn unknown_term_matches_nothing() {
        let mut g = Graph::new();
        g.insert(seed_decl()).unwrap();
        let probe = g.probe(&TriplePattern::new(Some(iri("http://ex/Nope")), None, None));
        assert!(probe.triples.is_empty());
        assert_eq!(probe.visited, 0);
    }
}
