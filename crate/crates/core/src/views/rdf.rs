use std::collections::{BTreeSet, HashSet};

use crate::store::Store;
use crate::term::{Iri, Sid, Statement, Term};
use crate::views::Namespaces;
use crate::vocab;

/// RDF triple. Never contains a sid reference or a local id.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Self {
        Triple {
            subject,
            predicate,
            object,
        }
    }
}

/// Set of triples in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RdfGraph {
    triples: BTreeSet<Triple>,
}

impl RdfGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, t: Triple) -> bool {
        self.triples.insert(t)
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.contains(t)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> + '_ {
        self.triples.iter()
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }
}

impl FromIterator<Triple> for RdfGraph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        RdfGraph {
            triples: iter.into_iter().collect(),
        }
    }
}

/// What happens to assertions in the plain RDF view.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RdfMode {
    /// Assertions are invisible.
    #[default]
    Hide,
    /// Referenced statements are spelled out with the `rdf:Statement`
    /// reification vocabulary, one reification node per sid.
    Reify,
}

fn vocab_iri(s: &str) -> Term {
    Term::Iri(Iri::new(s).expect("vocabulary IRI"))
}

/// The triple a ground statement contributes to the plain view, or `None`
/// for statements the plain view does not show.
pub(crate) fn hide_triple(st: &Statement, ns: &Namespaces) -> Option<Triple> {
    if !st.is_ground() || crate::term::has_membership_label(st) {
        return None;
    }
    Some(Triple::new(
        ns.expose(st.src()),
        ns.expose(st.label()),
        ns.expose(st.value()),
    ))
}

/// Sids of statements that can surface in a view at all: anything except
/// membership statements and statements depending on them.
pub(crate) fn visible_sids(store: &Store) -> HashSet<Sid> {
    let mut visible = HashSet::with_capacity(store.len());
    for sid in store.topological_order() {
        let st = store.get(sid).expect("live sid");
        if crate::term::has_membership_label(st) {
            continue;
        }
        if st.referenced_sids().all(|r| visible.contains(&r)) {
            visible.insert(sid);
        }
    }
    visible
}

/// Plain RDF projection.
pub fn rdf_view(store: &Store, mode: RdfMode, ns: &Namespaces) -> RdfGraph {
    let mut graph: RdfGraph = store.iter().filter_map(|st| hide_triple(st, ns)).collect();
    if mode == RdfMode::Hide {
        return graph;
    }

    let node = |t: &Term| match t {
        Term::SidRef(sid) => Term::Iri(sid.to_iri()),
        other => ns.expose(other),
    };
    let visible = visible_sids(store);
    let mut reified = BTreeSet::new();
    for st in store.iter() {
        if st.is_ground() || !visible.contains(&st.sid()) {
            continue;
        }
        reified.extend(st.referenced_sids());
        graph.insert(Triple::new(
            node(st.src()),
            node(st.label()),
            node(st.value()),
        ));
    }
    for sid in reified {
        let st = store.get(sid).expect("referenced sid is live");
        let subject = Term::Iri(sid.to_iri());
        let mut add =
            |p: &str, o: Term| graph.insert(Triple::new(subject.clone(), vocab_iri(p), o));
        add(vocab::RDF_TYPE, vocab_iri(vocab::RDF_STATEMENT));
        add(vocab::RDF_SUBJECT, node(st.src()));
        add(vocab::RDF_PREDICATE, node(st.label()));
        add(vocab::RDF_OBJECT, node(st.value()));
    }
    graph
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datatypes::Literal;
    use crate::term::GraphId;

    fn l(s: &str) -> Term {
        Term::local(s).unwrap()
    }

    #[test]
    fn hide_dedups_and_skips_assertions() {
        let mut store = Store::with_seed(0);
        let a = store.insert_ground(l("a"), l("p"), l("b")).unwrap();
        store.insert_ground(l("a"), l("p"), l("b")).unwrap();
        store
            .insert_assertion(a.into(), l("q"), Literal::integer(1).into())
            .unwrap();
        store
            .set_graph_membership(a, &GraphId::new(l("g")).unwrap())
            .unwrap();
        let g = rdf_view(&store, RdfMode::Hide, &Namespaces::default());
        assert_eq!(g.len(), 1);
        let t = g.iter().next().unwrap();
        assert_eq!(t.subject, Term::iri("urn:og:local:a").unwrap());
    }

    #[test]
    fn reify_multi_edge_keeps_both_nodes() {
        let mut store = Store::with_seed(0);
        let a = store.insert_ground(l("a"), l("p"), l("b")).unwrap();
        let b = store.insert_ground(l("a"), l("p"), l("b")).unwrap();
        store
            .insert_assertion(a.into(), l("q"), Literal::integer(1).into())
            .unwrap();
        store
            .insert_assertion(b.into(), l("q"), Literal::integer(2).into())
            .unwrap();
        let g = rdf_view(&store, RdfMode::Reify, &Namespaces::default());
        // 1 base + 2 * 4 reification + 2 assertion triples
        assert_eq!(g.len(), 11);
    }

    #[test]
    fn reify_ignores_membership_only_references() {
        let mut store = Store::with_seed(0);
        let a = store.insert_ground(l("a"), l("p"), l("b")).unwrap();
        let m = store
            .set_graph_membership(a, &GraphId::new(l("g")).unwrap())
            .unwrap();
        store
            .insert_assertion(m.into(), l("note"), Literal::string("x").into())
            .unwrap();
        let g = rdf_view(&store, RdfMode::Reify, &Namespaces::default());
        assert_eq!(g.len(), 1);
    }
}
