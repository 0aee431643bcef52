use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::store::Store;
use crate::term::{Sid, Term};
use crate::views::rdf::visible_sids;
use crate::views::Namespaces;

pub const DEFAULT_MAX_NESTING: usize = 32;

/// Subject or object of an RDF-star triple.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StarTerm {
    Term(Term),
    Quoted(Arc<StarTriple>),
}

impl StarTerm {
    pub fn as_quoted(&self) -> Option<&StarTriple> {
        match self {
            StarTerm::Quoted(t) => Some(t),
            StarTerm::Term(_) => None,
        }
    }
}

impl From<Term> for StarTerm {
    fn from(t: Term) -> Self {
        StarTerm::Term(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarTriple {
    pub subject: StarTerm,
    pub predicate: Term,
    pub object: StarTerm,
}

impl StarTriple {
    pub fn new(subject: impl Into<StarTerm>, predicate: Term, object: impl Into<StarTerm>) -> Self {
        StarTriple {
            subject: subject.into(),
            predicate,
            object: object.into(),
        }
    }

    /// Quoting depth: 0 for a plain triple.
    pub fn depth(&self) -> usize {
        [&self.subject, &self.object]
            .into_iter()
            .filter_map(StarTerm::as_quoted)
            .map(|q| q.depth() + 1)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RdfStarGraph {
    triples: BTreeSet<StarTriple>,
}

impl RdfStarGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, t: StarTriple) -> bool {
        self.triples.insert(t)
    }

    pub fn contains(&self, t: &StarTriple) -> bool {
        self.triples.contains(t)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &StarTriple> + '_ {
        self.triples.iter()
    }

    /// Every quoted triple occurring anywhere, at any depth.
    pub fn quoted_triples(&self) -> BTreeSet<&StarTriple> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<&StarTriple> = self.triples.iter().collect();
        while let Some(t) = stack.pop() {
            for q in [&t.subject, &t.object]
                .into_iter()
                .filter_map(StarTerm::as_quoted)
            {
                if out.insert(q) {
                    stack.push(q);
                }
            }
        }
        out
    }

    /// True iff every quoted triple is also asserted.
    pub fn is_asserted_only(&self) -> bool {
        self.quoted_triples()
            .into_iter()
            .all(|q| self.triples.contains(q))
    }
}

impl FromIterator<StarTriple> for RdfStarGraph {
    fn from_iter<I: IntoIterator<Item = StarTriple>>(iter: I) -> Self {
        RdfStarGraph {
            triples: iter.into_iter().collect(),
        }
    }
}

/// RDF-star projection with the default nesting bound.
pub fn rdf_star_view(store: &Store, ns: &Namespaces) -> Result<RdfStarGraph> {
    rdf_star_view_with_limit(store, ns, DEFAULT_MAX_NESTING)
}

/// RDF-star projection.
///
/// Content-identical statements collapse into one triple, so assertions
/// about any of them all annotate the same quoted triple. Membership
/// statements, and anything stated about them, are left out.
pub fn rdf_star_view_with_limit(
    store: &Store,
    ns: &Namespaces,
    max_nesting: usize,
) -> Result<RdfStarGraph> {
    let visible = visible_sids(store);
    let mut quoted: HashMap<Sid, (Arc<StarTriple>, usize)> = HashMap::with_capacity(visible.len());
    let mut graph = RdfStarGraph::new();
    for sid in store.topological_order() {
        if !visible.contains(&sid) {
            continue;
        }
        let st = store.get(sid).expect("live sid");
        let mut depth = 0;
        let mut convert = |t: &Term| match t {
            Term::SidRef(r) => {
                let (triple, d) = &quoted[r];
                depth = depth.max(d + 1);
                StarTerm::Quoted(triple.clone())
            }
            other => StarTerm::Term(ns.expose(other)),
        };
        let subject = convert(st.src());
        let object = convert(st.value());
        if depth > max_nesting {
            return Err(Error::NestingOverflow { limit: max_nesting });
        }
        let triple = Arc::new(StarTriple::new(subject, ns.expose(st.label()), object));
        graph.insert((*triple).clone());
        quoted.insert(sid, (triple, depth));
    }
    Ok(graph)
}
