//! Updates phrased against a view, with explicit policies for the cases
//! where the view hides several underlying statements.

use std::collections::BTreeSet;

use crate::datatypes::{coerce_lpg_value, Literal, LpgValue};
use crate::error::{Error, Result};
use crate::store::{DeletePolicy, Store};
use crate::term::{check_label, has_membership_label, LocalId, Sid, Term};
use crate::views::{lpg_view, LpgViewConfig, Namespaces};
use crate::vocab;

/// What to do when a view-level target stands for several statements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum AmbiguityPolicy {
    #[default]
    All,
    ErrorIfMultiple,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum InsertSemantics {
    /// No-op if a content-identical ground statement exists.
    #[default]
    SetSemantics,
    /// Always a new statement.
    Multi,
}

/// Property-graph element addressed by [`lpg_set_property`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Vertex(String),
    Edge(Sid),
}

/// Ground statements whose plain-RDF triple is `(s, p, o)`, ascending.
pub fn matching_ground(store: &Store, s: &Term, p: &Term, o: &Term, ns: &Namespaces) -> Vec<Sid> {
    let variants = |t: &Term| BTreeSet::from([t.clone(), ns.internalize(t.clone())]);
    let (ss, ps, os) = (variants(s), variants(p), variants(o));
    let mut out = BTreeSet::new();
    for s in &ss {
        for p in &ps {
            for o in &os {
                for sid in store.sids_with_content(s, p, o) {
                    let st = store.get(sid).expect("indexed sid");
                    if st.is_ground() && !has_membership_label(st) {
                        out.insert(sid);
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

fn resolve_ambiguity(matches: &[Sid], policy: AmbiguityPolicy) -> Result<()> {
    if policy == AmbiguityPolicy::ErrorIfMultiple && matches.len() > 1 {
        return Err(Error::AmbiguousTarget {
            matches: matches.len(),
        });
    }
    Ok(())
}

/// Deletes the ground statements behind a plain-RDF triple. Returns the
/// number of statements removed; nothing changes if it fails.
pub fn rdf_delete_triple(
    store: &mut Store,
    (s, p, o): (&Term, &Term, &Term),
    ambiguity: AmbiguityPolicy,
    delete: DeletePolicy,
    ns: &Namespaces,
) -> Result<usize> {
    let matches = matching_ground(store, s, p, o, ns);
    resolve_ambiguity(&matches, ambiguity)?;
    if delete == DeletePolicy::Restrict {
        if let Some(&sid) = matches.iter().find(|sid| store.is_referenced(**sid)) {
            return Err(Error::ReferencedSid {
                sid,
                referrers: store.referrers(sid).count(),
            });
        }
    }
    let mut deleted = 0;
    for sid in matches {
        deleted += store.delete_statement(sid, delete)?;
    }
    Ok(deleted)
}

/// Adds a plain-RDF triple as a ground statement. Under set semantics an
/// existing match makes this a no-op and `None` is returned.
pub fn rdf_insert_triple(
    store: &mut Store,
    (s, p, o): (&Term, &Term, &Term),
    semantics: InsertSemantics,
    ns: &Namespaces,
) -> Result<Option<Sid>> {
    if semantics == InsertSemantics::SetSemantics && !matching_ground(store, s, p, o, ns).is_empty()
    {
        return Ok(None);
    }
    let (s, p, o) = (
        ns.internalize(s.clone()),
        ns.internalize(p.clone()),
        ns.internalize(o.clone()),
    );
    store.insert_ground(s, p, o).map(Some)
}

/// Annotates the statements behind a triple with `key -> value`, one new
/// assertion per target. Never creates the annotated statement itself.
pub fn star_annotate(
    store: &mut Store,
    (s, p, o): (&Term, &Term, &Term),
    (key, value): (&Term, &Term),
    policy: AmbiguityPolicy,
    ns: &Namespaces,
) -> Result<Vec<Sid>> {
    let key = ns.internalize(key.clone());
    check_label(&key)?;
    if value.is_sid_ref() {
        return Err(Error::Position(
            "annotation values cannot be sid references".into(),
        ));
    }
    let value = ns.internalize(value.clone());
    let targets = matching_ground(store, s, p, o, ns);
    if targets.is_empty() {
        return Err(Error::NotFound(
            "no statement with this content to annotate".into(),
        ));
    }
    resolve_ambiguity(&targets, policy)?;
    targets
        .into_iter()
        .map(|t| store.insert_assertion(Term::SidRef(t), key.clone(), value.clone()))
        .collect()
}

fn label_term() -> Term {
    Term::LocalId(LocalId::new(vocab::LPG_LABEL).expect("valid local id"))
}

/// Adds a new edge (always a new statement) and one assertion per
/// property. Missing endpoints are created with the default vertex label
/// when `auto_create` is set, and are an `UnknownEndpoint` otherwise.
pub fn lpg_add_edge(
    store: &mut Store,
    (from, to): (&str, &str),
    label: &str,
    properties: &[(String, LpgValue)],
    auto_create: bool,
    config: &LpgViewConfig,
) -> Result<Sid> {
    let ns = &config.namespaces;
    let vertices = lpg_view(store, config).graph.vertices;
    let mut create = Vec::new();
    for end in [from, to] {
        if !vertices.contains_key(end) && !create.contains(&end) {
            if !auto_create {
                return Err(Error::UnknownEndpoint(end.to_owned()));
            }
            create.push(end);
        }
    }
    let (from_t, to_t, label_t) = (
        ns.name_to_term(from)?,
        ns.name_to_term(to)?,
        ns.name_to_term(label)?,
    );
    let props = properties
        .iter()
        .map(|(k, v)| Ok((ns.name_to_term(k)?, Term::Literal(coerce_lpg_value(v)?))))
        .collect::<Result<Vec<_>>>()?;
    for end in create {
        let t = ns.name_to_term(end)?;
        store.insert_ground(
            t,
            label_term(),
            Literal::string(vocab::DEFAULT_VERTEX_LABEL).into(),
        )?;
    }
    let edge = store.insert_ground(from_t, label_t, to_t)?;
    for (k, v) in props {
        store.insert_assertion(Term::SidRef(edge), k, v)?;
    }
    Ok(edge)
}

/// Single-valued property write: every existing value under `key` is
/// deleted (cascading) and the new one inserted. Returns its sid.
pub fn lpg_set_property(
    store: &mut Store,
    element: &Element,
    key: &str,
    value: &LpgValue,
    config: &LpgViewConfig,
) -> Result<Sid> {
    let ns = &config.namespaces;
    let key_t = ns.name_to_term(key)?;
    let value_t = Term::Literal(coerce_lpg_value(value)?);
    let graph = lpg_view(store, config).graph;
    let (owner, old): (Term, Vec<Sid>) = match element {
        Element::Vertex(id) => {
            if !graph.vertices.contains_key(id) {
                return Err(Error::NotFound(format!("vertex {id}")));
            }
            let owner = ns.name_to_term(id)?;
            let old = store
                .iter()
                .filter(|st| st.is_ground() && st.value().is_literal())
                .filter(|st| ns.display_name(st.src()) == *id && st.label() == &key_t)
                .map(|st| st.sid())
                .collect();
            (owner, old)
        }
        Element::Edge(sid) => {
            if !graph.edges.contains_key(sid) {
                return Err(Error::NotFound(format!("edge {sid}")));
            }
            let me = Term::SidRef(*sid);
            let old = store
                .referrers(*sid)
                .filter(|r| {
                    let st = store.get(*r).expect("live referrer");
                    st.src() == &me && st.label() == &key_t && !st.value().is_sid_ref()
                })
                .collect();
            (me, old)
        }
    };
    for sid in old {
        if store.contains(sid) {
            store.delete_statement(sid, DeletePolicy::Cascade)?;
        }
    }
    // keep the vertex's own term if it is spelled differently from the name
    let owner = match element {
        Element::Vertex(id) => store
            .iter()
            .find(|st| st.is_ground() && ns.display_name(st.src()) == *id)
            .map(|st| st.src().clone())
            .unwrap_or(owner),
        Element::Edge(_) => owner,
    };
    store.insert(owner, key_t, value_t)
}
