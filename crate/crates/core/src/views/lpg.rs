use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::datatypes::{coerce_to_lpg, CoercionTally, LpgValue};
use crate::store::Store;
use crate::term::{has_membership_label, Iri, LocalId, Sid, Statement, Term};
use crate::views::Namespaces;
use crate::vocab;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpgViewConfig {
    /// Labels whose statements turn into vertex labels. Never empty.
    pub label_predicates: BTreeSet<Term>,
    pub expose_meta_properties: bool,
    pub namespaces: Namespaces,
}

impl Default for LpgViewConfig {
    fn default() -> Self {
        LpgViewConfig {
            label_predicates: BTreeSet::from([
                Term::Iri(Iri::new(vocab::RDF_TYPE).expect("vocabulary IRI")),
                Term::LocalId(LocalId::new(vocab::LPG_LABEL).expect("valid local id")),
            ]),
            expose_meta_properties: true,
            namespaces: Namespaces::default(),
        }
    }
}

impl LpgViewConfig {
    pub fn with_namespaces(namespaces: Namespaces) -> Self {
        LpgViewConfig {
            namespaces,
            ..Self::default()
        }
    }

    fn is_label_predicate(&self, label: &Term) -> bool {
        // compare after exposure so `label` and its IRI form are the same predicate
        let exposed = self.namespaces.expose(label);
        self.label_predicates
            .iter()
            .any(|p| self.namespaces.expose(p) == exposed)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VertexProperty {
    pub value: LpgValue,
    pub meta: BTreeMap<String, Vec<LpgValue>>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Vertex {
    pub labels: BTreeSet<String>,
    pub properties: BTreeMap<String, Vec<VertexProperty>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub label: String,
    pub properties: BTreeMap<String, Vec<LpgValue>>,
}

/// Vertices keyed by id text, edges keyed by sid.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LpgGraph {
    pub vertices: BTreeMap<String, Vertex>,
    pub edges: BTreeMap<Sid, Edge>,
}

impl LpgGraph {
    /// Checks disjoint vertex/edge ids, non-empty label sets and resolvable
    /// endpoints.
    pub fn check_invariants(&self) -> Result<(), String> {
        for sid in self.edges.keys() {
            let id = sid.to_string();
            if self.vertices.contains_key(&id) || self.vertices.contains_key(&sid.to_iri_string()) {
                return Err(format!("{id} is both a vertex and an edge"));
            }
        }
        if let Some((id, _)) = self.vertices.iter().find(|(_, v)| v.labels.is_empty()) {
            return Err(format!("vertex {id} has no label"));
        }
        for (sid, e) in &self.edges {
            if !self.vertices.contains_key(&e.from) || !self.vertices.contains_key(&e.to) {
                return Err(format!("edge {sid} has a dangling endpoint"));
            }
        }
        Ok(())
    }
}

/// The property-graph view plus what it could not show.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LpgView {
    pub graph: LpgGraph,
    /// Statements with no property-graph rendering.
    pub dropped: usize,
    pub coercion: CoercionTally,
}

enum Role {
    Edge,
    Property {
        vertex: String,
        key: String,
        index: usize,
    },
    Label,
}

/// Property-graph projection.
///
/// Nodes in `src`/`value` position of ground statements become vertices.
/// Ground statements with a node value become edges keyed by their sid,
/// those with a literal value vertex properties, and those whose label is a
/// label predicate vertex labels. Assertions over edges become edge
/// properties and assertions over vertex properties meta-properties; every
/// other assertion is dropped and counted.
pub fn lpg_view(store: &Store, config: &LpgViewConfig) -> LpgView {
    let ns = &config.namespaces;
    let mut view = LpgView::default();
    let mut roles: HashMap<Sid, Role> = HashMap::new();
    let vertices = &mut view.graph.vertices;

    let mut assertions: Vec<&Statement> = Vec::new();
    for st in store.iter() {
        if !st.is_ground() {
            assertions.push(st);
            continue;
        }
        if has_membership_label(st) {
            view.dropped += 1;
            continue;
        }
        let src = ns.display_name(st.src());
        vertices.entry(src.clone()).or_default();
        let value = st.value();
        let is_label = config.is_label_predicate(st.label())
            && (value.is_node() || value.as_literal().is_some_and(|l| l.is_text()));
        if is_label {
            let text = ns.display_name(value);
            vertices
                .get_mut(&src)
                .expect("just inserted")
                .labels
                .insert(text);
            roles.insert(st.sid(), Role::Label);
        } else if let Term::Literal(lit) = value {
            let key = ns.display_name(st.label());
            let entry = VertexProperty {
                value: coerce_to_lpg(lit, &mut view.coercion),
                meta: BTreeMap::new(),
            };
            let slot = vertices
                .get_mut(&src)
                .expect("just inserted")
                .properties
                .entry(key.clone())
                .or_default();
            slot.push(entry);
            roles.insert(
                st.sid(),
                Role::Property {
                    vertex: src,
                    key,
                    index: slot.len() - 1,
                },
            );
        } else {
            let to = ns.display_name(value);
            vertices.entry(to.clone()).or_default();
            view.graph.edges.insert(
                st.sid(),
                Edge {
                    from: src,
                    to,
                    label: ns.display_name(st.label()),
                    properties: BTreeMap::new(),
                },
            );
            roles.insert(st.sid(), Role::Edge);
        }
    }

    for st in assertions {
        let target = match (st.src(), st.value()) {
            (Term::SidRef(target), value) if !value.is_sid_ref() && !has_membership_label(st) => {
                *target
            }
            _ => {
                view.dropped += 1;
                continue;
            }
        };
        let value = match st.value() {
            Term::Literal(lit) => coerce_to_lpg(lit, &mut view.coercion),
            node => LpgValue::String(ns.display_name(node)),
        };
        let key = ns.display_name(st.label());
        match roles.get(&target) {
            Some(Role::Edge) => {
                let edge = view.graph.edges.get_mut(&target).expect("edge role");
                edge.properties.entry(key).or_default().push(value);
            }
            Some(Role::Property {
                vertex,
                key: pkey,
                index,
            }) if config.expose_meta_properties => {
                let prop = &mut view
                    .graph
                    .vertices
                    .get_mut(vertex)
                    .expect("property owner")
                    .properties
                    .get_mut(pkey)
                    .expect("property key")[*index];
                prop.meta.entry(key).or_default().push(value);
            }
            _ => view.dropped += 1,
        }
    }

    // multi-valued entries in value order, not sid order
    for v in view.graph.vertices.values_mut() {
        if v.labels.is_empty() {
            v.labels.insert(vocab::DEFAULT_VERTEX_LABEL.to_owned());
        }
        for values in v.properties.values_mut() {
            for p in values.iter_mut() {
                p.meta.values_mut().for_each(|v| sort_values(v));
            }
            values.sort_by(compare_properties);
        }
    }
    for e in view.graph.edges.values_mut() {
        e.properties.values_mut().for_each(|v| sort_values(v));
    }
    view
}

fn sort_values(values: &mut [LpgValue]) {
    values.sort_by(LpgValue::total_cmp);
}

fn compare_properties(a: &VertexProperty, b: &VertexProperty) -> Ordering {
    a.value.total_cmp(&b.value).then_with(|| {
        let flat = |p: &VertexProperty| -> Vec<(String, LpgValue)> {
            p.meta
                .iter()
                .flat_map(|(k, vs)| vs.iter().map(move |v| (k.clone(), v.clone())))
                .collect()
        };
        let (fa, fb) = (flat(a), flat(b));
        fa.iter()
            .zip(&fb)
            .map(|((ka, va), (kb, vb))| ka.cmp(kb).then_with(|| va.total_cmp(vb)))
            .find(|o| o.is_ne())
            .unwrap_or_else(|| fa.len().cmp(&fb.len()))
    })
}
