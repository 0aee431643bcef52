mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use onegraph::views::{
    dataset_view, lpg_view, rdf_star_view, rdf_star_view_with_limit, rdf_view, LpgViewConfig,
    Namespaces, RdfMode, StarTerm, Triple,
};
use onegraph::{vocab, Error, LpgValue, Store, Term};
use proptest::prelude::*;

fn annotation_key(t: &Term) -> String {
    match t {
        Term::Iri(i) => i.as_str().trim_start_matches(EX).to_owned(),
        other => format!("{other:?}"),
    }
}

#[test]
fn collapse_soundness_on_the_multi_edge_store() {
    let ns = example_ns();
    let (store, _) = multi_edge_store();
    let star = rdf_star_view(&store, &ns).unwrap();
    let mut star_pairs: Vec<(String, String)> = star
        .iter()
        .filter(|t| t.subject.as_quoted().is_some())
        .map(|t| {
            let value = match &t.object {
                StarTerm::Term(Term::Literal(l)) => l.lexical().to_owned(),
                StarTerm::Term(other) => ns.display_name(&ns.internalize(other.clone())),
                StarTerm::Quoted(_) => unreachable!(),
            };
            (annotation_key(&t.predicate), value)
        })
        .collect();
    let lpg = lpg_view(&store, &LpgViewConfig::with_namespaces(ns.clone()));
    let mut lpg_pairs: Vec<(String, String)> = Vec::new();
    for e in lpg.graph.edges.values() {
        for (k, vs) in &e.properties {
            for v in vs {
                let text = match v {
                    LpgValue::String(s) => s.clone(),
                    LpgValue::Integer(n) => n.to_string(),
                    other => format!("{other:?}"),
                };
                lpg_pairs.push((k.clone(), text));
            }
        }
    }
    star_pairs.sort();
    lpg_pairs.sort();
    assert_eq!(star_pairs, lpg_pairs);
    assert_eq!(star_pairs.len(), 4);
}

#[test]
fn reify_mode_spells_out_referenced_statements() {
    let ns = example_ns();
    let (store, _) = tri_view_store();
    let hide = rdf_view(&store, RdfMode::Hide, &ns);
    let reified = rdf_view(&store, RdfMode::Reify, &ns);
    assert!(hide.iter().all(|t| reified.contains(t)));
    let rdf_type = iri(vocab::RDF_TYPE);
    let statement = iri(vocab::RDF_STATEMENT);
    let nodes: Vec<&Triple> = reified
        .iter()
        .filter(|t| t.predicate == rdf_type && t.object == statement)
        .collect();
    assert_eq!(nodes.len(), 1);
    let node = &nodes[0].subject;
    let about: BTreeMap<&Term, &Term> = reified
        .iter()
        .filter(|t| &t.subject == node)
        .map(|t| (&t.predicate, &t.object))
        .collect();
    assert_eq!(about[&iri(vocab::RDF_SUBJECT)], &ex("Alice"));
    assert_eq!(about[&iri(vocab::RDF_PREDICATE)], &ex("knows"));
    assert_eq!(about[&iri(vocab::RDF_OBJECT)], &ex("Bob"));
    assert_eq!(about[&ex("since")], &int(2020));
}

#[test]
fn nesting_limit() {
    let mut store = Store::new();
    let mut last = store.insert_ground(l("a"), l("p"), l("b")).unwrap();
    for _ in 0..33 {
        last = store
            .insert_assertion(Term::SidRef(last), l("p"), l("b"))
            .unwrap();
    }
    let ns = Namespaces::default();
    assert!(matches!(
        rdf_star_view(&store, &ns),
        Err(Error::NestingOverflow { limit: 32 })
    ));
    assert!(rdf_star_view_with_limit(&store, &ns, 40).is_ok());
}

#[test]
fn meta_properties_can_be_switched_off() {
    let mut store = Store::new();
    let name = store.insert_ground(l("v"), l("name"), string("V")).unwrap();
    store
        .insert_assertion(Term::SidRef(name), l("source"), string("census"))
        .unwrap();
    let mut config = LpgViewConfig::default();
    let on = lpg_view(&store, &config);
    assert_eq!(on.dropped, 0);
    assert_eq!(
        on.graph.vertices["v"].properties["name"][0].meta["source"],
        vec![LpgValue::String("census".into())]
    );
    config.expose_meta_properties = false;
    let off = lpg_view(&store, &config);
    assert_eq!(off.dropped, 1);
    assert!(off.graph.vertices["v"].properties["name"][0]
        .meta
        .is_empty());
}

proptest! {
    #[test]
    fn hide_view_counts(store in arb_store(50, 20)) {
        let ns = Namespaces::default();
        let view = rdf_view(&store, RdfMode::Hide, &ns);
        let ground: Vec<_> = store.iter().filter(|st| st.is_ground()).collect();
        let distinct: BTreeSet<_> = ground.iter().map(|st| content(st)).collect();
        prop_assert!(view.len() <= ground.len());
        prop_assert_eq!(view.len() == ground.len(), distinct.len() == ground.len());
        prop_assert!(view.iter().all(|t| ![&t.subject, &t.predicate, &t.object]
            .iter()
            .any(|x| x.is_sid_ref())));
    }

    #[test]
    fn star_view_is_asserted_only(store in arb_store(50, 21)) {
        if let Ok(g) = rdf_star_view(&store, &Namespaces::default()) {
            prop_assert!(g.is_asserted_only());
            for q in g.quoted_triples() {
                prop_assert!(g.contains(q));
            }
            let ground: BTreeSet<_> = store.iter().filter(|s| s.is_ground()).map(content).collect();
            let plain = g.iter().filter(|t| t.depth() == 0).count();
            prop_assert!(plain >= ground.len());
        }
    }

    #[test]
    fn lpg_view_invariants(store in arb_store(50, 22)) {
        let v = lpg_view(&store, &LpgViewConfig::default());
        prop_assert!(v.graph.check_invariants().is_ok());
        let shown: usize = v.graph.edges.len()
            + v.graph.edges.values().flat_map(|e| e.properties.values()).map(Vec::len).sum::<usize>()
            + v.graph.vertices.values().flat_map(|x| x.properties.values()).flatten()
                .map(|p| 1 + p.meta.values().map(Vec::len).sum::<usize>())
                .sum::<usize>();
        prop_assert!(shown + v.dropped <= store.len());
    }

    #[test]
    fn views_are_deterministic(store in arb_store(40, 23)) {
        let ns = Namespaces::default();
        let config = LpgViewConfig::default();
        prop_assert_eq!(rdf_view(&store, RdfMode::Reify, &ns), rdf_view(&store, RdfMode::Reify, &ns));
        prop_assert_eq!(rdf_star_view(&store, &ns).ok(), rdf_star_view(&store, &ns).ok());
        prop_assert_eq!(lpg_view(&store, &config), lpg_view(&store, &config));
        prop_assert_eq!(dataset_view(&store, &ns), dataset_view(&store, &ns));
        // a store read back from its own serialization shows the same view
        let text = onegraph::io::serialize_ognq(&store);
        let copy = onegraph::io::parse_ognq(&text).unwrap();
        prop_assert_eq!(rdf_view(&copy, RdfMode::Hide, &ns), rdf_view(&store, RdfMode::Hide, &ns));
    }

    #[test]
    fn exposure_round_trips(text in "[^<>\\s]{1,20}", ns in "(urn:x:|http://e\\.org/(a/)?)") {
        let ns = Namespaces::new(ns).unwrap();
        let id = Term::local(text).unwrap();
        let exposed = ns.expose(&id);
        prop_assert!(matches!(exposed, Term::Iri(_)));
        prop_assert_eq!(ns.internalize(exposed), id);
    }
}
