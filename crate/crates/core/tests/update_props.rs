mod common;

use common::*;
use onegraph::update::{
    lpg_add_edge, lpg_set_property, matching_ground, rdf_delete_triple, rdf_insert_triple,
    star_annotate,
};
use onegraph::views::{
    lpg_view, rdf_star_view, rdf_view, LpgViewConfig, Namespaces, RdfMode, Triple,
};
use onegraph::{
    AmbiguityPolicy, DeletePolicy, Element, Error, InsertSemantics, LpgValue, Store, Term,
};
use proptest::prelude::*;

fn exposed(store: &Store, pick: usize, ns: &Namespaces) -> Option<(Term, Term, Term)> {
    let ground: Vec<_> = store
        .iter()
        .filter(|st| st.is_ground() && !st.is_membership())
        .collect();
    if ground.is_empty() {
        return None;
    }
    let st = ground[pick % ground.len()];
    Some((
        ns.expose(st.src()),
        ns.expose(st.label()),
        ns.expose(st.value()),
    ))
}

fn lpg_value() -> impl Strategy<Value = LpgValue> {
    prop_oneof![
        any::<i64>().prop_map(LpgValue::Integer),
        "[a-z]{0,6}".prop_map(LpgValue::String),
        any::<bool>().prop_map(LpgValue::Boolean),
    ]
}

#[test]
fn annotate_without_target_is_not_found() {
    let ns = example_ns();
    let (mut store, _) = multi_edge_store();
    let before = store.clone();
    let res = star_annotate(
        &mut store,
        (&ex("Bob"), &ex("knows"), &ex("Alice")),
        (&ex("since"), &int(1)),
        AmbiguityPolicy::All,
        &ns,
    );
    assert!(matches!(res, Err(Error::NotFound(_))));
    assert_eq!(store, before);
}

#[test]
fn add_edge_checks_endpoints() {
    let config = LpgViewConfig::with_namespaces(example_ns());
    let (mut store, _) = tri_view_store();
    let before = store.clone();
    let props = [("since".to_owned(), LpgValue::Integer(2024))];
    assert!(matches!(
        lpg_add_edge(
            &mut store,
            ("Alice", "Carol"),
            "knows",
            &props,
            false,
            &config
        ),
        Err(Error::UnknownEndpoint(_))
    ));
    assert_eq!(store, before);
    let e = lpg_add_edge(
        &mut store,
        ("Alice", "Carol"),
        "knows",
        &props,
        true,
        &config,
    )
    .unwrap();
    let view = lpg_view(&store, &config);
    assert_eq!(view.graph.edges[&e].to, "Carol");
    assert_eq!(
        view.graph.edges[&e].properties["since"],
        vec![LpgValue::Integer(2024)]
    );
    assert!(view.graph.vertices["Carol"].labels.contains("Vertex"));
}

proptest! {
    #[test]
    fn delete_all_cascade_removes_the_triple(store in arb_store(40, 60), pick in any::<usize>()) {
        let ns = Namespaces::default();
        let Some((s, p, o)) = exposed(&store, pick, &ns) else { return Ok(()) };
        let mut after = store.clone();
        rdf_delete_triple(&mut after, (&s, &p, &o), AmbiguityPolicy::All, DeletePolicy::Cascade, &ns).unwrap();
        prop_assert!(!rdf_view(&after, RdfMode::Hide, &ns).contains(&Triple::new(s, p, o)));
        prop_assert!(after.check_integrity().is_ok());
    }

    #[test]
    fn failed_updates_do_not_mutate(store in arb_store(40, 61), pick in any::<usize>(), cascade in any::<bool>()) {
        let ns = Namespaces::default();
        let Some((s, p, o)) = exposed(&store, pick, &ns) else { return Ok(()) };
        let matches = matching_ground(&store, &s, &p, &o, &ns).len();
        let delete = if cascade { DeletePolicy::Cascade } else { DeletePolicy::Restrict };
        let mut after = store.clone();
        let res = rdf_delete_triple(&mut after, (&s, &p, &o), AmbiguityPolicy::ErrorIfMultiple, delete, &ns);
        if matches > 1 {
            let is_ambiguous = matches!(res, Err(Error::AmbiguousTarget { .. }));
            prop_assert!(is_ambiguous);
        }
        if res.is_err() {
            prop_assert!(after == store);
        }
        let mut after = store.clone();
        let res = star_annotate(&mut after, (&s, &p, &o), (&l("k"), &int(1)), AmbiguityPolicy::ErrorIfMultiple, &ns);
        prop_assert_eq!(res.is_err(), matches > 1);
        if res.is_err() {
            prop_assert!(after == store);
        }
    }

    #[test]
    fn insert_semantics(store in arb_store(30, 62), pick in any::<usize>(), n in 1usize..5) {
        let ns = Namespaces::default();
        let Some((s, p, o)) = exposed(&store, pick, &ns) else { return Ok(()) };
        let mut after = store.clone();
        for _ in 0..n {
            prop_assert_eq!(rdf_insert_triple(&mut after, (&s, &p, &o), InsertSemantics::SetSemantics, &ns).unwrap(), None);
        }
        prop_assert!(after == store);
        let before = matching_ground(&after, &s, &p, &o, &ns).len();
        for _ in 0..n {
            prop_assert!(rdf_insert_triple(&mut after, (&s, &p, &o), InsertSemantics::Multi, &ns).unwrap().is_some());
        }
        prop_assert_eq!(matching_ground(&after, &s, &p, &o, &ns).len(), before + n);
        prop_assert_eq!(after.len(), store.len() + n);
    }

    #[test]
    fn annotate_all_touches_every_copy(k in 1usize..6, noise in recipe(10), year in 1900i64..2100) {
        let ns = example_ns();
        let mut store = build(&noise, 63, 10);
        for _ in 0..k {
            store.insert_ground(l("Alice"), l("knows"), l("Bob")).unwrap();
        }
        let n = store.len();
        let knows = (&ex("Alice"), &ex("knows"), &ex("Bob"));
        let added = star_annotate(&mut store, knows, (&ex("since"), &int(year)), AmbiguityPolicy::All, &ns).unwrap();
        prop_assert_eq!(added.len(), k);
        prop_assert_eq!(store.len(), n + k);
        let star = rdf_star_view(&store, &ns).unwrap();
        let hits = star
            .iter()
            .filter(|t| t.predicate == ex("since") && t.object == int(year).into())
            .filter(|t| t.subject.as_quoted().is_some_and(|q| q.predicate == ex("knows")))
            .count();
        prop_assert_eq!(hits, 1);
        let lpg = lpg_view(&store, &LpgViewConfig::with_namespaces(ns));
        let annotated = lpg.graph.edges.values()
            .filter(|e| e.properties.get("since").is_some_and(|v| v.contains(&LpgValue::Integer(year))))
            .count();
        prop_assert_eq!(annotated, k);
    }

    #[test]
    fn set_property_is_last_write_wins(values in prop::collection::vec(lpg_value(), 1..6), on_edge in any::<bool>()) {
        let config = LpgViewConfig::with_namespaces(example_ns());
        let (mut store, [knows, ..]) = tri_view_store();
        let element = if on_edge { Element::Edge(knows) } else { Element::Vertex("Alice".into()) };
        for v in &values {
            lpg_set_property(&mut store, &element, "since", v, &config).unwrap();
        }
        let owner = if on_edge { Term::SidRef(knows) } else { l("Alice") };
        let with_key = store.iter().filter(|st| st.src() == &owner && st.label() == &l("since")).count();
        prop_assert_eq!(with_key, 1);
        let view = lpg_view(&store, &config).graph;
        let last = values.last().unwrap().clone();
        if on_edge {
            prop_assert_eq!(&view.edges[&knows].properties["since"], &vec![last]);
        } else {
            prop_assert_eq!(view.vertices["Alice"].properties["since"][0].value.clone(), last);
        }
        prop_assert!(store.check_integrity().is_ok());
    }
}
