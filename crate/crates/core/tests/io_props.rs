mod common;

use std::collections::BTreeMap;

use common::*;
use onegraph::io::{self, Format};
use onegraph::views::{lpg_view, rdf_star_view, rdf_view, LpgViewConfig, Namespaces, RdfMode};
use onegraph::{Error, Store};
use proptest::prelude::*;

const TURTLE_LISTING: &str = r#"@prefix : <http://example.org/> .
:Alice :knows :Bob .
<<:Alice :knows :Bob>> :since 2020 .
:Alice :name "Alice" .
:Bob :name "Bob" .
"#;

const LPG_LISTING: &str = r#"{"type":"vertex","id":"Alice","labels":[],"properties":{"name":"Alice"}}
{"type":"vertex","id":"Bob","labels":[],"properties":{"name":"Bob"}}
{"type":"edge","id":"e1","label":"knows","from":"Alice","to":"Bob","properties":{"since":2020}}
"#;

fn load(format: Format, text: &str, ns: &Namespaces) -> onegraph::Result<Store> {
    let mut store = Store::new();
    io::load_into(format, text, &mut store, ns)?;
    Ok(store)
}

#[test]
fn the_two_listings_are_one_dataset() {
    let ns = example_ns();
    let a = load(Format::TurtleStar, TURTLE_LISTING, &ns).unwrap();
    let b = load(Format::LpgJsonl, LPG_LISTING, &ns).unwrap();
    assert_eq!(a.len(), 4);
    assert_eq!(b.len(), 4);
    assert_eq!(
        rdf_star_view(&a, &ns).unwrap(),
        rdf_star_view(&b, &ns).unwrap()
    );
    let config = LpgViewConfig::with_namespaces(ns);
    let (va, vb) = (lpg_view(&a, &config).graph, lpg_view(&b, &config).graph);
    assert_eq!(va.vertices, vb.vertices);
    assert_eq!(va.edges.len(), 1);
    assert_eq!(
        va.edges.values().next().unwrap().properties,
        vb.edges.values().next().unwrap().properties
    );
}

#[test]
fn turtle_corpus_is_stable() {
    let corpus = [
        TURTLE_LISTING,
        "@prefix : <http://example.org/> .\n:Alice :knows :Bob .\n<<:Alice :knows :Bob>> :statedBy :NYTimes ; :since 2020 .\n",
        "PREFIX ex: <http://ex.org/>\nex:a a ex:T ; ex:p 1, 2.5, 1e3, true ; ex:q 'x'@en .\n",
        "<< << <http://a> <http://b> <http://c> >> <http://d> _:x >> <http://e> \"[1, 2, 3]\"^^<urn:og:List> .\n",
    ];
    let ns = Namespaces::default();
    for text in corpus {
        let first = rdf_star_view(&load(Format::TurtleStar, text, &ns).unwrap(), &ns).unwrap();
        let written = io::serialize_turtle_star(&first, &BTreeMap::new());
        let second = rdf_star_view(&load(Format::TurtleStar, &written, &ns).unwrap(), &ns).unwrap();
        assert_eq!(first, second, "{text}");
    }
}

#[test]
fn errors_carry_the_offending_line() {
    let cases = [
        (Format::OgNq, "<http://a> <http://b> <http://c> <urn:og:sid:00000000-0000-0000-0000-000000000001> .\n\n<http://a> <http://b> .\n", 3),
        (Format::NTriples, "<http://a> <http://b> <http://c> .\n<http://a> <http://b> <http://c>\n", 2),
        (Format::TurtleStar, "@prefix : <http://x/> .\n:a :b :c .\n:a :b .\n", 3),
        (Format::LpgJsonl, "{\"type\":\"vertex\",\"id\":\"a\",\"labels\":[],\"properties\":{}}\n{\"type\":\"vertex\",\"id\":\"a\",\"labels\":[],\"properties\":{}}\n", 2),
        (Format::LpgJsonl, "{\"type\":\"vertex\",\"id\":\"a\"\n", 1),
    ];
    for (format, text, line) in cases {
        let err = load(format, text, &Namespaces::default()).unwrap_err();
        assert_eq!(err.line(), Some(line), "{format}: {err}");
    }
}

fn line_noise() -> impl Strategy<Value = String> {
    prop_oneof![
        "[<>\"@^_:.;, \\[\\]{}()a-z0-9#\n]{1,60}",
        "\\PC{1,40}",
        "\\{\"type\":\"(vertex|edge)\"[^\n]{0,30}",
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ognq_round_trip(store in arb_store(50, 70)) {
        let text = io::serialize_ognq(&store);
        prop_assert!(text.lines().all(|l| l.ends_with(" .")));
        let back = io::parse_ognq(&text).unwrap();
        prop_assert_eq!(statements(&back), statements(&store));
    }

    #[test]
    fn ntriples_export_is_idempotent(store in arb_store(40, 71)) {
        let ns = Namespaces::default();
        let once = io::serialize_ntriples(&rdf_view(&store, RdfMode::Hide, &ns));
        let reloaded = load(Format::NTriples, &once, &ns).unwrap();
        let twice = io::serialize_ntriples(&rdf_view(&reloaded, RdfMode::Hide, &ns));
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn turtle_parse_serialize_parse(store in arb_store(40, 72)) {
        let ns = Namespaces::default();
        let Ok(view) = rdf_star_view(&store, &ns) else { return Ok(()) };
        let text = io::serialize_turtle_star(&view, &BTreeMap::from([("ex".to_owned(), "http://ex.org/".to_owned())]));
        let first = load(Format::TurtleStar, &text, &ns).unwrap();
        let again = io::serialize_turtle_star(&rdf_star_view(&first, &ns).unwrap(), &BTreeMap::new());
        let second = load(Format::TurtleStar, &again, &ns).unwrap();
        prop_assert_eq!(rdf_star_view(&first, &ns).unwrap(), rdf_star_view(&second, &ns).unwrap());
        prop_assert_eq!(rdf_star_view(&first, &ns).unwrap(), view);
    }

    #[test]
    fn lpg_jsonl_round_trip(store in arb_store(40, 73)) {
        let config = LpgViewConfig::default();
        let graph = lpg_view(&store, &config).graph;
        let text = io::serialize_lpg_jsonl(&graph);
        let back = load(Format::LpgJsonl, &text, &config.namespaces).unwrap();
        let again = lpg_view(&back, &config);
        prop_assert_eq!(again.dropped, 0);
        prop_assert_eq!(again.graph, graph);
    }

    #[test]
    fn garbage_gets_a_located_diagnostic(text in line_noise()) {
        let ns = Namespaces::default();
        for format in [Format::OgNq, Format::NTriples, Format::TurtleStar, Format::LpgJsonl] {
            if let Err(e) = load(format, &text, &ns) {
                let located = e.line().is_some()
                    || matches!(e, Error::DanglingSid(_) | Error::UnknownEndpoint(_));
                prop_assert!(located, "{} on {:?}: {}", format, text, e);
            }
        }
    }
}
