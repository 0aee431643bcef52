#![allow(dead_code)]

use std::collections::BTreeSet;

use onegraph::views::Namespaces;
use onegraph::{GraphId, Literal, Sid, Statement, Store, Term};
use proptest::prelude::*;

pub const EX: &str = "http://example.org/";

pub fn l(s: &str) -> Term {
    Term::local(s).unwrap()
}

pub fn iri(s: &str) -> Term {
    Term::iri(s).unwrap()
}

pub fn ex(s: &str) -> Term {
    iri(&format!("{EX}{s}"))
}

pub fn int(v: i64) -> Term {
    Literal::integer(v).into()
}

pub fn string(s: &str) -> Term {
    Literal::string(s).into()
}

/// Local ids exposed under `http://example.org/`, so `:Alice` in the
/// listings reads back as the local id `Alice`.
pub fn example_ns() -> Namespaces {
    Namespaces::new(EX).unwrap().with_prefix("", EX)
}

/// Alice knows Bob since 2020: three ground statements and one assertion.
pub fn tri_view_store() -> (Store, [Sid; 4]) {
    let mut s = Store::with_seed(1);
    let knows = s.insert_ground(l("Alice"), l("knows"), l("Bob")).unwrap();
    let an = s
        .insert_ground(l("Alice"), l("name"), string("Alice"))
        .unwrap();
    let bn = s.insert_ground(l("Bob"), l("name"), string("Bob")).unwrap();
    let since = s
        .insert_assertion(Term::SidRef(knows), l("since"), int(2020))
        .unwrap();
    (s, [knows, an, bn, since])
}

/// Two content-identical knows edges, each with a source and a year.
pub fn multi_edge_store() -> (Store, [Sid; 2]) {
    let mut s = Store::with_seed(2);
    let e1 = s.insert_ground(l("Alice"), l("knows"), l("Bob")).unwrap();
    let e2 = s.insert_ground(l("Alice"), l("knows"), l("Bob")).unwrap();
    s.insert_assertion(Term::SidRef(e1), l("statedBy"), l("NYTimes"))
        .unwrap();
    s.insert_assertion(Term::SidRef(e1), l("since"), int(2020))
        .unwrap();
    s.insert_assertion(Term::SidRef(e2), l("statedBy"), l("TheGuardian"))
        .unwrap();
    s.insert_assertion(Term::SidRef(e2), l("since"), int(2021))
        .unwrap();
    (s, [e1, e2])
}

pub type Content = (Term, Term, Term);

pub fn statements(store: &Store) -> BTreeSet<(Sid, Content)> {
    store.iter().map(|st| (st.sid(), content(st))).collect()
}

pub fn content(st: &Statement) -> Content {
    (st.src().clone(), st.label().clone(), st.value().clone())
}

pub fn blank_labels(store: &Store) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for st in store.iter() {
        for t in [st.src(), st.value()] {
            if let Term::BlankNode(b) = t {
                out.insert(b.as_str().to_owned());
            }
        }
    }
    out
}

/// One slot of a generated statement.
#[derive(Clone, Debug)]
pub enum Piece {
    Node(u8),
    Lit(u8),
    Ref(usize),
}

#[derive(Clone, Debug)]
pub struct Step {
    pub src: Piece,
    pub label: u8,
    pub value: Piece,
    pub graph: Option<u8>,
}

pub fn node(i: u8) -> Term {
    match i % 8 {
        0 => l("a"),
        1 => l("b"),
        2 => l("c%d"),
        3 => iri("http://ex.org/d"),
        4 => iri("http://ex.org/e"),
        5 => Term::blank("b0").unwrap(),
        6 => Term::blank("b1").unwrap(),
        _ => l("a"),
    }
}

pub fn label(i: u8) -> Term {
    match i % 5 {
        0 => l("p"),
        1 => l("q"),
        2 => iri("http://ex.org/r"),
        3 => iri(onegraph::vocab::RDF_TYPE),
        _ => l("p"),
    }
}

pub fn literal(i: u8) -> Term {
    use onegraph::datatypes::{list_fold, OgList, Scalar};
    let lit = match i % 9 {
        0 => Literal::string("x"),
        1 => Literal::string("y z"),
        2 => Literal::lang("x", "en").unwrap(),
        3 => Literal::integer(1),
        4 => Literal::integer(-42),
        5 => Literal::typed_str("2.5", onegraph::vocab::XSD_DECIMAL).unwrap(),
        6 => Literal::boolean(true),
        7 => list_fold(&OgList(vec![Scalar::Integer(1), Scalar::Text("a".into())])),
        _ => Literal::string("line\nbreak \"quoted\""),
    };
    Term::Literal(lit)
}

pub fn graph(i: u8) -> GraphId {
    match i % 3 {
        0 => GraphId::new(l("g0")).unwrap(),
        1 => GraphId::new(iri("http://ex.org/g1")).unwrap(),
        _ => GraphId::new(l("ex:g2")).unwrap(),
    }
}

fn piece() -> impl Strategy<Value = Piece> {
    prop_oneof![
        3 => any::<u8>().prop_map(Piece::Node),
        2 => any::<u8>().prop_map(Piece::Lit),
        2 => any::<usize>().prop_map(Piece::Ref),
    ]
}

fn step() -> impl Strategy<Value = Step> {
    (
        piece(),
        any::<u8>(),
        piece(),
        prop::option::weighted(0.25, any::<u8>()),
    )
        .prop_map(|(src, label, value, graph)| Step {
            src,
            label,
            value,
            graph,
        })
}

pub fn recipe(max: usize) -> impl Strategy<Value = Vec<Step>> {
    prop::collection::vec(step(), 0..=max)
}

fn resolve(p: &Piece, sids: &[Sid], src: bool) -> Term {
    match p {
        Piece::Node(i) => node(*i),
        Piece::Lit(i) if src => node(*i),
        Piece::Lit(i) => literal(*i),
        Piece::Ref(k) if sids.is_empty() => node(*k as u8),
        Piece::Ref(k) => Term::SidRef(sids[k % sids.len()]),
    }
}

/// Builds a store from `steps` without ever exceeding `max` statements.
pub fn build(steps: &[Step], seed: u64, max: usize) -> Store {
    let mut store = Store::with_seed(seed);
    let mut sids = Vec::new();
    for step in steps {
        if store.len() >= max {
            break;
        }
        let src = resolve(&step.src, &sids, true);
        let value = resolve(&step.value, &sids, false);
        let sid = store.insert(src, label(step.label), value).unwrap();
        sids.push(sid);
        if let Some(g) = step.graph {
            if store.len() < max {
                let target = sids[g as usize % sids.len()];
                store.set_graph_membership(target, &graph(g)).unwrap();
            }
        }
    }
    store
}

pub fn arb_store(max: usize, seed: u64) -> impl Strategy<Value = Store> {
    recipe(max).prop_map(move |steps| build(&steps, seed, max))
}

pub fn scalar() -> impl Strategy<Value = onegraph::Scalar> {
    use onegraph::datatypes::Decimal;
    use onegraph::Scalar;
    prop_oneof![
        any::<String>().prop_map(Scalar::Text),
        any::<i64>().prop_map(Scalar::Integer),
        "[+-]?[0-9]{0,8}\\.[0-9]{1,6}"
            .prop_filter_map("decimal", |s| Decimal::parse(&s).map(Scalar::Decimal)),
        any::<bool>().prop_map(Scalar::Boolean),
    ]
}

pub fn og_list() -> impl Strategy<Value = onegraph::OgList> {
    prop::collection::vec(scalar(), 0..8).prop_map(onegraph::OgList)
}
