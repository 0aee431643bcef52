//! Updates through a view when the view hides a multiplicity.
//!
//! ```bash
//! cargo run --example update_ambiguity
//! ```

use onegraph::update::{rdf_delete_triple, rdf_insert_triple, star_annotate};
use onegraph::views::Namespaces;
use onegraph::{AmbiguityPolicy, DeletePolicy, Error, InsertSemantics, Literal, Store, Term};

fn main() -> onegraph::Result<()> {
    let ns = Namespaces::new("http://example.org/")?;
    let ex = |s: &str| Term::iri(format!("http://example.org/{s}"));
    let (alice, knows, bob) = (ex("Alice")?, ex("knows")?, ex("Bob")?);
    let triple = (&alice, &knows, &bob);

    let mut store = Store::with_seed(4);
    for (source, year) in [("NYTimes", 2020), ("TheGuardian", 2021)] {
        let e = store.insert_ground(
            Term::local("Alice")?,
            Term::local("knows")?,
            Term::local("Bob")?,
        )?;
        store.insert_assertion(
            Term::SidRef(e),
            Term::local("statedBy")?,
            Term::local(source)?,
        )?;
        store.insert_assertion(
            Term::SidRef(e),
            Term::local("since")?,
            Literal::integer(year).into(),
        )?;
    }
    println!("statements: {}", store.len());

    let checked = (&ex("checked")?, &Literal::boolean(true).into());
    match star_annotate(
        &mut store.clone(),
        triple,
        checked,
        AmbiguityPolicy::ErrorIfMultiple,
        &ns,
    ) {
        Err(Error::AmbiguousTarget { matches, .. }) => {
            println!("annotate, error policy: {matches} matches")
        }
        other => println!("annotate, error policy: {other:?}"),
    }
    let added = star_annotate(
        &mut store.clone(),
        triple,
        checked,
        AmbiguityPolicy::All,
        &ns,
    )?;
    println!("annotate, all policy: {} new assertions", added.len());

    let res = rdf_delete_triple(
        &mut store.clone(),
        triple,
        AmbiguityPolicy::All,
        DeletePolicy::Restrict,
        &ns,
    );
    println!(
        "delete, restrict: {}",
        res.map_or_else(|e| e.to_string(), |n| n.to_string())
    );
    let mut deleted = store.clone();
    let n = rdf_delete_triple(
        &mut deleted,
        triple,
        AmbiguityPolicy::All,
        DeletePolicy::Cascade,
        &ns,
    )?;
    println!("delete, cascade: {n} removed, {} left", deleted.len());

    let mut inserted = store.clone();
    let again = rdf_insert_triple(&mut inserted, triple, InsertSemantics::SetSemantics, &ns)?;
    println!("insert, set semantics: {again:?}");
    let again = rdf_insert_triple(&mut inserted, triple, InsertSemantics::Multi, &ns)?;
    println!(
        "insert, multi: {}",
        again.map_or("none".into(), |s| s.to_string())
    );
    Ok(())
}
