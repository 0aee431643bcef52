//! One store, three readings: plain RDF, RDF-star and a property graph.
//!
//! ```bash
//! cargo run --example tri_view
//! ```

use onegraph::io;
use onegraph::views::{lpg_view, rdf_star_view, rdf_view, LpgViewConfig, Namespaces, RdfMode};
use onegraph::{Literal, Store, Term};

fn main() -> onegraph::Result<()> {
    let mut store = Store::with_seed(1);
    let knows = store.insert_ground(
        Term::local("Alice")?,
        Term::local("knows")?,
        Term::local("Bob")?,
    )?;
    store.insert_ground(
        Term::local("Alice")?,
        Term::local("name")?,
        Literal::string("Alice").into(),
    )?;
    store.insert_ground(
        Term::local("Bob")?,
        Term::local("name")?,
        Literal::string("Bob").into(),
    )?;
    store.insert_assertion(
        Term::SidRef(knows),
        Term::local("since")?,
        Literal::integer(2020).into(),
    )?;

    let ns = Namespaces::new("http://example.org/")?.with_prefix("", "http://example.org/");

    println!("# statements");
    print!("{}", io::serialize_ognq(&store));

    println!("\n# rdf");
    print!(
        "{}",
        io::serialize_ntriples(&rdf_view(&store, RdfMode::Hide, &ns))
    );

    println!("\n# rdf, reified");
    print!(
        "{}",
        io::serialize_ntriples(&rdf_view(&store, RdfMode::Reify, &ns))
    );

    println!("\n# rdf-star");
    let prefixes = [(String::new(), "http://example.org/".to_owned())].into();
    print!(
        "{}",
        io::serialize_turtle_star(&rdf_star_view(&store, &ns)?, &prefixes)
    );

    println!("\n# lpg");
    let view = lpg_view(&store, &LpgViewConfig::with_namespaces(ns));
    print!("{}", io::serialize_lpg_jsonl(&view.graph));
    println!("dropped={}", view.dropped);
    Ok(())
}
