//! Graph membership is itself a statement, so a triple can sit in several
//! named graphs and the membership can be annotated like anything else.
//!
//! ```bash
//! cargo run --example named_graphs
//! ```

use onegraph::io;
use onegraph::views::{dataset_view, Namespaces};
use onegraph::{GraphId, Literal, Store, Term};

fn main() -> onegraph::Result<()> {
    let mut store = Store::with_seed(3);
    let l = |s: &str| Term::local(s);
    let alice = store.insert_ground(l("Alice")?, l("worksFor")?, l("Acme")?)?;
    let bob = store.insert_ground(l("Bob")?, l("worksFor")?, l("Acme")?)?;
    store.insert_ground(l("Acme")?, l("name")?, Literal::string("Acme Corp").into())?;

    let hr = GraphId::new(l("hr")?)?;
    let payroll = GraphId::new(Term::iri("http://example.org/graphs/payroll")?)?;
    store.set_graph_membership(alice, &hr)?;
    store.set_graph_membership(alice, &payroll)?;
    let m = store.set_graph_membership(bob, &hr)?;
    store.insert_assertion(Term::SidRef(m), l("addedBy")?, l("Carol")?)?;

    println!(
        "graphs: {:?}",
        store
            .list_graphs()
            .iter()
            .map(|g| g.term().to_string())
            .collect::<Vec<_>>()
    );
    println!(
        "alice's statement is in {} graphs",
        store.graphs_of(alice).len()
    );

    let ds = dataset_view(&store, &Namespaces::new("http://example.org/")?);
    println!("\n# default graph");
    print!("{}", io::serialize_ntriples(&ds.default_graph));
    for (g, graph) in &ds.named_graphs {
        println!("\n# graph {}", g.term());
        print!("{}", io::serialize_ntriples(graph));
    }
    Ok(())
}
