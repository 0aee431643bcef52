//! Two `knows` edges between the same pair, each with its own source.
//! RDF-star has to fold them into one quoted triple; the property graph
//! keeps both. Merging with an edge identity rule collapses them in the
//! store itself.
//!
//! ```bash
//! cargo run --example multi_edge_collapse
//! ```

use onegraph::io;
use onegraph::views::{lpg_view, rdf_star_view, LpgViewConfig, Namespaces};
use onegraph::{merge, EdgeIdentity, Format, MergeRules, Store};

const EDGES: &str = r#"{"type":"vertex","id":"Alice","labels":["Person"],"properties":{}}
{"type":"vertex","id":"Bob","labels":["Person"],"properties":{}}
{"type":"edge","id":"e1","label":"knows","from":"Alice","to":"Bob","properties":{"statedBy":"NYTimes","since":2020}}
{"type":"edge","id":"e2","label":"knows","from":"Alice","to":"Bob","properties":{"statedBy":"TheGuardian","since":2021}}
"#;

fn main() -> onegraph::Result<()> {
    let ns = Namespaces::new("http://example.org/")?;
    let mut store = Store::with_seed(2);
    io::load_into(Format::LpgJsonl, EDGES, &mut store, &ns)?;
    let config = LpgViewConfig::with_namespaces(ns.clone());

    println!(
        "edges in the property graph: {}",
        lpg_view(&store, &config).graph.edges.len()
    );
    let star = rdf_star_view(&store, &ns)?;
    println!(
        "quoted triples in RDF-star:  {}",
        star.quoted_triples().len()
    );
    print!("{}", io::serialize_turtle_star(&star, &Default::default()));

    for identity in [
        EdgeIdentity::CollapseIdenticalContent,
        EdgeIdentity::CollapseIdenticalContentAndProperties,
    ] {
        let rules = MergeRules {
            edge_identity: identity,
            ..MergeRules::default()
        };
        let (merged, report) = merge(&store, &Store::new(), &rules)?;
        let edges = lpg_view(&merged, &config).graph.edges;
        println!(
            "\n{identity:?}: collapsed={} edges={}",
            report.edges_collapsed,
            edges.len()
        );
        for edge in edges.values() {
            println!(
                "  {} -{}-> {} {:?}",
                edge.from, edge.label, edge.to, edge.properties
            );
        }
    }
    Ok(())
}
