//! Reading and writing each supported format.
//!
//! ```bash
//! cargo run --example formats_roundtrip
//! ```

use onegraph::io;
use onegraph::views::{lpg_view, rdf_star_view, LpgViewConfig, Namespaces};
use onegraph::{Format, Store};

const TURTLE: &str = r#"@prefix : <http://example.org/> .
:Alice :knows :Bob .
<<:Alice :knows :Bob>> :since 2020 .
:Alice :name "Alice" .
:Bob :name "Bob" .
"#;

fn main() -> onegraph::Result<()> {
    let ns = Namespaces::new("http://example.org/")?;
    let mut store = Store::with_seed(5);
    io::load_into(Format::TurtleStar, TURTLE, &mut store, &ns)?;

    let ognq = io::serialize_ognq(&store);
    println!("# ognq\n{ognq}");
    assert_eq!(io::parse_ognq(&ognq)?, store);

    let lpg = io::serialize_lpg_jsonl(
        &lpg_view(&store, &LpgViewConfig::with_namespaces(ns.clone())).graph,
    );
    println!("# jsonl\n{lpg}");
    let mut from_lpg = Store::with_seed(6);
    io::load_into(Format::LpgJsonl, &lpg, &mut from_lpg, &ns)?;
    assert_eq!(rdf_star_view(&from_lpg, &ns)?, rdf_star_view(&store, &ns)?);

    let broken = "<http://a> <http://b> <http://c> .\n<http://a> <http://b> .\n";
    let err = io::load_into(Format::NTriples, broken, &mut Store::new(), &ns).unwrap_err();
    println!("# error\nline {:?}: {err}", err.line());
    Ok(())
}
