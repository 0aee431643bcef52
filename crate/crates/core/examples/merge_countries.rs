//! Aligning property-graph ids with IRIs through a template, then merging.
//!
//! ```bash
//! cargo run --example merge_countries
//! ```

use onegraph::io;
use onegraph::views::{lpg_view, LpgViewConfig, Namespaces};
use onegraph::{merge, Format, MergeRules, Store};

const GEONAMES: &str = r#"<http://sws.geonames.org/country/DE> <http://www.geonames.org/ontology#name> "Germany" .
<http://sws.geonames.org/country/FR> <http://www.geonames.org/ontology#name> "France" .
<http://sws.geonames.org/country/JP> <http://www.geonames.org/ontology#name> "Japan" .
"#;

const COUNTRIES: &str = r#"{"type":"vertex","id":"country-DE","labels":["Country"],"properties":{"population":83}}
{"type":"vertex","id":"country-FR","labels":["Country"],"properties":{"population":68}}
{"type":"vertex","id":"country-JP","labels":["Country"],"properties":{"population":125}}
{"type":"edge","id":"b1","label":"borders","from":"country-DE","to":"country-FR","properties":{}}
"#;

const RULES: &str = r#"{
  "id_mappings": [
    {"template": {"match": "country-{code}", "produce": "http://sws.geonames.org/country/{code}"}}
  ],
  "blank_node_policy": "RenameApart",
  "edge_identity": "Distinct"
}"#;

fn main() -> onegraph::Result<()> {
    let ns = Namespaces::default();
    let mut rdf = Store::with_seed(20);
    io::load_into(Format::NTriples, GEONAMES, &mut rdf, &ns)?;
    let mut lpg = Store::with_seed(21);
    io::load_into(Format::LpgJsonl, COUNTRIES, &mut lpg, &ns)?;

    let rules = MergeRules::from_json(RULES)?;
    let (merged, report) = merge(&rdf, &lpg, &rules)?;
    print!("{report}");

    let view = lpg_view(&merged, &LpgViewConfig::default());
    println!();
    print!("{}", io::serialize_lpg_jsonl(&view.graph));
    Ok(())
}
