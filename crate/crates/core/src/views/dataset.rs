use std::collections::BTreeMap;

use crate::store::Store;
use crate::term::GraphId;
use crate::views::rdf::hide_triple;
use crate::views::{Namespaces, RdfGraph};

/// Default graph plus named graphs, as SPARQL sees a dataset.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dataset {
    pub default_graph: RdfGraph,
    pub named_graphs: BTreeMap<GraphId, RdfGraph>,
}

/// Places each ground statement's triple in every graph it is a member of,
/// or in the default graph when it has no membership. Membership
/// statements themselves appear nowhere.
pub fn dataset_view(store: &Store, ns: &Namespaces) -> Dataset {
    let mut ds = Dataset::default();
    for st in store.iter() {
        let Some(triple) = hide_triple(st, ns) else {
            continue;
        };
        let graphs = store.graphs_of(st.sid());
        if graphs.is_empty() {
            ds.default_graph.insert(triple);
            continue;
        }
        for g in graphs {
            ds.named_graphs.entry(g).or_default().insert(triple.clone());
        }
    }
    ds
}
