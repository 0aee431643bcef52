//! Readers and writers: OG-NQ (lossless), N-Triples, a Turtle-star subset
//! and LPG JSON lines.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::store::Store;
use crate::term::{BlankNode, Term};
use crate::views::{Namespaces, PrefixTable};

pub mod lpg_jsonl;
pub mod ntriples;
pub mod ognq;
pub(crate) mod syntax;
pub mod turtle_star;

pub use lpg_jsonl::{parse as parse_lpg_jsonl, serialize as serialize_lpg_jsonl};
pub use ntriples::{parse as parse_ntriples, serialize as serialize_ntriples};
pub use ognq::{parse as parse_ognq, parse_term, serialize as serialize_ognq};
pub use turtle_star::{parse as parse_turtle_star_subset, serialize as serialize_turtle_star};

/// Input formats understood by [`load_into`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    OgNq,
    NTriples,
    TurtleStar,
    LpgJsonl,
}

impl Format {
    pub const ALL: [Format; 4] = [
        Format::OgNq,
        Format::NTriples,
        Format::TurtleStar,
        Format::LpgJsonl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Format::OgNq => "ognq",
            Format::NTriples => "ntriples",
            Format::TurtleStar => "ttls",
            Format::LpgJsonl => "lpgjsonl",
        }
    }

    /// Guess from a file extension.
    pub fn from_extension(ext: &str) -> Option<Format> {
        match ext.to_ascii_lowercase().as_str() {
            "ognq" => Some(Format::OgNq),
            "nt" => Some(Format::NTriples),
            "ttl" | "ttls" => Some(Format::TurtleStar),
            "jsonl" => Some(Format::LpgJsonl),
            _ => None,
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Format::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidTerm(format!("unknown format {s:?}")))
    }
}

/// Parses `text` in `format` and adds it to `store`. IRIs that expose a
/// local id under `ns` come back as that local id. Returns the number of
/// statements added.
pub fn load_into(format: Format, text: &str, store: &mut Store, ns: &Namespaces) -> Result<usize> {
    match format {
        Format::OgNq => ognq::load_into(text, store),
        Format::NTriples => ntriples::load_into(text, store, ns),
        Format::TurtleStar => turtle_star::load_into(text, store, ns),
        Format::LpgJsonl => lpg_jsonl::load_into(text, store, ns),
    }
}

/// Keeps a document's blank node labels apart from those already in a store.
///
/// Labels free in the store are kept; clashing ones get a `_n` suffix that
/// is free in both the store and the document.
pub(crate) struct BlankScope {
    renamed: BTreeMap<String, BlankNode>,
}

impl BlankScope {
    pub fn new<'a>(store: &Store, document: impl IntoIterator<Item = &'a Term>) -> Self {
        let mut taken = store_blank_labels(store);
        let clashing: Vec<String> = document
            .into_iter()
            .filter_map(|t| match t {
                Term::BlankNode(b) => Some(b.as_str().to_owned()),
                _ => None,
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .filter(|l| !taken.insert(l.clone()))
            .collect();
        let mut renamed = BTreeMap::new();
        for label in clashing {
            let fresh = fresh_label(&label, &taken);
            taken.insert(fresh.clone());
            renamed.insert(
                label,
                BlankNode::new(fresh).expect("suffixed label is valid"),
            );
        }
        BlankScope { renamed }
    }

    pub fn map(&self, t: Term) -> Term {
        match t {
            Term::BlankNode(b) => match self.renamed.get(b.as_str()) {
                Some(r) => Term::BlankNode(r.clone()),
                None => Term::BlankNode(b),
            },
            other => other,
        }
    }
}

pub(crate) fn store_blank_labels(store: &Store) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for st in store.iter() {
        for t in [st.src(), st.label(), st.value()] {
            if let Term::BlankNode(b) = t {
                out.insert(b.as_str().to_owned());
            }
        }
    }
    out
}

pub(crate) fn fresh_label(base: &str, taken: &BTreeSet<String>) -> String {
    (1..)
        .map(|n| format!("{base}_{n}"))
        .find(|l| !taken.contains(l))
        .expect("unbounded counter")
}

/// Reads a prefix table: a JSON object from prefix label to namespace IRI.
pub fn parse_prefix_table(text: &str) -> Result<PrefixTable> {
    serde_json::from_str(text).map_err(|e| Error::syntax(e.line(), Some(e.column()), e.to_string()))
}
