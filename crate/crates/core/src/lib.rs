//! An in-memory store where every fact is a statement with its own id,
//! read back as plain RDF, RDF-star, a named-graph dataset or a labeled
//! property graph.
//!
//! ## Examples
//!
//! - **`tri_view`** - one store, every view
//! - **`multi_edge_collapse`** - parallel edges and edge identity rules
//! - **`named_graphs`** - membership statements and the dataset view
//! - **`merge_countries`** - template alignment across two sources
//! - **`composite_lists`** - `urn:og:List` literals and value coercion
//! - **`update_ambiguity`** - updates through a view that hides multiplicity
//! - **`cascade_delete`** - restrict and cascade deletion
//! - **`formats_roundtrip`** - OG-NQ, N-Triples, Turtle-star and JSONL
//!
//! ```bash
//! cargo run --example tri_view
//! ```

pub mod cli;
pub mod datatypes;
pub mod error;
pub mod io;
pub mod merge;
pub mod store;
pub mod term;
pub mod update;
pub mod views;
pub mod vocab;

pub use datatypes::{Literal, LpgValue, OgList, Scalar};
pub use error::{Error, Result};
pub use io::Format;
pub use merge::{
    apply_alignment, merge, BlankNodePolicy, EdgeIdentity, MappingRule, MergeReport, MergeRules,
    Template,
};
pub use store::{DeletePolicy, StatementPattern, Store};
pub use term::{
    is_ground, term_compare, BlankNode, GraphId, Iri, LocalId, Sid, SidGenerator, Statement, Term,
};
pub use update::{AmbiguityPolicy, Element, InsertSemantics};
pub use views::{Namespaces, RdfMode};
