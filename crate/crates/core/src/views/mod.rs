//! Read-only projections of a [`Store`](crate::Store) into other graph models.
//!
//! Each view is an immutable snapshot. Plain RDF and RDF-star treat a triple
//! as unique, so content-identical statements collapse there; the property
//! graph view keeps one edge per sid but cannot express statements about
//! statements beyond edge properties and meta-properties.

mod dataset;
mod lpg;
mod rdf;
mod star;

use std::collections::BTreeMap;

use percent_encoding::{percent_decode_str, utf8_percent_encode, AsciiSet, CONTROLS};

pub use dataset::{dataset_view, Dataset};
pub use lpg::{lpg_view, Edge, LpgGraph, LpgView, LpgViewConfig, Vertex, VertexProperty};
pub use rdf::{rdf_view, RdfGraph, RdfMode, Triple};
pub use star::{
    rdf_star_view, rdf_star_view_with_limit, RdfStarGraph, StarTerm, StarTriple,
    DEFAULT_MAX_NESTING,
};

use crate::error::{Error, Result};
use crate::term::{Iri, LocalId, Term};
use crate::vocab;

/// Prefix label → IRI prefix.
pub type PrefixTable = BTreeMap<String, String>;

const LOCAL_ID_ENCODE: &AsciiSet = &CONTROLS
    .add(b' ')
    .add(b'"')
    .add(b'#')
    .add(b'%')
    .add(b'<')
    .add(b'>')
    .add(b'?')
    .add(b'[')
    .add(b'\\')
    .add(b']')
    .add(b'^')
    .add(b'`')
    .add(b'{')
    .add(b'|')
    .add(b'}');

/// `namespace` + percent-encoded local id text. Injective for a fixed
/// namespace because `%` itself is encoded.
pub fn expose_local_as_iri(id: &LocalId, namespace: &str) -> Result<Iri> {
    let encoded = utf8_percent_encode(id.as_str(), LOCAL_ID_ENCODE);
    Iri::new(format!("{namespace}{encoded}"))
}

/// Replaces the longest matching prefix by `label:`; unmatched IRIs come
/// back verbatim.
pub fn shorten_iri(iri: &Iri, prefixes: &PrefixTable) -> String {
    let text = iri.as_str();
    prefixes
        .iter()
        .filter(|(_, ns)| !ns.is_empty() && text.starts_with(ns.as_str()))
        .max_by_key(|(_, ns)| ns.len())
        .map(|(label, ns)| format!("{label}:{}", &text[ns.len()..]))
        .unwrap_or_else(|| text.to_owned())
}

/// Inverse of [`shorten_iri`] for names whose prefix label is in the table.
pub fn expand_name(name: &str, prefixes: &PrefixTable) -> Option<String> {
    let (label, rest) = name.split_once(':')?;
    prefixes.get(label).map(|ns| format!("{ns}{rest}"))
}

/// How local identifiers surface as IRIs and how IRIs are abbreviated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Namespaces {
    default_namespace: String,
    pub prefixes: PrefixTable,
}

impl Default for Namespaces {
    fn default() -> Self {
        Namespaces {
            default_namespace: vocab::DEFAULT_NAMESPACE.to_owned(),
            prefixes: PrefixTable::new(),
        }
    }
}

impl Namespaces {
    pub fn new(default_namespace: impl Into<String>) -> Result<Self> {
        let default_namespace = default_namespace.into();
        // a namespace is valid iff appending a plain name yields an IRI
        Iri::new(format!("{default_namespace}x"))
            .map_err(|_| Error::InvalidTerm(format!("not an IRI prefix: {default_namespace}")))?;
        Ok(Namespaces {
            default_namespace,
            prefixes: PrefixTable::new(),
        })
    }

    pub fn with_prefix(mut self, label: impl Into<String>, ns: impl Into<String>) -> Self {
        self.prefixes.insert(label.into(), ns.into());
        self
    }

    pub fn default_namespace(&self) -> &str {
        &self.default_namespace
    }

    pub fn expose_local(&self, id: &LocalId) -> Iri {
        expose_local_as_iri(id, &self.default_namespace)
            .expect("namespace validated on construction")
    }

    /// Local ids become IRIs; every other term is returned unchanged.
    pub fn expose(&self, t: &Term) -> Term {
        match t {
            Term::LocalId(id) => Term::Iri(self.expose_local(id)),
            other => other.clone(),
        }
    }

    /// Inverse of [`Namespaces::expose`]: IRIs that are exactly the exposure
    /// of some local id turn back into that local id.
    pub fn internalize(&self, t: Term) -> Term {
        if let Term::Iri(iri) = &t {
            if let Some(rest) = iri.as_str().strip_prefix(self.default_namespace.as_str()) {
                if let Ok(decoded) = percent_decode_str(rest).decode_utf8() {
                    if let Ok(id) = LocalId::new(decoded.into_owned()) {
                        if self.expose_local(&id) == *iri {
                            return Term::LocalId(id);
                        }
                    }
                }
            }
        }
        t
    }

    /// Text form used for vertex ids, edge labels and property keys.
    pub fn display_name(&self, t: &Term) -> String {
        match t {
            Term::LocalId(id) => id.as_str().to_owned(),
            Term::Iri(iri) => shorten_iri(iri, &self.prefixes),
            Term::BlankNode(b) => format!("_:{}", b.as_str()),
            Term::SidRef(sid) => sid.to_iri_string(),
            Term::Literal(l) => l.lexical().to_owned(),
        }
    }

    /// Term for a property-graph name: prefixed names known to the prefix
    /// table expand to IRIs, anything else is a local id.
    pub fn name_to_term(&self, name: &str) -> Result<Term> {
        if let Some(expanded) = expand_name(name, &self.prefixes) {
            if let Ok(iri) = Iri::new(expanded) {
                return Ok(Term::Iri(iri));
            }
        }
        Term::local(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    #[test]
    fn exposure_examples() {
        let ns = "urn:og:local:";
        assert_eq!(
            expose_local_as_iri(&LocalId::new("DE").unwrap(), ns)
                .unwrap()
                .as_str(),
            "urn:og:local:DE"
        );
        // whitespace is not allowed in local ids, so exercise the encoder directly
        assert_eq!(
            utf8_percent_encode("a b", LOCAL_ID_ENCODE).to_string(),
            "a%20b"
        );
        let a = expose_local_as_iri(&LocalId::new("a%20b").unwrap(), ns).unwrap();
        let b = expose_local_as_iri(&LocalId::new("a{b").unwrap(), ns).unwrap();
        assert_eq!(a.as_str(), "urn:og:local:a%2520b");
        assert_eq!(b.as_str(), "urn:og:local:a%7Bb");
        assert!(expose_local_as_iri(&LocalId::new("x").unwrap(), "not a prefix").is_err());
    }

    #[test]
    fn internalize_inverts_expose() {
        let ns = Namespaces::default();
        for text in ["Alice", "a%b", "ü", "x{y}", "ex:thing"] {
            let t = Term::local(text).unwrap();
            assert_eq!(ns.internalize(ns.expose(&t)), t, "{text}");
        }
        let foreign = Term::iri("http://ex.org/a").unwrap();
        assert_eq!(ns.internalize(foreign.clone()), foreign);
        // non-canonical encoding stays an IRI
        let odd = Term::iri("urn:og:local:%41").unwrap();
        assert_eq!(ns.internalize(odd.clone()), odd);
    }

    #[test]
    fn shortening() {
        let mut p = PrefixTable::new();
        p.insert("ex".into(), "http://ex.org/".into());
        assert_eq!(shorten_iri(&iri("http://ex.org/Bob"), &p), "ex:Bob");
        assert_eq!(
            shorten_iri(&iri("http://other.org/Bob"), &p),
            "http://other.org/Bob"
        );
        p.insert("exp".into(), "http://ex.org/people/".into());
        let long = iri("http://ex.org/people/Bob");
        let short = shorten_iri(&long, &p);
        assert_eq!(short, "exp:Bob");
        assert_eq!(expand_name(&short, &p).unwrap(), long.as_str());
    }

    #[test]
    fn bad_default_namespace() {
        assert!(Namespaces::new("no scheme").is_err());
        assert!(Namespaces::new("http://ex.org/").is_ok());
    }
}
