//! N-Triples reader and canonical writer.

use std::fmt::Write as _;

use crate::error::Result;
use crate::io::ognq::literal;
use crate::io::syntax::Cursor;
use crate::io::BlankScope;
use crate::store::Store;
use crate::term::{BlankNode, Iri, Term};
use crate::views::{Namespaces, RdfGraph};

/// One ground statement per triple, each with a fresh sid. Duplicate
/// triples yield duplicate statements.
pub fn parse(text: &str) -> Result<Store> {
    let mut store = Store::new();
    load_into(text, &mut store, &Namespaces::default())?;
    Ok(store)
}

/// Adds the document's triples to `store`. Blank node labels that already
/// occur in the store are renamed so the document keeps its own scope, and
/// IRIs exposing a local id under `ns` are read back as that local id.
pub fn load_into(text: &str, store: &mut Store, ns: &Namespaces) -> Result<usize> {
    let mut triples = Vec::new();
    for (idx, line) in text.split('\n').enumerate() {
        if let Some(t) = parse_line(line, idx + 1)? {
            triples.push(t);
        }
    }
    let scope = BlankScope::new(store, triples.iter().flat_map(|(s, _, o)| [s, o]));
    let count = triples.len();
    for (s, p, o) in triples {
        let s = ns.internalize(scope.map(s));
        let o = ns.internalize(scope.map(o));
        store.insert_ground(s, ns.internalize(p), o)?;
    }
    Ok(count)
}

fn parse_line(line: &str, line_no: usize) -> Result<Option<(Term, Term, Term)>> {
    let mut c = Cursor::new(line, line_no);
    c.skip_inline_ws();
    if c.at_end() || c.peek() == Some('#') || c.rest().trim().is_empty() {
        return Ok(None);
    }
    let s = match c.peek() {
        Some('<') => iri(&mut c)?,
        Some('_') => blank(&mut c)?,
        _ => return Err(c.error("subject must be an IRI or blank node")),
    };
    c.skip_inline_ws();
    if c.peek() != Some('<') {
        return Err(c.error("predicate must be an IRI"));
    }
    let p = iri(&mut c)?;
    c.skip_inline_ws();
    let o = match c.peek() {
        Some('<') => iri(&mut c)?,
        Some('_') => blank(&mut c)?,
        Some('"') => literal(&mut c)?,
        _ => return Err(c.error("expected an object term")),
    };
    c.skip_inline_ws();
    c.expect(".")?;
    c.skip_inline_ws();
    if c.peek() == Some('#') || c.rest().trim_end_matches('\r').is_empty() {
        Ok(Some((s, p, o)))
    } else {
        Err(c.error("unexpected text after '.'"))
    }
}

fn iri(c: &mut Cursor<'_>) -> Result<Term> {
    let at = c.pos();
    let text = c.iri_ref()?;
    Iri::new(text)
        .map(Term::Iri)
        .map_err(|e| c.error_at(at, e.to_string()))
}

fn blank(c: &mut Cursor<'_>) -> Result<Term> {
    let at = c.pos();
    let label = c.blank_label()?;
    BlankNode::new(label)
        .map(Term::BlankNode)
        .map_err(|e| c.error_at(at, e.to_string()))
}

/// One line per triple, in canonical term order.
pub fn serialize(graph: &RdfGraph) -> String {
    let mut out = String::new();
    for t in graph.iter() {
        writeln!(out, "{} {} {} .", t.subject, t.predicate, t.object).expect("writing to a String");
    }
    out
}
