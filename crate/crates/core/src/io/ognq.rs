//! OG-NQ: N-Quads token grammar with the statement's sid in graph position.
//!
//! ```text
//! <urn:og:sid:…> local:"since" "2020"^^<http://www.w3.org/2001/XMLSchema#integer> <urn:og:sid:…> .
//! ```
//!
//! Sid references in subject/object position use the same `urn:og:sid:` IRI
//! form. Local ids are written `local:"…"`. This is a non-standard format
//! private to this crate; it is the only lossless serialization of a store.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::datatypes::Literal;
use crate::error::{Error, Result};
use crate::io::syntax::Cursor;
use crate::store::Store;
use crate::term::{BlankNode, Iri, LocalId, Sid, Statement, Term};
use crate::vocab;

pub fn serialize(store: &Store) -> String {
    let mut out = String::new();
    for st in store.iter() {
        for t in [st.src(), st.label(), st.value()] {
            write_term(&mut out, t);
            out.push(' ');
        }
        writeln!(out, "<{}> .", st.sid().to_iri_string()).expect("writing to a String");
    }
    out
}

/// Plain IRIs that happen to lie under `urn:og:sid:` get their first
/// character escaped so they do not read back as sid references.
fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::Iri(iri) if iri.as_str().starts_with(vocab::SID_IRI_PREFIX) => {
            write!(
                out,
                "<\\u{:04X}{}>",
                iri.as_str().as_bytes()[0],
                &iri.as_str()[1..]
            )
        }
        other => write!(out, "{other}"),
    }
    .expect("writing to a String");
}

/// Parses a document into a fresh store.
pub fn parse(text: &str) -> Result<Store> {
    let mut store = Store::new();
    load_into(text, &mut store)?;
    Ok(store)
}

/// Adds every statement of the document to `store`, sids unchanged.
///
/// Statements may reference sids defined further down. A line whose sid is
/// already in the store with identical content is skipped; different
/// content is a `SidCollision`. Nothing is inserted unless the whole
/// document is valid. Returns the number of statements added.
pub fn load_into(text: &str, store: &mut Store) -> Result<usize> {
    let mut parsed: BTreeMap<Sid, (usize, Statement)> = BTreeMap::new();
    for (idx, line) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let Some(st) = parse_line(line, line_no)? else {
            continue;
        };
        if parsed.contains_key(&st.sid()) {
            return Err(Error::syntax(
                line_no,
                None,
                format!("duplicate sid {}", st.sid()),
            ));
        }
        parsed.insert(st.sid(), (line_no, st));
    }

    let mut fresh: BTreeMap<Sid, (usize, Statement)> = BTreeMap::new();
    for (sid, (line, st)) in parsed {
        match store.get(sid) {
            Some(existing) if existing.content() == st.content() => {}
            Some(_) => return Err(Error::SidCollision(sid)),
            None => {
                fresh.insert(sid, (line, st));
            }
        }
    }
    for (_, st) in fresh.values() {
        if let Some(missing) = st
            .referenced_sids()
            .find(|r| !fresh.contains_key(r) && !store.contains(*r))
        {
            return Err(Error::DanglingSid(missing));
        }
    }

    // dependencies first; whatever is left over sits on a cycle
    let mut pending: HashMap<Sid, usize> = HashMap::new();
    let mut dependents: HashMap<Sid, Vec<Sid>> = HashMap::new();
    let mut ready = Vec::new();
    for (sid, (_, st)) in &fresh {
        let deps: Vec<Sid> = st
            .referenced_sids()
            .filter(|r| fresh.contains_key(r))
            .collect();
        if deps.is_empty() {
            ready.push(*sid);
        } else {
            pending.insert(*sid, deps.len());
            for d in deps {
                dependents.entry(d).or_default().push(*sid);
            }
        }
    }
    let mut order = Vec::with_capacity(fresh.len());
    while let Some(sid) = ready.pop() {
        order.push(sid);
        for dep in dependents.remove(&sid).unwrap_or_default() {
            let n = pending.get_mut(&dep).expect("pending dependent");
            *n -= 1;
            if *n == 0 {
                pending.remove(&dep);
                ready.push(dep);
            }
        }
    }
    if let Some(stuck) = pending.keys().min() {
        let line = fresh[stuck].0;
        return Err(Error::syntax(line, None, "cyclic sid references"));
    }

    let count = order.len();
    for sid in order {
        let (_, st) = fresh.remove(&sid).expect("ordered sid");
        store.insert_statement(st)?;
    }
    Ok(count)
}

fn parse_line(line: &str, line_no: usize) -> Result<Option<Statement>> {
    let mut c = Cursor::new(line, line_no);
    c.skip_inline_ws();
    if c.at_end() || c.peek() == Some('#') || c.rest().trim().is_empty() {
        return Ok(None);
    }
    let src = term(&mut c)?;
    c.skip_inline_ws();
    let label_at = c.pos();
    let label = term(&mut c)?;
    c.skip_inline_ws();
    let value = term(&mut c)?;
    c.skip_inline_ws();
    let sid_at = c.pos();
    let sid = match term(&mut c)? {
        Term::SidRef(sid) => sid,
        _ => return Err(c.error_at(sid_at, "fourth position must be a urn:og:sid: IRI")),
    };
    c.skip_inline_ws();
    if !c.eat(".") {
        return Err(c.error("expected ' .' at end of statement"));
    }
    c.skip_inline_ws();
    if c.peek() == Some('#') || c.rest().trim_end_matches('\r').is_empty() {
        Statement::new(src, label, value, sid)
            .map(Some)
            .map_err(|e| c.error_at(label_at, e.to_string()))
    } else {
        Err(c.error("unexpected text after '.'"))
    }
}

/// Reads one term in OG-NQ syntax, e.g. `local:"DE"` or `<http://ex.org/a>`.
pub fn parse_term(text: &str) -> Result<Term> {
    let mut c = Cursor::new(text, 1);
    c.skip_inline_ws();
    let t = term(&mut c)?;
    c.skip_inline_ws();
    if c.at_end() {
        Ok(t)
    } else {
        Err(c.error("unexpected text after term"))
    }
}

fn term(c: &mut Cursor<'_>) -> Result<Term> {
    let at = c.pos();
    let invalid = |c: &Cursor<'_>, e: Error| c.error_at(at, e.to_string());
    match c.peek() {
        Some('<') => {
            let sid_form = c.starts_with(&format!("<{}", vocab::SID_IRI_PREFIX));
            let text = c.iri_ref()?;
            if sid_form {
                return Sid::from_iri(&text)
                    .map(Term::SidRef)
                    .ok_or_else(|| c.error_at(at, format!("malformed sid IRI <{text}>")));
            }
            Iri::new(text).map(Term::Iri).map_err(|e| invalid(c, e))
        }
        Some('_') => {
            let label = c.blank_label()?;
            BlankNode::new(label)
                .map(Term::BlankNode)
                .map_err(|e| invalid(c, e))
        }
        Some('"') => literal(c),
        Some('l') if c.starts_with("local:\"") => {
            c.expect("local:")?;
            let text = c.quoted_string("\"")?;
            LocalId::new(text)
                .map(Term::LocalId)
                .map_err(|e| invalid(c, e))
        }
        _ => Err(c.error("expected a term")),
    }
}

pub(crate) fn literal(c: &mut Cursor<'_>) -> Result<Term> {
    let at = c.pos();
    let lexical = c.quoted_string("\"")?;
    let lit = if c.peek() == Some('@') {
        let tag = c.lang_tag()?;
        Literal::lang(lexical, tag)
    } else if c.eat("^^") {
        let dt = c.iri_ref()?;
        Iri::new(dt).and_then(|dt| Literal::typed(lexical, dt))
    } else {
        Ok(Literal::string(lexical))
    };
    lit.map(Term::Literal)
        .map_err(|e| c.error_at(at, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Term {
        Term::local(s).unwrap()
    }

    #[test]
    fn serialize_line_shape() {
        let mut store = Store::with_seed(0);
        let s1 = store
            .insert_ground(l("Alice"), l("knows"), l("Bob"))
            .unwrap();
        store
            .insert_assertion(s1.into(), l("since"), Literal::integer(2020).into())
            .unwrap();
        let text = serialize(&store);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[1],
            "<urn:og:sid:00000000-0000-0000-0000-000000000001> local:\"since\" \
             \"2020\"^^<http://www.w3.org/2001/XMLSchema#integer> \
             <urn:og:sid:00000000-0000-0000-0000-000000000002> ."
        );
        assert_eq!(parse(&text).unwrap(), store);
    }

    #[test]
    fn forward_references_resolve() {
        let text = "\
<urn:og:sid:00000000-0000-0000-0000-000000000002> local:\"since\" \"2020\" <urn:og:sid:00000000-0000-0000-0000-000000000003> .
local:\"a\" local:\"p\" local:\"b\" <urn:og:sid:00000000-0000-0000-0000-000000000002> .
";
        let store = parse(text).unwrap();
        assert_eq!(store.len(), 2);
        store.check_integrity().unwrap();
    }

    #[test]
    fn errors_carry_line_numbers() {
        let missing_dot = "\n\nlocal:\"a\" local:\"p\" local:\"b\" <urn:og:sid:00000000-0000-0000-0000-000000000002>\n";
        assert_eq!(parse(missing_dot).unwrap_err().line(), Some(3));

        let dangling = "<urn:og:sid:00000000-0000-0000-0000-000000000009> local:\"p\" \"x\" <urn:og:sid:00000000-0000-0000-0000-000000000001> .";
        assert!(matches!(parse(dangling), Err(Error::DanglingSid(_))));

        let label_sid = "local:\"a\" <urn:og:sid:00000000-0000-0000-0000-000000000001> \"x\" <urn:og:sid:00000000-0000-0000-0000-000000000002> .";
        assert_eq!(parse(label_sid).unwrap_err().line(), Some(1));

        let dup = "local:\"a\" local:\"p\" \"x\" <urn:og:sid:00000000-0000-0000-0000-000000000002> .\n\
                   local:\"a\" local:\"p\" \"y\" <urn:og:sid:00000000-0000-0000-0000-000000000002> .";
        assert_eq!(parse(dup).unwrap_err().line(), Some(2));

        let cycle = "<urn:og:sid:00000000-0000-0000-0000-000000000002> local:\"p\" \"x\" <urn:og:sid:00000000-0000-0000-0000-000000000001> .\n\
                     <urn:og:sid:00000000-0000-0000-0000-000000000001> local:\"p\" \"x\" <urn:og:sid:00000000-0000-0000-0000-000000000002> .";
        assert!(parse(cycle).unwrap_err().line().is_some());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\n\n   \nlocal:\"a\" local:\"p\" _:b1 <urn:og:sid:00000000-0000-0000-0000-000000000001> . # trailing\n";
        assert_eq!(parse(text).unwrap().len(), 1);
    }

    #[test]
    fn iri_under_sid_namespace_stays_an_iri() {
        let mut store = Store::with_seed(0);
        let look_alike = Term::iri("urn:og:sid:00000000-0000-0000-0000-000000000007").unwrap();
        store
            .insert_ground(look_alike.clone(), l("p"), l("o"))
            .unwrap();
        let text = serialize(&store);
        let back = parse(&text).unwrap();
        assert_eq!(back, store);
        assert_eq!(back.iter().next().unwrap().src(), &look_alike);
    }

    #[test]
    fn load_is_atomic() {
        let mut store = Store::new();
        let text = "local:\"a\" local:\"p\" \"x\" <urn:og:sid:00000000-0000-0000-0000-000000000001> .\ngarbage\n";
        assert!(load_into(text, &mut store).is_err());
        assert!(store.is_empty());
    }
}
