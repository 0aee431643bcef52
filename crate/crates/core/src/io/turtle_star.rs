//! A Turtle-star subset: prefix declarations, triples with `;` and `,`
//! lists, the usual literal shorthands, and quoted triples `<< s p o >>` in
//! subject or object position. Collections and `[ ]` blank nodes are not
//! supported.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::LazyLock;

use regex::Regex;

use crate::datatypes::Literal;
use crate::error::{Error, Result};
use crate::io::syntax::{write_literal, Cursor};
use crate::io::BlankScope;
use crate::store::Store;
use crate::term::{BlankNode, Iri, Term};
use crate::views::{
    shorten_iri, Namespaces, PrefixTable, RdfStarGraph, StarTerm, StarTriple, DEFAULT_MAX_NESTING,
};
use crate::vocab;

#[derive(Clone)]
enum Node {
    Term(Term),
    Quoted(Box<Parsed>),
}

#[derive(Clone)]
struct Parsed {
    subject: Node,
    predicate: Term,
    object: Node,
}

pub fn parse(text: &str) -> Result<Store> {
    let mut store = Store::new();
    load_into(text, &mut store, &Namespaces::default())?;
    Ok(store)
}

/// Adds the document to `store`.
///
/// Every asserted triple becomes a ground statement unless one with the same
/// content already exists. A quoted triple stands for the least sid with its
/// content, and is created (asserted) when there is none. Returns the number
/// of statements added.
pub fn load_into(text: &str, store: &mut Store, ns: &Namespaces) -> Result<usize> {
    let mut parser = Parser {
        c: Cursor::new(text, 1),
        prefixes: PrefixTable::new(),
        blanks: Vec::new(),
    };
    let triples = parser.document()?;
    let scope = BlankScope::new(store, parser.blanks.iter());
    let before = store.len();
    let mut loader = Loader {
        store,
        ns,
        scope: &scope,
    };
    for t in &triples {
        loader.resolve(t)?;
    }
    Ok(store.len() - before)
}

struct Loader<'a> {
    store: &'a mut Store,
    ns: &'a Namespaces,
    scope: &'a BlankScope,
}

impl Loader<'_> {
    fn term(&mut self, n: &Node) -> Result<Term> {
        match n {
            Node::Term(t) => Ok(self.ns.internalize(self.scope.map(t.clone()))),
            Node::Quoted(q) => self.resolve(q).map(Term::SidRef),
        }
    }

    fn resolve(&mut self, t: &Parsed) -> Result<crate::term::Sid> {
        let s = self.term(&t.subject)?;
        let p = self.ns.internalize(t.predicate.clone());
        let o = self.term(&t.object)?;
        match self.store.sids_with_content(&s, &p, &o).into_iter().min() {
            Some(sid) => Ok(sid),
            None => self.store.insert(s, p, o),
        }
    }
}

struct Parser<'a> {
    c: Cursor<'a>,
    prefixes: PrefixTable,
    blanks: Vec<Term>,
}

impl Parser<'_> {
    fn document(&mut self) -> Result<Vec<Parsed>> {
        let mut out = Vec::new();
        loop {
            self.c.skip_ws_and_comments();
            if self.c.at_end() {
                return Ok(out);
            }
            if self.c.starts_with("@prefix") {
                self.c.expect("@prefix")?;
                self.prefix_decl()?;
                self.c.skip_ws_and_comments();
                self.c.expect(".")?;
            } else if self.keyword("PREFIX") {
                self.prefix_decl()?;
            } else if self.c.starts_with("@base") || self.keyword("BASE") {
                return Err(self.c.error("base IRIs are not supported"));
            } else {
                self.triples(&mut out)?;
            }
        }
    }

    /// Case-insensitive keyword followed by whitespace.
    fn keyword(&mut self, kw: &str) -> bool {
        let rest = self.c.rest();
        let matched = rest
            .get(..kw.len())
            .is_some_and(|h| h.eq_ignore_ascii_case(kw))
            && rest[kw.len()..].starts_with(|c: char| c.is_whitespace());
        if matched {
            self.c.set_pos(self.c.pos() + kw.len());
        }
        matched
    }

    fn prefix_decl(&mut self) -> Result<()> {
        self.c.skip_ws_and_comments();
        let at = self.c.pos();
        let label = PN_PREFIX
            .find(self.c.rest())
            .map(|m| m.as_str().to_owned())
            .unwrap_or_default();
        self.c.eat(&label);
        if !self.c.eat(":") {
            return Err(self.c.error_at(at, "expected a prefix label ending in ':'"));
        }
        self.c.skip_ws_and_comments();
        let iri_at = self.c.pos();
        let ns = self.c.iri_ref()?;
        Iri::new(ns.clone()).map_err(|e| self.c.error_at(iri_at, e.to_string()))?;
        self.prefixes.insert(label, ns);
        Ok(())
    }

    fn triples(&mut self, out: &mut Vec<Parsed>) -> Result<()> {
        let subject = self.subject(0)?;
        loop {
            self.c.skip_ws_and_comments();
            let predicate = self.verb()?;
            loop {
                self.c.skip_ws_and_comments();
                let object = self.object(0)?;
                out.push(Parsed {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    object,
                });
                self.c.skip_ws_and_comments();
                if self.c.starts_with("{|") {
                    return Err(self.c.error("annotation syntax is not supported"));
                }
                if !self.c.eat(",") {
                    break;
                }
            }
            // `;` may repeat and may dangle before the final `.`
            let mut semicolon = false;
            while self.c.eat(";") {
                semicolon = true;
                self.c.skip_ws_and_comments();
            }
            if self.c.eat(".") {
                return Ok(());
            }
            if !semicolon {
                return Err(self.c.error("expected '.', ';' or ','"));
            }
        }
    }

    fn subject(&mut self, depth: usize) -> Result<Node> {
        match self.c.peek() {
            Some('<') if self.c.starts_with("<<") => self.quoted(depth + 1),
            Some('<') => self.iri().map(Node::Term),
            Some('_') if self.c.starts_with("_:") => self.blank().map(Node::Term),
            Some('[') => Err(self.c.error("anonymous blank nodes are not supported")),
            Some('(') => Err(self.c.error("collections are not supported")),
            Some('"' | '\'') => Err(self.c.error("a literal cannot be a subject")),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' => {
                Err(self.c.error("a literal cannot be a subject"))
            }
            None => Err(self.c.error("unexpected end of input")),
            _ => self.prefixed_name().map(Node::Term),
        }
    }

    fn object(&mut self, depth: usize) -> Result<Node> {
        match self.c.peek() {
            Some('"' | '\'') => self.string_literal().map(Node::Term),
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-' | '.') => {
                self.numeric().map(Node::Term)
            }
            _ if self.boolean_ahead("true") => {
                self.c.eat("true");
                Ok(Node::Term(Literal::boolean(true).into()))
            }
            _ if self.boolean_ahead("false") => {
                self.c.eat("false");
                Ok(Node::Term(Literal::boolean(false).into()))
            }
            _ => self.subject(depth),
        }
    }

    fn boolean_ahead(&self, word: &str) -> bool {
        self.c.starts_with(word)
            && !self.c.rest()[word.len()..]
                .starts_with(|c: char| c.is_alphanumeric() || matches!(c, '_' | '-' | ':'))
    }

    fn verb(&mut self) -> Result<Term> {
        if self.c.starts_with("a")
            && self
                .c
                .peek_nth(1)
                .is_some_and(|c| c.is_whitespace() || c == '<' || c == '"')
        {
            self.c.eat("a");
            return Ok(Term::Iri(
                Iri::new(vocab::RDF_TYPE).expect("vocabulary IRI"),
            ));
        }
        match self.c.peek() {
            Some('<') if !self.c.starts_with("<<") => self.iri(),
            Some('<' | '_' | '"' | '\'' | '[' | '(') | None => {
                Err(self.c.error("predicate must be an IRI"))
            }
            _ => self.prefixed_name(),
        }
    }

    fn quoted(&mut self, depth: usize) -> Result<Node> {
        if depth > DEFAULT_MAX_NESTING {
            return Err(Error::NestingOverflow {
                limit: DEFAULT_MAX_NESTING,
            });
        }
        self.c.expect("<<")?;
        self.c.skip_ws_and_comments();
        let subject = self.subject(depth)?;
        self.c.skip_ws_and_comments();
        if self.c.starts_with(">>") {
            return Err(self
                .c
                .error("quoted triple needs a subject, predicate and object"));
        }
        let predicate = self.verb()?;
        self.c.skip_ws_and_comments();
        if self.c.starts_with(">>") {
            return Err(self
                .c
                .error("quoted triple needs a subject, predicate and object"));
        }
        let object = self.object(depth)?;
        self.c.skip_ws_and_comments();
        self.c.expect(">>")?;
        Ok(Node::Quoted(Box::new(Parsed {
            subject,
            predicate,
            object,
        })))
    }

    fn iri(&mut self) -> Result<Term> {
        let at = self.c.pos();
        let text = self.c.iri_ref()?;
        Iri::new(text)
            .map(Term::Iri)
            .map_err(|e| self.c.error_at(at, e.to_string()))
    }

    fn blank(&mut self) -> Result<Term> {
        let at = self.c.pos();
        let label = self.c.blank_label()?;
        let t = BlankNode::new(label)
            .map(Term::BlankNode)
            .map_err(|e| self.c.error_at(at, e.to_string()))?;
        self.blanks.push(t.clone());
        Ok(t)
    }

    fn prefixed_name(&mut self) -> Result<Term> {
        self.prefixed_iri().map(Term::Iri)
    }

    fn prefixed_iri(&mut self) -> Result<Iri> {
        let at = self.c.pos();
        let label = PN_PREFIX
            .find(self.c.rest())
            .map(|m| m.as_str().to_owned())
            .unwrap_or_default();
        if !self.c.rest()[label.len()..].starts_with(':') {
            return Err(self.c.error("expected a term"));
        }
        self.c.eat(&label);
        self.c.eat(":");
        let local = self.pn_local()?;
        let ns = self
            .prefixes
            .get(&label)
            .ok_or_else(|| self.c.error_at(at, format!("undeclared prefix '{label}:'")))?;
        Iri::new(format!("{ns}{local}")).map_err(|e| self.c.error_at(at, e.to_string()))
    }

    fn pn_local(&mut self) -> Result<String> {
        let mut out = String::new();
        let mut raw_end = self.c.pos();
        let mut out_len_at_raw_end = 0;
        loop {
            match self.c.peek() {
                Some('\\') => {
                    self.c.bump();
                    match self.c.bump() {
                        Some(e) if "_~.-!$&'()*+,;=/?#@%".contains(e) => out.push(e),
                        _ => return Err(self.c.error("bad escape in prefixed name")),
                    }
                }
                Some('%') => {
                    let hex = self
                        .c
                        .rest()
                        .get(1..3)
                        .filter(|h| h.bytes().all(|b| b.is_ascii_hexdigit()));
                    let Some(hex) = hex else {
                        return Err(self.c.error("bad percent escape in prefixed name"));
                    };
                    out.push('%');
                    out.push_str(hex);
                    self.c.eat(&format!("%{hex}"));
                }
                Some(c) if c.is_alphanumeric() || matches!(c, '_' | '-' | ':') => {
                    self.c.bump();
                    out.push(c);
                }
                Some('.') => {
                    self.c.bump();
                    out.push('.');
                    continue;
                }
                _ => break,
            }
            raw_end = self.c.pos();
            out_len_at_raw_end = out.len();
        }
        // a trailing dot ends the statement, not the name
        self.c.set_pos(raw_end);
        out.truncate(out_len_at_raw_end);
        Ok(out)
    }

    fn string_literal(&mut self) -> Result<Term> {
        let at = self.c.pos();
        let quote = ["\"\"\"", "'''", "\"", "'"]
            .into_iter()
            .find(|q| self.c.starts_with(q))
            .expect("caller saw a quote");
        let lexical = self.c.quoted_string(quote)?;
        let lit = if self.c.peek() == Some('@') {
            let tag = self.c.lang_tag()?;
            Literal::lang(lexical, tag)
        } else if self.c.eat("^^") {
            let dt = if self.c.peek() == Some('<') {
                let dt_at = self.c.pos();
                let text = self.c.iri_ref()?;
                Iri::new(text).map_err(|e| self.c.error_at(dt_at, e.to_string()))?
            } else {
                self.prefixed_iri()?
            };
            Literal::typed(lexical, dt)
        } else {
            Ok(Literal::string(lexical))
        };
        lit.map(Term::Literal)
            .map_err(|e| self.c.error_at(at, e.to_string()))
    }

    fn numeric(&mut self) -> Result<Term> {
        let rest = self.c.rest();
        let (m, dt) = if let Some(m) = DOUBLE.find(rest) {
            (m, vocab::XSD_DOUBLE)
        } else if let Some(m) = DECIMAL.find(rest) {
            (m, vocab::XSD_DECIMAL)
        } else if let Some(m) = INTEGER.find(rest) {
            (m, vocab::XSD_INTEGER)
        } else {
            return Err(self.c.error("malformed number"));
        };
        let lexical = m.as_str().to_owned();
        self.c.eat(&lexical);
        Ok(Literal::typed_str(lexical, dt)
            .expect("lexical form matched")
            .into())
    }
}

static PN_PREFIX: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^[A-Za-z](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?").unwrap());
static INTEGER: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[+-]?[0-9]+").unwrap());
static DECIMAL: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[+-]?[0-9]*\.[0-9]+").unwrap());
static DOUBLE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(
        r"^[+-]?(?:[0-9]+\.[0-9]*[eE][+-]?[0-9]+|\.[0-9]+[eE][+-]?[0-9]+|[0-9]+[eE][+-]?[0-9]+)",
    )
    .unwrap()
});
static SAFE_LOCAL: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^(?:[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?)?$").unwrap()
});
static BARE_INTEGER: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[+-]?[0-9]+$").unwrap());
static BARE_DECIMAL: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^[+-]?[0-9]*\.[0-9]+$").unwrap());

/// Writes the graph with `@prefix` lines for `prefixes`, one triple per line
/// in canonical order. Integers, decimals and booleans are written bare and
/// `rdf:type` as `a`.
pub fn serialize(graph: &RdfStarGraph, prefixes: &PrefixTable) -> String {
    let mut out = String::new();
    for (label, ns) in prefixes {
        writeln!(out, "@prefix {label}: <{ns}> .").expect("writing to a String");
    }
    if !prefixes.is_empty() && !graph.is_empty() {
        out.push('\n');
    }
    for t in graph.iter() {
        write_triple(&mut out, t, prefixes);
        out.push_str(" .\n");
    }
    out
}

fn write_triple(out: &mut String, t: &StarTriple, prefixes: &PrefixTable) {
    write_star_term(out, &t.subject, prefixes);
    out.push(' ');
    match &t.predicate {
        Term::Iri(iri) if iri.as_str() == vocab::RDF_TYPE => out.push('a'),
        p => write_term(out, p, prefixes),
    }
    out.push(' ');
    write_star_term(out, &t.object, prefixes);
}

fn write_star_term(out: &mut String, t: &StarTerm, prefixes: &PrefixTable) {
    match t {
        StarTerm::Term(t) => write_term(out, t, prefixes),
        StarTerm::Quoted(q) => {
            out.push_str("<< ");
            write_triple(out, q, prefixes);
            out.push_str(" >>");
        }
    }
}

fn write_iri(out: &mut String, iri: &Iri, prefixes: &PrefixTable) {
    let short = shorten_iri(iri, prefixes);
    let usable = short != iri.as_str()
        && short.split_once(':').is_some_and(|(label, local)| {
            prefixes.contains_key(label) && SAFE_LOCAL.is_match(local)
        });
    if usable {
        out.push_str(&short);
    } else {
        write!(out, "{}", Term::Iri(iri.clone())).expect("writing to a String");
    }
}

fn write_term(out: &mut String, t: &Term, prefixes: &PrefixTable) {
    match t {
        Term::Iri(iri) => write_iri(out, iri, prefixes),
        Term::Literal(lit) => {
            let bare = (lit.has_datatype(vocab::XSD_INTEGER)
                && BARE_INTEGER.is_match(lit.lexical()))
                || (lit.has_datatype(vocab::XSD_DECIMAL) && BARE_DECIMAL.is_match(lit.lexical()))
                || (lit.has_datatype(vocab::XSD_BOOLEAN)
                    && matches!(lit.lexical(), "true" | "false"));
            if bare {
                out.push_str(lit.lexical());
            } else {
                write_literal(out, lit, |w| {
                    let mut s = String::new();
                    write_iri(&mut s, lit.datatype(), prefixes);
                    w.write_str(&s)
                })
                .expect("writing to a String");
            }
        }
        // views never hand out local ids or sid references; keep them readable anyway
        other => write!(out, "{other}").expect("writing to a String"),
    }
}

/// Prefix table holding only the entries some IRI of `graph` can use.
pub fn used_prefixes(graph: &RdfStarGraph, prefixes: &PrefixTable) -> PrefixTable {
    let mut used = BTreeMap::new();
    let mut visit = |t: &Term| {
        let iri = match t {
            Term::Iri(iri) => iri,
            Term::Literal(l) => l.datatype(),
            _ => return,
        };
        if let Some((label, _)) = shorten_iri(iri, prefixes).split_once(':') {
            if let Some(ns) = prefixes.get(label) {
                used.insert(label.to_owned(), ns.clone());
            }
        }
    };
    let mut stack: Vec<&StarTriple> = graph.iter().collect();
    while let Some(t) = stack.pop() {
        visit(&t.predicate);
        for st in [&t.subject, &t.object] {
            match st {
                StarTerm::Term(x) => visit(x),
                StarTerm::Quoted(q) => stack.push(q),
            }
        }
    }
    used
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::views::rdf_star_view;

    const LISTING: &str = r#"@prefix : <http://example.org/> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .

:Alice :name "Alice" .
:Bob :name "Bob" .
:Alice :knows :Bob .
<< :Alice :knows :Bob >> :since 2020 .
"#;

    #[test]
    fn listing_parses_to_four_statements() {
        let store = parse(LISTING).unwrap();
        assert_eq!(store.len(), 4);
        assert_eq!(store.ground_count(), 3);
        let g = rdf_star_view(&store, &Namespaces::default()).unwrap();
        assert_eq!(g.len(), 4);
        assert!(g.is_asserted_only());
    }

    #[test]
    fn quoted_triple_alone_asserts_its_ground_statement() {
        let store = parse(
            "<< <http://ex.org/s> <http://ex.org/p> <http://ex.org/o> >> <http://ex.org/q> 1 .",
        )
        .unwrap();
        assert_eq!(store.len(), 2);
        assert_eq!(store.ground_count(), 1);
    }

    #[test]
    fn arity_and_unsupported_syntax() {
        assert!(matches!(
            parse("<< <http://ex.org/s> <http://ex.org/p> >> <http://ex.org/q> 1 ."),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse("[] <http://ex.org/p> 1 ."),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse("<http://ex.org/s> <http://ex.org/p> (1 2) ."),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse("ex:a ex:b ex:c ."),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse("\"x\" <http://ex.org/p> 1 ."),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn lists_and_shorthands() {
        let text = "PREFIX ex: <http://ex.org/>\nex:a a ex:T ; ex:p 1, 2.5, 1e3, true ;\n  ex:q 'x'@en, \"\"\"y\nz\"\"\"^^ex:dt ; .";
        let store = parse(text).unwrap();
        assert_eq!(store.len(), 7);
        let g = rdf_star_view(&store, &Namespaces::default()).unwrap();
        let prefixes = PrefixTable::from([("ex".to_owned(), "http://ex.org/".to_owned())]);
        let again = parse(&serialize(&g, &prefixes)).unwrap();
        assert_eq!(rdf_star_view(&again, &Namespaces::default()).unwrap(), g);
    }

    #[test]
    fn trailing_dot_after_prefixed_name() {
        let store = parse("@prefix ex: <http://ex.org/> .\nex:a ex:p ex:b.").unwrap();
        let st = store.iter().next().unwrap();
        assert_eq!(st.value(), &Term::iri("http://ex.org/b").unwrap());
    }

    #[test]
    fn nesting_limit_enforced_while_parsing() {
        let mut quoted = "<http://ex.org/s> <http://ex.org/p> <http://ex.org/o>".to_owned();
        for _ in 0..32 {
            quoted = format!("<< {quoted} >> <http://ex.org/p> 1");
        }
        assert!(parse(&format!("{quoted} .")).is_ok());
        let deeper = format!("<< {quoted} >> <http://ex.org/p> 1 .");
        assert!(matches!(
            parse(&deeper),
            Err(Error::NestingOverflow { limit: 32 })
        ));
    }

    #[test]
    fn binds_to_least_sid_under_multi_edges() {
        let mut store = Store::with_seed(0);
        let a = Term::iri("http://ex.org/a").unwrap();
        let p = Term::iri("http://ex.org/p").unwrap();
        let b = Term::iri("http://ex.org/b").unwrap();
        let first = store
            .insert_ground(a.clone(), p.clone(), b.clone())
            .unwrap();
        store.insert_ground(a, p, b).unwrap();
        let ns = Namespaces::default();
        load_into(
            "<< <http://ex.org/a> <http://ex.org/p> <http://ex.org/b> >> <http://ex.org/q> 1 .",
            &mut store,
            &ns,
        )
        .unwrap();
        assert_eq!(store.referrers(first).count(), 1);
    }

    #[test]
    fn error_line_numbers() {
        let err = parse("@prefix ex: <http://ex.org/> .\n\nex:a ex:p .").unwrap_err();
        assert_eq!(err.line(), Some(3));
    }
}
