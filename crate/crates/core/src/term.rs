//! Terms, statement identifiers and statements.
//!
//! A statement is the single unit of data: `src -label-> value : sid`. Ground
//! statements relate plain nodes and values; assertions carry a [`Sid`] in
//! `src` and/or `value` position and so talk about other statements.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use uuid::Uuid;

use crate::datatypes::Literal;
use crate::error::{Error, Result};
use crate::vocab;

/// Statement identifier: a 128-bit value rendered as a lowercase hyphenated UUID.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sid(u128);

impl Sid {
    pub const fn from_u128(v: u128) -> Self {
        Sid(v)
    }

    pub const fn as_u128(self) -> u128 {
        self.0
    }

    /// `urn:og:sid:<uuid>`.
    pub fn to_iri_string(self) -> String {
        format!("{}{}", vocab::SID_IRI_PREFIX, self)
    }

    pub fn to_iri(self) -> Iri {
        Iri(self.to_iri_string())
    }

    /// Parses the exact `urn:og:sid:` + 36-char lowercase form.
    pub fn from_iri(iri: &str) -> Option<Sid> {
        iri.strip_prefix(vocab::SID_IRI_PREFIX)?.parse().ok()
    }
}

impl fmt::Display for Sid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Uuid::from_u128(self.0).hyphenated())
    }
}

impl fmt::Debug for Sid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sid({self})")
    }
}

impl FromStr for Sid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let uuid = Uuid::try_parse(s).map_err(|_| Error::InvalidTerm(format!("not a sid: {s}")))?;
        // only the canonical rendering is accepted
        if uuid.hyphenated().to_string() != s {
            return Err(Error::InvalidTerm(format!("non-canonical sid: {s}")));
        }
        Ok(Sid(uuid.as_u128()))
    }
}

/// Source of fresh sids: random v4 UUIDs, or a sequential counter for
/// reproducible runs.
#[derive(Debug, Clone, Default)]
pub enum SidGenerator {
    #[default]
    Random,
    Sequential {
        next: u128,
    },
}

impl SidGenerator {
    /// Sequential generator; seed `s` starts counting at `s * 2^64 + 1`.
    pub fn seeded(seed: u64) -> Self {
        SidGenerator::Sequential {
            next: ((seed as u128) << 64) + 1,
        }
    }

    /// Next sid for which `taken` is false.
    pub fn fresh(&mut self, taken: impl Fn(Sid) -> bool) -> Sid {
        loop {
            let candidate = match self {
                SidGenerator::Random => Sid(Uuid::new_v4().as_u128()),
                SidGenerator::Sequential { next } => {
                    let sid = Sid(*next);
                    *next = next.wrapping_add(1);
                    sid
                }
            };
            if !taken(candidate) {
                return candidate;
            }
        }
    }

    /// Records an externally supplied sid so the counter never hands it out.
    pub fn observe(&mut self, sid: Sid) {
        if let SidGenerator::Sequential { next } = self {
            if sid.0 >= *next {
                *next = sid.0.wrapping_add(1);
            }
        }
    }
}

fn iri_scheme_len(s: &str) -> Option<usize> {
    let mut chars = s.char_indices();
    match chars.next() {
        Some((_, c)) if c.is_ascii_alphabetic() => {}
        _ => return None,
    }
    for (i, c) in chars {
        if c == ':' {
            return Some(i);
        }
        if !(c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.')) {
            return None;
        }
    }
    None
}

fn is_forbidden_iri_char(c: char) -> bool {
    c <= ' ' || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
}

/// Absolute IRI.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    pub fn new(text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        if iri_scheme_len(&text).is_none() {
            return Err(Error::InvalidTerm(format!("IRI has no scheme: {text}")));
        }
        if let Some(c) = text.chars().find(|c| is_forbidden_iri_char(*c)) {
            return Err(Error::InvalidTerm(format!("IRI contains {c:?}: {text}")));
        }
        Ok(Iri(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Store-local identifier, typically a property-graph vertex id or label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LocalId(String);

impl LocalId {
    pub fn new(text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        if text.is_empty() {
            return Err(Error::InvalidTerm("empty local id".into()));
        }
        if text
            .chars()
            .any(|c| c == '<' || c == '>' || c.is_whitespace())
        {
            return Err(Error::InvalidTerm(format!(
                "local id contains '<', '>' or whitespace: {text:?}"
            )));
        }
        Ok(LocalId(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for LocalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "local:{:?}", self.0)
    }
}

/// Blank node label. Labels are scoped to the store holding them.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlankNode(String);

impl BlankNode {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        let valid = label
            .chars()
            .next()
            .is_some_and(|c| c.is_alphanumeric() || c == '_')
            && label
                .chars()
                .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
            && !label.ends_with('.');
        if !valid {
            return Err(Error::InvalidTerm(format!(
                "bad blank node label: {label:?}"
            )));
        }
        Ok(BlankNode(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for BlankNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

/// Any node or value denotation.
///
/// The derived ordering is the canonical one: variant rank
/// (Iri < LocalId < BlankNode < SidRef < Literal), then lexicographic
/// within a variant.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    LocalId(LocalId),
    BlankNode(BlankNode),
    SidRef(Sid),
    Literal(Literal),
}

impl Term {
    pub fn iri(text: impl Into<String>) -> Result<Term> {
        Iri::new(text).map(Term::Iri)
    }

    pub fn local(text: impl Into<String>) -> Result<Term> {
        LocalId::new(text).map(Term::LocalId)
    }

    pub fn blank(label: impl Into<String>) -> Result<Term> {
        BlankNode::new(label).map(Term::BlankNode)
    }

    pub fn is_sid_ref(&self) -> bool {
        matches!(self, Term::SidRef(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    /// Iri, LocalId or BlankNode.
    pub fn is_node(&self) -> bool {
        matches!(self, Term::Iri(_) | Term::LocalId(_) | Term::BlankNode(_))
    }

    pub fn as_sid(&self) -> Option<Sid> {
        match self {
            Term::SidRef(sid) => Some(*sid),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }

    fn variant_name(&self) -> &'static str {
        match self {
            Term::Iri(_) => "IRI",
            Term::LocalId(_) => "local id",
            Term::BlankNode(_) => "blank node",
            Term::SidRef(_) => "sid reference",
            Term::Literal(_) => "literal",
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(i) => i.fmt(f),
            Term::LocalId(l) => l.fmt(f),
            Term::BlankNode(b) => b.fmt(f),
            Term::SidRef(s) => write!(f, "<{}>", s.to_iri_string()),
            Term::Literal(l) => l.fmt(f),
        }
    }
}

impl From<Iri> for Term {
    fn from(v: Iri) -> Self {
        Term::Iri(v)
    }
}

impl From<LocalId> for Term {
    fn from(v: LocalId) -> Self {
        Term::LocalId(v)
    }
}

impl From<BlankNode> for Term {
    fn from(v: BlankNode) -> Self {
        Term::BlankNode(v)
    }
}

impl From<Sid> for Term {
    fn from(v: Sid) -> Self {
        Term::SidRef(v)
    }
}

impl From<Literal> for Term {
    fn from(v: Literal) -> Self {
        Term::Literal(v)
    }
}

/// Canonical total order over terms, used for every deterministic output.
pub fn term_compare(a: &Term, b: &Term) -> Ordering {
    a.cmp(b)
}

pub(crate) fn check_src(src: &Term) -> Result<()> {
    if src.is_literal() {
        return Err(Error::Position("src may not be a literal".into()));
    }
    Ok(())
}

pub(crate) fn check_label(label: &Term) -> Result<()> {
    match label {
        Term::Iri(_) | Term::LocalId(_) => Ok(()),
        other => Err(Error::Position(format!(
            "label must be an IRI or local id, got a {}",
            other.variant_name()
        ))),
    }
}

/// One fact: `src -label-> value : sid`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Statement {
    src: Term,
    label: Term,
    value: Term,
    sid: Sid,
}

impl Statement {
    pub fn new(src: Term, label: Term, value: Term, sid: Sid) -> Result<Self> {
        check_src(&src)?;
        check_label(&label)?;
        Ok(Statement {
            src,
            label,
            value,
            sid,
        })
    }

    pub fn src(&self) -> &Term {
        &self.src
    }

    pub fn label(&self) -> &Term {
        &self.label
    }

    pub fn value(&self) -> &Term {
        &self.value
    }

    pub fn sid(&self) -> Sid {
        self.sid
    }

    /// `(src, label, value)` without the sid.
    pub fn content(&self) -> (&Term, &Term, &Term) {
        (&self.src, &self.label, &self.value)
    }

    pub fn is_ground(&self) -> bool {
        is_ground(self)
    }

    /// Sids referenced from `src` or `value`, in that order.
    pub fn referenced_sids(&self) -> impl Iterator<Item = Sid> + '_ {
        [&self.src, &self.value]
            .into_iter()
            .filter_map(Term::as_sid)
    }

    /// Graph-membership assertion: `SidRef -inGraph-> g`.
    pub fn is_membership(&self) -> bool {
        self.src.is_sid_ref() && has_membership_label(self)
    }

    pub(crate) fn with_terms(&self, src: Term, label: Term, value: Term) -> Result<Statement> {
        Statement::new(src, label, value, self.sid)
    }
}

pub(crate) fn has_membership_label(st: &Statement) -> bool {
    matches!(&st.label, Term::Iri(i) if i.as_str() == vocab::IN_GRAPH)
}

impl fmt::Debug for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} -{:?}-> {:?} : {}",
            self.src, self.label, self.value, self.sid
        )
    }
}

/// True iff neither `src` nor `value` is a sid reference.
pub fn is_ground(st: &Statement) -> bool {
    !st.src.is_sid_ref() && !st.value.is_sid_ref()
}

/// Named-graph identifier; an IRI or a local id.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GraphId(Term);

impl GraphId {
    pub fn new(id: Term) -> Result<Self> {
        match id {
            Term::Iri(_) | Term::LocalId(_) => Ok(GraphId(id)),
            other => Err(Error::Position(format!(
                "graph id must be an IRI or local id, got a {}",
                other.variant_name()
            ))),
        }
    }

    pub fn term(&self) -> &Term {
        &self.0
    }

    pub fn into_term(self) -> Term {
        self.0
    }
}
