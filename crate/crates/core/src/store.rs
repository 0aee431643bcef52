//! The mutable statement set.
//!
//! A [`Store`] enforces three integrity rules on every mutation:
//!
//! - sids are unique and never handed out twice, even after deletion;
//! - every sid referenced from `src`/`value` is present (no dangling refs);
//! - the reference relation is acyclic, which follows from the first two
//!   because an assertion can only reference statements that already exist.
//!
//! Graph membership is an ordinary assertion `sid -inGraph-> g`; the store
//! keeps no separate bookkeeping for it.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::term::{check_label, check_src, GraphId, Iri, Sid, SidGenerator, Statement, Term};
use crate::vocab;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DeletePolicy {
    /// Also delete every assertion that transitively references the statement.
    #[default]
    Cascade,
    /// Refuse when any assertion references the statement.
    Restrict,
}

/// Lookup pattern; `None` is a wildcard.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StatementPattern {
    pub src: Option<Term>,
    pub label: Option<Term>,
    pub value: Option<Term>,
    pub sid: Option<Sid>,
}

impl StatementPattern {
    pub fn any() -> Self {
        Self::default()
    }

    pub fn with_src(mut self, t: Term) -> Self {
        self.src = Some(t);
        self
    }

    pub fn with_label(mut self, t: Term) -> Self {
        self.label = Some(t);
        self
    }

    pub fn with_value(mut self, t: Term) -> Self {
        self.value = Some(t);
        self
    }

    pub fn with_sid(mut self, sid: Sid) -> Self {
        self.sid = Some(sid);
        self
    }

    pub fn matches(&self, st: &Statement) -> bool {
        self.sid.is_none_or(|s| s == st.sid())
            && self.src.as_ref().is_none_or(|t| t == st.src())
            && self.label.as_ref().is_none_or(|t| t == st.label())
            && self.value.as_ref().is_none_or(|t| t == st.value())
    }
}

type Content = (Term, Term, Term);

/// In-memory statement store.
///
/// Rust's borrow rules give the single-writer / many-readers contract for
/// free; wrap the store in a `RwLock` to share it across threads.
#[derive(Clone, Debug, Default)]
pub struct Store {
    statements: BTreeMap<Sid, Statement>,
    by_content: HashMap<Content, BTreeSet<Sid>>,
    by_src: HashMap<Term, BTreeSet<Sid>>,
    referrers: HashMap<Sid, BTreeSet<Sid>>,
    retired: BTreeSet<Sid>,
    sids: SidGenerator,
}

/// Stores compare by their statement sets only.
impl PartialEq for Store {
    fn eq(&self, other: &Self) -> bool {
        self.statements == other.statements
    }
}

impl Eq for Store {}

pub(crate) fn in_graph_label() -> Term {
    Term::Iri(Iri::new(vocab::IN_GRAPH).expect("vocabulary IRI"))
}

impl Store {
    pub fn new() -> Self {
        Self::default()
    }

    /// Store whose fresh sids come from a sequential counter (see
    /// [`SidGenerator::seeded`]).
    pub fn with_seed(seed: u64) -> Self {
        Self::with_generator(SidGenerator::seeded(seed))
    }

    pub fn with_generator(sids: SidGenerator) -> Self {
        Store {
            sids,
            ..Self::default()
        }
    }

    pub fn len(&self) -> usize {
        self.statements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }

    pub fn contains(&self, sid: Sid) -> bool {
        self.statements.contains_key(&sid)
    }

    pub fn get(&self, sid: Sid) -> Option<&Statement> {
        self.statements.get(&sid)
    }

    /// All statements in sid order.
    pub fn iter(&self) -> impl Iterator<Item = &Statement> + '_ {
        self.statements.values()
    }

    pub fn ground_count(&self) -> usize {
        self.iter().filter(|s| s.is_ground()).count()
    }

    /// Sids of the assertions that reference `sid` directly.
    pub fn referrers(&self, sid: Sid) -> impl Iterator<Item = Sid> + '_ {
        self.referrers.get(&sid).into_iter().flatten().copied()
    }

    pub fn is_referenced(&self, sid: Sid) -> bool {
        self.referrers.get(&sid).is_some_and(|r| !r.is_empty())
    }

    /// Sids of statements with exactly this content, ascending.
    pub fn sids_with_content(&self, src: &Term, label: &Term, value: &Term) -> Vec<Sid> {
        // the key is owned, so build it once; lookups are rare enough
        let key = (src.clone(), label.clone(), value.clone());
        self.by_content
            .get(&key)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default()
    }

    pub fn sid_generator(&self) -> &SidGenerator {
        &self.sids
    }

    pub(crate) fn sid_generator_mut(&mut self) -> &mut SidGenerator {
        &mut self.sids
    }

    /// Sids deleted from this store; never reissued.
    pub fn retired_sids(&self) -> impl Iterator<Item = Sid> + '_ {
        self.retired.iter().copied()
    }

    pub fn fresh_sid(&mut self) -> Sid {
        let (statements, retired) = (&self.statements, &self.retired);
        self.sids
            .fresh(|sid| statements.contains_key(&sid) || retired.contains(&sid))
    }

    /// Adds a statement with no sid references. Content-identical ground
    /// statements are never merged: each call yields a new sid.
    pub fn insert_ground(&mut self, src: Term, label: Term, value: Term) -> Result<Sid> {
        if src.is_sid_ref() || value.is_sid_ref() {
            return Err(Error::Position(
                "ground statements may not reference sids; use insert_assertion".into(),
            ));
        }
        self.insert(src, label, value)
    }

    /// Adds a statement about at least one existing statement.
    pub fn insert_assertion(&mut self, src: Term, label: Term, value: Term) -> Result<Sid> {
        if !src.is_sid_ref() && !value.is_sid_ref() {
            return Err(Error::Position(
                "assertions need a sid reference in src or value".into(),
            ));
        }
        self.insert(src, label, value)
    }

    /// Adds a ground statement or an assertion, whichever the terms make it.
    pub fn insert(&mut self, src: Term, label: Term, value: Term) -> Result<Sid> {
        check_src(&src)?;
        check_label(&label)?;
        for t in [&src, &value] {
            if let Term::SidRef(sid) = t {
                if !self.contains(*sid) {
                    return Err(Error::DanglingSid(*sid));
                }
            }
        }
        let sid = self.fresh_sid();
        let st = Statement::new(src, label, value, sid)?;
        self.index(st);
        Ok(sid)
    }

    /// Adds a statement that already carries its sid (loaders, merge).
    ///
    /// Fails with `SidCollision` if the sid is in use and `DanglingSid` if a
    /// referenced sid is absent. Re-adding a retired sid is allowed: the sid
    /// comes from outside and denotes the same statement.
    pub fn insert_statement(&mut self, st: Statement) -> Result<()> {
        if self.contains(st.sid()) {
            return Err(Error::SidCollision(st.sid()));
        }
        if let Some(missing) = st.referenced_sids().find(|s| !self.contains(*s)) {
            return Err(Error::DanglingSid(missing));
        }
        self.sids.observe(st.sid());
        self.retired.remove(&st.sid());
        self.index(st);
        Ok(())
    }

    fn index(&mut self, st: Statement) {
        let sid = st.sid();
        for r in st.referenced_sids() {
            self.referrers.entry(r).or_default().insert(sid);
        }
        let (s, l, v) = st.content();
        self.by_content
            .entry((s.clone(), l.clone(), v.clone()))
            .or_default()
            .insert(sid);
        self.by_src.entry(s.clone()).or_default().insert(sid);
        self.statements.insert(sid, st);
    }

    fn unindex(&mut self, sid: Sid) -> Option<Statement> {
        let st = self.statements.remove(&sid)?;
        for r in st.referenced_sids() {
            if let Some(set) = self.referrers.get_mut(&r) {
                set.remove(&sid);
                if set.is_empty() {
                    self.referrers.remove(&r);
                }
            }
        }
        let (s, l, v) = st.content();
        let key = (s.clone(), l.clone(), v.clone());
        if let Some(set) = self.by_content.get_mut(&key) {
            set.remove(&sid);
            if set.is_empty() {
                self.by_content.remove(&key);
            }
        }
        if let Some(set) = self.by_src.get_mut(s) {
            set.remove(&sid);
            if set.is_empty() {
                self.by_src.remove(s);
            }
        }
        self.referrers.remove(&sid);
        self.retired.insert(sid);
        Some(st)
    }

    /// `sid` plus every assertion transitively referencing it, ascending.
    pub fn dependents(&self, sid: Sid) -> BTreeSet<Sid> {
        let mut seen = BTreeSet::from([sid]);
        let mut stack = vec![sid];
        while let Some(cur) = stack.pop() {
            for r in self.referrers(cur) {
                if seen.insert(r) {
                    stack.push(r);
                }
            }
        }
        seen
    }

    /// All sids with every statement after the statements it references;
    /// ties broken by sid order.
    pub fn topological_order(&self) -> Vec<Sid> {
        let mut pending: HashMap<Sid, usize> = HashMap::with_capacity(self.len());
        let mut ready = BTreeSet::new();
        for st in self.iter() {
            let n = st.referenced_sids().count();
            if n == 0 {
                ready.insert(st.sid());
            } else {
                pending.insert(st.sid(), n);
            }
        }
        let mut order = Vec::with_capacity(self.len());
        while let Some(sid) = ready.pop_first() {
            order.push(sid);
            for r in self.referrers(sid) {
                let edges = self.statements[&r]
                    .referenced_sids()
                    .filter(|x| *x == sid)
                    .count();
                let n = pending.get_mut(&r).expect("referrer is pending");
                *n -= edges;
                if *n == 0 {
                    pending.remove(&r);
                    ready.insert(r);
                }
            }
        }
        order
    }

    /// Deletes a statement and returns how many statements were removed.
    pub fn delete_statement(&mut self, sid: Sid, policy: DeletePolicy) -> Result<usize> {
        if !self.contains(sid) {
            return Err(Error::NotFound(format!("statement {sid}")));
        }
        match policy {
            DeletePolicy::Restrict => {
                let referrers = self.referrers(sid).count();
                if referrers > 0 {
                    return Err(Error::ReferencedSid { sid, referrers });
                }
                self.unindex(sid);
                Ok(1)
            }
            DeletePolicy::Cascade => {
                let doomed = self.dependents(sid);
                for d in &doomed {
                    self.unindex(*d);
                }
                Ok(doomed.len())
            }
        }
    }

    /// Statements matching every non-wildcard field, in sid order.
    pub fn find(&self, pattern: &StatementPattern) -> Vec<&Statement> {
        if let Some(sid) = pattern.sid {
            return self
                .get(sid)
                .filter(|st| pattern.matches(st))
                .into_iter()
                .collect();
        }
        if let (Some(s), Some(l), Some(v)) = (&pattern.src, &pattern.label, &pattern.value) {
            return self
                .sids_with_content(s, l, v)
                .into_iter()
                .filter_map(|sid| self.get(sid))
                .collect();
        }
        if let Some(src) = &pattern.src {
            return self
                .by_src
                .get(src)
                .into_iter()
                .flatten()
                .filter_map(|sid| self.get(*sid))
                .filter(|st| pattern.matches(st))
                .collect();
        }
        self.iter().filter(|st| pattern.matches(st)).collect()
    }

    /// Places statement `sid` in graph `g`; returns the membership
    /// assertion's own sid. Idempotent per `(sid, g)`.
    pub fn set_graph_membership(&mut self, sid: Sid, g: &GraphId) -> Result<Sid> {
        if !self.contains(sid) {
            return Err(Error::NotFound(format!("statement {sid}")));
        }
        if let Some(existing) = self.membership(sid, g) {
            return Ok(existing);
        }
        self.insert(Term::SidRef(sid), in_graph_label(), g.term().clone())
    }

    /// Least sid of an existing `sid -inGraph-> g` assertion.
    pub fn membership(&self, sid: Sid, g: &GraphId) -> Option<Sid> {
        self.referrers(sid).find(|r| {
            self.get(*r).is_some_and(|st| {
                st.is_membership() && st.src() == &Term::SidRef(sid) && st.value() == g.term()
            })
        })
    }

    /// Graphs `sid` is a member of, in canonical order.
    pub fn graphs_of(&self, sid: Sid) -> BTreeSet<GraphId> {
        self.referrers(sid)
            .filter_map(|r| self.get(r))
            .filter(|st| st.is_membership() && st.src() == &Term::SidRef(sid))
            .filter_map(|st| GraphId::new(st.value().clone()).ok())
            .collect()
    }

    /// Distinct graph ids used by membership assertions, in canonical order.
    pub fn list_graphs(&self) -> Vec<GraphId> {
        self.iter()
            .filter(|st| st.is_membership())
            .filter_map(|st| GraphId::new(st.value().clone()).ok())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Replaces statement `sid` by one with new terms but the same sid.
    /// Used by merge when references are redirected; keeps all indexes exact.
    pub(crate) fn replace_terms(
        &mut self,
        sid: Sid,
        src: Term,
        label: Term,
        value: Term,
    ) -> Result<()> {
        let old = self
            .get(sid)
            .ok_or_else(|| Error::NotFound(format!("statement {sid}")))?;
        let st = old.with_terms(src, label, value)?;
        if let Some(missing) = st
            .referenced_sids()
            .find(|s| *s != sid && !self.contains(*s))
        {
            return Err(Error::DanglingSid(missing));
        }
        let referrers = self.referrers.get(&sid).cloned();
        self.unindex(sid);
        self.retired.remove(&sid);
        self.index(st);
        if let Some(r) = referrers {
            self.referrers.entry(sid).or_default().extend(r);
        }
        Ok(())
    }

    /// Checks every integrity rule; returns a description of the first
    /// violation. Intended for tests and debugging.
    pub fn check_integrity(&self) -> std::result::Result<(), String> {
        for (sid, st) in &self.statements {
            if st.sid() != *sid {
                return Err(format!("statement keyed by {sid} carries {}", st.sid()));
            }
            for r in st.referenced_sids() {
                if !self.contains(r) {
                    return Err(format!("{sid} references missing {r}"));
                }
                if !self.referrers.get(&r).is_some_and(|set| set.contains(sid)) {
                    return Err(format!("reverse index lacks {r} <- {sid}"));
                }
            }
            if matches!(
                st.label(),
                Term::SidRef(_) | Term::Literal(_) | Term::BlankNode(_)
            ) || st.src().is_literal()
            {
                return Err(format!("{sid} violates position rules"));
            }
            if self.retired.contains(sid) {
                return Err(format!("{sid} is both live and retired"));
            }
        }
        let indexed: usize = self.by_content.values().map(BTreeSet::len).sum();
        if indexed != self.statements.len() {
            return Err("content index out of sync".into());
        }
        // Kahn's algorithm over the reference relation
        let mut pending: HashMap<Sid, usize> = self
            .statements
            .values()
            .map(|st| {
                (
                    st.sid(),
                    st.referenced_sids().filter(|r| *r != st.sid()).count(),
                )
            })
            .collect();
        if self
            .statements
            .values()
            .any(|st| st.referenced_sids().any(|r| r == st.sid()))
        {
            return Err("self-referencing statement".into());
        }
        let mut ready: Vec<Sid> = pending
            .iter()
            .filter(|(_, n)| **n == 0)
            .map(|(s, _)| *s)
            .collect();
        let mut visited = 0;
        while let Some(sid) = ready.pop() {
            visited += 1;
            for r in self.referrers(sid) {
                let st = &self.statements[&r];
                let edges = st.referenced_sids().filter(|x| *x == sid).count();
                let n = pending.get_mut(&r).expect("referrer is live");
                *n -= edges;
                if *n == 0 {
                    ready.push(r);
                }
            }
        }
        if visited != self.statements.len() {
            return Err("reference cycle".into());
        }
        Ok(())
    }
}
