//! Merging two stores under identifier-alignment, blank node and edge
//! identity rules.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::LazyLock;

use percent_encoding::{utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};
use regex::Regex;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::io::{fresh_label, parse_term, store_blank_labels};
use crate::store::{DeletePolicy, Store};
use crate::term::{BlankNode, Iri, LocalId, Sid, Statement, Term};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Deserialize)]
pub enum BlankNodePolicy {
    /// Standardize apart: blank nodes of the second store get labels unused
    /// by the first.
    #[default]
    RenameApart,
    /// Equal labels denote the same blank node.
    IdentifyByLabel,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Deserialize)]
pub enum EdgeIdentity {
    #[default]
    Distinct,
    /// Content-identical ground statements become one, the least sid.
    CollapseIdenticalContent,
    /// As above, but only when everything said about them is identical too.
    CollapseIdenticalContentAndProperties,
}

/// R2RML-style rewrite of local ids, e.g. `{code}` to
/// `http://sws.geonames.org/country/{code}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pattern: String,
    produce: String,
    match_parts: (String, String),
    produce_parts: (String, String),
}

static SLOT: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\{([A-Za-z_][A-Za-z0-9_]*)\}").unwrap());

/// Everything but RFC 3986 unreserved characters.
const SLOT_ENCODE: &AsciiSet = &NON_ALPHANUMERIC
    .remove(b'-')
    .remove(b'.')
    .remove(b'_')
    .remove(b'~');

fn split_slot(text: &str) -> Result<(String, String, String)> {
    let slots: Vec<_> = SLOT.captures_iter(text).collect();
    let braces = text.matches(['{', '}']).count();
    if slots.len() != 1 || braces != 2 {
        return Err(Error::BadTemplate(format!(
            "{text:?} must contain exactly one {{slot}}"
        )));
    }
    let m = slots[0].get(0).expect("whole match");
    Ok((
        slots[0][1].to_owned(),
        text[..m.start()].to_owned(),
        text[m.end()..].to_owned(),
    ))
}

impl Template {
    pub fn new(pattern: impl Into<String>, produce: impl Into<String>) -> Result<Self> {
        let (pattern, produce) = (pattern.into(), produce.into());
        let (slot_a, mp, ms) = split_slot(&pattern)?;
        let (slot_b, pp, ps) = split_slot(&produce)?;
        if slot_a != slot_b {
            return Err(Error::BadTemplate(format!(
                "slot {{{slot_a}}} in {pattern:?} but {{{slot_b}}} in {produce:?}"
            )));
        }
        Iri::new(format!("{pp}x{ps}"))
            .map_err(|e| Error::BadTemplate(format!("{produce:?} does not produce IRIs: {e}")))?;
        Ok(Template {
            pattern,
            produce,
            match_parts: (mp, ms),
            produce_parts: (pp, ps),
        })
    }

    pub fn pattern(&self) -> &str {
        &self.pattern
    }

    pub fn produce(&self) -> &str {
        &self.produce
    }

    /// `None` if `id` does not match the pattern.
    pub fn apply(&self, id: &LocalId) -> Option<Result<Iri>> {
        let (prefix, suffix) = &self.match_parts;
        let text = id.as_str();
        if text.len() <= prefix.len() + suffix.len() {
            return None;
        }
        let slot = text
            .strip_prefix(prefix.as_str())?
            .strip_suffix(suffix.as_str())?;
        let (pp, ps) = &self.produce_parts;
        let iri = format!("{pp}{}{ps}", utf8_percent_encode(slot, SLOT_ENCODE));
        Some(Iri::new(iri).map_err(|e| Error::BadTemplate(e.to_string())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MappingRule {
    Pair { from: Term, to: Term },
    Template(Template),
}

impl MappingRule {
    pub fn pair(from: Term, to: Term) -> Result<Self> {
        if from.is_sid_ref() || to.is_sid_ref() {
            return Err(Error::InvalidTerm(
                "alignment pairs cannot mention sids".into(),
            ));
        }
        Ok(MappingRule::Pair { from, to })
    }

    pub fn template(pattern: &str, produce: &str) -> Result<Self> {
        Template::new(pattern, produce).map(MappingRule::Template)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MergeRules {
    /// Tried in order; the first match rewrites the term.
    pub id_mappings: Vec<MappingRule>,
    pub blank_node_policy: BlankNodePolicy,
    pub edge_identity: EdgeIdentity,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RulesFile {
    #[serde(default)]
    id_mappings: Vec<RuleEntry>,
    #[serde(default)]
    blank_node_policy: BlankNodePolicy,
    #[serde(default)]
    edge_identity: EdgeIdentity,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum RuleEntry {
    Pair(String, String),
    Template {
        #[serde(rename = "match")]
        pattern: String,
        produce: String,
    },
}

impl MergeRules {
    /// Reads the JSON rules format:
    ///
    /// ```json
    /// {"id_mappings": [{"pair": ["local:\"bob\"", "<http://ex.org/Bob>"]},
    ///                  {"template": {"match": "{code}", "produce": "http://sws.geonames.org/country/{code}"}}],
    ///  "blank_node_policy": "RenameApart",
    ///  "edge_identity": "Distinct"}
    /// ```
    pub fn from_json(text: &str) -> Result<Self> {
        let file: RulesFile = serde_json::from_str(text)
            .map_err(|e| Error::syntax(e.line(), Some(e.column()), e.to_string()))?;
        let id_mappings = file
            .id_mappings
            .into_iter()
            .map(|r| match r {
                RuleEntry::Pair(from, to) => {
                    MappingRule::pair(parse_term(&from)?, parse_term(&to)?)
                }
                RuleEntry::Template { pattern, produce } => {
                    MappingRule::template(&pattern, &produce)
                }
            })
            .collect::<Result<_>>()?;
        Ok(MergeRules {
            id_mappings,
            blank_node_policy: file.blank_node_policy,
            edge_identity: file.edge_identity,
        })
    }
}

/// Rewrites `t` by the first matching rule; unmatched terms pass through.
pub fn apply_alignment(t: &Term, rules: &MergeRules) -> Result<Term> {
    for rule in &rules.id_mappings {
        match rule {
            MappingRule::Pair { from, to } if from == t => return Ok(to.clone()),
            MappingRule::Template(tpl) => {
                if let Term::LocalId(id) = t {
                    if let Some(iri) = tpl.apply(id) {
                        return iri.map(Term::Iri);
                    }
                }
            }
            MappingRule::Pair { .. } => {}
        }
    }
    Ok(t.clone())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MergeReport {
    pub statements_in: (usize, usize),
    pub statements_out: usize,
    /// Distinct terms of the second store rewritten by an alignment rule.
    pub identifiers_aligned: usize,
    pub blank_nodes_renamed: usize,
    /// Ground statements folded into another.
    pub edges_collapsed: usize,
}

/// `key=value` lines.
impl fmt::Display for MergeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "statements_in_a={}", self.statements_in.0)?;
        writeln!(f, "statements_in_b={}", self.statements_in.1)?;
        writeln!(f, "statements_out={}", self.statements_out)?;
        writeln!(f, "identifiers_aligned={}", self.identifiers_aligned)?;
        writeln!(f, "blank_nodes_renamed={}", self.blank_nodes_renamed)?;
        writeln!(f, "edges_collapsed={}", self.edges_collapsed)
    }
}

/// Union of `a` and `b`, sids preserved.
///
/// Only `b` is rewritten: alignment rules apply to its terms and, under
/// [`BlankNodePolicy::RenameApart`], its blank nodes move to labels unused
/// in `a`. A statement of `b` whose sid is in `a` with the same content is
/// the same statement and is kept once; its blank nodes keep their labels.
/// The same sid with different content is a `SidCollision`. Edge identity
/// rules then run over the union.
pub fn merge(a: &Store, b: &Store, rules: &MergeRules) -> Result<(Store, MergeReport)> {
    let mut report = MergeReport {
        statements_in: (a.len(), b.len()),
        ..MergeReport::default()
    };

    let is_copy = |st: &Statement| a.get(st.sid()).is_some_and(|x| x.content() == st.content());

    let mut aligned: HashMap<Term, Term> = HashMap::new();
    for st in b.iter().filter(|st| !is_copy(st)) {
        for t in [st.src(), st.label(), st.value()] {
            if !aligned.contains_key(t) {
                aligned.insert(t.clone(), apply_alignment(t, rules)?);
            }
        }
    }
    report.identifiers_aligned = aligned.iter().filter(|(k, v)| k != v).count();
    let align = |t: &Term| aligned.get(t).cloned().unwrap_or_else(|| t.clone());

    let mut blank_map: BTreeMap<String, BlankNode> = BTreeMap::new();
    if rules.blank_node_policy == BlankNodePolicy::RenameApart {
        let mut anchored = BTreeSet::new();
        let mut incoming = BTreeSet::new();
        for st in b.iter() {
            let copy = is_copy(st);
            for t in [st.src(), st.value()] {
                let t = if copy { t.clone() } else { align(t) };
                if let Term::BlankNode(x) = t {
                    if copy {
                        anchored.insert(x.as_str().to_owned());
                    } else {
                        incoming.insert(x.as_str().to_owned());
                    }
                }
            }
        }
        let a_labels = store_blank_labels(a);
        let mut taken: BTreeSet<String> = a_labels.iter().chain(&incoming).cloned().collect();
        for x in incoming.difference(&anchored) {
            if a_labels.contains(x) {
                let fresh = fresh_label(x, &taken);
                taken.insert(fresh.clone());
                blank_map.insert(
                    x.clone(),
                    BlankNode::new(fresh).expect("suffixed label is valid"),
                );
            }
        }
        report.blank_nodes_renamed = blank_map.len();
    }
    let rename = |t: Term| match t {
        Term::BlankNode(x) => match blank_map.get(x.as_str()) {
            Some(y) => Term::BlankNode(y.clone()),
            None => Term::BlankNode(x),
        },
        other => other,
    };

    let mut out = a.clone();
    for sid in b.topological_order() {
        let st = b.get(sid).expect("live sid");
        if is_copy(st) {
            continue;
        }
        let st = st.with_terms(
            rename(align(st.src())),
            rename(align(st.label())),
            rename(align(st.value())),
        )?;
        match out.get(sid) {
            Some(existing) if existing.content() == st.content() => {}
            Some(_) => return Err(Error::SidCollision(sid)),
            None => out.insert_statement(st)?,
        }
    }

    report.edges_collapsed = match rules.edge_identity {
        EdgeIdentity::Distinct => 0,
        EdgeIdentity::CollapseIdenticalContent => collapse_identical_content(&mut out)?,
        EdgeIdentity::CollapseIdenticalContentAndProperties => {
            collapse_identical_subtrees(&mut out)?
        }
    };
    report.statements_out = out.len();
    Ok((out, report))
}

/// Groups of two or more ground statements keyed by `key`, each sorted.
fn ground_groups<K: Ord>(store: &Store, mut key: impl FnMut(&Statement) -> K) -> Vec<Vec<Sid>> {
    let mut groups: BTreeMap<K, Vec<Sid>> = BTreeMap::new();
    for st in store.iter().filter(|st| st.is_ground()) {
        groups.entry(key(st)).or_default().push(st.sid());
    }
    groups.into_values().filter(|g| g.len() > 1).collect()
}

fn collapse_identical_content(store: &mut Store) -> Result<usize> {
    let groups = ground_groups(store, |st| {
        let (s, l, v) = st.content();
        (s.clone(), l.clone(), v.clone())
    });
    let mut collapsed = 0;
    for group in groups {
        let survivor = group[0];
        for loser in &group[1..] {
            let referrers: Vec<Sid> = store.referrers(*loser).collect();
            for r in referrers {
                let st = store.get(r).expect("live referrer");
                let redirect = |t: &Term| match t {
                    Term::SidRef(s) if s == loser => Term::SidRef(survivor),
                    other => other.clone(),
                };
                let (src, label, value) =
                    (redirect(st.src()), st.label().clone(), redirect(st.value()));
                store.replace_terms(r, src, label, value)?;
            }
            store.delete_statement(*loser, DeletePolicy::Restrict)?;
            collapsed += 1;
        }
    }
    Ok(collapsed)
}

/// Canonical text for a statement's content with sid references replaced
/// by the content they point to.
fn shape(store: &Store, sid: Sid, memo: &mut HashMap<Sid, String>) -> String {
    if let Some(s) = memo.get(&sid) {
        return s.clone();
    }
    let st = store.get(sid).expect("live sid");
    let src = term_shape(store, st.src(), memo);
    let value = term_shape(store, st.value(), memo);
    let out = format!("<< {src} {} {value} >>", st.label());
    memo.insert(sid, out.clone());
    out
}

fn term_shape(store: &Store, t: &Term, memo: &mut HashMap<Sid, String>) -> String {
    match t {
        Term::SidRef(s) => shape(store, *s, memo),
        other => other.to_string(),
    }
}

/// Everything said about `sid`, recursively, with sids abstracted away.
fn signature(
    store: &Store,
    sid: Sid,
    shapes: &mut HashMap<Sid, String>,
    memo: &mut HashMap<Sid, String>,
) -> String {
    if let Some(s) = memo.get(&sid) {
        return s.clone();
    }
    let me = Term::SidRef(sid);
    let mut entries = Vec::new();
    for r in store.referrers(sid) {
        let st = store.get(r).expect("live referrer");
        let other = match (st.src() == &me, st.value() == &me) {
            (true, true) => "@both".to_owned(),
            (true, false) => format!("@src {}", term_shape(store, st.value(), shapes)),
            (false, _) => format!("@value {}", term_shape(store, st.src(), shapes)),
        };
        let nested = signature(store, r, shapes, memo);
        entries.push(format!("{} {other} {nested}", st.label()));
    }
    entries.sort();
    let out = format!("[{}]", entries.join(", "));
    memo.insert(sid, out.clone());
    out
}

fn collapse_identical_subtrees(store: &mut Store) -> Result<usize> {
    let mut shapes = HashMap::new();
    let mut sigs = HashMap::new();
    let groups = ground_groups(store, |st| {
        let (s, l, v) = st.content();
        (
            (s.clone(), l.clone(), v.clone()),
            signature(store, st.sid(), &mut shapes, &mut sigs),
        )
    });
    let mut collapsed = 0;
    for group in groups {
        // the survivor already carries an identical copy of everything below each loser
        for loser in &group[1..] {
            store.delete_statement(*loser, DeletePolicy::Cascade)?;
            collapsed += 1;
        }
    }
    Ok(collapsed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datatypes::Literal;

    fn l(s: &str) -> Term {
        Term::local(s).unwrap()
    }

    fn multi_edge(seed: u64) -> Store {
        let mut s = Store::with_seed(seed);
        let e1 = s.insert_ground(l("Alice"), l("knows"), l("Bob")).unwrap();
        let e2 = s.insert_ground(l("Alice"), l("knows"), l("Bob")).unwrap();
        s.insert_assertion(e1.into(), l("statedBy"), l("NYTimes"))
            .unwrap();
        s.insert_assertion(e1.into(), l("since"), Literal::integer(2020).into())
            .unwrap();
        s.insert_assertion(e2.into(), l("statedBy"), l("TheGuardian"))
            .unwrap();
        s.insert_assertion(e2.into(), l("since"), Literal::integer(2021).into())
            .unwrap();
        s
    }

    #[test]
    fn template_examples() {
        let rules = MergeRules {
            id_mappings: vec![MappingRule::template(
                "{code}",
                "http://sws.geonames.org/country/{code}",
            )
            .unwrap()],
            ..MergeRules::default()
        };
        assert_eq!(
            apply_alignment(&l("DE"), &rules).unwrap(),
            Term::iri("http://sws.geonames.org/country/DE").unwrap()
        );
        let x = Term::iri("http://ex.org/x").unwrap();
        assert_eq!(apply_alignment(&x, &rules).unwrap(), x);
        assert_eq!(
            apply_alignment(&l("a/b"), &rules).unwrap(),
            Term::iri("http://sws.geonames.org/country/a%2Fb").unwrap()
        );
    }

    #[test]
    fn pair_rule() {
        let bob = Term::iri("http://ex.org/Bob").unwrap();
        let rules = MergeRules {
            id_mappings: vec![MappingRule::pair(l("bob"), bob.clone()).unwrap()],
            ..MergeRules::default()
        };
        assert_eq!(apply_alignment(&l("bob"), &rules).unwrap(), bob);
    }

    #[test]
    fn bad_templates() {
        assert!(matches!(
            Template::new("{a}-{b}", "http://x/{a}"),
            Err(Error::BadTemplate(_))
        ));
        assert!(matches!(
            Template::new("{a}", "http://x/{b}"),
            Err(Error::BadTemplate(_))
        ));
        assert!(matches!(
            Template::new("{a}", "no scheme {a}"),
            Err(Error::BadTemplate(_))
        ));
        assert!(matches!(
            Template::new("code", "http://x/{code}"),
            Err(Error::BadTemplate(_))
        ));
    }

    #[test]
    fn rules_file() {
        let json = r#"{"id_mappings":[{"pair":["local:\"bob\"","<http://ex.org/Bob>"]},
            {"template":{"match":"c/{code}","produce":"http://ex.org/{code}"}}],
            "blank_node_policy":"IdentifyByLabel","edge_identity":"CollapseIdenticalContent"}"#;
        let rules = MergeRules::from_json(json).unwrap();
        assert_eq!(rules.id_mappings.len(), 2);
        assert_eq!(rules.blank_node_policy, BlankNodePolicy::IdentifyByLabel);
        assert_eq!(
            apply_alignment(&l("c/DE"), &rules).unwrap(),
            Term::iri("http://ex.org/DE").unwrap()
        );
        assert_eq!(MergeRules::from_json("{}").unwrap(), MergeRules::default());
        let two_slots =
            r#"{"id_mappings":[{"template":{"match":"{a}{b}","produce":"http://x/{a}"}}]}"#;
        assert!(matches!(
            MergeRules::from_json(two_slots),
            Err(Error::BadTemplate(_))
        ));
    }

    #[test]
    fn self_merge_is_identity() {
        let a = multi_edge(0);
        let (m, report) = merge(&a, &a, &MergeRules::default()).unwrap();
        assert_eq!(m, a);
        assert_eq!(report.edges_collapsed, 0);
    }

    #[test]
    fn blank_nodes_renamed_apart() {
        let mut a = Store::with_seed(1);
        a.insert_ground(Term::blank("b1").unwrap(), l("p"), l("x"))
            .unwrap();
        let mut b = Store::with_seed(2);
        b.insert_ground(Term::blank("b1").unwrap(), l("p"), l("y"))
            .unwrap();
        b.insert_ground(Term::blank("b1").unwrap(), l("q"), l("z"))
            .unwrap();
        let (m, report) = merge(&a, &b, &MergeRules::default()).unwrap();
        assert_eq!(store_blank_labels(&m).len(), 2);
        assert_eq!(report.blank_nodes_renamed, 1);

        let rules = MergeRules {
            blank_node_policy: BlankNodePolicy::IdentifyByLabel,
            ..MergeRules::default()
        };
        let (m, _) = merge(&a, &b, &rules).unwrap();
        assert_eq!(store_blank_labels(&m).len(), 1);
    }

    #[test]
    fn collapse_multi_edge() {
        let rules = MergeRules {
            edge_identity: EdgeIdentity::CollapseIdenticalContent,
            ..MergeRules::default()
        };
        let (m, report) = merge(&multi_edge(0), &Store::new(), &rules).unwrap();
        assert_eq!(m.len(), 5);
        assert_eq!(m.ground_count(), 1);
        assert_eq!(report.edges_collapsed, 1);
        let survivor = m.iter().find(|s| s.is_ground()).unwrap().sid();
        assert_eq!(m.referrers(survivor).count(), 4);
        m.check_integrity().unwrap();
    }

    #[test]
    fn collapse_with_properties_needs_equal_annotations() {
        let rules = MergeRules {
            edge_identity: EdgeIdentity::CollapseIdenticalContentAndProperties,
            ..MergeRules::default()
        };
        let (m, report) = merge(&multi_edge(0), &Store::new(), &rules).unwrap();
        assert_eq!((m.len(), report.edges_collapsed), (6, 0));

        let mut s = Store::with_seed(0);
        for _ in 0..2 {
            let e = s.insert_ground(l("a"), l("p"), l("b")).unwrap();
            let p = s
                .insert_assertion(e.into(), l("since"), Literal::integer(1).into())
                .unwrap();
            s.insert_assertion(p.into(), l("source"), l("x")).unwrap();
        }
        let (m, report) = merge(&s, &Store::new(), &rules).unwrap();
        assert_eq!((m.len(), report.edges_collapsed), (3, 1));
        m.check_integrity().unwrap();
    }

    #[test]
    fn sid_collision() {
        let mut a = Store::with_seed(0);
        a.insert_ground(l("a"), l("p"), l("b")).unwrap();
        let mut b = Store::with_seed(0);
        b.insert_ground(l("a"), l("p"), l("c")).unwrap();
        assert!(matches!(
            merge(&a, &b, &MergeRules::default()),
            Err(Error::SidCollision(_))
        ));
    }
}
