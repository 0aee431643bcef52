//! Property graphs as JSON lines.
//!
//! ```text
//! {"type":"vertex","id":"Alice","labels":["Person"],"properties":{"name":"Alice"}}
//! {"type":"edge","id":"e1","label":"knows","from":"Alice","to":"Bob","properties":{"since":2020}}
//! ```
//!
//! A property value is a scalar, `{"value": …, "meta": {…}}` for a value
//! with meta-properties (or a list, as `{"value": [1, 2]}`), or an array of
//! those for a multi-valued property.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

use crate::datatypes::{coerce_lpg_value, Literal, LpgScalar, LpgValue};
use crate::error::{Error, Result};
use crate::store::Store;
use crate::term::{LocalId, Sid, Statement, Term};
use crate::views::{LpgGraph, Namespaces, VertexProperty};
use crate::vocab;

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum Line {
    Vertex {
        id: String,
        #[serde(default)]
        labels: Vec<String>,
        #[serde(default)]
        properties: Map<String, Value>,
    },
    Edge {
        id: String,
        label: String,
        from: String,
        to: String,
        #[serde(default)]
        properties: Map<String, Value>,
    },
}

struct PropertyIn {
    key: String,
    value: Literal,
    meta: Vec<(String, Literal)>,
}

struct VertexIn {
    id: String,
    labels: Vec<String>,
    properties: Vec<PropertyIn>,
}

struct EdgeIn {
    id: String,
    label: String,
    from: String,
    to: String,
    properties: Vec<(String, Literal)>,
}

pub fn parse(text: &str) -> Result<Store> {
    let mut store = Store::new();
    load_into(text, &mut store, &Namespaces::default())?;
    Ok(store)
}

/// Adds the graph to `store`.
///
/// Names become terms through [`Namespaces::name_to_term`]. Labels become
/// `label` statements; a vertex with no labels, properties or edges gets
/// the default label so that it exists at all. An edge whose id is a sid
/// not yet in use keeps it as its statement id. Returns the number of
/// statements added.
pub fn load_into(text: &str, store: &mut Store, ns: &Namespaces) -> Result<usize> {
    let mut vertices: Vec<VertexIn> = Vec::new();
    let mut edges: Vec<EdgeIn> = Vec::new();
    let mut vertex_ids = HashMap::new();
    let mut edge_ids = HashMap::new();
    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let line: Line = serde_json::from_str(raw)
            .map_err(|e| Error::syntax(line_no, Some(e.column()), e.to_string()))?;
        let bad = |msg: String| Error::syntax(line_no, None, msg);
        match line {
            Line::Vertex {
                id,
                labels,
                properties,
            } => {
                if vertex_ids.insert(id.clone(), line_no).is_some() {
                    return Err(bad(format!("duplicate vertex id {id:?}")));
                }
                let mut props = Vec::new();
                for (key, v) in properties {
                    for item in multi(v) {
                        let (value, meta) = property_value(item, true)
                            .map_err(|m| bad(format!("property {key:?}: {m}")))?;
                        let meta = meta
                            .into_iter()
                            .map(|(k, v)| coerce_lpg_value(&v).map(|l| (k, l)))
                            .collect::<Result<_>>()?;
                        props.push(PropertyIn {
                            key: key.clone(),
                            value: coerce_lpg_value(&value)?,
                            meta,
                        });
                    }
                }
                vertices.push(VertexIn {
                    id,
                    labels,
                    properties: props,
                });
            }
            Line::Edge {
                id,
                label,
                from,
                to,
                properties,
            } => {
                if edge_ids.insert(id.clone(), line_no).is_some() {
                    return Err(bad(format!("duplicate edge id {id:?}")));
                }
                let mut props = Vec::new();
                for (key, v) in properties {
                    for item in multi(v) {
                        let (value, meta) = property_value(item, false)
                            .map_err(|m| bad(format!("property {key:?}: {m}")))?;
                        debug_assert!(meta.is_empty());
                        props.push((key.clone(), coerce_lpg_value(&value)?));
                    }
                }
                edges.push(EdgeIn {
                    id,
                    label,
                    from,
                    to,
                    properties: props,
                });
            }
        }
    }
    for e in &edges {
        for end in [&e.from, &e.to] {
            if !vertex_ids.contains_key(end) {
                return Err(Error::UnknownEndpoint(end.clone()));
            }
        }
    }

    // resolve every name before touching the store
    let mut names: HashMap<String, Term> = HashMap::new();
    let mut term = |name: &str, line: usize| -> Result<Term> {
        if let Some(t) = names.get(name) {
            return Ok(t.clone());
        }
        let t = ns
            .name_to_term(name)
            .map_err(|e| Error::syntax(line, None, format!("{name:?}: {e}")))?;
        names.insert(name.to_owned(), t.clone());
        Ok(t)
    };
    let label_key = Term::LocalId(LocalId::new(vocab::LPG_LABEL).expect("valid local id"));
    let mut ground: Vec<Pending> = Vec::new();
    let touched: BTreeSet<&str> = edges
        .iter()
        .flat_map(|e| [e.from.as_str(), e.to.as_str()])
        .collect();
    for v in &vertices {
        let line = vertex_ids[&v.id];
        let node = term(&v.id, line)?;
        let mut labels = v.labels.clone();
        if labels.is_empty() && v.properties.is_empty() && !touched.contains(v.id.as_str()) {
            labels.push(vocab::DEFAULT_VERTEX_LABEL.to_owned());
        }
        for l in labels {
            ground.push((
                node.clone(),
                label_key.clone(),
                Literal::string(l).into(),
                Vec::new(),
            ));
        }
        for p in &v.properties {
            let meta = p
                .meta
                .iter()
                .map(|(k, l)| Ok((term(k, line)?, l.clone())))
                .collect::<Result<_>>()?;
            ground.push((
                node.clone(),
                term(&p.key, line)?,
                p.value.clone().into(),
                meta,
            ));
        }
    }
    let mut planned_edges = Vec::new();
    let mut reserved = BTreeSet::new();
    for e in &edges {
        let line = edge_ids[&e.id];
        let sid = e.id.parse::<Sid>().ok().filter(|s| {
            !store.contains(*s) && !store.retired_sids().any(|r| r == *s) && reserved.insert(*s)
        });
        let props = e
            .properties
            .iter()
            .map(|(k, l)| Ok((term(k, line)?, l.clone())))
            .collect::<Result<Vec<_>>>()?;
        planned_edges.push((
            sid,
            term(&e.from, line)?,
            term(&e.label, line)?,
            term(&e.to, line)?,
            props,
        ));
    }

    let before = store.len();
    for sid in &reserved {
        store.sid_generator_mut().observe(*sid);
    }
    for (src, label, value, meta) in ground {
        let sid = store.insert_ground(src, label, value)?;
        for (k, l) in meta {
            store.insert_assertion(Term::SidRef(sid), k, l.into())?;
        }
    }
    for (sid, from, label, to, props) in planned_edges {
        let sid = match sid {
            Some(sid) if !store.contains(sid) => {
                store.insert_statement(Statement::new(from, label, to, sid)?)?;
                sid
            }
            _ => store.insert_ground(from, label, to)?,
        };
        for (k, l) in props {
            store.insert_assertion(Term::SidRef(sid), k, l.into())?;
        }
    }
    Ok(store.len() - before)
}

/// A top-level array lists the values of a multi-valued property.
fn multi(v: Value) -> Vec<Value> {
    match v {
        Value::Array(items) => items,
        other => vec![other],
    }
}

type Meta = Vec<(String, LpgValue)>;

/// A ground statement and the annotations to hang on it.
type Pending = (Term, Term, Term, Vec<(Term, Literal)>);

fn property_value(v: Value, allow_meta: bool) -> std::result::Result<(LpgValue, Meta), String> {
    match v {
        Value::Object(mut obj) => {
            let value = obj
                .remove("value")
                .ok_or("object value needs a \"value\" field")?;
            let mut meta = Vec::new();
            if let Some(m) = obj.remove("meta") {
                if !allow_meta {
                    return Err("meta-properties are only allowed on vertex properties".into());
                }
                let Value::Object(m) = m else {
                    return Err("\"meta\" must be an object".into());
                };
                for (k, mv) in m {
                    for item in multi(mv) {
                        let (value, nested) = property_value(item, false)?;
                        debug_assert!(nested.is_empty());
                        meta.push((k.clone(), value));
                    }
                }
            }
            if let Some(extra) = obj.keys().next() {
                return Err(format!("unexpected field {extra:?}"));
            }
            let value = match value {
                Value::Array(items) => LpgValue::List(
                    items
                        .into_iter()
                        .map(scalar)
                        .collect::<std::result::Result<_, _>>()?,
                ),
                other => single(other)?,
            };
            Ok((value, meta))
        }
        other => Ok((single(other)?, Vec::new())),
    }
}

fn single(v: Value) -> std::result::Result<LpgValue, String> {
    Ok(match scalar(v)? {
        LpgScalar::String(s) => LpgValue::String(s),
        LpgScalar::Integer(n) => LpgValue::Integer(n),
        LpgScalar::Float(f) => LpgValue::Float(f),
        LpgScalar::Boolean(b) => LpgValue::Boolean(b),
    })
}

fn scalar(v: Value) -> std::result::Result<LpgScalar, String> {
    match v {
        Value::String(s) => Ok(LpgScalar::String(s)),
        Value::Bool(b) => Ok(LpgScalar::Boolean(b)),
        Value::Number(n) => number(&n),
        Value::Null => Err("null is not a property value".into()),
        Value::Array(_) => Err("nested arrays are not property values".into()),
        Value::Object(_) => Err("objects are not allowed here".into()),
    }
}

fn number(n: &Number) -> std::result::Result<LpgScalar, String> {
    if let Some(i) = n.as_i64() {
        Ok(LpgScalar::Integer(i))
    } else if n.is_u64() {
        Err(format!("integer {n} is out of range"))
    } else {
        n.as_f64()
            .map(LpgScalar::Float)
            .ok_or_else(|| format!("unsupported number {n}"))
    }
}

#[derive(Serialize)]
struct VertexOut<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    id: &'a str,
    labels: Vec<&'a str>,
    properties: BTreeMap<&'a str, Value>,
}

#[derive(Serialize)]
struct EdgeOut<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    id: String,
    label: &'a str,
    from: &'a str,
    to: &'a str,
    properties: BTreeMap<&'a str, Value>,
}

/// One line per vertex (by id) then one per edge (by sid). A vertex whose
/// only label is the default one is written with no labels.
pub fn serialize(g: &LpgGraph) -> String {
    let mut out = String::new();
    for (id, v) in &g.vertices {
        let mut labels: Vec<&str> = v.labels.iter().map(String::as_str).collect();
        if labels == [vocab::DEFAULT_VERTEX_LABEL] {
            labels.clear();
        }
        let properties = v
            .properties
            .iter()
            .map(|(k, values)| {
                (
                    k.as_str(),
                    many(values.iter().map(vertex_property_json).collect()),
                )
            })
            .collect();
        let line = VertexOut {
            kind: "vertex",
            id,
            labels,
            properties,
        };
        out.push_str(&serde_json::to_string(&line).expect("serializable"));
        out.push('\n');
    }
    for (sid, e) in &g.edges {
        let properties = e
            .properties
            .iter()
            .map(|(k, values)| (k.as_str(), many(values.iter().map(value_json).collect())))
            .collect();
        let line = EdgeOut {
            kind: "edge",
            id: sid.to_string(),
            label: &e.label,
            from: &e.from,
            to: &e.to,
            properties,
        };
        out.push_str(&serde_json::to_string(&line).expect("serializable"));
        out.push('\n');
    }
    out
}

fn many(mut values: Vec<Value>) -> Value {
    if values.len() == 1 {
        values.pop().expect("one value")
    } else {
        Value::Array(values)
    }
}

fn scalar_json(s: &LpgScalar) -> Value {
    match s {
        LpgScalar::String(s) => Value::String(s.clone()),
        LpgScalar::Integer(n) => Value::from(*n),
        LpgScalar::Float(f) => Value::from(*f),
        LpgScalar::Boolean(b) => Value::Bool(*b),
    }
}

fn value_json(v: &LpgValue) -> Value {
    match v {
        LpgValue::String(s) => Value::String(s.clone()),
        LpgValue::Integer(n) => Value::from(*n),
        LpgValue::Float(f) => Value::from(*f),
        LpgValue::Boolean(b) => Value::Bool(*b),
        LpgValue::List(items) => {
            let mut obj = Map::new();
            obj.insert(
                "value".into(),
                Value::Array(items.iter().map(scalar_json).collect()),
            );
            Value::Object(obj)
        }
    }
}

fn vertex_property_json(p: &VertexProperty) -> Value {
    if p.meta.is_empty() {
        return value_json(&p.value);
    }
    let value = match value_json(&p.value) {
        Value::Object(mut wrapped) => wrapped.remove("value").expect("list wrapper"),
        plain => plain,
    };
    let meta = p
        .meta
        .iter()
        .map(|(k, vs)| (k.clone(), many(vs.iter().map(value_json).collect())))
        .collect();
    let mut obj = Map::new();
    obj.insert("value".into(), value);
    obj.insert("meta".into(), Value::Object(meta));
    Value::Object(obj)
}
