//! Reserved IRIs and the handful of external vocabularies the views emit.

pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
pub const XSD_DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
pub const XSD_DATE: &str = "http://www.w3.org/2001/XMLSchema#date";
pub const XSD_DATE_TIME: &str = "http://www.w3.org/2001/XMLSchema#dateTime";

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
pub const RDF_STATEMENT: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Statement";
pub const RDF_SUBJECT: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#subject";
pub const RDF_PREDICATE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#predicate";
pub const RDF_OBJECT: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#object";

/// Datatype of composite list literals.
pub const OG_LIST: &str = "urn:og:List";
/// Reserved label of graph-membership assertions.
pub const IN_GRAPH: &str = "urn:og:inGraph";
/// Prefix of the IRI rendering of a sid.
pub const SID_IRI_PREFIX: &str = "urn:og:sid:";
/// Namespace local identifiers are exposed under unless configured otherwise.
pub const DEFAULT_NAMESPACE: &str = "urn:og:local:";

/// Local-id label used for vertex labels by the property-graph importer.
pub const LPG_LABEL: &str = "label";
/// Label every property-graph vertex carries when it has no other.
pub const DEFAULT_VERTEX_LABEL: &str = "Vertex";
