//! Literal values shared by the RDF and property-graph sides.
//!
//! Literals keep their lexical form verbatim and are flagged (not rejected)
//! when the lexical form lies outside the datatype's lexical space. Flat
//! scalar lists travel as `urn:og:List` literals with the bit-exact lexical
//! form produced by [`list_fold`].

use std::cmp::Ordering;
use std::fmt;
use std::sync::LazyLock;

use regex::Regex;

use crate::error::{Error, Result};
use crate::term::Iri;
use crate::vocab;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    // field order is the canonical ordering: datatype, lexical form, language
    datatype: Iri,
    lexical: String,
    language: Option<String>,
    well_typed: bool,
}

fn iri_const(s: &'static str) -> Iri {
    Iri::new(s).expect("vocabulary IRI")
}

static LANG_TAG: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*$").unwrap());

impl Literal {
    /// Typed literal. Language-string literals must go through [`Literal::lang`].
    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Result<Self> {
        if datatype.as_str() == vocab::RDF_LANG_STRING {
            return Err(Error::InvalidTerm(
                "rdf:langString literal needs a language tag".into(),
            ));
        }
        let lexical = lexical.into();
        let well_typed = validate(&lexical, &datatype);
        Ok(Literal {
            datatype,
            lexical,
            language: None,
            well_typed,
        })
    }

    pub fn typed_str(lexical: impl Into<String>, datatype: &str) -> Result<Self> {
        Literal::typed(lexical, Iri::new(datatype)?)
    }

    pub fn lang(lexical: impl Into<String>, tag: impl Into<String>) -> Result<Self> {
        let tag = tag.into();
        if !LANG_TAG.is_match(&tag) {
            return Err(Error::InvalidTerm(format!("bad language tag: {tag:?}")));
        }
        Ok(Literal {
            datatype: iri_const(vocab::RDF_LANG_STRING),
            lexical: lexical.into(),
            language: Some(tag),
            well_typed: true,
        })
    }

    pub fn string(s: impl Into<String>) -> Self {
        let lexical = s.into();
        let well_typed = validate_string(&lexical);
        Literal {
            datatype: iri_const(vocab::XSD_STRING),
            lexical,
            language: None,
            well_typed,
        }
    }

    pub fn integer(v: i64) -> Self {
        Literal::well_typed(v.to_string(), vocab::XSD_INTEGER)
    }

    pub fn boolean(v: bool) -> Self {
        Literal::well_typed(v.to_string(), vocab::XSD_BOOLEAN)
    }

    pub fn double(v: f64) -> Self {
        Literal::well_typed(double_lexical(v), vocab::XSD_DOUBLE)
    }

    fn well_typed(lexical: String, datatype: &'static str) -> Self {
        Literal {
            datatype: iri_const(datatype),
            lexical,
            language: None,
            well_typed: true,
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    pub fn is_well_typed(&self) -> bool {
        self.well_typed
    }

    pub fn has_datatype(&self, iri: &str) -> bool {
        self.datatype.as_str() == iri
    }

    /// Plain or language-tagged string.
    pub fn is_text(&self) -> bool {
        self.has_datatype(vocab::XSD_STRING) || self.language.is_some()
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.language {
            Some(tag) => write!(f, "{:?}@{}", self.lexical, tag),
            None if self.has_datatype(vocab::XSD_STRING) => write!(f, "{:?}", self.lexical),
            None => write!(f, "{:?}^^<{}>", self.lexical, self.datatype),
        }
    }
}

fn double_lexical(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "INF".into()
        } else {
            "-INF".into()
        }
    } else {
        format!("{v:?}")
    }
}

fn parse_double(lexical: &str) -> Option<f64> {
    match lexical {
        "NaN" => Some(f64::NAN),
        "INF" | "+INF" => Some(f64::INFINITY),
        "-INF" => Some(f64::NEG_INFINITY),
        _ if DOUBLE.is_match(lexical) => lexical.parse().ok(),
        _ => None,
    }
}

static INTEGER: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[+-]?[0-9]+$").unwrap());
static DECIMAL: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)$").unwrap());
static DOUBLE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^(([+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)([Ee][+-]?[0-9]+)?)|[+-]?INF|NaN)$").unwrap()
});
static DATE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^-?([0-9]{4,})-([0-9]{2})-([0-9]{2})(Z|[+-][0-9]{2}:[0-9]{2})?$").unwrap()
});
static DATE_TIME: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(
        r"^-?([0-9]{4,})-([0-9]{2})-([0-9]{2})T([0-9]{2}):([0-9]{2}):([0-9]{2})(\.[0-9]+)?(Z|[+-][0-9]{2}:[0-9]{2})?$",
    )
    .unwrap()
});

/// XML `Char` production: no C0 controls other than tab, LF and CR.
fn validate_string(s: &str) -> bool {
    s.chars()
        .all(|c| !matches!(c, '\u{0}'..='\u{8}' | '\u{B}' | '\u{C}' | '\u{E}'..='\u{1F}' | '\u{FFFE}' | '\u{FFFF}'))
}

fn year_ok(year: &str) -> bool {
    year.len() == 4 || !year.starts_with('0')
}

fn days_in_month(year: &str, month: u32) -> u32 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        _ => {
            // only divisibility matters, so the last four digits suffice
            let tail: i64 = year[year.len() - 4..].parse().unwrap_or(1);
            let leap = tail % 4 == 0 && (tail % 100 != 0 || tail % 400 == 0);
            if leap {
                29
            } else {
                28
            }
        }
    }
}

fn timezone_ok(tz: Option<&str>) -> bool {
    match tz {
        None | Some("Z") => true,
        Some(tz) => {
            let hh: u32 = tz[1..3].parse().unwrap_or(99);
            let mm: u32 = tz[4..6].parse().unwrap_or(99);
            mm <= 59 && (hh < 14 || (hh == 14 && mm == 0))
        }
    }
}

fn date_parts_ok(year: &str, month: &str, day: &str) -> bool {
    let month: u32 = month.parse().unwrap_or(0);
    let day: u32 = day.parse().unwrap_or(0);
    year_ok(year) && (1..=12).contains(&month) && day >= 1 && day <= days_in_month(year, month)
}

fn validate_date(lexical: &str) -> bool {
    let Some(c) = DATE.captures(lexical) else {
        return false;
    };
    date_parts_ok(&c[1], &c[2], &c[3]) && timezone_ok(c.get(4).map(|m| m.as_str()))
}

fn validate_date_time(lexical: &str) -> bool {
    let Some(c) = DATE_TIME.captures(lexical) else {
        return false;
    };
    if !date_parts_ok(&c[1], &c[2], &c[3]) || !timezone_ok(c.get(8).map(|m| m.as_str())) {
        return false;
    }
    let hour: u32 = c[4].parse().unwrap_or(99);
    let minute: u32 = c[5].parse().unwrap_or(99);
    let second: u32 = c[6].parse().unwrap_or(99);
    let fraction_zero = c
        .get(7)
        .is_none_or(|m| m.as_str()[1..].bytes().all(|b| b == b'0'));
    if hour == 24 {
        return minute == 0 && second == 0 && fraction_zero;
    }
    hour < 24 && minute < 60 && second < 60
}

/// True iff `lexical` is in the lexical space of `datatype`. Datatypes
/// outside the supported set are not checked and always pass.
pub fn validate(lexical: &str, datatype: &Iri) -> bool {
    match datatype.as_str() {
        vocab::XSD_STRING => validate_string(lexical),
        vocab::XSD_INTEGER => INTEGER.is_match(lexical),
        vocab::XSD_DECIMAL => DECIMAL.is_match(lexical),
        vocab::XSD_DOUBLE => DOUBLE.is_match(lexical),
        vocab::XSD_BOOLEAN => matches!(lexical, "true" | "false" | "1" | "0"),
        vocab::XSD_DATE => validate_date(lexical),
        vocab::XSD_DATE_TIME => validate_date_time(lexical),
        vocab::RDF_LANG_STRING => validate_string(lexical),
        vocab::OG_LIST => parse_list(lexical).is_ok(),
        _ => true,
    }
}

/// Decimal number kept in canonical lexical form: no `+`, no superfluous
/// leading zeros, at least one fraction digit, no trailing fraction zeros
/// beyond the first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decimal(String);

impl Decimal {
    /// Accepts `[+-]?digits.digits` where either side may be empty but not both.
    pub fn parse(s: &str) -> Option<Decimal> {
        if !DECIMAL.is_match(s) {
            return None;
        }
        let (negative, body) = match s.as_bytes()[0] {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        let int = int.trim_start_matches('0');
        let frac = frac.trim_end_matches('0');
        let int = if int.is_empty() { "0" } else { int };
        let frac = if frac.is_empty() { "0" } else { frac };
        let zero = int == "0" && frac == "0";
        let sign = if negative && !zero { "-" } else { "" };
        Some(Decimal(format!("{sign}{int}.{frac}")))
    }

    pub fn from_f64(v: f64) -> Option<Decimal> {
        if !v.is_finite() {
            return None;
        }
        // Display never uses exponent notation for f64
        Decimal::parse(&format!("{v}"))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.parse().expect("canonical decimal parses as f64")
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Element of a composite list literal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Text(String),
    Integer(i64),
    Decimal(Decimal),
    Boolean(bool),
}

/// Flat list of scalars; the value space of `urn:og:List`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct OgList(pub Vec<Scalar>);

fn write_quoted(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c => out.push(c),
        }
    }
    out.push('"');
}

/// Folds a list into its literal: `[e1, e2, …]` with `", "` separators.
pub fn list_fold(list: &OgList) -> Literal {
    let mut lexical = String::from("[");
    for (i, e) in list.0.iter().enumerate() {
        if i > 0 {
            lexical.push_str(", ");
        }
        match e {
            Scalar::Text(s) => write_quoted(&mut lexical, s),
            Scalar::Integer(n) => lexical.push_str(&n.to_string()),
            Scalar::Decimal(d) => lexical.push_str(d.as_str()),
            Scalar::Boolean(b) => lexical.push_str(if *b { "true" } else { "false" }),
        }
    }
    lexical.push(']');
    Literal::well_typed(lexical, vocab::OG_LIST)
}

/// Parses a `urn:og:List` literal back into its elements.
pub fn list_unfold(lit: &Literal) -> Result<OgList> {
    if !lit.has_datatype(vocab::OG_LIST) {
        return Err(Error::WrongDatatype {
            expected: vocab::OG_LIST.into(),
            found: lit.datatype().to_string(),
        });
    }
    parse_list(lit.lexical())
}

struct ListParser<'a> {
    src: &'a str,
    pos: usize,
}

impl ListParser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::ListParse(format!("{msg} at offset {}", self.pos)))
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            _ => self.err(&format!("expected {want:?}")),
        }
    }

    fn text(&mut self) -> Result<Scalar> {
        self.expect('"')?;
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return self.err("unterminated string"),
                Some('"') => return Ok(Scalar::Text(out)),
                Some('\\') => match self.bump() {
                    Some('"') => out.push('"'),
                    Some('\\') => out.push('\\'),
                    Some('n') => out.push('\n'),
                    Some('r') => out.push('\r'),
                    Some('t') => out.push('\t'),
                    Some('u') => {
                        let start = self.pos;
                        let hex = self.src.get(start..start + 4);
                        let c = hex
                            .filter(|h| h.bytes().all(|b| b.is_ascii_hexdigit()))
                            .and_then(|h| u32::from_str_radix(h, 16).ok())
                            .and_then(char::from_u32);
                        match c {
                            Some(c) => {
                                out.push(c);
                                self.pos += 4;
                            }
                            None => return self.err("bad \\u escape"),
                        }
                    }
                    _ => return self.err("bad escape"),
                },
                Some(c) => out.push(c),
            }
        }
    }

    fn atom(&mut self) -> Result<Scalar> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if !c.is_whitespace() && c != ',' && c != ']') {
            self.bump();
        }
        let token = &self.src[start..self.pos];
        match token {
            "true" => return Ok(Scalar::Boolean(true)),
            "false" => return Ok(Scalar::Boolean(false)),
            _ => {}
        }
        if INTEGER.is_match(token) {
            return match token.parse::<i64>() {
                Ok(n) => Ok(Scalar::Integer(n)),
                Err(_) => Err(Error::ListParse(format!("integer out of range: {token}"))),
            };
        }
        match Decimal::parse(token) {
            Some(d) => Ok(Scalar::Decimal(d)),
            None => {
                self.pos = start;
                self.err(&format!("unexpected token {token:?}"))
            }
        }
    }

    fn element(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some('"') => self.text(),
            Some(_) => self.atom(),
            None => self.err("unexpected end of input"),
        }
    }

    fn list(&mut self) -> Result<OgList> {
        self.skip_ws();
        self.expect('[')?;
        self.skip_ws();
        let mut elements = Vec::new();
        if self.peek() == Some(']') {
            self.bump();
        } else {
            loop {
                elements.push(self.element()?);
                self.skip_ws();
                match self.bump() {
                    Some(',') => self.skip_ws(),
                    Some(']') => break,
                    Some(_) => return self.err("expected ',' or ']'"),
                    None => return self.err("unclosed list"),
                }
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err("trailing characters");
        }
        Ok(OgList(elements))
    }
}

fn parse_list(lexical: &str) -> Result<OgList> {
    ListParser {
        src: lexical,
        pos: 0,
    }
    .list()
}

/// Scalar element of a property-graph list value.
#[derive(Clone, PartialEq, Debug)]
pub enum LpgScalar {
    String(String),
    Integer(i64),
    Float(f64),
    Boolean(bool),
}

/// Property value as property-graph engines see it.
#[derive(Clone, PartialEq, Debug)]
pub enum LpgValue {
    String(String),
    Integer(i64),
    Float(f64),
    Boolean(bool),
    List(Vec<LpgScalar>),
}

impl LpgScalar {
    fn rank(&self) -> u8 {
        match self {
            LpgScalar::String(_) => 0,
            LpgScalar::Integer(_) => 1,
            LpgScalar::Float(_) => 2,
            LpgScalar::Boolean(_) => 3,
        }
    }

    /// Total order: variant first, floats by `f64::total_cmp`.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LpgScalar::String(a), LpgScalar::String(b)) => a.cmp(b),
            (LpgScalar::Integer(a), LpgScalar::Integer(b)) => a.cmp(b),
            (LpgScalar::Float(a), LpgScalar::Float(b)) => a.total_cmp(b),
            (LpgScalar::Boolean(a), LpgScalar::Boolean(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl LpgValue {
    /// Total order: scalars as [`LpgScalar::total_cmp`], lists after scalars.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match (self.as_scalar(), other.as_scalar()) {
            (Some(a), Some(b)) => a.total_cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => match (self, other) {
                (LpgValue::List(a), LpgValue::List(b)) => a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| x.total_cmp(y))
                    .find(|o| o.is_ne())
                    .unwrap_or_else(|| a.len().cmp(&b.len())),
                _ => unreachable!("non-scalars are lists"),
            },
        }
    }

    fn as_scalar(&self) -> Option<LpgScalar> {
        Some(match self {
            LpgValue::String(s) => LpgScalar::String(s.clone()),
            LpgValue::Integer(n) => LpgScalar::Integer(*n),
            LpgValue::Float(f) => LpgScalar::Float(*f),
            LpgValue::Boolean(b) => LpgScalar::Boolean(*b),
            LpgValue::List(_) => return None,
        })
    }
}

impl From<&str> for LpgValue {
    fn from(s: &str) -> Self {
        LpgValue::String(s.to_owned())
    }
}

impl From<i64> for LpgValue {
    fn from(v: i64) -> Self {
        LpgValue::Integer(v)
    }
}

impl From<bool> for LpgValue {
    fn from(v: bool) -> Self {
        LpgValue::Boolean(v)
    }
}

impl From<f64> for LpgValue {
    fn from(v: f64) -> Self {
        LpgValue::Float(v)
    }
}

/// Counts of information lost when turning literals into property values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CoercionTally {
    pub language_tags_dropped: usize,
    pub ill_typed: usize,
    /// Literals of datatypes property graphs lack, carried over as strings.
    pub datatypes_dropped: usize,
    /// Well-typed values outside the property-graph range (huge integers, NaN).
    pub out_of_range: usize,
}

impl CoercionTally {
    pub fn total(&self) -> usize {
        self.language_tags_dropped + self.ill_typed + self.datatypes_dropped + self.out_of_range
    }
}

/// Property value → literal.
pub fn coerce_lpg_value(v: &LpgValue) -> Result<Literal> {
    Ok(match v {
        LpgValue::String(s) => Literal::string(s.clone()),
        LpgValue::Integer(n) => Literal::integer(*n),
        LpgValue::Float(f) => Literal::double(*f),
        LpgValue::Boolean(b) => Literal::boolean(*b),
        LpgValue::List(items) => {
            let mut elements = Vec::with_capacity(items.len());
            for item in items {
                elements.push(match item {
                    LpgScalar::String(s) => Scalar::Text(s.clone()),
                    LpgScalar::Integer(n) => Scalar::Integer(*n),
                    LpgScalar::Boolean(b) => Scalar::Boolean(*b),
                    LpgScalar::Float(f) => {
                        Scalar::Decimal(Decimal::from_f64(*f).ok_or_else(|| {
                            Error::UnsupportedValue(format!("non-finite list element {f}"))
                        })?)
                    }
                });
            }
            list_fold(&OgList(elements))
        }
    })
}

/// Literal → property value, recording any loss in `tally`.
pub fn coerce_to_lpg(lit: &Literal, tally: &mut CoercionTally) -> LpgValue {
    let fallback = |tally_slot: &mut usize| {
        *tally_slot += 1;
        LpgValue::String(lit.lexical().to_owned())
    };
    if lit.language().is_some() {
        return fallback(&mut tally.language_tags_dropped);
    }
    if !lit.is_well_typed() {
        return fallback(&mut tally.ill_typed);
    }
    match lit.datatype().as_str() {
        vocab::XSD_STRING => LpgValue::String(lit.lexical().to_owned()),
        vocab::XSD_INTEGER => match lit.lexical().parse::<i64>() {
            Ok(n) => LpgValue::Integer(n),
            Err(_) => fallback(&mut tally.out_of_range),
        },
        vocab::XSD_DECIMAL | vocab::XSD_DOUBLE => match parse_double(lit.lexical()) {
            Some(f) if f.is_finite() => LpgValue::Float(f),
            _ => fallback(&mut tally.out_of_range),
        },
        vocab::XSD_BOOLEAN => LpgValue::Boolean(matches!(lit.lexical(), "true" | "1")),
        vocab::OG_LIST => match list_unfold(lit) {
            Ok(list) => LpgValue::List(
                list.0
                    .into_iter()
                    .map(|s| match s {
                        Scalar::Text(t) => LpgScalar::String(t),
                        Scalar::Integer(n) => LpgScalar::Integer(n),
                        Scalar::Decimal(d) => LpgScalar::Float(d.to_f64()),
                        Scalar::Boolean(b) => LpgScalar::Boolean(b),
                    })
                    .collect(),
            ),
            Err(_) => fallback(&mut tally.ill_typed),
        },
        _ => fallback(&mut tally.datatypes_dropped),
    }
}
