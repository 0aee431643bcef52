//! Lexical building blocks shared by the line formats and the Turtle-star
//! reader: a position-tracking cursor and the canonical escaping rules.

use std::fmt::{self, Write as _};

use crate::datatypes::Literal;
use crate::error::{Error, Result};
use crate::term::Term;
use crate::vocab;

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    /// Line number of `src[0]`; line-based readers hand in one line at a time.
    base_line: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str, base_line: usize) -> Self {
        Cursor {
            src,
            pos: 0,
            base_line,
        }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn set_pos(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn peek_nth(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub fn starts_with(&self, s: &str) -> bool {
        self.rest().starts_with(s)
    }

    pub fn eat(&mut self, s: &str) -> bool {
        if self.starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    /// (line, column), both 1-based, of byte offset `at`.
    pub fn location(&self, at: usize) -> (usize, usize) {
        let mut at = at.min(self.src.len());
        while !self.src.is_char_boundary(at) {
            at -= 1;
        }
        let before = &self.src[..at];
        let line = self.base_line + before.matches('\n').count();
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, col)
    }

    pub fn error_at(&self, at: usize, msg: impl Into<String>) -> Error {
        let (line, col) = self.location(at);
        Error::syntax(line, Some(col), msg)
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        self.error_at(self.pos, msg)
    }

    pub fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{s}'")))
        }
    }

    pub fn skip_inline_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.bump();
        }
    }

    /// Whitespace including newlines, plus `#` comments.
    pub fn skip_ws_and_comments(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while !matches!(self.peek(), None | Some('\n')) {
                        self.bump();
                    }
                }
                _ => return,
            }
        }
    }

    fn hex(&mut self, digits: usize) -> Result<char> {
        let start = self.pos;
        let hex = self
            .src
            .get(start..start + digits)
            .filter(|h| h.bytes().all(|b| b.is_ascii_hexdigit()))
            .ok_or_else(|| self.error("bad unicode escape"))?;
        let c = u32::from_str_radix(hex, 16)
            .ok()
            .and_then(char::from_u32)
            .ok_or_else(|| self.error("escape is not a unicode scalar value"))?;
        self.pos += digits;
        Ok(c)
    }

    fn uchar(&mut self) -> Result<char> {
        let at = self.pos;
        match self.bump() {
            Some('u') => self.hex(4),
            Some('U') => self.hex(8),
            _ => Err(self.error_at(at, "bad escape")),
        }
    }

    /// `<...>` with `\u`/`\U` escapes; returns the unescaped text.
    pub fn iri_ref(&mut self) -> Result<String> {
        let start = self.pos;
        self.expect("<")?;
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error_at(start, "unterminated IRI")),
                Some('>') => return Ok(out),
                Some('\\') => out.push(self.uchar()?),
                Some(c) if c <= ' ' || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return Err(self.error_at(
                        self.pos - c.len_utf8(),
                        format!("character {c:?} not allowed in IRI"),
                    ))
                }
                Some(c) => out.push(c),
            }
        }
    }

    /// String body between `quote` delimiters (single- or triple-quoted).
    pub fn quoted_string(&mut self, quote: &str) -> Result<String> {
        let start = self.pos;
        self.expect(quote)?;
        let long = quote.len() == 3;
        let close = quote.chars().next().expect("non-empty quote");
        let mut out = String::new();
        loop {
            if self.eat(quote) {
                return Ok(out);
            }
            match self.bump() {
                None => return Err(self.error_at(start, "unterminated string")),
                Some('\\') => {
                    let c = match self.peek() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u' | 'U') => {
                            out.push(self.uchar()?);
                            continue;
                        }
                        _ => return Err(self.error("bad escape")),
                    };
                    self.bump();
                    out.push(c);
                }
                Some(c @ ('\n' | '\r')) if !long => {
                    return Err(self.error_at(self.pos - c.len_utf8(), "line break in string"))
                }
                Some(c) if c == close && !long => unreachable!("closing quote handled above"),
                Some(c) => out.push(c),
            }
        }
    }

    /// Label after `_:`.
    pub fn blank_label(&mut self) -> Result<String> {
        self.expect("_:")?;
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_alphanumeric() || c == '_' => {}
            _ => return Err(self.error("bad blank node label")),
        }
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
        {
            self.bump();
        }
        // a trailing dot terminates the statement
        while self.src[start..self.pos].ends_with('.') {
            self.pos -= 1;
        }
        Ok(self.src[start..self.pos].to_owned())
    }

    /// Language tag after `@`.
    pub fn lang_tag(&mut self) -> Result<String> {
        self.expect("@")?;
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-') {
            self.bump();
        }
        let tag = &self.src[start..self.pos];
        if tag.is_empty() {
            return Err(self.error("empty language tag"));
        }
        Ok(tag.to_owned())
    }
}

/// Writes text with the escapes every reader here understands.
pub(crate) fn write_escaped(out: &mut impl fmt::Write, s: &str) -> fmt::Result {
    for c in s.chars() {
        match c {
            '"' => out.write_str("\\\"")?,
            '\\' => out.write_str("\\\\")?,
            '\n' => out.write_str("\\n")?,
            '\r' => out.write_str("\\r")?,
            '\t' => out.write_str("\\t")?,
            '\u{8}' => out.write_str("\\b")?,
            '\u{c}' => out.write_str("\\f")?,
            c if c < ' ' || c == '\u{7f}' => write!(out, "\\u{:04X}", c as u32)?,
            c => out.write_char(c)?,
        }
    }
    Ok(())
}

pub(crate) fn write_literal(
    out: &mut impl fmt::Write,
    lit: &Literal,
    datatype: impl FnOnce(&mut dyn fmt::Write) -> fmt::Result,
) -> fmt::Result {
    out.write_char('"')?;
    write_escaped(out, lit.lexical())?;
    out.write_char('"')?;
    if let Some(tag) = lit.language() {
        write!(out, "@{tag}")
    } else if lit.has_datatype(vocab::XSD_STRING) {
        Ok(())
    } else {
        out.write_str("^^")?;
        datatype(out)
    }
}

/// Canonical N-Triples-style rendering; local ids use `local:"…"`.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::LocalId(id) => {
                f.write_str("local:\"")?;
                write_escaped(f, id.as_str())?;
                f.write_char('"')
            }
            Term::BlankNode(b) => write!(f, "_:{}", b.as_str()),
            Term::SidRef(sid) => write!(f, "<{}>", sid.to_iri_string()),
            Term::Literal(lit) => write_literal(f, lit, |out| write!(out, "<{}>", lit.datatype())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iri_escapes() {
        let mut c = Cursor::new(r"<http://ex.org/é>", 1);
        assert_eq!(c.iri_ref().unwrap(), "http://ex.org/é");
        let mut c = Cursor::new("<http://ex.org/a b>", 3);
        let err = c.iri_ref().unwrap_err();
        assert_eq!(err.line(), Some(3));
        assert!(
            matches!(
                err,
                Error::Syntax {
                    column: Some(17),
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn string_escapes() {
        let mut c = Cursor::new(r#""a\"b\\c\nA""#, 1);
        assert_eq!(c.quoted_string("\"").unwrap(), "a\"b\\c\nA");
        let mut c = Cursor::new("\"\"\"multi\nline\"\"\"", 1);
        assert_eq!(c.quoted_string("\"\"\"").unwrap(), "multi\nline");
        let mut c = Cursor::new("\"open", 1);
        assert!(c.quoted_string("\"").is_err());
    }

    #[test]
    fn blank_label_stops_before_final_dot() {
        let mut c = Cursor::new("_:b1.", 1);
        assert_eq!(c.blank_label().unwrap(), "b1");
        assert_eq!(c.rest(), ".");
    }

    #[test]
    fn location_counts_lines() {
        let c = Cursor::new("ab\ncd\nef", 10);
        assert_eq!(c.location(4), (11, 2));
    }

    #[test]
    fn display_forms() {
        let lit = Literal::typed_str("2020", vocab::XSD_INTEGER).unwrap();
        assert_eq!(
            Term::Literal(lit).to_string(),
            "\"2020\"^^<http://www.w3.org/2001/XMLSchema#integer>"
        );
        assert_eq!(Term::local("a\"b").unwrap().to_string(), r#"local:"a\"b""#);
        assert_eq!(
            Term::Literal(Literal::lang("hi", "en").unwrap()).to_string(),
            "\"hi\"@en"
        );
        assert_eq!(
            Term::Literal(Literal::string("x\ty")).to_string(),
            "\"x\\ty\""
        );
    }
}
