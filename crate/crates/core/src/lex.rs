//! Character cursor and token scanners shared by the Turtle and query parsers.

use crate::error::{SyntaxError, SyntaxErrorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Mark {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

pub(crate) struct Cursor<'a> {
    src: &'a str,
    offset: usize,
    line: usize,
    column: usize,
}

pub(crate) type LexResult<T> = Result<T, SyntaxError>;

pub(crate) fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

pub(crate) fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

fn is_local_char(c: char) -> bool {
    is_name_char(c) || c == ':' || c == '%'
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, offset: 0, line: 1, column: 1 }
    }

    pub fn mark(&self) -> Mark {
        Mark { offset: self.offset, line: self.line, column: self.column }
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.offset..]
    }

    pub fn is_eof(&self) -> bool {
        self.offset >= self.src.len()
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn peek_nth(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn starts_with(&self, s: &str) -> bool {
        self.rest().starts_with(s)
    }

    /// Case-insensitive keyword test that also requires a word boundary.
    pub fn starts_with_keyword(&self, kw: &str) -> bool {
        let rest = self.rest();
        if rest.len() < kw.len() || !rest.is_char_boundary(kw.len()) {
            return false;
        }
        rest[..kw.len()].eq_ignore_ascii_case(kw)
            && !rest[kw.len()..].chars().next().is_some_and(|c| is_local_char(c) || c == '.')
    }

    pub fn advance_by(&mut self, chars: usize) {
        for _ in 0..chars {
            self.bump();
        }
    }

    /// Skips whitespace and `#` comments.
    pub fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    pub fn error(&self, at: Mark, message: impl Into<String>, kind: SyntaxErrorKind) -> SyntaxError {
        make_error(self.src, at, message.into(), kind)
    }

    pub fn invalid(&self, at: Mark, message: impl Into<String>) -> SyntaxError {
        self.error(at, message, SyntaxErrorKind::Invalid)
    }

    pub fn unsupported(&self, at: Mark, construct: &str) -> SyntaxError {
        self.error(
            at,
            format!("unsupported construct: {construct}"),
            SyntaxErrorKind::Unsupported(construct.to_string()),
        )
    }

    /// Reads an `<...>` IRI reference with the cursor on `<`, decoding
    /// `\u`/`\U` escapes.
    pub fn scan_iri_ref(&mut self) -> LexResult<String> {
        let start = self.mark();
        self.bump();
        let mut out = String::new();
        loop {
            let here = self.mark();
            match self.bump() {
                None => return Err(self.invalid(start, "unterminated IRI")),
                Some('>') => return Ok(out),
                Some('\\') => out.push(self.scan_unicode_escape(here)?),
                Some(c) if c.is_whitespace() || c == '<' => {
                    return Err(self.invalid(here, format!("character {c:?} not allowed in IRI")));
                }
                Some(c) => out.push(c),
            }
        }
    }

    fn scan_unicode_escape(&mut self, at: Mark) -> LexResult<char> {
        let width = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.invalid(at, "invalid escape sequence")),
        };
        let mut code = 0u32;
        for _ in 0..width {
            let digit = self.bump().and_then(|c| c.to_digit(16));
            match digit {
                Some(d) => code = code * 16 + d,
                None => return Err(self.invalid(at, "invalid unicode escape")),
            }
        }
        char::from_u32(code).ok_or_else(|| self.invalid(at, "escape is not a unicode scalar value"))
    }

    /// Reads a single- or double-quoted short string with the cursor on the quote.
    pub fn scan_string(&mut self) -> LexResult<String> {
        let start = self.mark();
        let quote = self.bump().expect("caller checked quote");
        let triple: String = [quote; 3].iter().collect();
        if self.src[start.offset..].starts_with(&triple) {
            return Err(self.unsupported(start, "long (triple-quoted) string"));
        }
        let mut out = String::new();
        loop {
            let here = self.mark();
            match self.bump() {
                None | Some('\n') | Some('\r') => return Err(self.invalid(start, "unterminated string")),
                Some(c) if c == quote => return Ok(out),
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
                        Some('u') | Some('U') => {
                            out.push(self.scan_unicode_escape(here)?);
                            continue;
                        }
                        _ => return Err(self.invalid(here, "invalid escape sequence")),
                    };
                    self.bump();
                    out.push(c);
                }
                Some(c) => out.push(c),
            }
        }
    }

    /// Reads a run of name characters where interior dots are allowed but a
    /// trailing dot is left unread.
    fn scan_dotted(&mut self, allow: fn(char) -> bool) -> String {
        let mut out = String::new();
        loop {
            match self.peek() {
                Some(c) if allow(c) => {
                    out.push(c);
                    self.bump();
                }
                Some('.') if !out.is_empty() => {
                    let mut n = 0;
                    while self.peek_nth(n) == Some('.') {
                        n += 1;
                    }
                    if self.peek_nth(n).is_some_and(allow) {
                        for _ in 0..n {
                            out.push('.');
                            self.bump();
                        }
                    } else {
                        return out;
                    }
                }
                _ => return out,
            }
        }
    }

    /// Reads a bare word or prefixed name. Returns the part before `:` and,
    /// when a colon was present, the local part after it.
    pub fn scan_word(&mut self) -> (String, Option<String>) {
        let prefix = self.scan_dotted(is_name_char);
        if self.eat(':') {
            let local = self.scan_dotted(is_local_char);
            (prefix, Some(local))
        } else {
            (prefix, None)
        }
    }

    /// Reads a `_:label` with the cursor on `_`.
    pub fn scan_blank_label(&mut self) -> LexResult<String> {
        let start = self.mark();
        self.bump();
        if !self.eat(':') {
            return Err(self.invalid(start, "expected ':' after '_'"));
        }
        let label = self.scan_dotted(is_name_char);
        if label.is_empty() {
            return Err(self.invalid(start, "empty blank node label"));
        }
        Ok(label)
    }

    /// Reads a language tag after `@` has been consumed.
    pub fn scan_lang_tag(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '-' {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        out
    }

    /// Reads an integer or decimal, rejecting exponent forms.
    pub fn scan_number(&mut self) -> LexResult<Number> {
        let start = self.mark();
        let mut text = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            text.push(c);
            self.bump();
        }
        let mut digits = 0;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            text.push(c);
            self.bump();
            digits += 1;
        }
        let mut decimal = false;
        if self.peek() == Some('.') && self.peek_nth(1).is_some_and(|c| c.is_ascii_digit()) {
            decimal = true;
            text.push('.');
            self.bump();
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                text.push(c);
                self.bump();
                digits += 1;
            }
        }
        if digits == 0 {
            return Err(self.invalid(start, "malformed number"));
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            return Err(self.unsupported(start, "numeric exponent"));
        }
        Ok(if decimal { Number::Decimal(text) } else { Number::Integer(text) })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Number {
    Integer(String),
    Decimal(String),
}

fn make_error(src: &str, at: Mark, message: String, kind: SyntaxErrorKind) -> SyntaxError {
    let at = clamp_to_source(src, at);
    let snippet: String = src[at.offset.min(src.len())..]
        .chars()
        .take_while(|&c| c != '\n')
        .take(24)
        .collect();
    SyntaxError { line: at.line, column: at.column, message, snippet, kind }
}

/// Positions at end of input are moved back onto the last character so the
/// reported location always exists in the source.
fn clamp_to_source(src: &str, at: Mark) -> Mark {
    if at.offset < src.len() || src.is_empty() {
        return at;
    }
    let mut mark = Mark { offset: 0, line: 1, column: 1 };
    let mut chars = src.char_indices().peekable();
    while let Some((idx, c)) = chars.next() {
        mark.offset = idx;
        if chars.peek().is_none() {
            break;
        }
        if c == '\n' {
            mark.line += 1;
            mark.column = 1;
        } else {
            mark.column += 1;
        }
    }
    mark
}
