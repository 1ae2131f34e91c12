//! Text forms: sequences are comma-separated decimal integers, optionally in
//! parentheses (`0,2,2,3,3` or `(0,2,2,3,3)`); multisets are the same inside
//! optional braces (`{0,0,2,4,4}`). Whitespace is ignored between tokens.

use std::fmt;
use std::iter::Peekable;
use std::str::Chars;

use thiserror::Error;

/// Parse failure at a 1-based character offset.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at character {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Parses a sequence such as `0,1,2` or `(0, 1, 2)`. The empty string and `()`
/// give the empty sequence.
pub fn parse_sequence(text: &str) -> Result<Vec<i64>, ParseError> {
    parse_list(text, '(', ')')
}

/// Parses a multiset such as `{0,0,2,4,4}` or a bare `0,0,2,4,4`.
pub fn parse_multiset(text: &str) -> Result<Vec<i64>, ParseError> {
    parse_list(text, '{', '}')
}

struct Cursor<'a> {
    chars: Peekable<Chars<'a>>,
    // 1-based offset of the next char
    offset: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next();
        if c.is_some() {
            self.offset += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.offset,
            message: message.into(),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let start = self.offset;
        let mut digits = String::new();
        if self.peek() == Some('-') {
            digits.push('-');
            self.bump();
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.bump();
        }
        if digits.is_empty() || digits == "-" {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected an integer, found '{c}'")),
                None => self.error("expected an integer, found end of input"),
            });
        }
        digits.parse().map_err(|_| ParseError {
            offset: start,
            message: format!("integer '{digits}' out of range"),
        })
    }
}

fn parse_list(text: &str, open: char, close: char) -> Result<Vec<i64>, ParseError> {
    let mut cur = Cursor {
        chars: text.chars().peekable(),
        offset: 1,
    };
    cur.skip_ws();
    let bracketed = cur.peek() == Some(open);
    if bracketed {
        cur.bump();
        cur.skip_ws();
    }
    let mut values = Vec::new();
    let at_end = |cur: &mut Cursor| match cur.peek() {
        None => !bracketed,
        Some(c) => bracketed && c == close,
    };
    if !at_end(&mut cur) {
        loop {
            values.push(cur.integer()?);
            cur.skip_ws();
            match cur.peek() {
                Some(',') => {
                    cur.bump();
                    cur.skip_ws();
                }
                _ => break,
            }
        }
    }
    if bracketed {
        if cur.peek() != Some(close) {
            return Err(cur.error(format!("expected ',' or '{close}'")));
        }
        cur.bump();
        cur.skip_ws();
    }
    match cur.peek() {
        None => Ok(values),
        Some(c) => Err(cur.error(format!("unexpected '{c}'"))),
    }
}

/// `(a,b,c)`.
pub struct SeqDisplay<'a>(pub &'a [usize]);

/// `{a,b,c}`.
pub struct SetDisplay<'a>(pub &'a [usize]);

fn join(f: &mut fmt::Formatter<'_>, values: &[usize]) -> fmt::Result {
    for (idx, v) in values.iter().enumerate() {
        if idx > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

impl fmt::Display for SeqDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        join(f, self.0)?;
        f.write_str(")")
    }
}

impl fmt::Display for SetDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        join(f, self.0)?;
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences() {
        assert_eq!(parse_sequence("0,2,2,3,3").unwrap(), vec![0, 2, 2, 3, 3]);
        assert_eq!(parse_sequence(" ( 0 , 1,2 ) ").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_sequence("").unwrap(), Vec::<i64>::new());
        assert_eq!(parse_sequence("()").unwrap(), Vec::<i64>::new());
        assert_eq!(parse_sequence("-1,3").unwrap(), vec![-1, 3]);
    }

    #[test]
    fn multisets() {
        assert_eq!(parse_multiset("{0,0,2,4,4}").unwrap(), vec![0, 0, 2, 4, 4]);
        assert_eq!(parse_multiset("0, 0,2").unwrap(), vec![0, 0, 2]);
        assert!(parse_multiset("(0,1)").is_err());
    }

    #[test]
    fn error_offsets_are_one_based() {
        let err = parse_sequence("0,1,x").unwrap_err();
        assert_eq!(err.offset, 5);
        let err = parse_sequence("0,,1").unwrap_err();
        assert_eq!(err.offset, 3);
        let err = parse_sequence("0,1,").unwrap_err();
        assert_eq!(err.offset, 5);
        assert!(err.message.contains("end of input"));
        let err = parse_sequence("(0,1").unwrap_err();
        assert_eq!(err.offset, 5);
        let err = parse_sequence("0 1").unwrap_err();
        assert_eq!(err.offset, 3);
        let err = parse_sequence("99999999999999999999").unwrap_err();
        assert_eq!(err.offset, 1);
    }

    #[test]
    fn display() {
        assert_eq!(SeqDisplay(&[0, 1, 2]).to_string(), "(0,1,2)");
        assert_eq!(SeqDisplay(&[]).to_string(), "()");
        assert_eq!(SetDisplay(&[0, 0, 2]).to_string(), "{0,0,2}");
    }
}
