//! Tokenizer shared by the two concrete grammars.

use std::fmt;

use thiserror::Error;

use crate::names::RESERVED_PREFIX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Tilde,
    And,
    Or,
    Hash,
    Lt,
    Gt,
    Comma,
    LBrack,
    RBrack,
    Backslash,
    Colon,
    Dot,
    LParen,
    RParen,
    Star,
    Bar,
    Arrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(name) => return write!(f, "identifier `{name}`"),
            Tok::Tilde => "`~`",
            Tok::And => "`/\\`",
            Tok::Or => "`\\/`",
            Tok::Hash => "`#`",
            Tok::Lt => "`<`",
            Tok::Gt => "`>`",
            Tok::Comma => "`,`",
            Tok::LBrack => "`[`",
            Tok::RBrack => "`]`",
            Tok::Backslash => "`\\`",
            Tok::Colon => "`:`",
            Tok::Dot => "`.`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Star => "`*`",
            Tok::Bar => "`|`",
            Tok::Arrow => "`->`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

/// A parse failure with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn at(src: &str, offset: usize, message: impl Into<String>) -> Self {
        let before = &src[..offset.min(src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError {
            offset,
            line,
            column,
            message: message.into(),
        }
    }
}

pub fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = |s: &str| src[i..].starts_with(s);
        let tok = if two("/\\") {
            i += 2;
            Tok::And
        } else if two("\\/") {
            i += 2;
            Tok::Or
        } else if two("->") {
            i += 2;
            Tok::Arrow
        } else if c.is_ascii_alphabetic() || c == b'_' || c == RESERVED_PREFIX as u8 {
            i += 1;
            while i < bytes.len()
                && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
            {
                i += 1;
            }
            Tok::Ident(src[start..i].to_string())
        } else {
            i += 1;
            match c {
                b'~' => Tok::Tilde,
                b'#' => Tok::Hash,
                b'<' => Tok::Lt,
                b'>' => Tok::Gt,
                b',' => Tok::Comma,
                b'[' => Tok::LBrack,
                b']' => Tok::RBrack,
                b'\\' => Tok::Backslash,
                b':' => Tok::Colon,
                b'.' => Tok::Dot,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'*' => Tok::Star,
                b'|' => Tok::Bar,
                _ => {
                    let ch = src[start..].chars().next().unwrap_or('?');
                    return Err(ParseError::at(src, start, format!("unexpected character `{ch}`")));
                }
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::Eof, src.len()));
    Ok(out)
}

/// Cursor over a token stream, shared by the two parsers.
pub struct Cursor<'a> {
    pub src: &'a str,
    toks: Vec<(Tok, usize)>,
    pub pos: usize,
    pub allow_reserved: bool,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str, allow_reserved: bool) -> Result<Self, ParseError> {
        Ok(Cursor {
            src,
            toks: tokenize(src)?,
            pos: 0,
            allow_reserved,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        let idx = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[idx].0
    }

    pub fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::at(self.src, self.offset(), message)
    }

    pub fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {tok}, found {}", self.peek())))
        }
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    /// Consumes an identifier that is not one of `keywords`.
    pub fn ident(&mut self, keywords: &[&str]) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) if keywords.contains(&name.as_str()) => {
                Err(self.error(format!("`{name}` is a keyword")))
            }
            Tok::Ident(name) => {
                if name.starts_with(RESERVED_PREFIX) && !self.allow_reserved {
                    return Err(self.error(format!("`{name}` uses the reserved prefix `!`")));
                }
                self.bump();
                Ok(name)
            }
            other => Err(self.error(format!("expected identifier, found {other}"))),
        }
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            other => Err(self.error(format!("unexpected {other} after end of term"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let toks = tokenize("\\x:a /\\ ~b. (x * y)").unwrap();
        let kinds: Vec<_> = toks.iter().map(|(t, _)| t.clone()).collect();
        assert_eq!(kinds[0], Tok::Backslash);
        assert_eq!(kinds[1], Tok::Ident("x".into()));
        assert_eq!(kinds[4], Tok::And);
        assert_eq!(kinds[5], Tok::Tilde);
        assert_eq!(*kinds.last().unwrap(), Tok::Eof);
    }

    #[test]
    fn error_positions_are_one_based() {
        let err = tokenize("x\n  $").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
    }
}
