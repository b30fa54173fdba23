use num_bigint::BigInt;

use super::{ParseError, ParseErrorKind, SourceSpan};
use crate::typecore::labels;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    /// Quoted name; never a keyword.
    Quoted(String),
    Int(BigInt),
    Punct(char),
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

const PUNCT: &str = "{}:;,=+-*/.()|";

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '^' || c == '\''
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = src.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    let span_at = |start: usize, end: usize, line: usize, col: usize| SourceSpan {
        line,
        column: col,
        start,
        end,
    };

    while let Some(&(start, c)) = chars.peek() {
        let (tl, tc) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&(_, c)| c != '\n') {
                chars.next();
            }
            continue;
        }
        if is_ident_start(c) {
            let mut end = start;
            let mut word = String::new();
            while let Some(&(i, c)) = chars.peek() {
                if !is_ident_continue(c) {
                    break;
                }
                word.push(c);
                end = i + c.len_utf8();
                chars.next();
                col += 1;
            }
            tokens.push(Token {
                kind: TokenKind::Ident(word),
                span: span_at(start, end, tl, tc),
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = start;
            let mut digits = String::new();
            while let Some(&(i, c)) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                digits.push(c);
                end = i + 1;
                chars.next();
                col += 1;
            }
            let n = digits.parse().expect("ascii digits");
            tokens.push(Token {
                kind: TokenKind::Int(n),
                span: span_at(start, end, tl, tc),
            });
            continue;
        }
        if c == '"' {
            chars.next();
            col += 1;
            let mut text = String::new();
            let mut closed = false;
            let mut end = start + 1;
            for (i, c) in chars.by_ref() {
                end = i + c.len_utf8();
                col += 1;
                if c == '"' {
                    closed = true;
                    break;
                }
                if c == '\n' {
                    break;
                }
                text.push(c);
            }
            let span = span_at(start, end, tl, tc);
            if !closed {
                return Err(ParseError::new(
                    ParseErrorKind::Syntax,
                    "unterminated quoted name",
                    span,
                ));
            }
            tokens.push(Token {
                kind: TokenKind::Quoted(text),
                span,
            });
            continue;
        }
        let end = start + c.len_utf8();
        chars.next();
        col += 1;
        let span = span_at(start, end, tl, tc);
        if PUNCT.contains(c) {
            tokens.push(Token {
                kind: TokenKind::Punct(c),
                span,
            });
        } else if let Some(name) = labels::name_for(c) {
            tokens.push(Token {
                kind: TokenKind::Ident(name.to_string()),
                span,
            });
        } else {
            return Err(ParseError::new(
                ParseErrorKind::Syntax,
                format!("unexpected character `{c}`"),
                span,
            ));
        }
    }
    let end = src.len();
    tokens.push(Token {
        kind: TokenKind::Eof,
        span: span_at(end, end, line, col),
    });
    Ok(tokens)
}
