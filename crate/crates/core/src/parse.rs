//! ASCII formula syntax.
//!
//! ```text
//! formula := disj ( "->" formula )?        right-associative, loosest
//! disj    := conj ( "|" conj )*             left-associative
//! conj    := unit ( "&" unit )*             left-associative, tightest
//! unit    := ATOM | "bot" | "_|_" | "(" formula ")"
//! ATOM    := [a-z][a-z0-9_]*  |  _f[0-9]+   (generated atoms)
//! ```
//!
//! The printer parenthesizes every compound operand of a different
//! connective, so `(p & q) -> p` prints as written while `p -> q -> p`
//! keeps its right-nested form.

use std::fmt;

use crate::error::ParseError;
use crate::formula::{Connective, Formula, Node, FRESH_PREFIX};

pub const GRAMMAR: &str = "\
formula := disj ( \"->\" formula )?     (-> is right-associative and binds loosest)
disj    := conj ( \"|\" conj )*
conj    := unit ( \"&\" unit )*          (& binds tightest)
unit    := ATOM | \"bot\" | \"_|_\" | \"(\" formula \")\"
ATOM    := [a-z][a-z0-9_]*               (\"bot\" is reserved; _f0, _f1, ... are generated atoms)
Whitespace is insignificant. Negation is written `A -> bot`.";

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Atom(String),
    Bot,
    Imp,
    And,
    Or,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Atom(a) => format!("atom `{a}`"),
            Token::Bot => "`bot`".into(),
            Token::Imp => "`->`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next_token(&mut self) -> Result<(usize, Token), ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(&c) = bytes.get(start) else {
            return Ok((start, Token::End));
        };
        let (len, tok) = match c {
            b'(' => (1, Token::LParen),
            b')' => (1, Token::RParen),
            b'&' => (1, Token::And),
            b'|' => (1, Token::Or),
            b'-' if rest.starts_with("->") => (2, Token::Imp),
            b'_' if rest.starts_with("_|_") => (3, Token::Bot),
            b'_' if rest.starts_with(FRESH_PREFIX) => {
                let digits = rest[2..].bytes().take_while(u8::is_ascii_digit).count();
                if digits == 0 {
                    return Err(self.unexpected(start, &["atom", "`bot`", "`(`"]));
                }
                (2 + digits, Token::Atom(rest[..2 + digits].to_string()))
            }
            b'a'..=b'z' => {
                let len = rest
                    .bytes()
                    .take_while(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || *b == b'_')
                    .count();
                let word = &rest[..len];
                if word == "bot" {
                    (len, Token::Bot)
                } else {
                    (len, Token::Atom(word.to_string()))
                }
            }
            _ => return Err(self.unexpected(start, &["atom", "`bot`", "`(`", "operator"])),
        };
        self.pos = start + len;
        Ok((start, tok))
    }

    fn unexpected(&self, offset: usize, expected: &[&'static str]) -> ParseError {
        let found = self.src[offset..]
            .chars()
            .next()
            .map(|c| format!("`{c}`"))
            .unwrap_or_else(|| "end of input".into());
        ParseError { offset, expected: expected.to_vec(), found }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: (usize, Token),
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<(usize, Token), ParseError> {
        let next = self.lexer.next_token()?;
        Ok(std::mem::replace(&mut self.peeked, next))
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError {
            offset: self.peeked.0,
            expected: expected.to_vec(),
            found: self.peeked.1.describe(),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let left = self.disj()?;
        if self.peeked.1 == Token::Imp {
            self.bump()?;
            let right = self.formula()?;
            return Ok(Formula::imp(left, right));
        }
        Ok(left)
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conj()?;
        while self.peeked.1 == Token::Or {
            self.bump()?;
            acc = Formula::or(acc, self.conj()?);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unit()?;
        while self.peeked.1 == Token::And {
            self.bump()?;
            acc = Formula::and(acc, self.unit()?);
        }
        Ok(acc)
    }

    fn unit(&mut self) -> Result<Formula, ParseError> {
        match &self.peeked.1 {
            Token::Atom(_) => match self.bump()?.1 {
                Token::Atom(name) => Ok(Formula::atom(&name)),
                _ => unreachable!(),
            },
            Token::Bot => {
                self.bump()?;
                Ok(Formula::bot())
            }
            Token::LParen => {
                self.bump()?;
                let inner = self.formula()?;
                if self.peeked.1 != Token::RParen {
                    return Err(self.error(&["`)`", "`->`", "`&`", "`|`"]));
                }
                self.bump()?;
                Ok(inner)
            }
            _ => Err(self.error(&["atom", "`bot`", "`(`"])),
        }
    }
}

pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut lexer = Lexer { src: text, pos: 0 };
    let first = lexer.next_token()?;
    let mut parser = Parser { lexer, peeked: first };
    let f = parser.formula()?;
    if parser.peeked.1 != Token::End {
        return Err(parser.error(&["`->`", "`&`", "`|`", "end of input"]));
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

fn needs_parens(parent: Connective, child: &Formula, is_left: bool) -> bool {
    match child.as_binary() {
        None => false,
        Some((conn, _, _)) if conn != parent => true,
        // same connective: only the associative side goes bare
        Some(_) => match parent {
            Connective::Imp => is_left,
            Connective::And | Connective::Or => !is_left,
        },
    }
}

fn render(out: &mut impl fmt::Write, formula: &Formula, unicode: bool) -> fmt::Result {
    match formula.as_binary() {
        None => match formula.node() {
            Node::Atom(name) => out.write_str(name),
            _ => out.write_str(if unicode { "⊥" } else { "bot" }),
        },
        Some((conn, a, b)) => {
            for (child, is_left) in [(a, true), (b, false)] {
                if !is_left {
                    let sym = match (conn, unicode) {
                        (_, false) => conn.symbol(),
                        (Connective::Imp, true) => "→",
                        (Connective::And, true) => "∧",
                        (Connective::Or, true) => "∨",
                    };
                    write!(out, " {sym} ")?;
                }
                if needs_parens(conn, child, is_left) {
                    out.write_char('(')?;
                    render(out, child, unicode)?;
                    out.write_char(')')?;
                } else {
                    render(out, child, unicode)?;
                }
            }
            Ok(())
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render(f, self, false)
    }
}

impl serde::Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Rendering with `⊥ → ∧ ∨` for human-facing reports.
pub fn pretty(formula: &Formula) -> String {
    let mut s = String::new();
    render(&mut s, formula, true).expect("writing to a String cannot fail");
    s
}
