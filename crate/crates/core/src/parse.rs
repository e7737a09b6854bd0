//! Polynomial expression grammar, shared by the CLI and all serialized output.
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' natural)?
//! base     := rational | var | '(' expr ')'
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Implicit multiplication is rejected. `Display` on [`Polynomial`] emits this
//! grammar, so printing and parsing round-trip.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{Polynomial, Rational, RingRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("exponent too large")]
    ExponentTooLarge,
    #[error("implicit multiplication is not allowed")]
    ImplicitMultiplication,
}

/// A syntax error with its 1-based column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {kind}")]
pub struct ParseError {
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().unwrap()), col));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(ParseError { column: col, kind: ParseErrorKind::UnexpectedChar(other) }),
        };
        out.push((t, col));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    ring: &'a RingRef,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError { column: self.col(), kind })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    let e: u32 = match u32::try_from(&n) {
                        Ok(e) if e <= 10_000 => e,
                        _ => return self.err(ParseErrorKind::ExponentTooLarge),
                    };
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                Some(_) => return self.err(ParseErrorKind::Expected("a natural exponent")),
                None => return self.err(ParseErrorKind::UnexpectedEnd),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            None => self.err(ParseErrorKind::UnexpectedEnd),
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut value = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return self.err(ParseErrorKind::ZeroDenominator);
                            }
                            self.pos += 1;
                            value /= Rational::from_integer(d);
                        }
                        Some(_) => return self.err(ParseErrorKind::Expected("a positive integer denominator")),
                        None => return self.err(ParseErrorKind::UnexpectedEnd),
                    }
                }
                Ok(Polynomial::constant(self.ring, value))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.ring.index_of(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i).unwrap()),
                    None => Err(ParseError { column: col, kind: ParseErrorKind::UnknownVariable(name) }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return match self.peek() {
                        None => self.err(ParseErrorKind::UnexpectedEnd),
                        Some(_) => self.err(ParseErrorKind::Expected("`)`")),
                    };
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => self.err(ParseErrorKind::Expected("a number, variable or `(`")),
        }
    }
}

/// Parses `src` into a polynomial over `ring`.
pub fn parse_polynomial(src: &str, ring: &RingRef) -> Result<Polynomial, ParseError> {
    let toks = lex(src)?;
    let end_col = src.chars().count() + 1;
    let mut p = Parser { toks, pos: 0, end_col, ring };
    let out = p.expr()?;
    match p.peek() {
        None => Ok(out),
        Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) => p.err(ParseErrorKind::ImplicitMultiplication),
        Some(_) => p.err(ParseErrorKind::Expected("an operator or end of input")),
    }
}

/// Parses a rational literal such as `-3/4`.
pub fn parse_rational(src: &str) -> Result<Rational, ParseError> {
    let ring = crate::algebra::Ring::new(Vec::<String>::new()).unwrap();
    let p = parse_polynomial(src, &ring)?;
    Ok(p.constant_term())
}
