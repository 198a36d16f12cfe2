//! Text grammar for polynomials.
//!
//! ```text
//! sum    := ['+'|'-'] product (('+'|'-') product)*
//! product:= power ('*'? power)*
//! power  := atom ('^' nat)?
//! atom   := int ('/' posint)? | var | '(' sum ')'
//! ```
//!
//! Whitespace is insignificant. Output of `Display` for [`Polynomial`] parses
//! back to the same polynomial.

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::Polynomial;
use super::ring::RingRef;
use super::{PolyError, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Token {
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

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Int(text[start..i].parse().expect("digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(PolyError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    ring: &'a RingRef,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::zero(self.ring);
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            let p = self.product()?;
            acc = if negate { &acc - &p } else { &acc + &p };
            first = false;
        }
        Ok(acc)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Token::Int(_) | Token::Ident(_) | Token::LParen))
    }

    fn product(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.power()?;
        loop {
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
            } else if !self.starts_atom() {
                break;
            }
            let p = self.power()?;
            acc = &acc * &p;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Token::Int(n)) => {
                    let e: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => {
                    self.pos -= 1;
                    return self.err("expected a non-negative integer exponent");
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.next() {
            Some(Token::Int(n)) => {
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Token::Int(d)) => {
                            if d.is_zero() {
                                return Err(PolyError::ZeroDenominator);
                            }
                            Ok(Polynomial::constant(self.ring, Rational::new(n, d)))
                        }
                        _ => {
                            self.pos -= 1;
                            self.err("expected a positive integer denominator")
                        }
                    }
                } else {
                    Ok(Polynomial::constant(self.ring, Rational::from_integer(n)))
                }
            }
            Some(Token::Ident(name)) => Polynomial::var_named(self.ring, &name),
            Some(Token::LParen) => {
                let inner = self.sum()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        self.err("expected `)`")
                    }
                }
            }
            _ => {
                self.pos -= 1;
                self.err("expected a coefficient, variable or `(`")
            }
        }
    }
}

/// Parses `text` as a polynomial in `ring`.
pub fn parse_poly(text: &str, ring: &RingRef) -> Result<Polynomial, PolyError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(PolyError::Syntax {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        ring,
        len: text.len(),
    };
    let out = p.sum()?;
    if p.pos < p.tokens.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Renders `p` in the canonical text form (same as `Display`).
pub fn format_poly(p: &Polynomial) -> String {
    p.to_string()
}
