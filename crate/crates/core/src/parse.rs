//! Polynomial text grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := coeff ("*" factor)* | factor ("*" factor)*
//! factor := var ("^" nat)?
//! coeff  := int ("/" posint)?
//! ```
//!
//! `var` must be one of the ring's declared identifiers. Error positions are
//! byte offsets into the input.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::{Monomial, Poly, Ring};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(Error::parse(start, format!("unexpected character `{ch}`")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<Ring>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.ring);
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            negate = true;
        }
        loop {
            let (m, c) = self.term()?;
            acc.add_term(m, if negate { -c } else { c });
            match self.peek() {
                None => return Ok(acc),
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                Some(_) => return Err(Error::parse(self.offset(), "expected `+`, `-` or end of input")),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let field = self.ring.field();
        let n = self.ring.nvars();
        let mut mono = Monomial::one(n);
        let coeff = match self.peek() {
            Some(Tok::Int(_)) => {
                let at = self.offset();
                let Some(Tok::Int(num)) = self.bump() else { unreachable!() };
                let den = if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let at_den = self.offset();
                    match self.bump() {
                        Some(Tok::Int(d)) if !d.is_zero() => d,
                        _ => return Err(Error::parse(at_den, "expected a positive denominator")),
                    }
                } else {
                    BigInt::from(1)
                };
                let c = field
                    .from_ratio(&num, &den)
                    .map_err(|_| Error::parse(at, format!("denominator vanishes in {field}")))?;
                if self.peek() != Some(&Tok::Star) {
                    return Ok((mono, c));
                }
                self.bump();
                mono = mono.mul(&self.factor()?);
                c
            }
            _ => {
                mono = self.factor()?;
                field.one()
            }
        };
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            mono = mono.mul(&self.factor()?);
        }
        Ok((mono, coeff))
    }

    fn factor(&mut self) -> Result<Monomial> {
        let at = self.offset();
        let name = match self.bump() {
            Some(Tok::Ident(name)) => name,
            Some(_) => return Err(Error::parse(at, "expected a variable")),
            None => return Err(Error::parse(at, "unexpected end of input")),
        };
        let idx = self.ring.var_index(&name).ok_or(Error::UnknownVariable(name))?;
        let mut exp = 1u32;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let at_exp = self.offset();
            exp = match self.bump() {
                Some(Tok::Int(e)) => u32::try_from(e)
                    .map_err(|_| Error::parse(at_exp, "exponent too large"))?,
                _ => return Err(Error::parse(at_exp, "expected a natural exponent")),
            };
        }
        let mut e = vec![0; self.ring.nvars()];
        e[idx] = exp;
        Ok(Monomial::new(e))
    }
}

/// Parses `text` into a polynomial of `ring`.
pub fn parse_poly(text: &str, ring: &Arc<Ring>) -> Result<Poly> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty polynomial"));
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        ring,
    };
    parser.expr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ring() -> Arc<Ring> {
        Ring::standard(2, FieldSpec::Rationals)
    }

    #[test]
    fn parses_examples() {
        let r = ring();
        let p = parse_poly("x1^2 - x2^2", &r).unwrap();
        let expected = &Poly::var(&r, 0).pow(2) - &Poly::var(&r, 1).pow(2);
        assert_eq!(p, expected);
        assert!(parse_poly("0", &r).unwrap().is_zero());
        let p = parse_poly("1/2*x1*x2 + x1*x2", &r).unwrap();
        let c = FieldSpec::Rationals.from_ratio(&3.into(), &2.into()).unwrap();
        assert_eq!(p, Poly::monomial(&r, Monomial::new(vec![1, 1]), c));
    }

    #[test]
    fn leading_minus_and_constants() {
        let r = ring();
        let p = parse_poly(" - x1 + 3 -  2/4 ", &r).unwrap();
        assert_eq!(p.to_string(), "-x1 + 5/2");
        assert_eq!(parse_poly("x1^0", &r).unwrap(), Poly::one(&r));
    }

    #[test]
    fn reports_errors_with_positions() {
        let r = ring();
        assert_eq!(parse_poly("x1 + y", &r), Err(Error::UnknownVariable("y".into())));
        assert!(matches!(parse_poly("x1 + ", &r), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_poly("x1 ^ x2", &r), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_poly("1/0*x1", &r), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("x1 x2", &r), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_poly("x1 % 2", &r), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_poly("x1*2", &r), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_poly("", &r), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn prime_field_coefficients() {
        let r = Ring::standard(1, FieldSpec::prime(5).unwrap());
        assert_eq!(parse_poly("1/2*x1", &r).unwrap().to_string(), "-2*x1");
        assert!(matches!(parse_poly("1/5", &r), Err(Error::Parse { pos: 0, .. })));
    }
}
