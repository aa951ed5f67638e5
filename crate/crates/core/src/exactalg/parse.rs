//! Polynomial input grammar.
//!
//! ```text
//! expr   = [sign] term { sign term }
//! sign   = "+" | "-"
//! term   = factor { "*" factor }
//! factor = atom [ "^" integer ]
//! atom   = integer [ "/" integer ] | variable | "(" expr ")"
//! ```
//!
//! Variables must be declared by the ring. Whitespace is ignored.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::Scalar;
use super::poly::{Poly, PolyRing};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '+' | '-' | '*' | '^' | '/' | '(' | ')' => {
                out.push(match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                });
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Int(s.parse().expect("digits")));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            _ => return Err(Error::Parse(format!("unexpected character `{c}` in `{text}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    toks: Vec<Tok>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in `{}`", self.text))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut neg = false;
        if let Some(Tok::Plus | Tok::Minus) = self.peek() {
            neg = self.bump() == Some(Tok::Minus);
        }
        let first = self.term()?;
        let mut acc = if neg { -&first } else { first };
        while let Some(Tok::Plus | Tok::Minus) = self.peek() {
            let op = self.bump();
            let t = self.term()?;
            acc = if op == Some(Tok::Plus) { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Tok::Int(e)) => {
                    let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.bump() {
            Some(Tok::Int(n)) => {
                let mut q = Scalar::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(d)) if !d.is_zero() => q /= Scalar::from_integer(d),
                        _ => return Err(self.err("expected nonzero denominator")),
                    }
                }
                let c = self.ring.field().from_rational(&q)?;
                Ok(self.ring.constant(c))
            }
            Some(Tok::Ident(name)) => self.ring.var_named(&name),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(t) => Err(self.err(&format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub(crate) fn parse_poly(ring: &Arc<PolyRing>, text: &str) -> Result<Poly> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { ring, toks, pos: 0, text };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Field;

    #[test]
    fn grammar() {
        let r = PolyRing::new(Field::Rationals, ["x", "y"]).unwrap();
        assert_eq!(r.parse("x^2+y^3").unwrap().to_string(), "y^3 + x^2");
        assert_eq!(r.parse("(x+y)^2").unwrap().to_string(), "x^2 + 2*x*y + y^2");
        assert!(r.parse("-x - -y").unwrap_err().to_string().contains("unexpected"));
        assert_eq!(r.parse("0").unwrap().to_string(), "0");
    }

    #[test]
    fn rejects_garbage() {
        let r = PolyRing::new(Field::Rationals, ["x", "y"]).unwrap();
        for bad in ["", "z", "x^", "x^y", "x+", "(x", "x)", "1/0", "x$"] {
            assert!(r.parse(bad).is_err(), "{bad}");
        }
        let f3 = PolyRing::new(Field::Prime(3), ["x"]).unwrap();
        assert!(f3.parse("1/3").is_err());
        assert_eq!(f3.parse("4*x").unwrap().to_string(), "x");
    }
}
