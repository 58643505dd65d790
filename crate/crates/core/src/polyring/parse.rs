//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' INT)?
//! atom  := INT | IDENT | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant.

use num_bigint::BigInt;

use super::Poly;
use crate::error::{Error, Result};
use crate::scalars::univariate::UniPoly;
use crate::scalars::Field;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().unwrap()), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(Error::Syntax {
                position: i,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    field: &'a Field,
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> usize {
        self.toks[self.pos].1
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.here(),
            message: message.into(),
        })
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Tok::Sym('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Sym('/') => {
                    self.pos += 1;
                    let at = self.here();
                    let d = self.unary()?;
                    if d.total_degree().is_some_and(|k| k > 0) {
                        return Err(Error::Syntax {
                            position: at,
                            message: "division by a non-constant".into(),
                        });
                    }
                    let inv = self.field.inv(&d.constant_term()).ok_or(Error::Syntax {
                        position: at,
                        message: "division by zero".into(),
                    })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if *self.peek() == Tok::Sym('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek().clone() {
            Tok::Int(n) => {
                let k: u32 = match u32::try_from(&n) {
                    Ok(k) if k <= 10_000 => k,
                    _ => return self.error("exponent too large"),
                };
                self.pos += 1;
                Ok(base.pow(k))
            }
            _ => self.error("expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Poly::constant(self.field, self.nvars(), self.field.from_bigint(&n)))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                if let Some(i) = self.names.iter().position(|v| *v == name) {
                    return Ok(Poly::var(self.field, self.nvars(), i));
                }
                if name == "t" {
                    return match self.field.generator() {
                        Some(g) => Ok(Poly::constant(self.field, self.nvars(), g)),
                        None => Err(Error::CoefficientNotInField(name)),
                    };
                }
                Err(Error::UnknownVariable(name))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if *self.peek() != Tok::Sym(')') {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::End => self.error("unexpected end of input"),
            Tok::Sym(c) => self.error(format!("unexpected `{c}`")),
        }
    }
}

pub(super) fn parse(text: &str, field: &Field, names: &[&str]) -> Result<Poly> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        field,
        names,
    };
    let out = parser.expr()?;
    if *parser.peek() != Tok::End {
        return parser.error("unexpected trailing input");
    }
    Ok(out)
}

/// Parses a univariate polynomial in `var`, returning coefficients low
/// degree first.
pub fn parse_univariate(text: &str, field: &Field, var: &str) -> Result<UniPoly> {
    let poly = parse(text, field, &[var])?;
    let d = poly.total_degree().unwrap_or(0) as usize;
    let mut out = vec![field.zero(); d + 1];
    for (e, c) in poly.terms() {
        out[e.exps()[0] as usize] = c.clone();
    }
    crate::scalars::univariate::trim(field, &mut out);
    Ok(out)
}
