//! Text grammar for polynomials and scalars, and the matching printer.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ['^' ['-'] integer]
//! atom   := integer | 'I' | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by units of the coefficient ring.

use std::sync::Arc;

use super::poly::{LaurentPoly, Ring, VarKind};
use super::scalar::Scalar;
use crate::error::{Error, Result};

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        let before = &self.chars[..self.pos.min(self.chars.len())];
        let line = 1 + before.iter().filter(|&&c| c == '\n').count();
        let column = 1 + before.iter().rev().take_while(|&&c| c != '\n').count();
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<i64>().map_err(|_| self.error("integer too large"))
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.factor()?;
                acc = acc.try_div(&d).map_err(|e| {
                    let mut p = Parser {
                        ring: self.ring,
                        chars: self.chars.clone(),
                        pos: at,
                    };
                    p.skip_ws();
                    p.error(e.to_string())
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        let (base, var) = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let k = self.integer()?;
        let k = u32::try_from(k).map_err(|_| self.error("exponent too large"))?;
        if !negative {
            return Ok(base.pow(k));
        }
        if let Some(i) = var {
            if self.ring.kind(i) == VarKind::Ordinary {
                return Err(Error::NegativeExponent(self.ring.names()[i].clone()));
            }
        }
        let inv = base.unit_inverse().map_err(|e| self.error(e.to_string()))?;
        Ok(inv.pow(k))
    }

    fn atom(&mut self) -> Result<(LaurentPoly, Option<usize>)> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok((e, None))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok((LaurentPoly::int(self.ring, v), None))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len() {
                    let c = self.chars[self.pos];
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if name == "I" {
                    return Ok((LaurentPoly::constant(self.ring, Scalar::i()), None));
                }
                let i = self.ring.index_of(&name)?;
                Ok((LaurentPoly::var_index(self.ring, i), Some(i)))
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses `text` as a polynomial over `ring`.
pub fn parse_poly(ring: &Arc<Ring>, text: &str) -> Result<LaurentPoly> {
    let mut p = Parser {
        ring,
        chars: text.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

/// Parses a constant such as `-3/4` or `1/2+5/3*I`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let ring = Ring::new(&[]);
    let p = parse_poly(&ring, text)?;
    p.as_constant().ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: format!("`{text}` is not a constant"),
    })
}

fn print_numerator(p: &LaurentPoly) -> String {
    let names = p.ring().names();
    let mut out = String::new();
    for (exps, c) in p.terms().iter().rev() {
        let mono: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| if x == 1 { names[i].clone() } else { format!("{}^{}", names[i], x) })
            .collect();
        let coef = if c.is_compound() { format!("({c})") } else { c.to_string() };
        let mut term = if mono.is_empty() {
            coef
        } else if *c == Scalar::one() {
            mono.join("*")
        } else if *c == -Scalar::one() {
            format!("-{}", mono.join("*"))
        } else {
            format!("{coef}*{}", mono.join("*"))
        };
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            term = rest.to_string();
            out.push_str(" - ");
            out.push_str(&term);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Prints in the grammar accepted by [`parse_poly`].
pub fn print_poly(p: &LaurentPoly) -> String {
    let num = print_numerator(p);
    if !p.has_denominator() {
        return num;
    }
    let mut out = format!("({num})");
    for (k, &m) in p.den().iter().enumerate() {
        if m == 0 {
            continue;
        }
        let d = p.ring().denominator(k);
        let d = print_numerator(&d);
        if m == 1 {
            out.push_str(&format!("/({d})"));
        } else {
            out.push_str(&format!("/({d})^{m}"));
        }
    }
    out
}
