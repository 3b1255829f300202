//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: `+ - * / ^`, parentheses, integer literals and declared variable
//! names. Division is only allowed by nonzero constants, so that every
//! printed polynomial (which may carry rational coefficients) parses back.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::poly::{PolyRing, Polynomial};

/// Parses and fully expands `text` in `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    parse_polynomial_at(text, ring, 1, 1)
}

/// Like [`parse_polynomial`], reporting errors relative to a position in a
/// larger document.
pub(crate) fn parse_polynomial_at(
    text: &str,
    ring: &Arc<PolyRing>,
    line: usize,
    column: usize,
) -> Result<Polynomial> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        ring,
        line,
        column,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let f = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(f)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a Arc<PolyRing>,
    line: usize,
    column: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column + self.pos,
            message: message.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    self.pos = at;
                    return Err(self.error("division is only allowed by nonzero constants"));
                }
                acc = acc.scale(&d.constant_term().inv());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected a non-negative integer exponent"));
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let e: u32 = digits.parse().map_err(|_| {
                self.pos = start;
                self.error("exponent too large")
            })?;
            if e > u16::MAX as u32 {
                self.pos = start;
                return Err(self.error("exponent too large"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let n: BigInt = digits.parse().expect("digits parse");
                Ok(Polynomial::constant(
                    self.ring,
                    self.ring.field().from_bigint(&n),
                ))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                while self
                    .peek()
                    .is_some_and(|c| c.is_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::UnknownVariable {
                        name,
                        line: self.line,
                        column: self.column + start,
                    }),
                }
            }
            Some(c) => Err(self.error(&format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}
