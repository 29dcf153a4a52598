//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := factor ("*" factor)*
//! factor   := "-" factor | base ("^" nat)?
//! base     := rational | "x" | "y" | "(" expr ")"
//! rational := int ("/" posint)?
//! ```
//!
//! Multiplication must be written explicitly. A leading minus binds looser
//! than `^`, so `-x^2` is `-(x^2)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::BiPoly;
use crate::error::{Error, Result};
use crate::Rat;

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 4096;

pub fn parse(src: &str) -> Result<BiPoly<Rat>> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected character {:?}", p.peek_char())));
    }
    Ok(e)
}

impl std::str::FromStr for BiPoly<Rat> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .unwrap_or('?')
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    /// Consume `c` after optional whitespace.
    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<BiPoly<Rat>> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly<Rat>> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly<Rat>> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                self.pos = start;
                return Err(self.error("exponent must be a natural number"));
            }
            let e: u32 = digits
                .parse()
                .ok()
                .filter(|e| *e <= MAX_EXPONENT)
                .ok_or_else(|| Error::Parse {
                    pos: start,
                    msg: format!("exponent {digits} too large (max {MAX_EXPONENT})"),
                })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<BiPoly<Rat>> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(b) if b.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digit string");
                let mut den = BigInt::one();
                let save = self.pos;
                if self.eat(b'/') {
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error("expected positive integer denominator"));
                    }
                    den = d.parse().expect("digit string");
                    if den.is_zero() {
                        return Err(Error::Parse {
                            pos: save,
                            msg: "zero denominator".into(),
                        });
                    }
                }
                Ok(BiPoly::constant(Rat::new(num, den)))
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|b| b.is_ascii_alphanumeric() || b == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]);
                match name.as_ref() {
                    "x" => Ok(BiPoly::x()),
                    "y" => Ok(BiPoly::y()),
                    other => Err(Error::Parse {
                        pos: start,
                        msg: format!("unknown variable '{other}'"),
                    }),
                }
            }
            Some(_) => Err(self.error(&format!("unexpected character {:?}", self.peek_char()))),
        }
    }
}
