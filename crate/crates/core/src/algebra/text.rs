//! Text syntax for polynomials.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := power (('*' power) | ('/' number))*
//! power := atom ['^' integer]
//! atom  := number | variable | '(' expr ')' | 'O(' variable ['^' integer] ')'
//! ```
//!
//! Numbers are decimal integers; `p/q` arises from division by a literal.
//! Variables are `A<i>`, `C<i>_<j>`, `X`, `Y`, `T`, `z` (lowercase `x y t`
//! accepted). An `O(...)` term is only legal at the top level and records a
//! truncation order.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Coeff, MultiPoly, Rational, Var};
use crate::error::{Error, Result};

type Poly = MultiPoly<Rational>;

/// Polynomial plus an optional `O(v^k)` truncation marker.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedExpr {
    pub poly: Poly,
    pub order: Option<(Var, u32)>,
}

pub fn parse_poly(src: &str) -> Result<Poly> {
    let e = parse_expr(src)?;
    if e.order.is_some() {
        return Err(Parser::new(src).error_at(src.find('O').unwrap_or(0), "unexpected O-term"));
    }
    Ok(e.poly)
}

pub fn parse_expr(src: &str) -> Result<ParsedExpr> {
    let mut p = Parser::new(src);
    let out = p.expr(true)?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(ParsedExpr {
        poly: out,
        order: p.order,
    })
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    order: Option<(Var, u32)>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            order: None,
        }
    }

    fn error_at(&self, pos: usize, msg: &str) -> Error {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse {
            line,
            column,
            message: msg.to_string(),
        }
    }

    fn error(&self, msg: &str) -> Error {
        self.error_at(self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn integer(&mut self) -> Result<BigInt> {
        let d = self.digits().ok_or_else(|| self.error("expected a number"))?;
        Ok(d.parse().expect("digits parse"))
    }

    fn small_integer(&mut self) -> Result<u32> {
        let at = self.pos;
        let d = self.digits().ok_or_else(|| self.error("expected an exponent"))?;
        d.parse().map_err(|_| self.error_at(at, "exponent too large"))
    }

    fn expr(&mut self, top: bool) -> Result<Poly> {
        let mut acc = Poly::zero();
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else {
                let plus = self.eat(b'+');
                if !first && !plus {
                    break;
                }
                false
            };
            if top && self.peek() == Some(b'O') && self.bytes.get(self.pos + 1) == Some(&b'(') {
                self.order_term()?;
            } else {
                let t = self.term()?;
                acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            }
            first = false;
            match self.peek() {
                Some(b'+') | Some(b'-') => {}
                _ => break,
            }
        }
        Ok(acc)
    }

    fn order_term(&mut self) -> Result<()> {
        let at = self.pos;
        if self.order.is_some() {
            return Err(self.error("repeated O-term"));
        }
        self.pos += 1;
        self.expect(b'(')?;
        let v = self.variable()?.ok_or_else(|| self.error("expected a variable"))?;
        let k = if self.eat(b'^') { self.small_integer()? } else { 1 };
        self.expect(b')')?;
        if k == 0 {
            return Err(self.error_at(at, "O-term must have positive order"));
        }
        self.order = Some((v, k));
        Ok(())
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.power()?);
            } else if self.peek() == Some(b'/') {
                self.pos += 1;
                let at = self.pos;
                let d = self.integer()?;
                if d.is_zero() {
                    return Err(self.error_at(at, "division by zero"));
                }
                acc = acc.scale(&Rational::new(1.into(), d));
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.small_integer()?;
            return Ok(Coeff::pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr(false)?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Poly::constant(Rational::from_integer(n)))
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            _ => match self.variable()? {
                Some(v) => Ok(Poly::var(v)),
                None => Err(self.error("expected a number, variable or `(`")),
            },
        }
    }

    fn variable(&mut self) -> Result<Option<Var>> {
        self.skip_ws();
        let start = self.pos;
        let Some(&c) = self.bytes.get(self.pos) else {
            return Ok(None);
        };
        if !c.is_ascii_alphabetic() {
            return Ok(None);
        }
        self.pos += 1;
        while self.pos < self.bytes.len() && (self.bytes[self.pos].is_ascii_digit() || self.bytes[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = &self.src[start..self.pos];
        name.parse::<Var>()
            .map(Some)
            .map_err(|_| self.error_at(start, &format!("unknown variable `{name}`")))
    }
}
