//! Expression parser and printer.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' exponent)?
//! exponent:= integer | '(' '-'? integer ')'
//! primary := integer | identifier | '(' expr ')'
//! ```
//!
//! Multiplication is always explicit. A rational literal `p/q` is read as a
//! quotient of integers. Error positions are 1-based character columns.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::context::Ctx;
use super::laurent::{LaurentPoly, Monomial, Rat};
use super::rational::RationalFunction;
use super::ArithError;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ctx: &'a Ctx,
}

fn syntax(position: usize, message: impl Into<String>) -> ArithError {
    ArithError::Syntax { position, message: message.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn expect(&mut self, c: char) -> Result<(), ArithError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(syntax(self.column(), format!("expected '{c}', found '{d}'"))),
            None => Err(syntax(self.column(), format!("expected '{c}', found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, ArithError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.try_add(&rhs)?;
                }
                Some('-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.try_sub(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, ArithError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.try_mul(&rhs)?;
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.column();
                    let rhs = self.unary()?;
                    if rhs.is_zero() {
                        return Err(syntax(at, "division by zero"));
                    }
                    acc = acc.try_div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, ArithError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            let v = self.unary()?;
            return Ok(-&v);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction, ArithError> {
        let base = self.primary()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.column();
        let e = self.exponent()?;
        if e < 0 && base.is_zero() {
            return Err(syntax(at, "negative power of zero"));
        }
        Ok(base.pow(e)?)
    }

    fn exponent(&mut self) -> Result<i64, ArithError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let neg = if self.peek() == Some('-') {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let n = self.small_integer()?;
                self.expect(')')?;
                Ok(if neg { -n } else { n })
            }
            Some(c) if c.is_ascii_digit() => self.small_integer(),
            Some(c) => Err(syntax(self.column(), format!("expected exponent, found '{c}'"))),
            None => Err(syntax(self.column(), "expected exponent, found end of input")),
        }
    }

    fn digits(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn small_integer(&mut self) -> Result<i64, ArithError> {
        let at = {
            self.skip_ws();
            self.column()
        };
        let d = self.digits();
        if d.is_empty() {
            return Err(syntax(at, "expected integer"));
        }
        d.parse::<i64>()
            .ok()
            .filter(|n| *n <= u32::MAX as i64)
            .ok_or_else(|| syntax(at, "exponent out of range"))
    }

    fn primary(&mut self) -> Result<RationalFunction, ArithError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().expect("digits parse");
                Ok(RationalFunction::from_constant(self.ctx, BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let at = self.column();
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.ctx.index_of(&name) {
                    Some(i) => Ok(RationalFunction::var(self.ctx, i)),
                    None => Err(ArithError::UnknownVariableAt { name, position: at }),
                }
            }
            Some(c) => Err(syntax(self.column(), format!("unexpected '{c}'"))),
            None => Err(syntax(self.column(), "unexpected end of input")),
        }
    }
}

/// Parses an expression into a normalized rational function over `ctx`.
pub fn parse_expr(text: &str, ctx: &Ctx) -> Result<RationalFunction, ArithError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, ctx };
    let v = p.expr()?;
    match p.peek() {
        None => Ok(v),
        Some(c) => Err(syntax(p.column(), format!("unexpected '{c}'"))),
    }
}

/// Parses an expression that must denote a Laurent polynomial.
pub fn parse_laurent(text: &str, ctx: &Ctx) -> Result<LaurentPoly, ArithError> {
    let f = parse_expr(text, ctx)?;
    f.to_laurent().ok_or_else(|| ArithError::NotLaurent(text.to_string()))
}

fn write_monomial(out: &mut String, ctx: &Ctx, m: &Monomial) {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(ctx.name(i));
        if e < 0 {
            out.push_str(&format!("^({e})"));
        } else if e > 1 {
            out.push_str(&format!("^{e}"));
        }
    }
}

fn write_rat(out: &mut String, c: &Rat) {
    if c.is_integer() {
        out.push_str(&c.numer().to_string());
    } else {
        out.push_str(&format!("{}/{}", c.numer(), c.denom()));
    }
}

/// Formats terms in descending graded lex order.
pub fn format_laurent(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            write_rat(&mut out, &a);
        } else {
            if !a.is_one() {
                write_rat(&mut out, &a);
                out.push('*');
            }
            write_monomial(&mut out, p.ctx(), m);
        }
    }
    out
}

/// Laurent form when the denominator is a monomial, `(num)/(den)` otherwise.
pub fn format_rational(f: &RationalFunction) -> String {
    match f.to_laurent() {
        Some(p) => format_laurent(&p),
        None => format!("({})/({})", format_laurent(f.numerator()), format_laurent(f.denominator())),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_laurent(self))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(self))
    }
}
