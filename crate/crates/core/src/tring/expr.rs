//! Element grammar:
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := atom ("^" nat)*
//! atom   := int ["/" int] | "x[" melem "]" | "(" expr ")"
//! ```
//!
//! `melem` is a signed sum of `c*literal` terms.

use num_bigint::BigInt;

use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::family::{BimElement, Family};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Scalar),
    Letter(BimElement),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn num(n: i64) -> Expr {
        Expr::Num(Scalar::from_integer(BigInt::from(n)))
    }
    pub fn letter(m: BimElement) -> Expr {
        Expr::Letter(m)
    }
    pub fn add(self, other: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(other))
    }
    pub fn sub(self, other: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(other))
    }
    pub fn mul(self, other: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(other))
    }
    pub fn pow(self, n: u32) -> Expr {
        Expr::Pow(Box::new(self), n)
    }
    pub fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }

    /// Prints the tree in the grammar, fully parenthesized where needed.
    pub fn display(&self, family: &Family) -> String {
        match self {
            Expr::Num(c) if *c < Scalar::from_integer(0.into()) => format!("({c})"),
            Expr::Num(c) => c.to_string(),
            Expr::Letter(m) => match family.format_letter(m) {
                Some(lit) => format!("x[{lit}]"),
                None => format!("x[{}]", family.format_bim(m)),
            },
            Expr::Neg(x) => format!("(-{})", x.display(family)),
            Expr::Add(x, y) => format!("({} + {})", x.display(family), y.display(family)),
            Expr::Sub(x, y) => format!("({} - {})", x.display(family), y.display(family)),
            Expr::Mul(x, y) => format!("{}*{}", x.display(family), y.display(family)),
            Expr::Pow(x, n) => format!("{}^{n}", x.display(family)),
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    family: &'a Family,
}

pub fn parse_expr(text: &str, family: &Family) -> Result<Expr> {
    let mut p = Parser { text, pos: 0, family };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        let before = &self.text[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(self.pos, |i| self.pos - i - 1) + 1;
        Error::Syntax { offset: self.pos, line, column, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = if self.eat('-') { self.term()?.neg() } else { self.term()? };
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut acc = self.atom()?;
        while self.eat('^') {
            self.skip_ws();
            let digits = self.digits();
            let n = digits.parse::<u32>().map_err(|_| self.error("expected an exponent"))?;
            acc = acc.pow(n);
        }
        Ok(acc)
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some('x') => {
                self.pos += 1;
                if !self.eat('[') {
                    return Err(self.error("expected '[' after 'x'"));
                }
                let start = self.pos;
                let Some(len) = self.text[start..].find(']') else {
                    self.pos = self.text.len();
                    return Err(self.error("expected ']'"));
                };
                let m = self.family.parse_bim(&self.text[start..start + len])?;
                self.pos = start + len + 1;
                Ok(Expr::Letter(m))
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().parse().expect("digit run");
                if self.eat('/') {
                    self.skip_ws();
                    let d: BigInt = self.digits().parse().map_err(|_| self.error("expected a denominator"))?;
                    if d == BigInt::from(0) {
                        return Err(self.error("zero denominator"));
                    }
                    return Ok(Expr::Num(Scalar::new(n, d)));
                }
                Ok(Expr::Num(Scalar::from_integer(n)))
            }
            Some(_) => Err(self.error("expected a number, 'x[' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
