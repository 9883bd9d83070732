//! Expression grammar shared by the recurrence config format and tests:
//! integers, identifiers, shifted subscripts `x[n+j]`, the operators
//! `+ - * / ^` with integer exponents, and parentheses.

use crate::laurent::RationalFunction;
use crate::poly::{MultiPoly, PolyError, VarTable};
use num_bigint::BigInt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("subscripted symbols are not allowed here")]
    UnexpectedSubscript,
    #[error("division by an expression that is identically zero")]
    ZeroDenominator,
    #[error("denominator is not 1: expected a polynomial")]
    NotPolynomial,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Sym(String),
    /// `name[n+shift]`
    Shift(String, i64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parse the defining equation of a recurrence: `name[n+J] = expr`, the
/// highest index isolated on the left.
pub fn parse_equation(text: &str) -> Result<(String, i64, Expr), ParseError> {
    let mut p = Parser::new(text);
    let lhs = p.expr()?;
    p.skip_ws();
    if !p.eat(b'=') {
        return Err(p.err("expected `=`"));
    }
    let rhs = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    match lhs {
        Expr::Shift(name, k) => Ok((name, k, rhs)),
        _ => Err(ParseError::Syntax {
            pos: 0,
            msg: "left-hand side must be a single subscripted term like x[n+2]".into(),
        }),
    }
}

/// Lower an expression over a fixed variable table into a reduced rational
/// function. Subscripted symbols are rejected.
pub fn lower_rational(e: &Expr, vars: &Arc<VarTable>) -> Result<RationalFunction, ParseError> {
    Ok(match e {
        Expr::Int(k) => RationalFunction::constant(vars, k.clone()),
        Expr::Sym(name) => {
            let idx = vars
                .position(name)
                .ok_or_else(|| ParseError::UnknownSymbol(name.clone()))?;
            RationalFunction::var(vars, idx)
        }
        Expr::Shift(_, _) => return Err(ParseError::UnexpectedSubscript),
        Expr::Neg(a) => lower_rational(a, vars)?.neg(),
        Expr::Add(a, b) => lower_rational(a, vars)?.add(&lower_rational(b, vars)?),
        Expr::Sub(a, b) => lower_rational(a, vars)?.sub(&lower_rational(b, vars)?),
        Expr::Mul(a, b) => lower_rational(a, vars)?.mul(&lower_rational(b, vars)?),
        Expr::Div(a, b) => {
            let d = lower_rational(b, vars)?;
            if d.is_zero() {
                return Err(ParseError::ZeroDenominator);
            }
            lower_rational(a, vars)?.div(&d)?
        }
        Expr::Pow(a, k) => {
            let base = lower_rational(a, vars)?;
            if *k < 0 && base.is_zero() {
                return Err(ParseError::ZeroDenominator);
            }
            base.pow(*k)?
        }
    })
}

pub fn parse_rational(text: &str, vars: &Arc<VarTable>) -> Result<RationalFunction, ParseError> {
    lower_rational(&parse_expr(text)?, vars)
}

pub fn parse_poly(text: &str, vars: &Arc<VarTable>) -> Result<MultiPoly, ParseError> {
    let f = parse_rational(text, vars)?;
    if !f.den().is_one() {
        return Err(ParseError::NotPolynomial);
    }
    Ok(f.num().clone())
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.signed_int()?;
            let exp = i64::try_from(exp).map_err(|_| self.err("exponent out of range"))?;
            return Ok(Expr::Pow(Box::new(base), exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.ident();
                if self.peek() == Some(b'[') {
                    self.pos += 1;
                    self.skip_ws();
                    if !self.eat(b'n') {
                        return Err(self.err("expected the index symbol `n`"));
                    }
                    let shift = match self.peek() {
                        Some(b'+') | Some(b'-') => {
                            let s = self.signed_int()?;
                            i64::try_from(s).map_err(|_| self.err("index shift out of range"))?
                        }
                        _ => 0,
                    };
                    if !self.eat(b']') {
                        return Err(self.err("expected `]`"));
                    }
                    Ok(Expr::Shift(name, shift))
                } else {
                    Ok(Expr::Sym(name))
                }
            }
            _ => Err(self.err("expected a number, symbol, or `(`")),
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn signed_int(&mut self) -> Result<BigInt, ParseError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let v = self.integer()?;
        Ok(if neg { -v } else { v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_round_trip() {
        let vt = VarTable::new(&["t", "u"]);
        let f = parse_poly("(1+t)^2*u - t^3", &vt).unwrap();
        assert_eq!(f.to_string(), "-t^3+t^2*u+2*t*u+u");
    }

    #[test]
    fn rational_with_negative_power() {
        let vt = VarTable::new(&["t"]);
        let f = parse_rational("t^-2", &vt).unwrap();
        assert!(f.num().is_one());
        assert_eq!(f.den().to_string(), "t^2");
    }

    #[test]
    fn equation_form() {
        let (name, k, _) = parse_equation("y[n+2] = (y[n+1]*y[n-1]+y[n]^2)/y[n-2]").unwrap();
        assert_eq!(name, "y");
        assert_eq!(k, 2);
    }

    #[test]
    fn malformed_input_reports_position() {
        let e = parse_expr("1 + (2 *").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { .. }));
        assert!(parse_equation("x[n+1] + 1").is_err());
    }
}
