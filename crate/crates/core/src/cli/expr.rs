//! Polynomial expressions such as `1 - 7/8 m` or `(w + 3z)^2/4`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::poly::{Coefficient, PolyError, Polynomial, Ring, VarTable};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Coefficient),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExprError {
    #[error("column {0}: unexpected character {1:?}")]
    Char(usize, char),
    #[error("column {0}: {1}")]
    Syntax(usize, String),
    #[error("division by a non-constant or zero")]
    Division,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit()
            || (c == '.' && cs.get(i + 1).is_some_and(char::is_ascii_digit))
        {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '.') {
                i += 1;
            }
            out.push((st + 1, Tok::Num(cs[st..i].iter().collect())));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push((st + 1, Tok::Ident(cs[st..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i + 1, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ExprError::Char(i + 1, c));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn err(&self, msg: &str) -> ExprError {
        ExprError::Syntax(self.col(), msg.to_string())
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == '+' {
                Expr::Add(lhs.into(), rhs.into())
            } else {
                Expr::Sub(lhs.into(), rhs.into())
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().cloned() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    lhs = Expr::Mul(lhs.into(), self.unary()?.into());
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    lhs = Expr::Div(lhs.into(), self.unary()?.into());
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('(')) => {
                    lhs = Expr::Mul(lhs.into(), self.power()?.into());
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(self.unary()?.into()));
        }
        if let Some(Tok::Op('+')) = self.peek() {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let k: u32 = n
                        .parse()
                        .map_err(|_| self.err("exponent must be a non-negative integer"))?;
                    self.pos += 1;
                    return Ok(Expr::Pow(base.into(), k));
                }
                _ => return Err(self.err("expected an integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(parse_number(&n).ok_or_else(|| {
                    ExprError::Syntax(self.col(), format!("bad number {n}"))
                })?))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => Err(self.err("expected a number, variable or '('")),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Integers are exact; decimals are floating point.
pub fn parse_number(s: &str) -> Option<Coefficient> {
    if s.contains('.') {
        let v: f64 = s.parse().ok()?;
        return Some(Coefficient::float(Complex64::new(v, 0.0)));
    }
    let v: BigInt = s.parse().ok()?;
    Some(Coefficient::from_bigint(v))
}

pub fn parse_expr(s: &str) -> Result<Expr, ExprError> {
    let toks = lex(s)?;
    let end = s.chars().count() + 1;
    let mut p = Parser { toks, pos: 0, end };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

impl Expr {
    /// Variable names in order of first appearance.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
        }
    }

    pub fn eval(&self, vars: &Arc<VarTable>) -> Result<Polynomial, ExprError> {
        Ok(match self {
            Expr::Num(c) => Polynomial::constant(vars, c.clone()),
            Expr::Var(v) => Polynomial::var(vars, Ring::Exact, v)?,
            Expr::Add(a, b) => {
                let (x, y) = promote(a.eval(vars)?, b.eval(vars)?);
                x.add(&y)?
            }
            Expr::Sub(a, b) => {
                let (x, y) = promote(a.eval(vars)?, b.eval(vars)?);
                x.sub(&y)?
            }
            Expr::Mul(a, b) => {
                let (x, y) = promote(a.eval(vars)?, b.eval(vars)?);
                x.mul(&y)?
            }
            Expr::Div(a, b) => {
                let d = b.eval(vars)?;
                if !d.is_constant() || d.constant_term().is_zero() {
                    return Err(ExprError::Division);
                }
                a.eval(vars)?.scale(&d.constant_term().inv())
            }
            Expr::Neg(a) => a.eval(vars)?.neg(),
            Expr::Pow(a, k) => a.eval(vars)?.pow(*k),
        })
    }
}

fn promote(a: Polynomial, b: Polynomial) -> (Polynomial, Polynomial) {
    if a.ring() == b.ring() {
        (a, b)
    } else {
        (a.to_float(), b.to_float())
    }
}

/// Parses and evaluates over a table holding exactly the expression's variables.
pub fn parse_polynomial(s: &str) -> Result<Polynomial, ExprError> {
    let e = parse_expr(s)?;
    let vars = VarTable::new(&e.variables());
    e.eval(&vars)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(n: i64, d: i64) -> Coefficient {
        Coefficient::from_ratio(Ring::Exact, n, d)
    }

    #[test]
    fn parses_and_evaluates() {
        let p = parse_polynomial("1 - 7/8 m").unwrap();
        assert_eq!(p.constant_term(), Coefficient::one(Ring::Exact));
        assert_eq!(p.coeff(&[("m", 1)]), rational(-7, 8));
        let q = parse_polynomial("(w + 3z)^2/4 - w*z").unwrap();
        assert_eq!(q.coeff(&[("z", 2)]), rational(9, 4));
        assert_eq!(q.coeff(&[("w", 1), ("z", 1)]), rational(1, 2));
        assert_eq!(
            parse_polynomial("-2^2").unwrap().constant_term(),
            Coefficient::from_int(Ring::Exact, -4)
        );
        assert_eq!(parse_polynomial("0.5 r").unwrap().ring(), Ring::Float);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_expr("1 + $"), Err(ExprError::Char(5, '$'))));
        assert!(matches!(parse_expr("(1 + m"), Err(ExprError::Syntax(..))));
        assert!(matches!(parse_expr("m^x"), Err(ExprError::Syntax(..))));
        assert!(matches!(parse_polynomial("1/m"), Err(ExprError::Division)));
        assert!(matches!(parse_polynomial("1/0"), Err(ExprError::Division)));
    }
}
