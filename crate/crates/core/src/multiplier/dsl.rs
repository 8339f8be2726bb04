//! Tiny expression language for multiplier symbols, used by run configs.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := number | 'i' | call | '(' expr ')'
//! call   := name '(' number (',' number)* ')' | name
//! names  : one                  -> 1
//!          norm_pow_i(gamma)    -> ||xi||^{i gamma}
//!          riesz(j)             -> -i xi_j / ||xi||        (j is 1-based)
//!          heat(t)              -> exp(-t ||xi||^2)
//!          highpass(eps)        -> smooth cutoff, 0 on ||xi|| <= eps, 1 on ||xi|| >= 2 eps
//!          lowpass(eps)         -> 1 - highpass(eps)
//!          halfspace(j)         -> indicator of xi_j > 0 (not Hormander; for divergence demos)
//! ```

use super::cutoffs;
use crate::{Cplx, DunklError, Real, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum SymbolExpr {
    Const(Cplx),
    NormPowI(Real),
    Riesz(usize),
    Heat(Real),
    Highpass(Real),
    Lowpass(Real),
    Halfspace(usize),
    Sum(Vec<SymbolExpr>),
    Diff(Box<SymbolExpr>, Box<SymbolExpr>),
    Product(Vec<SymbolExpr>),
}

impl SymbolExpr {
    pub fn eval(&self, xi: &[Real]) -> Cplx {
        let r = xi.iter().map(|c| c * c).sum::<Real>().sqrt();
        match self {
            SymbolExpr::Const(c) => *c,
            SymbolExpr::NormPowI(gamma) => {
                if r == 0.0 {
                    Cplx::new(0.0, 0.0)
                } else {
                    let phase = gamma * r.ln();
                    Cplx::new(phase.cos(), phase.sin())
                }
            }
            SymbolExpr::Riesz(j) => {
                if r == 0.0 {
                    Cplx::new(0.0, 0.0)
                } else {
                    Cplx::new(0.0, -xi[*j - 1] / r)
                }
            }
            SymbolExpr::Heat(t) => Cplx::from((-t * r * r).exp()),
            SymbolExpr::Highpass(eps) => Cplx::from(1.0 - cutoffs::eta(r / eps)),
            SymbolExpr::Lowpass(eps) => Cplx::from(cutoffs::eta(r / eps)),
            SymbolExpr::Halfspace(j) => Cplx::from(if xi[*j - 1] > 0.0 { 1.0 } else { 0.0 }),
            SymbolExpr::Sum(parts) => parts.iter().map(|p| p.eval(xi)).sum(),
            SymbolExpr::Diff(a, b) => a.eval(xi) - b.eval(xi),
            SymbolExpr::Product(parts) => parts.iter().map(|p| p.eval(xi)).product(),
        }
    }

    /// Radial by construction? (conservative syntactic check)
    pub fn is_radial(&self) -> bool {
        match self {
            SymbolExpr::Const(_)
            | SymbolExpr::NormPowI(_)
            | SymbolExpr::Heat(_)
            | SymbolExpr::Highpass(_)
            | SymbolExpr::Lowpass(_) => true,
            SymbolExpr::Riesz(_) | SymbolExpr::Halfspace(_) => false,
            SymbolExpr::Sum(p) | SymbolExpr::Product(p) => p.iter().all(|e| e.is_radial()),
            SymbolExpr::Diff(a, b) => a.is_radial() && b.is_radial(),
        }
    }

    pub fn parse(input: &str) -> Result<SymbolExpr> {
        let mut p = Parser {
            chars: input.chars().collect(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(DunklError::invalid(format!(
                "trailing input at byte {} of symbol expression",
                p.pos
            )));
        }
        Ok(e)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr(&mut self) -> Result<SymbolExpr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = SymbolExpr::Sum(vec![acc, rhs]);
                }
                Some('-') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = SymbolExpr::Diff(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SymbolExpr> {
        let mut parts = vec![self.factor()?];
        while self.peek() == Some('*') {
            self.bump();
            parts.push(self.factor()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            SymbolExpr::Product(parts)
        })
    }

    fn factor(&mut self) -> Result<SymbolExpr> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.bump() != Some(')') {
                    return Err(DunklError::invalid("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let v = self.number()?;
                Ok(SymbolExpr::Const(Cplx::from(v)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.ident();
                if name == "i" {
                    return Ok(SymbolExpr::Const(Cplx::new(0.0, 1.0)));
                }
                if name == "one" {
                    return Ok(SymbolExpr::Const(Cplx::from(1.0)));
                }
                let args = self.args()?;
                let arg1 = |args: &[Real]| -> Result<Real> {
                    args.first().copied().ok_or_else(|| {
                        DunklError::invalid(format!("'{name}' expects one argument"))
                    })
                };
                match name.as_str() {
                    "norm_pow_i" => Ok(SymbolExpr::NormPowI(arg1(&args)?)),
                    "heat" => Ok(SymbolExpr::Heat(arg1(&args)?)),
                    "highpass" => Ok(SymbolExpr::Highpass(arg1(&args)?)),
                    "lowpass" => Ok(SymbolExpr::Lowpass(arg1(&args)?)),
                    "riesz" => Ok(SymbolExpr::Riesz(arg1(&args)? as usize)),
                    "halfspace" => Ok(SymbolExpr::Halfspace(arg1(&args)? as usize)),
                    other => Err(DunklError::invalid(format!(
                        "unknown symbol function '{other}'"
                    ))),
                }
            }
            other => Err(DunklError::invalid(format!(
                "unexpected token {other:?} in symbol expression"
            ))),
        }
    }

    fn args(&mut self) -> Result<Vec<Real>> {
        if self.peek() != Some('(') {
            return Err(DunklError::invalid("expected '(' after symbol name"));
        }
        self.bump();
        let mut args = vec![self.number()?];
        while self.peek() == Some(',') {
            self.bump();
            args.push(self.number()?);
        }
        if self.bump() != Some(')') {
            return Err(DunklError::invalid("expected ')' after arguments"));
        }
        Ok(args)
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn number(&mut self) -> Result<Real> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_digit()
                || self.chars[self.pos] == '.'
                || self.chars[self.pos] == 'e'
                || (self.chars[self.pos] == '-' && self.chars[self.pos - 1] == 'e'))
        {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| DunklError::invalid(format!("bad number '{s}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_eval() {
        let e = SymbolExpr::parse("heat(1.0)").unwrap();
        let v = e.eval(&[1.0, 0.0]);
        assert!((v.re - (-1.0 as Real).exp()).abs() < 1e-15);

        let r = SymbolExpr::parse("riesz(1) * norm_pow_i(1.0)").unwrap();
        assert!(!r.is_radial());
        let v = r.eval(&[2.0]);
        assert!((v.norm() - 1.0).abs() < 1e-12);

        let c = SymbolExpr::parse("one + 2.5 * i").unwrap();
        assert_eq!(c.eval(&[1.0]), Cplx::new(1.0, 2.5));
    }

    #[test]
    fn rejects_garbage() {
        assert!(SymbolExpr::parse("riesz(1) +").is_err());
        assert!(SymbolExpr::parse("frobnicate(2)").is_err());
        assert!(SymbolExpr::parse("heat(1) junk").is_err());
    }

    #[test]
    fn riesz_symbol_values() {
        let e = SymbolExpr::parse("riesz(2)").unwrap();
        let v = e.eval(&[0.0, 3.0]);
        assert_eq!(v, Cplx::new(0.0, -1.0));
    }
}
