//! The arithmetic expression language of algebra specifications: integer
//! literals, positional argument names (`x0..`, `ih0..`), `+ - *`, unary
//! minus, `min(a,b)` / `max(a,b)`, parentheses. All arithmetic is checked;
//! overflow is reported rather than wrapped.

use crate::diag::{Code, Diagnostic};

#[derive(Debug, Clone)]
pub enum Expr {
    Lit(i64),
    Arg(usize),
    Ih(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Lit(0)
    }

    pub fn parse(src: &str) -> Result<Expr, String> {
        let mut p = P {
            s: src.as_bytes(),
            i: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.i != p.s.len() {
            return Err(format!("trailing input at byte {}", p.i));
        }
        Ok(e)
    }

    /// Argument references must stay below the entry's arity; `ih` names
    /// are legal only in displayed-algebra methods.
    pub fn check_arity(&self, arity: usize, allow_ih: bool) -> Result<(), String> {
        match self {
            Expr::Lit(_) => Ok(()),
            Expr::Arg(i) => {
                if *i < arity {
                    Ok(())
                } else {
                    Err(format!("x{i} used but the entry has arity {arity}"))
                }
            }
            Expr::Ih(i) => {
                if !allow_ih {
                    Err("ih names are only available in displayed-algebra methods".into())
                } else if *i < arity {
                    Ok(())
                } else {
                    Err(format!("ih{i} used but the entry has arity {arity}"))
                }
            }
            Expr::Neg(a) => a.check_arity(arity, allow_ih),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Min(a, b)
            | Expr::Max(a, b) => {
                a.check_arity(arity, allow_ih)?;
                b.check_arity(arity, allow_ih)
            }
        }
    }

    pub fn eval(&self, xs: &[i64], ihs: &[i64]) -> Result<i64, Diagnostic> {
        let overflow = || Diagnostic::new(Code::EOverflow, "integer overflow during evaluation");
        Ok(match self {
            Expr::Lit(v) => *v,
            Expr::Arg(i) => xs[*i],
            Expr::Ih(i) => ihs[*i],
            Expr::Neg(a) => a.eval(xs, ihs)?.checked_neg().ok_or_else(overflow)?,
            Expr::Add(a, b) => a
                .eval(xs, ihs)?
                .checked_add(b.eval(xs, ihs)?)
                .ok_or_else(overflow)?,
            Expr::Sub(a, b) => a
                .eval(xs, ihs)?
                .checked_sub(b.eval(xs, ihs)?)
                .ok_or_else(overflow)?,
            Expr::Mul(a, b) => a
                .eval(xs, ihs)?
                .checked_mul(b.eval(xs, ihs)?)
                .ok_or_else(overflow)?,
            Expr::Min(a, b) => a.eval(xs, ihs)?.min(b.eval(xs, ihs)?),
            Expr::Max(a, b) => a.eval(xs, ihs)?.max(b.eval(xs, ihs)?),
        })
    }
}

struct P<'a> {
    s: &'a [u8],
    i: usize,
}

impl P<'_> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<Expr, String> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.i += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, String> {
        let mut acc = self.factor()?;
        while let Some(b'*') = self.peek() {
            self.i += 1;
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, String> {
        match self.peek() {
            Some(b'-') => {
                self.i += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                let text = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                text.parse::<i64>()
                    .map(Expr::Lit)
                    .map_err(|e| format!("bad integer literal: {e}"))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                while self.i < self.s.len()
                    && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_')
                {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                match name {
                    "min" | "max" => {
                        self.expect(b'(')?;
                        let a = self.expr()?;
                        self.expect(b',')?;
                        let b = self.expr()?;
                        self.expect(b')')?;
                        Ok(if name == "min" {
                            Expr::Min(Box::new(a), Box::new(b))
                        } else {
                            Expr::Max(Box::new(a), Box::new(b))
                        })
                    }
                    _ => {
                        if let Some(rest) = name.strip_prefix("ih") {
                            rest.parse::<usize>()
                                .map(Expr::Ih)
                                .map_err(|_| format!("bad argument name `{name}`"))
                        } else if let Some(rest) = name.strip_prefix('x') {
                            rest.parse::<usize>()
                                .map(Expr::Arg)
                                .map_err(|_| format!("bad argument name `{name}`"))
                        } else {
                            Err(format!("unknown name `{name}` (use x<i>, ih<i>, min, max)"))
                        }
                    }
                }
            }
            other => Err(format!("unexpected input {other:?}")),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), String> {
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            Err(format!("expected `{}`", c as char))
        }
    }
}
