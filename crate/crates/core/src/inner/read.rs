//! A reader for the printed ASCII dialect, used by the print/parse
//! round-trip tests. Annotations that the printer elides (refl endpoints,
//! pair sigma types, lambda domains appear, so those are kept) come back
//! as placeholders; alpha comparison ignores them.

use super::syntax::*;
use crate::tos::ExternTable;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Colon,
    Comma,
    Arrow,  // ->
    Star,   // *
    Eq,     // =
    SEq,    // ≡
    Lambda, // \
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let mut toks = Vec::new();
    let mut it = src.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '(' => {
                it.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                it.next();
                toks.push(Tok::RParen);
            }
            ':' => {
                it.next();
                toks.push(Tok::Colon);
            }
            ',' => {
                it.next();
                toks.push(Tok::Comma);
            }
            '*' => {
                it.next();
                toks.push(Tok::Star);
            }
            '=' => {
                it.next();
                toks.push(Tok::Eq);
            }
            '≡' => {
                it.next();
                toks.push(Tok::SEq);
            }
            '\\' => {
                it.next();
                toks.push(Tok::Lambda);
            }
            '-' => {
                it.next();
                match it.peek() {
                    Some('>') => {
                        it.next();
                        toks.push(Tok::Arrow);
                    }
                    Some('-') => {
                        // comment to end of line
                        for c2 in it.by_ref() {
                            if c2 == '\n' {
                                break;
                            }
                        }
                    }
                    _ => return Err("stray '-'".into()),
                }
            }
            c if c.is_alphanumeric() || c == '_' || c == '\'' => {
                let mut s = String::new();
                while let Some(&c2) = it.peek() {
                    if c2.is_alphanumeric() || c2 == '_' || c2 == '\'' {
                        s.push(c2);
                        it.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(s));
            }
            other => return Err(format!("unexpected character '{other}'")),
        }
    }
    Ok(toks)
}

struct Rd<'a> {
    toks: Vec<Tok>,
    pos: usize,
    externs: &'a ExternTable,
    names: Vec<String>,
}

impl Rd<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        match self.next() {
            Some(got) if got == t => Ok(()),
            got => Err(format!("expected {t:?}, found {got:?}")),
        }
    }

    fn binder_ahead(&self) -> bool {
        if self.peek() != Some(&Tok::LParen) {
            return false;
        }
        matches!(self.toks.get(self.pos + 1), Some(Tok::Ident(_)))
            && self.toks.get(self.pos + 2) == Some(&Tok::Colon)
    }

    fn expr(&mut self) -> Result<RcITm, String> {
        if self.binder_ahead() {
            self.expect(Tok::LParen)?;
            let name = match self.next() {
                Some(Tok::Ident(s)) => s,
                got => return Err(format!("expected binder, found {got:?}")),
            };
            self.expect(Tok::Colon)?;
            let dom = self.expr()?;
            self.expect(Tok::RParen)?;
            match self.next() {
                Some(Tok::Arrow) => {
                    self.names.push(name.clone());
                    let cod = self.expr()?;
                    self.names.pop();
                    Ok(rc(ITm::Pi(name, dom, cod)))
                }
                Some(Tok::Star) => {
                    self.names.push(name.clone());
                    let rest = self.sigma_rest()?;
                    self.names.pop();
                    let sg = rc(ITm::Sg(name, dom, rest));
                    if self.peek() == Some(&Tok::Arrow) {
                        self.next();
                        self.names.push("_".into());
                        let cod = self.expr()?;
                        self.names.pop();
                        return Ok(rc(ITm::Pi("_".into(), sg, cod)));
                    }
                    Ok(sg)
                }
                got => Err(format!("expected '->' or '*' after binder, found {got:?}")),
            }
        } else {
            let lhs = self.eq_level()?;
            if self.peek() == Some(&Tok::Arrow) {
                self.next();
                self.names.push("_".into());
                let cod = self.expr()?;
                self.names.pop();
                Ok(rc(ITm::Pi("_".into(), lhs, cod)))
            } else {
                Ok(lhs)
            }
        }
    }

    /// After `(x : A) *`, the tail is either another annotated component
    /// or a final component at sigma level.
    fn sigma_rest(&mut self) -> Result<RcITm, String> {
        if self.binder_ahead() {
            // distinguish `(y : B) * ...` from a final `(y : B) -> ...`
            // by scanning for the operator after the matching paren
            let save = self.pos;
            self.expect(Tok::LParen)?;
            let name = match self.next() {
                Some(Tok::Ident(s)) => s,
                got => return Err(format!("expected binder, found {got:?}")),
            };
            self.expect(Tok::Colon)?;
            let dom = self.expr()?;
            self.expect(Tok::RParen)?;
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    self.names.push(name.clone());
                    let rest = self.sigma_rest()?;
                    self.names.pop();
                    return Ok(rc(ITm::Sg(name, dom, rest)));
                }
                _ => {
                    self.pos = save;
                }
            }
        }
        self.app_level()
    }

    fn eq_level(&mut self) -> Result<RcITm, String> {
        let lhs = self.app_level()?;
        match self.peek() {
            Some(Tok::Eq) => {
                self.next();
                let rhs = self.app_level()?;
                Ok(rc(ITm::Path(rc(ITm::UnitVal), lhs, rhs)))
            }
            Some(Tok::SEq) => {
                self.next();
                let rhs = self.app_level()?;
                Ok(rc(ITm::StrictEq(rc(ITm::UnitVal), lhs, rhs)))
            }
            _ => Ok(lhs),
        }
    }

    fn app_level(&mut self) -> Result<RcITm, String> {
        if let Some(Tok::Ident(s)) = self.peek() {
            let s = s.clone();
            // bound names and externs shadow the prefix operators
            let shadowed =
                self.names.iter().any(|n| n == &s) || self.externs.lookup(&s).is_some();
            let prefix: Option<(usize, &str)> = if shadowed {
                None
            } else {
                match s.as_str() {
                "tr" => Some((3, "tr")),
                "ap" => Some((2, "ap")),
                "apd" => Some((2, "apd")),
                "J" => Some((3, "J")),
                "funext" => Some((3, "funext")),
                "happly" => Some((2, "happly")),
                "inv" => Some((1, "inv")),
                "comp" => Some((2, "comp")),
                "proj1" => Some((1, "proj1")),
                "proj2" => Some((1, "proj2")),
                _ => None,
                }
            };
            if let Some((arity, op)) = prefix {
                self.next();
                let mut args = Vec::new();
                for _ in 0..arity {
                    args.push(self.atom()?);
                }
                let node = match op {
                    "tr" => rc(ITm::Tr {
                        motive: args[0].clone(),
                        path: args[1].clone(),
                        point: args[2].clone(),
                    }),
                    "ap" => rc(ITm::Ap {
                        f: args[0].clone(),
                        path: args[1].clone(),
                    }),
                    "apd" => rc(ITm::Apd {
                        f: args[0].clone(),
                        path: args[1].clone(),
                    }),
                    "J" => rc(ITm::J {
                        motive: args[0].clone(),
                        pr: args[1].clone(),
                        path: args[2].clone(),
                    }),
                    "funext" => rc(ITm::Funext {
                        f: args[0].clone(),
                        g: args[1].clone(),
                        h: args[2].clone(),
                    }),
                    "happly" => rc(ITm::Happly {
                        path: args[0].clone(),
                        arg: args[1].clone(),
                    }),
                    "inv" => rc(ITm::Inv(args[0].clone())),
                    "comp" => rc(ITm::Comp(args[0].clone(), args[1].clone())),
                    "proj1" => rc(ITm::Proj1(args[0].clone())),
                    "proj2" => rc(ITm::Proj2(args[0].clone())),
                    _ => unreachable!(),
                };
                return self.app_args(node);
            }
        }
        let head = self.atom()?;
        self.app_args(head)
    }

    /// The shared application loop: a head followed by argument atoms.
    fn app_args(&mut self, mut head: RcITm) -> Result<RcITm, String> {
        loop {
            let arg_ahead = match self.peek() {
                Some(Tok::Ident(s)) => {
                    self.prefix_shadowed(s)
                        || !matches!(
                            s.as_str(),
                            "tr" | "ap"
                                | "apd"
                                | "J"
                                | "funext"
                                | "happly"
                                | "inv"
                                | "comp"
                                | "proj1"
                                | "proj2"
                        )
                }
                Some(Tok::LParen) => true,
                _ => false,
            };
            if !arg_ahead {
                break;
            }
            let arg = self.atom()?;
            head = rc(ITm::App(head, arg));
        }
        Ok(head)
    }

    fn prefix_shadowed(&self, s: &str) -> bool {
        self.names.iter().any(|n| n == s) || self.externs.lookup(s).is_some()
    }

    fn atom(&mut self) -> Result<RcITm, String> {
        match self.next() {
            Some(Tok::Ident(s)) => match s.as_str() {
                "Set" => Ok(rc(ITm::Sort(Sort::Set))),
                "Ty0" => Ok(rc(ITm::Sort(Sort::Ty0))),
                "U0" => Ok(rc(ITm::Sort(Sort::U0))),
                "U1" => Ok(rc(ITm::Sort(Sort::U1))),
                "Top" => Ok(rc(ITm::Unit)),
                "tt" => Ok(rc(ITm::UnitVal)),
                "refl" => Ok(rc(ITm::Refl {
                    strict: false,
                    ty: rc(ITm::UnitVal),
                    tm: rc(ITm::UnitVal),
                })),
                name => {
                    if let Some(ix) = self.names.iter().rev().position(|n| n == name) {
                        return Ok(var(ix));
                    }
                    match self.externs.lookup(name) {
                        Some(id) => Ok(rc(ITm::Ext(id))),
                        None => Err(format!("unknown name `{name}`")),
                    }
                }
            },
            Some(Tok::LParen) => {
                if self.peek() == Some(&Tok::Lambda) {
                    self.next();
                    self.expect(Tok::LParen)?;
                    let name = match self.next() {
                        Some(Tok::Ident(s)) => s,
                        got => return Err(format!("expected lambda binder, found {got:?}")),
                    };
                    self.expect(Tok::Colon)?;
                    let dom = self.expr()?;
                    self.expect(Tok::RParen)?;
                    self.expect(Tok::Arrow)?;
                    self.names.push(name.clone());
                    let body = self.expr()?;
                    self.names.pop();
                    self.expect(Tok::RParen)?;
                    return Ok(rc(ITm::Lam(name, dom, body)));
                }
                // a binder group inside parens is a parenthesized pi/sigma
                if self.binder_ahead() {
                    let e = self.expr()?;
                    self.expect(Tok::RParen)?;
                    return Ok(e);
                }
                let first = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(first),
                    Some(Tok::Comma) => {
                        let second = self.expr()?;
                        self.expect(Tok::RParen)?;
                        Ok(rc(ITm::Pair(rc(ITm::UnitVal), first, second)))
                    }
                    got => Err(format!("expected ')' or ',', found {got:?}")),
                }
            }
            got => Err(format!("expected an expression, found {got:?}")),
        }
    }
}

/// Parses one printed ASCII definition line `Name (p : T)* = body`.
pub fn parse_ascii_def(src: &str, externs: &ExternTable) -> Result<EmitDef, String> {
    let toks = lex(src)?;
    let mut rd = Rd {
        toks,
        pos: 0,
        externs,
        names: Vec::new(),
    };
    let name = match rd.next() {
        Some(Tok::Ident(s)) => s,
        got => return Err(format!("expected definition name, found {got:?}")),
    };
    let mut params = Vec::new();
    while rd.peek() == Some(&Tok::LParen) {
        rd.expect(Tok::LParen)?;
        let pname = match rd.next() {
            Some(Tok::Ident(s)) => s,
            got => return Err(format!("expected parameter name, found {got:?}")),
        };
        rd.expect(Tok::Colon)?;
        let pty = rd.expr()?;
        rd.expect(Tok::RParen)?;
        rd.names.push(pname.clone());
        params.push((pname, pty));
    }
    rd.expect(Tok::Eq)?;
    let body = rd.expr()?;
    if rd.peek().is_some() {
        return Err(format!("trailing tokens after definition: {:?}", rd.peek()));
    }
    Ok(EmitDef { name, params, body })
}

/// Parses a standalone expression of the ASCII dialect (free names resolve
/// to externs).
pub fn parse_ascii_expr(src: &str, externs: &ExternTable) -> Result<RcITm, String> {
    let toks = lex(src)?;
    let mut rd = Rd {
        toks,
        pos: 0,
        externs,
        names: Vec::new(),
    };
    let e = rd.expr()?;
    if rd.peek().is_some() {
        return Err(format!("trailing tokens: {:?}", rd.peek()));
    }
    Ok(e)
}
